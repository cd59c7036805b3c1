#include <doctest.h>

#include <random>

#include "cellrev/debruijn.hpp"
#include "cellrev/step.hpp"

using namespace cellrev;

namespace {

Rule random_rule(std::mt19937_64& g, int d, int m) {
    std::vector<State> t(ipow(d, m));
    for (auto& v : t) v = static_cast<State>(g() % d);
    return make_rule(d, m, t);
}

}  // namespace

TEST_SUITE("step") {

TEST_CASE("kernel names") {
    CHECK(kernel_name(Kernel::Scalar) == "scalar");
    CHECK(kernel_name(Kernel::Avx2) == "avx2");
}

TEST_CASE("scalar step on the worked example") {
    const auto r = parse_rule("201210210201210210201210210", 3, 3);
    Stepper s(r, Kernel::Scalar);
    Config out;
    s.step(parse_config("1012", 3), out);
    CHECK(config_string(out) == "0120");
}

TEST_CASE("vector kernel matches scalar") {
    if (!avx2_available()) {
        MESSAGE("AVX2 not available; only the scalar kernel runs here");
        return;
    }
    std::mt19937_64 g(7);
    for (int trial = 0; trial < 300; ++trial) {
        const int d = 2 + static_cast<int>(g() % 9);
        const int m = 2 + static_cast<int>(g() % 3);
        const auto rule = random_rule(g, d, m);
        const std::size_t n = 1 + g() % 80;
        Config in(n);
        for (auto& c : in) c = static_cast<State>(g() % d);
        Stepper a(rule, Kernel::Scalar), b(rule, Kernel::Avx2);
        Config oa, ob;
        a.step(in, oa);
        b.step(in, ob);
        REQUIRE(oa == ob);
    }
}

TEST_CASE("vector kernel on long decimal rows") {
    if (!avx2_available()) return;
    std::mt19937_64 g(11);
    const auto rule = random_rule(g, 10, 3);
    Stepper a(rule, Kernel::Scalar), b(rule, Kernel::Avx2);
    Config x(1001), oa, ob;
    for (auto& c : x) c = static_cast<State>(g() % 10);
    for (int t = 0; t < 50; ++t) {
        a.step(x, oa);
        b.step(x, ob);
        REQUIRE(oa == ob);
        x.swap(oa);
    }
}

TEST_CASE("direct step equals de Bruijn traversal") {
    std::mt19937_64 g(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 2 + static_cast<int>(g() % 3);
        const auto rule = random_rule(g, d, 3);
        Config x(1 + g() % 12);
        for (auto& c : x) c = static_cast<State>(g() % d);
        CHECK(next_configuration(rule, x) == next_configuration_debruijn(rule, x));
    }
}

}
