#include <doctest.h>

#include <algorithm>

#include "cellrev/debruijn.hpp"
#include "cellrev/engine.hpp"
#include "cellrev/synthesis.hpp"
#include "cellrev/tree.hpp"

using namespace cellrev;

namespace {
Rule random_rule(Lcg64& rng, int d, bool balanced) {
    std::vector<State> t(ipow(d, 3));
    if (balanced) {
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<State>(i % d);
        rng.shuffle(t.begin(), t.end());
    } else {
        for (auto& s : t) s = static_cast<State>(rng.below(d));
    }
    return make_rule(d, 3, t);
}

std::vector<Rule> sample_rules(std::uint64_t seed, int count) {
    Lcg64 rng(seed);
    std::vector<Rule> out;
    for (int i = 0; i < count; ++i) {
        const int d = i % 3 == 0 ? 2 : 3;
        out.push_back(random_rule(rng, d, i % 2 == 0));
    }
    return out;
}
}  // namespace

TEST_SUITE("properties") {

TEST_CASE("fixed-size decision agrees with brute force") {
    for (const auto& r : sample_rules(11, 200))
        for (int n = 3; n <= 7; ++n) CHECK(check_reversible(r, n).reversible == brute_force_reversible(r, n));
}

TEST_CASE("classification agrees with fixed-size decisions") {
    for (const auto& r : sample_rules(12, 150)) {
        const auto rep = classify(r);
        for (long long n = 3; n <= 12; ++n)
            CHECK(rep.irreversible_at(static_cast<std::uint64_t>(n)) == !check_reversible(r, n).reversible);
    }
}

TEST_CASE("equivalent rules share the class") {
    for (const auto& r : sample_rules(13, 100)) {
        const auto base = classify(r);
        const auto eq = equivalent_rules(r);
        for (const auto* other : {&eq.reflection, &eq.conjugation, &eq.conj_reflection}) {
            const auto rep = classify(*other);
            CHECK(rep.cls == base.cls);
            for (std::uint64_t n = 3; n <= 12; ++n) CHECK(rep.irreversible_at(n) == base.irreversible_at(n));
        }
    }
}

TEST_CASE("global map commutes with rotation") {
    Lcg64 rng(14);
    for (const auto& r : sample_rules(14, 30)) {
        Config x(13);
        for (auto& c : x) c = static_cast<State>(rng.below(r.d));
        auto rx = x;
        std::rotate(rx.begin(), rx.begin() + 4, rx.end());
        auto fx = next_configuration(r, x);
        std::rotate(fx.begin(), fx.begin() + 4, fx.end());
        CHECK(next_configuration(r, rx) == fx);
    }
}

TEST_CASE("fixed-point witnesses are fixed") {
    for (const auto& r : sample_rules(15, 60)) {
        for (const auto& fp : fixed_point_attractors(r)) {
            Config x;
            for (auto q : fp.cycle.rmts) x.push_back(static_cast<State>(r.digit(q, r.lr)));
            CHECK(x.size() == fp.period);
            CHECK(next_configuration(r, x) == x);
        }
        const auto v = trivial_reachability(r);
        for (const auto& w : v.reachableTrivials) {
            Config x;
            for (auto q : w.cycle.rmts) x.push_back(static_cast<State>(r.digit(q, r.lr)));
            const auto y = next_configuration(r, x);
            CHECK(std::all_of(y.begin(), y.end(), [&](State s) { return s == w.state; }));
        }
    }
}

TEST_CASE("scalar and dispatched steppers agree") {
    Lcg64 rng(16);
    for (const auto& r : sample_rules(16, 20)) {
        Config x(257);
        for (auto& c : x) c = static_cast<State>(rng.below(r.d));
        Config a, b;
        Stepper(r, Kernel::Scalar).step(x, a);
        Stepper(r).step(x, b);
        CHECK(a == b);
    }
}

}
