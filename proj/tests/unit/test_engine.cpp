#include <doctest.h>

#include "cellrev/engine.hpp"
#include "cellrev/synthesis.hpp"

using namespace cellrev;

namespace {
const char* kR = "120021120021021120021021210";

Config seed_one(int n) {
    Config c(static_cast<std::size_t>(n) - 1, 0);
    c.push_back(1);
    return c;
}
}  // namespace

TEST_SUITE("engine") {

TEST_CASE("evolve") {
    const auto r = parse_rule("201210210201210210201210210", 3, 3);
    const auto traj = evolve(r, parse_config("1012", 3), 1);
    REQUIRE(traj.size() == 2);
    CHECK(config_string(traj[1]) == "0120");
    CHECK(evolve(r, parse_config("1012", 3), 0).size() == 1);

    const auto x = parse_config("0110100111", 2);
    const auto c = evolve(eca(51), x, 2);
    CHECK(c[2] == x);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(c[1][i] == 1 - x[i]);

    CHECK_THROWS_AS(evolve(eca(90), Config{0, 2, 1}, 1), DomainError);
}

TEST_CASE("cycle lengths of the three-state rule") {
    const auto r = parse_rule(kR, 3, 3);
    auto res = cycle_length(r, seed_one(5), 1u << 20);
    REQUIRE(res.cycleLength);
    CHECK(*res.cycleLength == 170);
    CHECK(res.tailLength == 0);
    CHECK_FALSE(res.truncated);
    const auto back = evolve(r, res.entry, *res.cycleLength);
    CHECK(back.back() == res.entry);

    CHECK(*cycle_length(r, seed_one(7), 1u << 20).cycleLength == 1967);

    res = cycle_length(r, Config(6, 0), 10);
    CHECK(*res.cycleLength == 1);
    CHECK(res.tailLength == 0);

    res = cycle_length(r, seed_one(9), 100);
    CHECK(res.truncated);
    CHECK_FALSE(res.cycleLength);
    CHECK_THROWS_AS(cycle_length(r, seed_one(5), 0), DomainError);
}

TEST_CASE("tail before the cycle") {
    // ECA 0 sends everything to 0^n in one step
    const auto res = cycle_length(eca(0), parse_config("1011", 2), 10);
    CHECK(*res.cycleLength == 1);
    CHECK(res.tailLength == 1);
    CHECK(config_string(res.entry) == "0000");
}

TEST_CASE("long configurations use the string key") {
    Config c(70, 0);
    c[3] = 1;
    const auto res = cycle_length(eca(170), c, 1000);  // left shift
    CHECK(*res.cycleLength == 70);
}

TEST_CASE("palette") {
    const auto p3 = default_palette(3);
    CHECK(p3[0] == Rgb{0, 0, 255});
    CHECK(p3[1] == Rgb{0, 255, 0});
    CHECK(p3[2] == Rgb{255, 0, 0});
    const auto p10 = default_palette(10);
    CHECK(p10[3] == Rgb{255, 255, 0});
    CHECK(p10[8] == Rgb{0, 0, 0});
    CHECK(p10[9] == Rgb{255, 255, 255});
    CHECK_THROWS_AS(default_palette(11), DomainError);
}

TEST_CASE("raster") {
    const auto r = parse_rule(kR, 3, 3);
    const auto start = parse_config("0120", 3);
    auto img = spacetime_raster(r, start, 0, default_palette(3));
    CHECK(img.width == 4);
    CHECK(img.height == 1);
    for (std::size_t i = 0; i < 4; ++i) CHECK(img.pixel(0, i) == default_palette(3)[start[i]]);

    img = spacetime_raster(r, start, 5, default_palette(3));
    CHECK(img.height == 6);
    const auto traj = evolve(r, start, 5);
    for (std::size_t t = 0; t < 6; ++t)
        for (std::size_t i = 0; i < 4; ++i) CHECK(img.pixel(t, i) == default_palette(3)[traj[t][i]]);

    const auto ppm = encode_ppm(img);
    const std::string header = "P6\n4 6\n255\n";
    CHECK(ppm.substr(0, header.size()) == header);
    CHECK(ppm.size() == header.size() + 4 * 6 * 3);
    CHECK_THROWS_AS(spacetime_raster(r, start, 1, default_palette(2)), DomainError);
}

}
