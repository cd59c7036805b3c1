#include <doctest.h>

#include "cellrev/rule.hpp"

using namespace cellrev;

TEST_SUITE("rule") {

TEST_CASE("parse and render") {
    const auto r = parse_rule("01011010", 2, 3);
    CHECK(r[1] == 1);
    CHECK(r[3] == 1);
    CHECK(r[4] == 1);
    CHECK(r[6] == 1);
    CHECK(r[0] == 0);
    CHECK(r.to_string() == "01011010");
    CHECK(eca_code(r) == 90);
    CHECK(eca(90) == r);

    const auto z = parse_rule("00000000", 2, 3);
    for (Rmt i = 0; i < 8; ++i) CHECK(z[i] == 0);

    const auto t = parse_rule("201210210201210210201210210", 3, 3);
    CHECK(t[0] == 0);
    CHECK(t[1] == 1);
}

TEST_CASE("parse errors name the index") {
    CHECK_THROWS_AS(parse_rule("0101", 2, 3), ParseError);
    try {
        parse_rule("01021010", 2, 3);
        FAIL("expected throw");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("0130", 3), DomainError);
}

TEST_CASE("header form and inferred size") {
    const auto r = parse_rule_spec("d=3 m=3 rule=201210210201210210201210210");
    CHECK(r.d == 3);
    CHECK(r.m == 3);
    const auto e = parse_rule_spec("01001011");
    CHECK(e.d == 2);
    CHECK(e.m == 3);
}

TEST_CASE("sibling and equivalent sets") {
    CHECK(sibling_set(3, 3, 4) == std::vector<Rmt>{12, 13, 14});
    CHECK(equivalent_set(3, 3, 4) == std::vector<Rmt>{4, 13, 22});
    std::vector<int> seenS(27), seenE(27);
    for (std::size_t j = 0; j < 9; ++j) {
        for (auto r : sibling_set(3, 3, j)) ++seenS[r];
        for (auto r : equivalent_set(3, 3, j)) ++seenE[r];
    }
    for (int r = 0; r < 27; ++r) {
        CHECK(seenS[r] == 1);
        CHECK(seenE[r] == 1);
    }
}

TEST_CASE("balance") {
    CHECK(is_balanced(parse_rule("201210210201210210201210210", 3, 3)));
    CHECK_FALSE(is_balanced(parse_rule("00000000", 2, 3)));
    CHECK(is_balanced(eca(90)));
}

TEST_CASE("linearity") {
    CHECK(is_linear(eca(90)));
    CHECK(is_linear(eca(0)));
    const auto R = parse_rule("120021120021021120021021210", 3, 3);
    CHECK_FALSE(is_linear(R));
    CHECK_FALSE(additive_on(R, 4, 5));
    CHECK(linearity_witness(R).has_value());
    CHECK(rmt_add(3, 3, 4, 5) == 6);  // 011 + 012 = 020 digit-wise
}

TEST_CASE("self-replicating RMTs") {
    CHECK(self_replicating_rmts(parse_rule("102012102012102102021021012", 3, 3)) ==
          std::vector<Rmt>{2, 3, 7, 10, 14, 15, 19, 22, 24});
    CHECK(self_replicating_rmts(parse_rule("211212112020000020102121201", 3, 3)) ==
          std::vector<Rmt>{1, 3, 5, 6, 9, 11, 16, 22, 26});
    const auto id = eca(204);
    CHECK(self_replicating_rmts(id).size() == 8);
}

TEST_CASE("information flow") {
    auto f = information_flow(parse_rule("120021120021021120021021210", 3, 3));
    CHECK(f.rightChanges == 10);
    CHECK(f.leftChanges == 18);
    CHECK(f.totalRmts == 27);
    CHECK(f.rightRate() == doctest::Approx(10.0 / 27));
    f = information_flow(parse_rule("211212112020000020102121201", 3, 3));
    CHECK(f.rightChanges == 18);
    CHECK(f.leftChanges == 12);
    f = information_flow(parse_rule("102012102012102102021021012", 3, 3));
    CHECK(f.leftChanges == 18);
    CHECK(f.rightChanges == 12);
    f = information_flow(eca(204));
    CHECK(f.leftChanges == 0);
    CHECK(f.rightChanges == 0);
}

TEST_CASE("reflection and conjugation") {
    const auto r = parse_rule("211212112020000020102121201", 3, 3);
    const auto eq = equivalent_rules(r);
    CHECK(reflect(eq.reflection) == r);
    CHECK(conjugate(eq.conjugation) == r);
    CHECK(eq.conj_reflection == conjugate(reflect(r)));
    for (Rmt x = 0; x < 27; ++x) {
        const Rmt a = x / 9, b = (x / 3) % 3, c = x % 3;
        CHECK(eq.reflection[c * 9 + b * 3 + a] == r[x]);
        CHECK(eq.conjugation[(2 - a) * 9 + (2 - b) * 3 + (2 - c)] == 2 - r[x]);
    }
    CHECK(eca_code(reflect(eca(15))) == 85);
    CHECK(eca_code(conjugate(eca(15))) == 15);
}

TEST_CASE("even neighborhood radii") {
    CHECK(default_left_radius(4) == 1);
    const auto r = parse_rule("0101101010100101", 2, 4);
    CHECK(r.lr == 1);
    CHECK(r.rr == 2);
}

}
