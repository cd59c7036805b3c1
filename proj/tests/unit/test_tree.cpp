#include <doctest.h>

#include "cellrev/report_json.hpp"
#include "cellrev/tree.hpp"

using namespace cellrev;

namespace {

TreeNode node_of(std::vector<std::vector<Rmt>> g) { return TreeNode{std::move(g)}; }

}  // namespace

TEST_SUITE("tree") {

TEST_CASE("root and first child") {
    const auto r = parse_rule("01001011", 2, 3);
    const auto root = root_node(r);
    CHECK(root == node_of({{0, 1}, {2, 3}, {4, 5}, {6, 7}}));
    const auto e = child_node(root, r, 0);
    CHECK(e.child == node_of({{}, {4, 5}, {0, 1, 2, 3}, {6, 7}}));
    const auto z = child_node(root_node(eca(0)), eca(0), 1);
    for (const auto& g : z.label.gamma) CHECK(g.empty());
    for (const auto& g : z.child.gamma) CHECK(g.empty());
}

TEST_CASE("node encoding round trip") {
    const auto r = parse_rule("102012120012102120102102120", 3, 3);
    NodeSpace sp(r);
    auto n = child_node(child_node(root_node(r), r, 0).child, r, 2).child;
    CHECK(decode_node(sp, encode_node(sp, n).data()) == n);
}

TEST_CASE("last-level restriction") {
    const auto r = parse_rule("102012120012102120102102120", 3, 3);
    const auto n = node_of({{3}, {18}, {12}, {4}, {19}, {13}, {5}, {20}, {14}});
    CHECK(restrict_last_levels(n, r, 2) == n);
    const TreeNode empty{std::vector<std::vector<Rmt>>(9)};
    CHECK(restrict_last_levels(empty, r, 1) == empty);

    const auto e = parse_rule("01001011", 2, 3);
    const auto n75 = node_of({{0, 1, 2, 3}, {6, 7}, {}, {4, 5}});
    CHECK_FALSE(is_balanced_node(restrict_last_levels(n75, e, 1), e));
}

TEST_CASE("fixed-size decisions") {
    auto res = check_reversible(parse_rule("01001011", 2, 3), 1001);
    CHECK(res.reversible);
    CHECK(res.M == 21);
    CHECK(res.lastUniqueLevel == 5);

    res = check_reversible(parse_rule("102012120012102120102102120", 3, 3), 555);
    CHECK_FALSE(res.reversible);
    CHECK(res.M == 19);

    CHECK_THROWS_AS(check_reversible(eca(51), 2), DomainError);
}

TEST_CASE("minimized tree bookkeeping") {
    MinimizedTree t;
    check_reversible(parse_rule("01001011", 2, 3), 1001, &t);
    REQUIRE(t.nodeList.size() == 21);
    for (std::size_t i = 0; i < t.nodeList.size(); ++i) {
        CHECK_FALSE(t.nodeLevel[i].empty());
        if (t.selfLoop[i]) {
            bool consecutive = false;
            for (auto l : t.nodeLevel[i]) consecutive = consecutive || t.nodeLevel[i].count(l + 1);
            CHECK(consecutive);
        }
        for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(t.nodeList[i] == t.nodeList[j]);
    }
}

TEST_CASE("brute force agrees on small ECAs") {
    CHECK(brute_force_reversible(eca(51), 5));
    CHECK_FALSE(brute_force_reversible(eca(90), 5));
    CHECK(brute_force_reversible(eca(75), 5));
    CHECK_FALSE(brute_force_reversible(eca(75), 6));
}

TEST_CASE("classification") {
    auto rep = classify(parse_rule("01001011", 2, 3));
    CHECK(rep.cls == RevClass::NonTrivialSemi);
    REQUIRE(rep.expressions.size() == 1);
    CHECK(rep.expressions[0] == IrrevExpression{2, 2});
    CHECK(rep.M == 21);
    CHECK(describe(rep) == "NonTrivialSemi; irreversible n=2j+2 (j≥0); M=21; lastUniqueLevel=5");

    CHECK(classify(eca(90)).cls == RevClass::StrictlyIrreversible);
    CHECK(classify(eca(51)).cls == RevClass::Reversible);
    CHECK(classify(eca(51)).expressions.empty());

    rep = classify(parse_rule("012012012012012012012012012", 3, 3));
    CHECK(rep.cls == RevClass::Reversible);
    CHECK(rep.M == 13);
    CHECK(rep.lastUniqueLevel == 2);

    rep = classify(parse_rule("0101101010100101", 2, 4));
    CHECK(rep.cls == RevClass::NonTrivialSemi);
    REQUIRE(rep.expressions.size() == 1);
    CHECK(rep.expressions[0] == IrrevExpression{7, 7});

    rep = classify(parse_rule("000000000000000000111111111", 3, 3));
    CHECK(rep.cls == RevClass::StrictlyIrreversible);
}

TEST_CASE("unbalanced but not strictly irreversible") {
    // R[0]=0, R[7]=1 and four zeros out of eight would be balanced; pick 1 zero extra
    const auto r = parse_rule("10000000", 2, 3);
    const auto rep = classify(r);
    CHECK(rep.cls == RevClass::TrivialSemi);
    REQUIRE(rep.irreversibleFrom.has_value());
    for (std::uint64_t n = *rep.irreversibleFrom; n < 12; ++n) CHECK(rep.irreversible_at(n));
}

TEST_CASE("reversible sizes") {
    CHECK(reversible_sizes(classify(eca(105)), 10) == std::set<std::uint64_t>{1, 2, 4, 5, 7, 8, 10});
    CHECK(reversible_sizes(classify(eca(75)), 8) == std::set<std::uint64_t>{1, 3, 5, 7});
    CHECK(reversible_sizes(classify(eca(51)), 6).size() == 6);
    CHECK(reversible_sizes(classify(eca(90)), 6).empty());
}

TEST_CASE("class names round trip") {
    for (auto c : {RevClass::Reversible, RevClass::StrictlyIrreversible, RevClass::TrivialSemi, RevClass::NonTrivialSemi})
        CHECK(parse_class(class_name(c)) == c);
    CHECK_THROWS_AS(parse_class("Sometimes"), ParseError);
}

TEST_CASE("report json round trip") {
    for (unsigned code : {15u, 30u, 43u, 75u, 105u, 154u}) {
        const auto rep = classify(eca(code));
        CHECK(report_from_json(report_to_json(rep)) == rep);
        CHECK(report_from_json(nlohmann::json::parse(report_to_json(rep).dump())) == rep);
    }
    CHECK_THROWS_AS(report_from_json(nlohmann::json{{"class", "Reversible"}}), ParseError);
}

}
