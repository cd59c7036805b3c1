#include <doctest.h>

#include <fstream>
#include <iterator>
#include <sstream>

#include "cellrev/engine.hpp"
#include "cellrev/prng.hpp"
#include "cellrev/synthesis.hpp"

using namespace cellrev;

TEST_SUITE("prng") {

TEST_CASE("layouts") {
    auto l = tri_layout(20);
    CHECK(l.cells == 51);
    CHECK(l.bits == 32);
    CHECK(tri_layout(30).cells == 75);
    CHECK(tri_layout(40).cells == 101);
    CHECK(word_bits(3, 20) == 32);
    CHECK(word_bits(10, 10) == 40);

    l = decimal_layout(10);
    CHECK(l.cells == 201);
    CHECK(decimal_layout(9).cells == 101);

    l = binary_layout(2);
    CHECK(l.window == 28);
    CHECK(l.cells == 201);
    CHECK(l.bits == 64);
    CHECK_THROWS_AS(binary_layout(0), DomainError);
    CHECK_THROWS_AS(tri_layout(0), DomainError);
}

TEST_CASE("seeding") {
    const auto rule = rule_from_permutation("8135940672");
    Generator g(rule, binary_layout(1));
    CHECK_THROWS_AS(g.next(), StateError);
    CHECK_THROWS_AS(g.seed("123"), ParseError);
    CHECK_THROWS_AS(g.seed("0000000000000a"), ParseError);
    CHECK_THROWS_AS(Generator(parse_rule("120021120021021120021021210", 3, 3), SchemeLayout{Scheme::TriWindow, 60, 51, 0, 32}),
                    DomainError);
    CHECK_THROWS_AS(Generator(rule, tri_layout(20)), DomainError);
    g.seed("00000000000007");
    CHECK(g.seeded());
    CHECK(g.emitted() == 0);
}

TEST_CASE("outputs are window reads of the evolution") {
    const auto rule = rule_from_permutation("8135940672");
    const auto lay = binary_layout(1);
    Generator g(rule, lay);
    g.seed("00000000000007");
    Config start(lay.cells - 1, 0);
    start[13] = 7;
    start.push_back(1);
    const auto traj = evolve(rule, start, lay.cells + 20);
    for (std::size_t k = 1; k <= 20; ++k) {
        const auto v = g.next();
        CHECK(v == (Generator::window_value(traj[lay.cells + k], 14, 10) & 0xffffffffu));
        CHECK(v < (BigUint(1) << 32));
    }
    CHECK(g.emitted() == 20);
}

TEST_CASE("tri and dec ranges") {
    Generator t(parse_rule("120021120021021120021021210", 3, 3), tri_layout(20));
    t.seed("01201201201201201201");
    BigUint top = 1;
    for (int i = 0; i < 20; ++i) top *= 3;
    for (int i = 0; i < 50; ++i) CHECK(t.next() < top);

    Generator d(rule_from_permutation("8572036419"), decimal_layout(12));
    d.seed("314159265358");
    for (int i = 0; i < 50; ++i) CHECK(d.next() < BigUint(1000000000000ull));
}

TEST_CASE("stream sizes") {
    const auto rule = rule_from_permutation("8135940672");
    for (std::uint64_t count : {0, 1, 3, 17}) {
        for (int bits : {32, 40, 5}) {
            Generator g(rule, binary_layout(1));
            g.seed("00000000000007");
            std::ostringstream os;
            StreamSpec spec{bits, count};
            const auto n = emit_stream(g, spec, os);
            CHECK(n == spec.byte_count());
            CHECK(os.str().size() == spec.byte_count());
        }
    }
    std::ostringstream os;
    BitWriter bw(os);
    bw.put(5, 3);
    bw.put(1, 1);
    bw.flush();
    CHECK(os.str() == std::string(1, static_cast<char>(0xb0)));
}

TEST_CASE("golden stream") {
    std::ifstream f(CELLREV_FIXTURES "/prng_golden_8135940672_b1.hex");
    REQUIRE(f);
    std::string hex;
    f >> hex;
    REQUIRE(hex.size() == 128);
    Generator g(rule_from_permutation("8135940672"), binary_layout(1));
    g.seed("00000000000007");
    std::ostringstream os;
    emit_stream(g, StreamSpec{32, 16}, os);
    std::string got;
    static const char* digits = "0123456789abcdef";
    for (unsigned char c : os.str()) {
        got.push_back(digits[c >> 4]);
        got.push_back(digits[c & 15]);
    }
    CHECK(got == hex);
}

TEST_CASE("decimal lines") {
    Generator g(rule_from_permutation("8135940672"), binary_layout(1));
    g.seed("00000000000007");
    std::ostringstream os;
    CHECK(emit_decimal_lines(g, 3, os) == 3);
    CHECK(os.str() == "1910051146\n830470324\n2950723342\n");
}

}
