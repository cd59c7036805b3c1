#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "cellrev/rule.hpp"
#include "cellrev/step.hpp"

namespace cellrev {

using BigUint = boost::multiprecision::cpp_int;

enum class Scheme { TriWindow, DecimalDigits, Binary32b };

std::string scheme_name(Scheme s);

class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct SchemeLayout {
    Scheme scheme = Scheme::TriWindow;
    int window = 20;         // w
    std::size_t cells = 51;  // n
    int blocks = 0;          // b, Binary32b only
    int bits = 32;           // B, width of one emitted word
};

// w-digit window over a 3-state rule: n is the smallest odd value >= max(2.5w, 51).
SchemeLayout tri_layout(int window);
// w decimal digits: n = (floor(w/10)+1)*100+1.
SchemeLayout decimal_layout(int window);
// 32b-bit words: w = 14b, n = 100b+1.
SchemeLayout binary_layout(int blocks);

// Bits needed for base^digits - 1, rounded up to whole bytes.
int word_bits(int base, int digits);

class Generator {
public:
    Generator(const Rule& rule, const SchemeLayout& layout);

    // Window <- seed, other cells <- 0^(n-w-1)1, then n discarded steps.
    void seed(std::string_view seedDigits);
    // One step, then the window value for the scheme.
    BigUint next();

    const SchemeLayout& layout() const { return layout_; }
    const Config& state() const { return cur_; }
    bool seeded() const { return seeded_; }
    std::uint64_t emitted() const { return emitted_; }

    // Window value read as a base-`base` number, most significant cell first.
    static BigUint window_value(const Config& c, int window, int base);

private:
    Rule rule_;
    SchemeLayout layout_;
    Stepper stepper_;
    Config cur_, nxt_;
    bool seeded_ = false;
    std::uint64_t emitted_ = 0;
};

struct StreamSpec {
    int bitsPerOutput = 32;
    std::uint64_t count = 0;
    std::uint64_t byte_count() const { return (count * static_cast<std::uint64_t>(bitsPerOutput) + 7) / 8; }
};

// MSB-first bit packing; a final partial byte is zero padded.
class BitWriter {
public:
    explicit BitWriter(std::ostream& out) : out_(out) {}
    void put(const BigUint& value, int bits);
    void flush();
    std::uint64_t bytes() const { return bytes_; }

private:
    std::ostream& out_;
    std::uint8_t acc_ = 0;
    int filled_ = 0;
    std::uint64_t bytes_ = 0;
};

std::uint64_t emit_stream(Generator& gen, const StreamSpec& spec, std::ostream& out);
std::uint64_t emit_stream(Generator& gen, const StreamSpec& spec, const std::string& path);
// One decimal value per line.
std::uint64_t emit_decimal_lines(Generator& gen, std::uint64_t count, std::ostream& out);

}  // namespace cellrev
