#include "cellrev/prng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <vector>

namespace cellrev {

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::TriWindow: return "tri";
        case Scheme::DecimalDigits: return "dec";
        case Scheme::Binary32b: return "bin";
    }
    return "?";
}

int word_bits(int base, int digits) {
    BigUint top = 1;
    for (int i = 0; i < digits; ++i) top *= base;
    top -= 1;
    const int bits = top == 0 ? 1 : static_cast<int>(boost::multiprecision::msb(top)) + 1;
    return (bits + 7) / 8 * 8;
}

SchemeLayout tri_layout(int window) {
    if (window < 1) throw DomainError("window must be positive");
    SchemeLayout l;
    l.scheme = Scheme::TriWindow;
    l.window = window;
    auto n = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(2.5 * window)), 51);
    if (n % 2 == 0) ++n;
    l.cells = n;
    l.bits = word_bits(3, window);
    return l;
}

SchemeLayout decimal_layout(int window) {
    if (window < 1) throw DomainError("window must be positive");
    SchemeLayout l;
    l.scheme = Scheme::DecimalDigits;
    l.window = window;
    l.cells = static_cast<std::size_t>(window / 10 + 1) * 100 + 1;
    l.bits = word_bits(10, window);
    return l;
}

SchemeLayout binary_layout(int blocks) {
    if (blocks < 1) throw DomainError("block count must be positive");
    SchemeLayout l;
    l.scheme = Scheme::Binary32b;
    l.blocks = blocks;
    l.window = 14 * blocks;
    l.cells = static_cast<std::size_t>(100) * blocks + 1;
    l.bits = 32 * blocks;
    return l;
}

Generator::Generator(const Rule& rule, const SchemeLayout& layout)
    : rule_(rule), layout_(layout), stepper_(rule) {
    if (layout_.window < 1 || static_cast<std::size_t>(layout_.window) >= layout_.cells)
        throw DomainError("window must be shorter than the lattice");
    if (layout_.scheme == Scheme::TriWindow && rule.d != 3)
        throw DomainError("tri scheme needs a 3-state rule");
}

void Generator::seed(std::string_view seedDigits) {
    const auto w = static_cast<std::size_t>(layout_.window);
    if (seedDigits.size() != w)
        throw ParseError("seed has " + std::to_string(seedDigits.size()) + " digits, window is " + std::to_string(w));
    cur_.assign(layout_.cells, 0);
    for (std::size_t i = 0; i < w; ++i) {
        const char c = seedDigits[i];
        if (c < '0' || c >= '0' + rule_.d)
            throw ParseError("seed digit at index " + std::to_string(i) + " is not a state");
        cur_[i] = static_cast<State>(c - '0');
    }
    cur_.back() = 1;
    for (std::size_t t = 0; t < layout_.cells; ++t) {
        stepper_.step(cur_, nxt_);
        cur_.swap(nxt_);
    }
    seeded_ = true;
    emitted_ = 0;
}

BigUint Generator::window_value(const Config& c, int window, int base) {
    BigUint v = 0;
    for (int i = 0; i < window; ++i) {
        v *= base;
        v += c[i];
    }
    return v;
}

BigUint Generator::next() {
    if (!seeded_) throw StateError("generator used before seed()");
    stepper_.step(cur_, nxt_);
    cur_.swap(nxt_);
    ++emitted_;
    switch (layout_.scheme) {
        case Scheme::TriWindow: return window_value(cur_, layout_.window, rule_.d);
        case Scheme::DecimalDigits: return window_value(cur_, layout_.window, 10);
        case Scheme::Binary32b: {
            BigUint mask = 1;
            mask <<= 32 * layout_.blocks;
            mask -= 1;
            return window_value(cur_, layout_.window, 10) & mask;
        }
    }
    return 0;
}

void BitWriter::put(const BigUint& value, int bits) {
    if (filled_ == 0 && bits % 8 == 0 && boost::multiprecision::msb(value | 1) < static_cast<unsigned>(bits)) {
        std::vector<std::uint8_t> raw;
        boost::multiprecision::export_bits(value, std::back_inserter(raw), 8);
        const std::size_t want = static_cast<std::size_t>(bits / 8);
        for (std::size_t i = raw.size(); i < want; ++i) out_.put('\0');
        out_.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        bytes_ += want;
        return;
    }
    for (int b = bits - 1; b >= 0; --b) {
        acc_ = static_cast<std::uint8_t>((acc_ << 1) | (boost::multiprecision::bit_test(value, b) ? 1 : 0));
        if (++filled_ == 8) {
            out_.put(static_cast<char>(acc_));
            ++bytes_;
            acc_ = 0;
            filled_ = 0;
        }
    }
}

void BitWriter::flush() {
    if (filled_ == 0) return;
    out_.put(static_cast<char>(acc_ << (8 - filled_)));
    ++bytes_;
    acc_ = 0;
    filled_ = 0;
}

std::uint64_t emit_stream(Generator& gen, const StreamSpec& spec, std::ostream& out) {
    BitWriter bw(out);
    for (std::uint64_t i = 0; i < spec.count; ++i) bw.put(gen.next(), spec.bitsPerOutput);
    bw.flush();
    if (!out) throw std::runtime_error("stream write failed");
    return bw.bytes();
}

std::uint64_t emit_stream(Generator& gen, const StreamSpec& spec, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    return emit_stream(gen, spec, f);
}

std::uint64_t emit_decimal_lines(Generator& gen, std::uint64_t count, std::ostream& out) {
    for (std::uint64_t i = 0; i < count; ++i) out << gen.next().str() << '\n';
    if (!out) throw std::runtime_error("stream write failed");
    return count;
}

}  // namespace cellrev
