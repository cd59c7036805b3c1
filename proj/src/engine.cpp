#include "cellrev/engine.hpp"

#include <fstream>
#include <unordered_map>

namespace cellrev {

namespace {

void check_cells(const Rule& rule, const Config& c) {
    if (c.empty()) throw DomainError("configuration must have at least one cell");
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] >= rule.d) throw DomainError("cell " + std::to_string(i) + " is not below d");
}

// Packs a configuration into base-d digits when it fits 64 bits.
bool fits_u64(int d, std::size_t n) {
    long double cap = 1;
    for (std::size_t i = 0; i < n; ++i) cap *= d;
    return cap <= 18446744073709551615.0L;
}

std::uint64_t pack(const Config& c, int d) {
    std::uint64_t v = 0;
    for (auto s : c) v = v * d + s;
    return v;
}

template <class Key, class Hash, class KeyOf>
CycleResult find_cycle(const Rule& rule, const Config& start, std::uint64_t maxSteps, KeyOf key) {
    std::unordered_map<Key, std::uint64_t, Hash> seen;
    Stepper st(rule);
    Config cur = start, nxt;
    CycleResult res;
    for (std::uint64_t t = 0;; ++t) {
        auto [it, fresh] = seen.emplace(key(cur), t);
        if (!fresh) {
            res.tailLength = it->second;
            res.cycleLength = t - it->second;
            break;
        }
        if (t == maxSteps) {
            res.truncated = true;
            return res;
        }
        st.step(cur, nxt);
        cur.swap(nxt);
    }
    // Re-walk to the entry configuration.
    cur = start;
    for (std::uint64_t t = 0; t < res.tailLength; ++t) {
        st.step(cur, nxt);
        cur.swap(nxt);
    }
    res.entry = cur;
    return res;
}

}  // namespace

std::vector<Config> evolve(const Rule& rule, const Config& start, std::size_t steps) {
    check_cells(rule, start);
    std::vector<Config> out;
    out.reserve(steps + 1);
    out.push_back(start);
    Stepper st(rule);
    for (std::size_t t = 0; t < steps; ++t) {
        Config next;
        st.step(out.back(), next);
        out.push_back(std::move(next));
    }
    return out;
}

CycleResult cycle_length(const Rule& rule, const Config& start, std::uint64_t maxSteps) {
    check_cells(rule, start);
    if (maxSteps < 1) throw DomainError("step budget must be positive");
    if (fits_u64(rule.d, start.size()))
        return find_cycle<std::uint64_t, std::hash<std::uint64_t>>(
            rule, start, maxSteps, [&](const Config& c) { return pack(c, rule.d); });
    return find_cycle<std::string, std::hash<std::string>>(
        rule, start, maxSteps, [](const Config& c) { return std::string(c.begin(), c.end()); });
}

const std::vector<Rgb>& standard_colors() {
    static const std::vector<Rgb> colors{
        {0, 0, 255},     {0, 255, 0},   {255, 0, 0}, {255, 255, 0}, {0, 255, 255},
        {255, 0, 255},   {255, 165, 0}, {192, 192, 192}, {0, 0, 0},  {255, 255, 255},
    };
    return colors;
}

std::vector<Rgb> default_palette(int d) {
    if (d < 1 || d > 10) throw DomainError("no default palette for d=" + std::to_string(d));
    const auto& c = standard_colors();
    return {c.begin(), c.begin() + d};
}

Rgb Image::pixel(std::size_t row, std::size_t col) const {
    const auto* p = rgb.data() + 3 * (row * width + col);
    return {p[0], p[1], p[2]};
}

Image spacetime_raster(const Rule& rule, const Config& start, std::size_t steps, const std::vector<Rgb>& palette) {
    if (palette.size() != static_cast<std::size_t>(rule.d))
        throw DomainError("palette needs exactly d colors");
    const auto traj = evolve(rule, start, steps);
    Image img;
    img.width = start.size();
    img.height = traj.size();
    img.rgb.reserve(img.width * img.height * 3);
    for (const auto& row : traj)
        for (auto s : row) img.rgb.insert(img.rgb.end(), palette[s].begin(), palette[s].end());
    return img;
}

std::string encode_ppm(const Image& img) {
    std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    out.append(img.rgb.begin(), img.rgb.end());
    return out;
}

void write_ppm(const Image& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    const auto data = encode_ppm(img);
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace cellrev
