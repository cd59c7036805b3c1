#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cellrev/rule.hpp"
#include "cellrev/step.hpp"

namespace cellrev {

std::vector<Config> evolve(const Rule& rule, const Config& start, std::size_t steps);

struct CycleResult {
    std::optional<std::uint64_t> cycleLength;
    std::uint64_t tailLength = 0;
    bool truncated = false;
    Config entry;  // first configuration on the cycle
};

CycleResult cycle_length(const Rule& rule, const Config& start, std::uint64_t maxSteps);

using Rgb = std::array<std::uint8_t, 3>;

// blue, green, red, yellow, cyan, magenta, orange, light gray, black, white
const std::vector<Rgb>& standard_colors();
std::vector<Rgb> default_palette(int d);

struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel
    Rgb pixel(std::size_t row, std::size_t col) const;
};

Image spacetime_raster(const Rule& rule, const Config& start, std::size_t steps, const std::vector<Rgb>& palette);
std::string encode_ppm(const Image& img);
void write_ppm(const Image& img, const std::string& path);

}  // namespace cellrev
