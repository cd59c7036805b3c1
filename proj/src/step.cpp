#include "cellrev/step.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define CELLREV_X86 1
#endif

namespace cellrev {

bool avx2_available() {
#ifdef CELLREV_X86
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Kernel default_kernel() {
    if (const char* env = std::getenv("CELLREV_KERNEL"); env && std::strcmp(env, "scalar") == 0)
        return Kernel::Scalar;
    return avx2_available() ? Kernel::Avx2 : Kernel::Scalar;
}

std::string_view kernel_name(Kernel k) { return k == Kernel::Avx2 ? "avx2" : "scalar"; }

Stepper::Stepper(const Rule& rule, Kernel kernel) : rule_(rule), kernel_(kernel) {
    if (kernel_ == Kernel::Avx2 && !avx2_available()) kernel_ = Kernel::Scalar;
    wide_.assign(rule_.table.begin(), rule_.table.end());
    pow_.resize(rule_.m);
    std::int32_t p = 1;
    for (int j = rule_.m - 1; j >= 0; --j, p *= rule_.d) pow_[j] = p;
}

void Stepper::step(const State* in, State* out, std::size_t n) {
    if (n == 0) return;
    if (kernel_ == Kernel::Avx2 && n >= 8) step_avx2(in, out, n);
    else step_scalar(in, out, n);
}

void Stepper::step(const std::vector<State>& in, std::vector<State>& out) {
    out.resize(in.size());
    step(in.data(), out.data(), in.size());
}

void Stepper::step_scalar(const State* in, State* out, std::size_t n) const {
    const auto d = static_cast<std::size_t>(rule_.d);
    const std::size_t low = rule_.set_count();
    const auto sn = static_cast<long long>(n);
    auto at = [&](long long i) { return in[((i % sn) + sn) % sn]; };
    std::size_t r = 0;
    for (int j = 0; j < rule_.m; ++j) r = r * d + at(j - rule_.lr);
    out[0] = rule_.table[r];
    for (std::size_t i = 1; i < n; ++i) {
        r = (r % low) * d + at(static_cast<long long>(i) + rule_.rr);
        out[i] = rule_.table[r];
    }
}

#ifdef CELLREV_X86
__attribute__((target("avx2"))) static void avx2_rows(const State* ext, State* out, std::size_t n, int m,
                                                       const std::int32_t* pw, const std::int32_t* table) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i idx = _mm256_setzero_si256();
        for (int j = 0; j < m; ++j) {
            const __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(ext + i + j));
            const __m256i cells = _mm256_cvtepu8_epi32(bytes);
            idx = _mm256_add_epi32(idx, _mm256_mullo_epi32(cells, _mm256_set1_epi32(pw[j])));
        }
        const __m256i v = _mm256_i32gather_epi32(table, idx, 4);
        const __m256i packed16 = _mm256_packus_epi32(v, v);
        const __m256i packed8 = _mm256_packus_epi16(packed16, packed16);
        const std::uint32_t lo = static_cast<std::uint32_t>(_mm256_extract_epi32(packed8, 0));
        const std::uint32_t hi = static_cast<std::uint32_t>(_mm256_extract_epi32(packed8, 4));
        std::memcpy(out + i, &lo, 4);
        std::memcpy(out + i + 4, &hi, 4);
    }
    for (; i < n; ++i) {
        std::int32_t r = 0;
        for (int j = 0; j < m; ++j) r += ext[i + j] * pw[j];
        out[i] = static_cast<State>(table[r]);
    }
}
#endif

void Stepper::step_avx2(const State* in, State* out, std::size_t n) {
#ifdef CELLREV_X86
    const std::size_t width = n + static_cast<std::size_t>(rule_.m) - 1;
    ext_.resize(width + 8);
    const auto sn = static_cast<long long>(n);
    for (std::size_t k = 0; k < width; ++k) {
        const long long src = static_cast<long long>(k) - rule_.lr;
        ext_[k] = in[((src % sn) + sn) % sn];
    }
    avx2_rows(ext_.data(), out, n, rule_.m, pow_.data(), wide_.data());
#else
    step_scalar(in, out, n);
#endif
}

}  // namespace cellrev
