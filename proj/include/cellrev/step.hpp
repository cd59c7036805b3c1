#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "cellrev/rule.hpp"

namespace cellrev {

enum class Kernel { Scalar, Avx2 };

bool avx2_available();
// Best kernel for this CPU; CELLREV_KERNEL=scalar forces the reference path.
Kernel default_kernel();
std::string_view kernel_name(Kernel k);

// One synchronous periodic step of a rule. Holds the widened table and a
// padded scratch row so repeated steps do not allocate.
class Stepper {
public:
    explicit Stepper(const Rule& rule, Kernel kernel = default_kernel());

    // out[i] = R(in[i-lr] .. in[i+rr]) with indices mod n; in and out must not alias.
    void step(const State* in, State* out, std::size_t n);
    void step(const std::vector<State>& in, std::vector<State>& out);

    Kernel kernel() const { return kernel_; }
    const Rule& rule() const { return rule_; }

private:
    void step_scalar(const State* in, State* out, std::size_t n) const;
    void step_avx2(const State* in, State* out, std::size_t n);

    Rule rule_;
    Kernel kernel_;
    std::vector<std::int32_t> wide_;
    std::vector<std::int32_t> pow_;
    std::vector<State> ext_;
};

}  // namespace cellrev
