#pragma once

#include <functional>

#include "vpr/model.hpp"

namespace vpr {

struct GradCheckConfig {
    double step = 1e-4;    // central-difference half step
    double rel_tol = 1e-4; // pass threshold on the relative error
};

struct GradEntry {
    std::size_t index = 0;
    double analytic = 0.0;
    double numeric = 0.0;
    double rel_err = 0.0;
};

struct GradReport {
    std::vector<GradEntry> entries;
    double max_rel_err = 0.0;
    std::size_t worst_index = 0;
    bool passed = false;
    std::size_t boundary_triplets = 0;
};

// |a - n| / max(|a|, |n|, 1e-8)
double relative_error(double analytic, double numeric);

// Central difference (f(t+h) - f(t-h)) / 2h on the requested coordinates.
std::vector<double> numeric_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& theta, const std::vector<std::size_t>& indices,
    double step = 1e-4);

// Compares analytic model gradients against central differences of the total
// loss.  Empty `indices` means every parameter.
GradReport check_gradients(const ModelConfig& config, const ModelParams& params,
                           const Batch& batch,
                           const std::vector<std::size_t>& indices = {},
                           const GradCheckConfig& check = {});

} // namespace vpr
