#include "vpr/gradcheck.hpp"

#include <cmath>
#include <numeric>

namespace vpr {

double relative_error(double analytic, double numeric) {
    const double denom =
        std::max({std::abs(analytic), std::abs(numeric), 1e-8});
    return std::abs(analytic - numeric) / denom;
}

std::vector<double> numeric_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& theta, const std::vector<std::size_t>& indices,
    double step) {
    if (!(step > 0.0)) throw InvalidInput("numeric_gradient: step must be > 0");
    std::vector<double> grad(indices.size(), 0.0);
    std::vector<double> probe = theta;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const std::size_t idx = indices[i];
        if (idx >= theta.size())
            throw InvalidInput("numeric_gradient: index out of range");
        const double saved = probe[idx];
        probe[idx] = saved + step;
        const double hi = f(probe);
        probe[idx] = saved - step;
        const double lo = f(probe);
        probe[idx] = saved;
        grad[i] = (hi - lo) / (2.0 * step);
    }
    return grad;
}

GradReport check_gradients(const ModelConfig& config, const ModelParams& params,
                           const Batch& batch,
                           const std::vector<std::size_t>& indices,
                           const GradCheckConfig& check) {
    const std::vector<double> theta = params_to_vector(params);
    std::vector<std::size_t> picked = indices;
    if (picked.empty()) {
        picked.resize(theta.size());
        std::iota(picked.begin(), picked.end(), 0);
    }

    const GradientResult analytic =
        analytic_gradients(config, params, batch, 10.0 * check.step);
    const auto loss_at = [&](const std::vector<double>& t) {
        return model_loss(config, params_from_vector(config, t), batch).total;
    };
    const std::vector<double> numeric =
        numeric_gradient(loss_at, theta, picked, check.step);

    GradReport report;
    report.boundary_triplets = analytic.boundary_triplets;
    for (std::size_t i = 0; i < picked.size(); ++i) {
        GradEntry entry;
        entry.index = picked[i];
        entry.analytic = analytic.grad[picked[i]];
        entry.numeric = numeric[i];
        entry.rel_err = relative_error(entry.analytic, entry.numeric);
        if (entry.rel_err > report.max_rel_err) {
            report.max_rel_err = entry.rel_err;
            report.worst_index = entry.index;
        }
        report.entries.push_back(entry);
    }
    report.passed = report.max_rel_err < check.rel_tol;
    return report;
}

} // namespace vpr
