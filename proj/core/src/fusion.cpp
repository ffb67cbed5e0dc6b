#include "vpr/fusion.hpp"

#include <cmath>

namespace vpr {

double l2_norm(const Descriptor& v) {
    double acc = 0.0;
    for (const double x : v) acc += x * x;
    return std::sqrt(acc);
}

Descriptor l2_normalize(const Descriptor& v) {
    if (v.empty()) throw InvalidInput("l2_normalize: empty vector");
    const double norm = l2_norm(v);
    if (norm == 0.0 || !std::isfinite(norm))
        throw InvalidInput("l2_normalize: vector norm is zero or not finite");
    Descriptor out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / norm;
    return out;
}

double euclidean(const Descriptor& a, const Descriptor& b) {
    if (a.size() != b.size())
        throw InvalidInput("euclidean: dimension mismatch " +
                           std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()));
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

Descriptor fuse(const Descriptor& f_v, const Descriptor& f_s,
                const FusionWeights& weights, bool normalize) {
    if (f_v.empty() && f_s.empty())
        throw InvalidInput("fuse: both inputs are empty");
    if (!std::isfinite(weights.w_v) || !std::isfinite(weights.w_s))
        throw InvalidInput("fuse: weights must be finite");
    Descriptor out;
    out.reserve(f_v.size() + f_s.size());
    for (const double x : f_v) out.push_back(weights.w_v * x);
    for (const double x : f_s) out.push_back(weights.w_s * x);
    if (normalize) out = l2_normalize(out);
    return out;
}

} // namespace vpr
