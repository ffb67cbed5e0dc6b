#pragma once

#include <cstdint>
#include <vector>

#include "vpr/loss.hpp"
#include "vpr/matrix.hpp"

namespace vpr {

// Small trainable retrieval stack used by the gradient checker and the toy
// trainer.  Per sample: pool both feature maps with per-channel generalized
// means, project the visual descriptor, then emit three heads
//   visual     = normalize(W * gem(x_v, p_v))
//   structural = normalize(gem(x_s, p_s))
//   fused      = normalize(concat(w_v * f_v, w_s * f_s))
// trained jointly with the multi-head triplet loss.
struct ModelConfig {
    std::uint32_t vis_h = 4, vis_w = 4, vis_k = 8;
    std::uint32_t str_h = 4, str_w = 4, str_k = 4;
    std::size_t proj_dim = 6;
    LossConfig loss;
};

// Trainables: pooling exponents, visual projection, fusion weights.
struct ModelParams {
    std::vector<double> p_vis;
    std::vector<double> p_str;
    Matrix w;
    double w_v = 1.0;
    double w_s = 1.0;
};

struct ModelSample {
    FeatureMap visual;
    FeatureMap structural;
};

// Triplet structure over batch sample indices.
struct TripletIndexGroup {
    std::size_t query = 0;
    std::vector<std::size_t> positives;
    std::vector<std::size_t> negatives;
};

struct Batch {
    std::vector<ModelSample> samples;
    std::vector<TripletIndexGroup> groups;
};

struct HeadDescriptors {
    Descriptor fused;
    Descriptor visual;
    Descriptor structural;
};

// Flat parameter layout: [p_vis | p_str | W row-major | w_v | w_s].
struct ParamLayout {
    std::size_t vis_k = 0;
    std::size_t str_k = 0;
    std::size_t proj_dim = 0;

    std::size_t p_vis_offset() const { return 0; }
    std::size_t p_str_offset() const { return vis_k; }
    std::size_t w_offset() const { return vis_k + str_k; }
    std::size_t w_v_offset() const { return w_offset() + proj_dim * vis_k; }
    std::size_t w_s_offset() const { return w_v_offset() + 1; }
    std::size_t size() const { return w_s_offset() + 1; }
};

ParamLayout layout_of(const ModelConfig& config);
std::vector<double> params_to_vector(const ModelParams& params);
ModelParams params_from_vector(const ModelConfig& config,
                               const std::vector<double>& theta);

// Deterministic starting point: exponents at init_p, projection U(+-1/sqrt(k))
// from the seed, unit fusion weights.
ModelParams init_model_params(const ModelConfig& config, std::uint64_t seed,
                              double init_p = 3.0);

HeadDescriptors model_forward(const ModelConfig& config,
                              const ModelParams& params,
                              const ModelSample& sample);

MultiHeadLoss model_loss(const ModelConfig& config, const ModelParams& params,
                         const Batch& batch);

struct GradientResult {
    std::vector<double> grad; // flat layout, see ParamLayout
    MultiHeadLoss loss;
    // Hinges within +-boundary_band of zero; finite differences straddle the
    // kink there, so callers should resample rather than compare.
    std::size_t boundary_triplets = 0;
    std::size_t degenerate_distances = 0;
};

GradientResult analytic_gradients(const ModelConfig& config,
                                  const ModelParams& params, const Batch& batch,
                                  double boundary_band = 1e-3);

} // namespace vpr
