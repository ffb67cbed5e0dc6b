#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "vpr/feature_map.hpp"
#include "vpr/matrix.hpp"

namespace vpr {

enum class Variant { Spoc, NetVlad, Gem, ConvAp, EigenPlaces, MixVpr };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct SpocParams {};

// Soft-assignment clusters: row s of w/c is the score weight and centroid of
// cluster s, b holds the score biases.
struct NetVladParams {
    Matrix w;              // S x k
    std::vector<double> b; // S
    Matrix c;              // S x k
    std::size_t clusters() const { return w.rows; }
};

struct GemParams {
    std::vector<double> p; // one exponent per channel, all > 0
};

struct ConvApParams {
    Matrix projection; // k' x k, applied per location
    std::uint32_t s1 = 2;
    std::uint32_t s2 = 2;
};

struct EigenPlacesParams {
    std::vector<double> p; // GeM exponents feeding the projection
    Matrix projection;     // out x k
    std::vector<double> bias; // out
};

struct MixerBlock {
    Matrix w1; // D x D, D = h * w
    Matrix w2; // D x D
};

struct MixVprParams {
    std::vector<MixerBlock> mixers;
    Matrix depth_projection; // d' x k
    Matrix row_projection;   // r x D
};

using AggregatorParams = std::variant<SpocParams, NetVladParams, GemParams,
                                      ConvApParams, EigenPlacesParams, MixVprParams>;

// Per-channel mean over spatial locations (normalized sum pooling).
Descriptor spoc(const FeatureMap& x);

// Residuals to learned clusters, soft-assigned per location and summed,
// concatenated cluster by cluster. Output dim S * k.
Descriptor netvlad(const FeatureMap& x, const NetVladParams& params);

// Soft-assignment weights per location (rows sum to 1). Exposed so the
// normalization property can be checked against the exact path netvlad uses.
Matrix netvlad_assignments(const FeatureMap& x, const NetVladParams& params);

// Generalized mean per channel: ((1/N) sum x^p)^(1/p). Requires nonnegative
// activations whenever the channel exponent is not an integer.
Descriptor gem(const FeatureMap& x, const std::vector<double>& p);

// 1x1 projection per location followed by adaptive average pooling onto an
// s1 x s2 grid of contiguous blocks (remainder rows/cols go to the leading
// blocks), flattened cell-major then channel. Output dim s1 * s2 * k'.
Descriptor conv_ap(const FeatureMap& x, const ConvApParams& params);

// Affine projection of the GeM descriptor.
Descriptor eigenplaces(const FeatureMap& x, const EigenPlacesParams& params);

// Cascade of residual row-MLP mixer blocks over the flattened K x D map,
// then depth projection (k -> d') and row projection (D -> r).
// Output dim d' * r.
Descriptor mixvpr(const FeatureMap& x, const MixVprParams& params);

// Uniform dispatch. Throws when params does not hold the variant's set.
Descriptor aggregate(Variant variant, const FeatureMap& x,
                     const AggregatorParams& params);

// Output dimension implied by a parameter set on an h x w x k map.
std::size_t descriptor_dim(Variant variant, const AggregatorParams& params,
                           std::uint32_t h, std::uint32_t w, std::uint32_t k);

// Deterministic default parameters for a variant on h x w x k inputs with
// the requested output dimension. GeM exponents start at 3; cluster centers
// are drawn uniformly from [feature_lo, feature_hi); projection and mixer
// weights are uniform in +-1/sqrt(fan_in).
AggregatorParams init_params(Variant variant, std::uint32_t h, std::uint32_t w,
                             std::uint32_t k, std::size_t target_dim,
                             std::uint64_t seed, double feature_lo = 0.0,
                             double feature_hi = 1.0);

} // namespace vpr
