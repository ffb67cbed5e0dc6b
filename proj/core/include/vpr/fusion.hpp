#pragma once

#include "vpr/error.hpp"
#include "vpr/feature_map.hpp"

namespace vpr {

// Scales applied to the visual / structural halves before concatenation.
struct FusionWeights {
    double w_v = 1.0;
    double w_s = 1.0;
};

double l2_norm(const Descriptor& v);

// Throws InvalidInput on an empty or zero-norm vector.
Descriptor l2_normalize(const Descriptor& v);

double euclidean(const Descriptor& a, const Descriptor& b);

// concat(w_v * f_v, w_s * f_s), optionally unit-normalized as a whole.
// Output dim is always |f_v| + |f_s|.
Descriptor fuse(const Descriptor& f_v, const Descriptor& f_s,
                const FusionWeights& weights = {}, bool normalize = false);

} // namespace vpr
