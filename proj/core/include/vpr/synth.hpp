#pragma once

#include "vpr/feature_map.hpp"
#include "vpr/geometry.hpp"

namespace vpr {

// Synthetic desk-scale corpus.  Places sit on a coarse grid far beyond the
// positive-pair distance threshold; most places are visited twice (each visit
// is its own scene holding two consecutive frames), a small remainder only
// once so some queries end up with no positives.  Revisit condition patterns
// cycle day/day, day/day_rain, day/night, which pins the expected difficulty
// of each place.  Visual features share a per-place channel profile and are
// degraded at night; structural features ignore the condition.
struct SynthSpec {
    std::size_t places = 60;
    std::size_t lone_places = 6; // subset of `places` visited only once
    double spacing_m = 100.0;
    std::uint32_t h = 4, w = 4;
    std::uint32_t vis_k = 16;
    std::uint32_t str_k = 8;
    // Night frames keep this fraction of their visual signal before noise.
    double corruption = 0.1;
    std::uint64_t seed = 0;
};

struct SynthCorpus {
    std::vector<SampleMeta> meta;
    std::vector<FeatureMap> visual;     // aligned with meta
    std::vector<FeatureMap> structural; // aligned with meta
};

SynthCorpus generate_corpus(const SynthSpec& spec);

} // namespace vpr
