#pragma once

#include <cstdint>
#include <vector>

#include "vpr/geometry.hpp"

namespace vpr {

struct MiningConfig {
    double dist_threshold_m = 10.0;      // image-position radius for candidates
    double angle_threshold_rad = 0.7853981633974483; // 45 degrees
    std::int64_t consec_window_us = 2'000'000; // same-scene frames this close are consecutive
    double offset_m = 25.0;              // image position offset in front of the camera
};

// Mines ground-truth pairs for every sample. A reference is positive for a
// query when their image positions are closer than the distance threshold,
// their direction vectors differ by less than the angle threshold, and the
// scenes differ. Negatives are everything else except the query's own
// consecutive frames (same scene within the timestamp window). Every
// predicate is symmetric, so the positive relation is symmetric.
//
// Output is sorted by query_id; positive and negative lists are sorted by
// sample_id. Results are identical for any thread count.
std::vector<PairSet> mine_pairs(const std::vector<SampleMeta>& samples,
                                const MiningConfig& config = {},
                                unsigned threads = 1);

} // namespace vpr
