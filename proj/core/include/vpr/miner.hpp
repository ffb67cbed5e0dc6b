#pragma once

#include <vector>

#include "vpr/fusion.hpp"
#include "vpr/rng.hpp"

namespace vpr {

// Controller for the hard fraction of sampled negatives.  The ratio moves by
// one step when the loss change leaves the +-tolerance dead zone and is then
// clamped to [min_ratio, max_ratio].
struct HardMinerState {
    double hard_ratio = 0.5;
    double step = 0.1;
    double min_ratio = 0.1;
    double max_ratio = 0.9;
    double tolerance = 1e-3;
};

// Loss went down -> mine harder; loss went up -> relax.
void update_miner(HardMinerState& state, double prev_loss, double curr_loss);

// Picks n_neg pool indices: ceil(hard_ratio * n_neg) nearest to the query
// (ties by index), the remainder drawn uniformly without replacement from the
// rest.  hard_ratio may span [0, 1] here regardless of miner bounds.
std::vector<std::size_t> select_negatives(const Descriptor& query,
                                          const std::vector<Descriptor>& pool,
                                          std::size_t n_neg, double hard_ratio,
                                          Rng& rng);

} // namespace vpr
