#include "vpr/miner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vpr {

void update_miner(HardMinerState& state, double prev_loss, double curr_loss) {
    if (!std::isfinite(prev_loss) || !std::isfinite(curr_loss))
        throw InvalidInput("update_miner: losses must be finite");
    if (!(state.step > 0.0) || !(state.tolerance >= 0.0) ||
        !(state.min_ratio <= state.max_ratio))
        throw InvalidInput("update_miner: malformed miner state");
    const double delta = curr_loss - prev_loss;
    if (delta < -state.tolerance)
        state.hard_ratio += state.step;
    else if (delta > state.tolerance)
        state.hard_ratio -= state.step;
    state.hard_ratio =
        std::clamp(state.hard_ratio, state.min_ratio, state.max_ratio);
}

std::vector<std::size_t> select_negatives(const Descriptor& query,
                                          const std::vector<Descriptor>& pool,
                                          std::size_t n_neg, double hard_ratio,
                                          Rng& rng) {
    if (n_neg == 0) throw InvalidInput("select_negatives: n_neg must be >= 1");
    if (pool.size() < n_neg)
        throw InvalidInput("select_negatives: pool holds " +
                           std::to_string(pool.size()) + " candidates, need " +
                           std::to_string(n_neg));
    if (!(hard_ratio >= 0.0) || !(hard_ratio <= 1.0))
        throw InvalidInput("select_negatives: hard_ratio must be in [0, 1]");

    const std::size_t n_hard = static_cast<std::size_t>(
        std::ceil(hard_ratio * static_cast<double>(n_neg)));

    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double da = euclidean(query, pool[a]);
        const double db = euclidean(query, pool[b]);
        if (da != db) return da < db;
        return a < b;
    });

    std::vector<std::size_t> picked(order.begin(), order.begin() + n_hard);

    // Uniform draw without replacement from the leftovers.
    std::vector<std::size_t> rest(order.begin() + n_hard, order.end());
    for (std::size_t need = n_neg - n_hard; need > 0; --need) {
        const std::size_t j = rng.uniform_index(rest.size());
        picked.push_back(rest[j]);
        rest[j] = rest.back();
        rest.pop_back();
    }
    return picked;
}

} // namespace vpr
