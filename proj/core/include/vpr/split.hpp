#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "vpr/scene_graph.hpp"

namespace vpr {

// Per-split sample counts, one row of the statistics table: counts by
// condition, counts by query difficulty, scene and sample totals. Condition
// counts sum to the sample count; difficulty counts sum to the number of
// queries that mined at least one positive.
struct SplitStats {
    std::array<std::size_t, 4> by_condition{}; // indexed by Condition
    std::array<std::size_t, 3> by_difficulty{}; // indexed by Difficulty
    std::size_t scenes = 0;
    std::size_t samples = 0;

    std::size_t condition(Condition c) const {
        return by_condition[static_cast<std::size_t>(c)];
    }
    std::size_t difficulty(Difficulty d) const {
        return by_difficulty[static_cast<std::size_t>(d)];
    }

    SplitStats& operator+=(const SplitStats& other);
};

// Stats for the samples of a scene set, difficulty taken from the pair sets.
SplitStats compute_stats(const std::set<std::string>& scenes,
                         const std::vector<SampleMeta>& meta,
                         const std::vector<PairSet>& pairsets);

// Train/test assignment of whole components plus the isolated scenes, which
// belong to neither split.
struct SplitAssignment {
    std::set<std::string> train_scenes;
    std::set<std::string> test_scenes;
    std::set<std::string> isolated_scenes;
    std::vector<std::string> warnings;
};

// Assigns whole components to the test split until the test share of each
// rare condition (Night, NightRain) reaches test_fraction of its total.
// Components are picked greedily by how much rare-condition deficit they
// cover, ties broken by smaller sample count then smallest scene_id. At
// least one component always stays in train; when the targets cannot be met
// a warning is recorded and the assignment is best-effort. The procedure is
// deterministic; the seed is accepted for interface stability and recorded
// but never consulted.
SplitAssignment balanced_split(const std::vector<std::set<std::string>>& components,
                               const std::vector<SplitStats>& stats_per_component,
                               double test_fraction,
                               std::uint64_t seed,
                               const std::set<std::string>& isolated = {});

} // namespace vpr
