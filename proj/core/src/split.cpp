#include "vpr/split.hpp"

#include <algorithm>
#include <unordered_map>

namespace vpr {

SplitStats& SplitStats::operator+=(const SplitStats& other) {
    for (std::size_t i = 0; i < by_condition.size(); ++i)
        by_condition[i] += other.by_condition[i];
    for (std::size_t i = 0; i < by_difficulty.size(); ++i)
        by_difficulty[i] += other.by_difficulty[i];
    scenes += other.scenes;
    samples += other.samples;
    return *this;
}

SplitStats compute_stats(const std::set<std::string>& scenes,
                         const std::vector<SampleMeta>& meta,
                         const std::vector<PairSet>& pairsets) {
    std::unordered_map<std::string, const SampleMeta*> by_id;
    for (const auto& m : meta) by_id[m.sample_id] = &m;

    SplitStats stats;
    stats.scenes = scenes.size();
    for (const auto& m : meta) {
        if (!scenes.count(m.scene_id)) continue;
        ++stats.samples;
        ++stats.by_condition[static_cast<std::size_t>(m.condition)];
    }
    for (const auto& ps : pairsets) {
        if (!ps.difficulty) continue;
        auto it = by_id.find(ps.query_id);
        if (it == by_id.end())
            throw InvalidInput("compute_stats: query '" + ps.query_id +
                               "' not present in metadata");
        if (!scenes.count(it->second->scene_id)) continue;
        ++stats.by_difficulty[static_cast<std::size_t>(*ps.difficulty)];
    }
    return stats;
}

SplitAssignment balanced_split(const std::vector<std::set<std::string>>& components,
                               const std::vector<SplitStats>& stats_per_component,
                               double test_fraction,
                               std::uint64_t seed,
                               const std::set<std::string>& isolated) {
    (void)seed; // greedy assignment below is already deterministic
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0))
        throw InvalidInput("balanced_split: test_fraction must be in (0, 1)");
    if (components.size() != stats_per_component.size())
        throw InvalidInput("balanced_split: one stats entry per component required");

    SplitAssignment out;
    out.isolated_scenes = isolated;

    const auto to_train = [&](std::size_t i) {
        out.train_scenes.insert(components[i].begin(), components[i].end());
    };

    if (components.empty()) return out;
    if (components.size() == 1) {
        to_train(0);
        out.warnings.push_back(
            "single connected component: nothing can move to test");
        return out;
    }

    const auto rare = [](const SplitStats& s) {
        return std::array<double, 2>{
            static_cast<double>(s.condition(Condition::Night)),
            static_cast<double>(s.condition(Condition::NightRain))};
    };

    std::array<double, 2> totals{0.0, 0.0};
    for (const auto& s : stats_per_component) {
        const auto r = rare(s);
        totals[0] += r[0];
        totals[1] += r[1];
    }
    const std::array<double, 2> targets{test_fraction * totals[0],
                                        test_fraction * totals[1]};

    std::vector<bool> in_test(components.size(), false);
    std::array<double, 2> have{0.0, 0.0};
    std::size_t assigned = 0;

    while (have[0] < targets[0] || have[1] < targets[1]) {
        if (assigned + 1 >= components.size()) {
            out.warnings.push_back(
                "rare-condition targets unmet: at least one component must stay in train");
            break;
        }
        const std::array<double, 2> deficit{std::max(0.0, targets[0] - have[0]),
                                            std::max(0.0, targets[1] - have[1])};
        std::size_t best = components.size();
        double best_gain = 0.0;
        for (std::size_t i = 0; i < components.size(); ++i) {
            if (in_test[i]) continue;
            const auto r = rare(stats_per_component[i]);
            const double gain =
                std::min(deficit[0], r[0]) + std::min(deficit[1], r[1]);
            if (gain <= 0.0) continue;
            const bool better =
                best == components.size() || gain > best_gain ||
                (gain == best_gain &&
                 (stats_per_component[i].samples < stats_per_component[best].samples ||
                  (stats_per_component[i].samples == stats_per_component[best].samples &&
                   *components[i].begin() < *components[best].begin())));
            if (better) {
                best = i;
                best_gain = gain;
            }
        }
        if (best == components.size()) {
            out.warnings.push_back(
                "rare-condition targets unmet: remaining components hold no rare samples");
            break;
        }
        in_test[best] = true;
        ++assigned;
        const auto r = rare(stats_per_component[best]);
        have[0] += r[0];
        have[1] += r[1];
    }

    for (std::size_t i = 0; i < components.size(); ++i) {
        if (in_test[i])
            out.test_scenes.insert(components[i].begin(), components[i].end());
        else
            to_train(i);
    }
    if (out.test_scenes.empty())
        out.warnings.push_back(
            "test split is empty: rare-condition targets were already met");
    return out;
}

} // namespace vpr
