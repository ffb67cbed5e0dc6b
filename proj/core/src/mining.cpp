#include "vpr/mining.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_set>

#include "vpr/parallel.hpp"

namespace vpr {

namespace {

double sq_dist(const Vec2& a, const Vec2& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

} // namespace

std::vector<PairSet> mine_pairs(const std::vector<SampleMeta>& samples,
                                const MiningConfig& config, unsigned threads) {
    if (!(config.dist_threshold_m > 0.0))
        throw InvalidInput("mine_pairs: dist_threshold_m must be > 0");
    if (!(config.angle_threshold_rad > 0.0) || config.angle_threshold_rad > M_PI)
        throw InvalidInput("mine_pairs: angle_threshold_rad must be in (0, pi]");
    if (config.consec_window_us < 0)
        throw InvalidInput("mine_pairs: consec_window_us must be >= 0");

    std::unordered_set<std::string> seen;
    seen.reserve(samples.size());
    for (const auto& s : samples)
        if (!seen.insert(s.sample_id).second)
            throw InvalidInput("mine_pairs: duplicate sample_id '" + s.sample_id + "'");

    const std::size_t n = samples.size();

    // Queries are processed in sample_id order so the emitted list is
    // deterministic regardless of input order.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples[a].sample_id < samples[b].sample_id;
    });

    std::vector<ImageGeometry> geom(n);
    for (std::size_t i = 0; i < n; ++i)
        geom[i] = image_position(samples[i], config.offset_m);

    const double dist_sq = config.dist_threshold_m * config.dist_threshold_m;
    std::vector<PairSet> result(n);

    parallel_for(n, threads, [&](std::size_t qi) {
        const std::size_t q = order[qi];
        PairSet ps;
        ps.query_id = samples[q].sample_id;
        std::vector<SampleMeta> positives;
        for (std::size_t ci = 0; ci < n; ++ci) {
            const std::size_t c = order[ci];
            if (c == q) continue;
            const bool same_scene = samples[c].scene_id == samples[q].scene_id;
            const bool candidate =
                sq_dist(geom[q].img_pos, geom[c].img_pos) < dist_sq;
            const bool positive =
                candidate && !same_scene &&
                vector_angle(geom[q].dir_vec, geom[c].dir_vec) <
                    config.angle_threshold_rad;
            if (positive) {
                ps.positive_ids.push_back(samples[c].sample_id);
                positives.push_back(samples[c]);
                continue;
            }
            const bool consecutive =
                same_scene &&
                std::llabs(samples[c].timestamp_us - samples[q].timestamp_us) <=
                    config.consec_window_us;
            if (!consecutive) ps.negative_ids.push_back(samples[c].sample_id);
        }
        if (!positives.empty())
            ps.difficulty = classify_difficulty(samples[q], positives);
        result[qi] = std::move(ps);
    });

    return result;
}

} // namespace vpr
