#include "vpr/synth.hpp"

#include <cmath>
#include <cstdio>

#include "vpr/pose_log.hpp"
#include "vpr/rng.hpp"

namespace vpr {

namespace {

std::string place_tag(std::size_t place, std::size_t visit) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "p%03zu_v%zu", place, visit);
    return buf;
}

FeatureMap noisy_map(std::uint32_t h, std::uint32_t w, std::uint32_t k,
                     const std::vector<double>& base, double sigma, Rng& rng) {
    FeatureMap map(h, w, k);
    const std::size_t n = map.locations();
    for (std::size_t l = 0; l < n; ++l)
        for (std::uint32_t c = 0; c < k; ++c)
            map.data[l * k + c] = static_cast<float>(
                std::max(0.0, base[c] + rng.gaussian(0.0, sigma)));
    return map;
}

void degrade_visual(FeatureMap& map, Condition condition, double corruption,
                    Rng& rng) {
    double keep = 1.0;
    double sigma = 0.0;
    switch (condition) {
        case Condition::Day: return;
        case Condition::DayRain:
            keep = 0.75;
            sigma = 0.08;
            break;
        case Condition::Night:
        case Condition::NightRain:
            keep = corruption;
            sigma = 0.2;
            break;
    }
    for (auto& v : map.data)
        v = static_cast<float>(std::max(
            0.0, keep * static_cast<double>(v) + rng.gaussian(0.0, sigma)));
}

} // namespace

SynthCorpus generate_corpus(const SynthSpec& spec) {
    if (spec.places == 0) throw InvalidInput("generate_corpus: places must be >= 1");
    if (spec.lone_places > spec.places)
        throw InvalidInput("generate_corpus: lone_places exceeds places");
    if (!(spec.spacing_m > 0.0))
        throw InvalidInput("generate_corpus: spacing must be > 0");
    if (spec.h == 0 || spec.w == 0 || spec.vis_k == 0 || spec.str_k == 0)
        throw InvalidInput("generate_corpus: feature map shape must be >= 1");
    if (!(spec.corruption >= 0.0) || !(spec.corruption <= 1.0))
        throw InvalidInput("generate_corpus: corruption must be in [0, 1]");

    Rng rng(spec.seed);
    SynthCorpus corpus;
    const std::size_t paired = spec.places - spec.lone_places;
    constexpr std::size_t kGridCols = 8;
    constexpr std::int64_t kVisitGapUs = 3'600'000'000; // one hour
    constexpr std::int64_t kFrameGapUs = 1'000'000;     // inside the
                                                        // consecutive window
    std::size_t visit_counter = 0;

    for (std::size_t place = 0; place < spec.places; ++place) {
        const double anchor_x =
            static_cast<double>(place % kGridCols) * spec.spacing_m;
        const double anchor_y =
            static_cast<double>(place / kGridCols) * spec.spacing_m;
        const double base_yaw = rng.uniform(0.0, 2.0 * M_PI);

        std::vector<double> vis_base(spec.vis_k);
        for (auto& v : vis_base) v = rng.uniform(0.5, 1.5);
        std::vector<double> str_base(spec.str_k);
        for (auto& v : str_base) v = rng.uniform(0.5, 1.5);

        std::vector<Condition> visits;
        if (place < paired) {
            switch (place % 3) {
                case 0: visits = {Condition::Day, Condition::Day}; break;
                case 1: visits = {Condition::Day, Condition::DayRain}; break;
                default: visits = {Condition::Day, Condition::Night}; break;
            }
        } else {
            visits = {kAllConditions[place % kAllConditions.size()]};
        }

        for (std::size_t visit = 0; visit < visits.size(); ++visit) {
            const std::string scene = place_tag(place, visit);
            const double visit_yaw =
                wrap_angle(base_yaw + rng.uniform(-0.15, 0.15));
            const Vec2 visit_pos = {anchor_x + rng.uniform(-1.0, 1.0),
                                    anchor_y + rng.uniform(-1.0, 1.0)};
            const std::int64_t t0 =
                static_cast<std::int64_t>(visit_counter++) * kVisitGapUs;

            for (std::size_t frame = 0; frame < 2; ++frame) {
                SampleMeta meta;
                meta.sample_id = scene + "_f" + std::to_string(frame);
                meta.scene_id = scene;
                meta.timestamp_us =
                    t0 + static_cast<std::int64_t>(frame) * kFrameGapUs;
                meta.cam_pos = {visit_pos[0] + rng.uniform(-0.3, 0.3),
                                visit_pos[1] + rng.uniform(-0.3, 0.3)};
                meta.yaw = wrap_angle(visit_yaw + rng.uniform(-0.05, 0.05));
                meta.condition = visits[visit];
                corpus.meta.push_back(std::move(meta));

                FeatureMap vis =
                    noisy_map(spec.h, spec.w, spec.vis_k, vis_base, 0.05, rng);
                degrade_visual(vis, visits[visit], spec.corruption, rng);
                corpus.visual.push_back(std::move(vis));
                corpus.structural.push_back(
                    noisy_map(spec.h, spec.w, spec.str_k, str_base, 0.03, rng));
            }
        }
    }
    return corpus;
}

} // namespace vpr
