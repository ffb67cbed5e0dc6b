#include "vpr/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace vpr {

std::string to_string(Condition c) {
    switch (c) {
        case Condition::Day: return "day";
        case Condition::Night: return "night";
        case Condition::DayRain: return "day_rain";
        case Condition::NightRain: return "night_rain";
    }
    return "day";
}

Condition condition_from_string(const std::string& s) {
    if (s == "day") return Condition::Day;
    if (s == "night") return Condition::Night;
    if (s == "day_rain") return Condition::DayRain;
    if (s == "night_rain") return Condition::NightRain;
    throw InvalidInput("unknown condition '" + s +
                       "' (expected day, night, day_rain or night_rain)");
}

std::string to_string(Difficulty d) {
    switch (d) {
        case Difficulty::Easy: return "easy";
        case Difficulty::SemiHard: return "semi_hard";
        case Difficulty::Hard: return "hard";
    }
    return "easy";
}

Difficulty difficulty_from_string(const std::string& s) {
    if (s == "easy") return Difficulty::Easy;
    if (s == "semi_hard") return Difficulty::SemiHard;
    if (s == "hard") return Difficulty::Hard;
    throw InvalidInput("unknown difficulty '" + s +
                       "' (expected easy, semi_hard or hard)");
}

ImageGeometry image_position(const SampleMeta& meta, double offset_m) {
    if (!(offset_m > 0.0))
        throw InvalidInput("image_position: offset_m must be > 0, got " +
                           std::to_string(offset_m));
    if (!std::isfinite(meta.cam_pos[0]) || !std::isfinite(meta.cam_pos[1]) ||
        !std::isfinite(meta.yaw))
        throw InvalidInput("image_position: non-finite pose for sample '" +
                           meta.sample_id + "'");
    ImageGeometry g;
    g.dir_vec = {offset_m * std::cos(meta.yaw), offset_m * std::sin(meta.yaw)};
    g.img_pos = {meta.cam_pos[0] + g.dir_vec[0], meta.cam_pos[1] + g.dir_vec[1]};
    return g;
}

double vector_angle(const Vec2& a, const Vec2& b) {
    const double na = std::hypot(a[0], a[1]);
    const double nb = std::hypot(b[0], b[1]);
    if (na == 0.0 || nb == 0.0)
        throw InvalidInput("vector_angle: zero-length direction vector");
    const double cosine = (a[0] * b[0] + a[1] * b[1]) / (na * nb);
    return std::acos(std::clamp(cosine, -1.0, 1.0));
}

Difficulty pairwise_difficulty(Condition query, Condition positive) {
    if (query == positive) return Difficulty::Easy;
    const auto same_illumination = [](Condition a, Condition b) {
        const bool a_day = (a == Condition::Day || a == Condition::DayRain);
        const bool b_day = (b == Condition::Day || b == Condition::DayRain);
        return a_day == b_day;
    };
    return same_illumination(query, positive) ? Difficulty::SemiHard
                                              : Difficulty::Hard;
}

Difficulty classify_difficulty(const SampleMeta& query,
                               const std::vector<SampleMeta>& positives) {
    if (positives.empty())
        throw InvalidInput("classify_difficulty: no positives for query '" +
                           query.sample_id + "'");
    Difficulty best = Difficulty::Hard;
    for (const auto& p : positives)
        best = std::min(best, pairwise_difficulty(query.condition, p.condition));
    return best;
}

} // namespace vpr
