#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vpr/error.hpp"

namespace vpr {

// Capture condition of one sample. Order matters: it is the row/column
// order of the recall-difficulty matrix and of every stats table.
enum class Condition { Day, Night, DayRain, NightRain };

constexpr std::array<Condition, 4> kAllConditions = {
    Condition::Day, Condition::Night, Condition::DayRain, Condition::NightRain};

std::string to_string(Condition c);
Condition condition_from_string(const std::string& s);

// Recall difficulty of a query, ordered Easy < SemiHard < Hard.
enum class Difficulty { Easy, SemiHard, Hard };

std::string to_string(Difficulty d);
Difficulty difficulty_from_string(const std::string& s);

using Vec2 = std::array<double, 2>;

// One captured image: planar camera pose plus capture metadata.
struct SampleMeta {
    std::string sample_id;
    std::string scene_id;
    std::int64_t timestamp_us = 0;
    Vec2 cam_pos{0.0, 0.0};
    double yaw = 0.0; // radians in [-pi, pi), heading of the optical axis
    Condition condition = Condition::Day;
};

// Image position and direction vector derived from a pose. The image
// position sits offset_m in front of the camera along the heading, so
// |dir_vec| == offset_m by construction.
struct ImageGeometry {
    Vec2 img_pos{0.0, 0.0};
    Vec2 dir_vec{0.0, 0.0};
};

// Ground truth for one query: positive/negative reference ids plus the
// recall difficulty. Queries that mined zero positives carry an empty
// positive list and no difficulty.
struct PairSet {
    std::string query_id;
    std::vector<std::string> positive_ids;
    std::vector<std::string> negative_ids;
    std::optional<Difficulty> difficulty;

    bool has_positives() const { return !positive_ids.empty(); }
};

ImageGeometry image_position(const SampleMeta& meta, double offset_m = 25.0);

// Angle in [0, pi] between two nonzero planar vectors.
double vector_angle(const Vec2& a, const Vec2& b);

// Difficulty of a single (query condition, positive condition) pair:
// identical conditions are Easy, rain added or removed under the same
// illumination is SemiHard, any illumination change is Hard.
Difficulty pairwise_difficulty(Condition query, Condition positive);

// Minimum pairwise difficulty over all positives; a single easy positive
// makes the query easy.
Difficulty classify_difficulty(const SampleMeta& query,
                               const std::vector<SampleMeta>& positives);

} // namespace vpr
