#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vpr/geometry.hpp"

namespace vpr {

// Pose log CSV:
//   sample_id,scene_id,timestamp_us,cam_x,cam_y,yaw_rad,condition
// One sample per line, ids free of commas, yaw stored in radians and wrapped
// to [-pi, pi) on read.  Malformed lines raise FormatError naming the line.

inline constexpr const char* kPoseLogHeader =
    "sample_id,scene_id,timestamp_us,cam_x,cam_y,yaw_rad,condition";

std::vector<SampleMeta> read_pose_log(std::istream& in);
std::vector<SampleMeta> load_pose_log(const std::string& path);
void write_pose_log(std::ostream& out, const std::vector<SampleMeta>& samples);
void save_pose_log(const std::string& path,
                   const std::vector<SampleMeta>& samples);

// Wraps any finite angle into [-pi, pi).
double wrap_angle(double yaw);

} // namespace vpr
