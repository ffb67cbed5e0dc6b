#include "vpr/pose_log.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace vpr {

double wrap_angle(double yaw) {
    if (!std::isfinite(yaw)) throw InvalidInput("wrap_angle: yaw is not finite");
    const double two_pi = 2.0 * M_PI;
    double wrapped = std::fmod(yaw + M_PI, two_pi);
    if (wrapped < 0.0) wrapped += two_pi;
    return wrapped - M_PI;
}

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw FormatError("pose log line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_double(const std::string& field, std::size_t line_no,
                    const char* name) {
    if (field.empty()) fail(line_no, std::string("empty ") + name);
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size() || errno == ERANGE)
        fail(line_no, std::string("cannot parse ") + name + " '" + field + "'");
    if (!std::isfinite(value))
        fail(line_no, std::string(name) + " must be finite, got '" + field + "'");
    return value;
}

std::int64_t parse_i64(const std::string& field, std::size_t line_no,
                       const char* name) {
    if (field.empty()) fail(line_no, std::string("empty ") + name);
    errno = 0;
    char* end = nullptr;
    const long long value = std::strtoll(field.c_str(), &end, 10);
    if (end != field.c_str() + field.size() || errno == ERANGE)
        fail(line_no, std::string("cannot parse ") + name + " '" + field + "'");
    return value;
}

} // namespace

std::vector<SampleMeta> read_pose_log(std::istream& in) {
    std::vector<SampleMeta> samples;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kPoseLogHeader)
                fail(line_no, "expected header '" + std::string(kPoseLogHeader) +
                                  "', got '" + line + "'");
            saw_header = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 7)
            fail(line_no, "expected 7 fields, got " +
                              std::to_string(fields.size()));
        SampleMeta meta;
        meta.sample_id = fields[0];
        meta.scene_id = fields[1];
        if (meta.sample_id.empty()) fail(line_no, "empty sample_id");
        if (meta.scene_id.empty()) fail(line_no, "empty scene_id");
        if (!seen.insert(meta.sample_id).second)
            fail(line_no, "duplicate sample_id '" + meta.sample_id + "'");
        meta.timestamp_us = parse_i64(fields[2], line_no, "timestamp_us");
        meta.cam_pos[0] = parse_double(fields[3], line_no, "cam_x");
        meta.cam_pos[1] = parse_double(fields[4], line_no, "cam_y");
        meta.yaw = wrap_angle(parse_double(fields[5], line_no, "yaw_rad"));
        try {
            meta.condition = condition_from_string(fields[6]);
        } catch (const InvalidInput& e) {
            fail(line_no, e.what());
        }
        samples.push_back(std::move(meta));
    }
    if (!saw_header) throw FormatError("pose log is empty or lacks a header");
    return samples;
}

std::vector<SampleMeta> load_pose_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "' for reading");
    try {
        return read_pose_log(in);
    } catch (const FormatError& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
}

void write_pose_log(std::ostream& out, const std::vector<SampleMeta>& samples) {
    out << kPoseLogHeader << '\n';
    char buf[96];
    for (const auto& meta : samples) {
        if (meta.sample_id.find(',') != std::string::npos ||
            meta.scene_id.find(',') != std::string::npos)
            throw InvalidInput("write_pose_log: ids must not contain commas");
        out << meta.sample_id << ',' << meta.scene_id << ','
            << meta.timestamp_us;
        std::snprintf(buf, sizeof(buf), ",%.17g,%.17g,%.17g", meta.cam_pos[0],
                      meta.cam_pos[1], meta.yaw);
        out << buf << ',' << to_string(meta.condition) << '\n';
    }
    if (!out) throw FormatError("pose log write failed");
}

void save_pose_log(const std::string& path,
                   const std::vector<SampleMeta>& samples) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_pose_log(out, samples);
}

} // namespace vpr
