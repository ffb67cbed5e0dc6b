#include "vpr/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace vpr {

namespace {

using nlohmann::json;

double number_field(const json& doc, const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number())
        throw ConfigError(std::string("config: '") + key + "' must be a number");
    return doc[key].get<double>();
}

std::uint64_t unsigned_field(const json& doc, const char* key,
                             std::uint64_t fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number_unsigned())
        throw ConfigError(std::string("config: '") + key +
                          "' must be a non-negative integer");
    return doc[key].get<std::uint64_t>();
}

void check_range(bool ok, const char* key, const char* range) {
    if (!ok)
        throw ConfigError(std::string("config: '") + key + "' must be in " +
                          range);
}

} // namespace

void validate_pipeline_config(const PipelineConfig& config) {
    check_range(std::isfinite(config.dist_threshold_m) &&
                    config.dist_threshold_m > 0.0,
                "dist_threshold_m", "(0, inf)");
    check_range(std::isfinite(config.angle_threshold_deg) &&
                    config.angle_threshold_deg > 0.0 &&
                    config.angle_threshold_deg <= 180.0,
                "angle_threshold_deg", "(0, 180]");
    check_range(std::isfinite(config.offset_m) && config.offset_m > 0.0,
                "offset_m", "(0, inf)");
    check_range(std::isfinite(config.consec_window_s) &&
                    config.consec_window_s >= 0.0,
                "consec_window_s", "[0, inf)");
    check_range(std::isfinite(config.test_fraction) &&
                    config.test_fraction > 0.0 && config.test_fraction < 1.0,
                "test_fraction", "(0, 1)");
    check_range(config.dim >= 1, "dim", "[1, inf)");
    check_range(std::isfinite(config.margin) && config.margin > 0.0, "margin",
                "(0, inf)");
    check_range(config.n_neg >= 1, "n_neg", "[1, inf)");
    check_range(config.threads >= 1, "threads", "[1, inf)");
}

PipelineConfig parse_pipeline_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

    static const char* known[] = {
        "dist_threshold_m", "angle_threshold_deg", "offset_m",
        "consec_window_s",  "test_fraction",       "dim",
        "margin",           "n_neg",               "seed",
        "threads"};
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        bool found = false;
        for (const char* k : known) found |= key == k;
        if (!found) throw ConfigError("config: unknown key '" + key + "'");
    }

    PipelineConfig config;
    config.dist_threshold_m =
        number_field(doc, "dist_threshold_m", config.dist_threshold_m);
    config.angle_threshold_deg =
        number_field(doc, "angle_threshold_deg", config.angle_threshold_deg);
    config.offset_m = number_field(doc, "offset_m", config.offset_m);
    config.consec_window_s =
        number_field(doc, "consec_window_s", config.consec_window_s);
    config.test_fraction =
        number_field(doc, "test_fraction", config.test_fraction);
    config.dim = static_cast<std::size_t>(unsigned_field(doc, "dim", config.dim));
    config.margin = number_field(doc, "margin", config.margin);
    config.n_neg =
        static_cast<std::size_t>(unsigned_field(doc, "n_neg", config.n_neg));
    config.seed = unsigned_field(doc, "seed", config.seed);
    config.threads =
        static_cast<unsigned>(unsigned_field(doc, "threads", config.threads));
    validate_pipeline_config(config);
    return config;
}

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_pipeline_config(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError("'" + path + "': " + e.what());
    }
}

MiningConfig mining_config_of(const PipelineConfig& config) {
    validate_pipeline_config(config);
    MiningConfig mining;
    mining.dist_threshold_m = config.dist_threshold_m;
    mining.angle_threshold_rad = config.angle_threshold_deg * M_PI / 180.0;
    mining.offset_m = config.offset_m;
    mining.consec_window_us =
        static_cast<std::int64_t>(std::llround(config.consec_window_s * 1e6));
    return mining;
}

} // namespace vpr
