#pragma once

#include <string>

#include "vpr/mining.hpp"

namespace vpr {

// Pipeline-wide knobs accepted as a JSON object.  Parsing rejects unknown
// keys and out-of-range values by name, so stale configs fail loudly.
struct PipelineConfig {
    double dist_threshold_m = 10.0;
    double angle_threshold_deg = 45.0;
    double offset_m = 25.0;
    double consec_window_s = 2.0;
    double test_fraction = 0.3;
    std::size_t dim = 640;
    double margin = 0.5;
    std::size_t n_neg = 6;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

PipelineConfig parse_pipeline_config(const std::string& json_text);
PipelineConfig load_pipeline_config(const std::string& path);
void validate_pipeline_config(const PipelineConfig& config);

MiningConfig mining_config_of(const PipelineConfig& config);

} // namespace vpr
