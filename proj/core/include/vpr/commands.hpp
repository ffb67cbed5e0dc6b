#pragma once

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace vpr {

// Command implementations behind the CLI, kept callable from tests.  Each
// returns a process exit code and reports through `out`; invalid inputs and
// broken files surface as exceptions for the caller to render.

struct MineOptions {
    std::string pose_log;
    std::string out_pairs;
    std::string config_path;
    double dist_threshold = 10.0;
    double angle_threshold_deg = 45.0;
    double offset_m = 25.0;
    double window_s = 2.0;
    unsigned threads = 1;
    // set when the matching flag was given explicitly, overriding the config
    bool has_dist = false, has_angle = false, has_offset = false,
         has_window = false, has_threads = false;
};
int cmd_mine(const MineOptions& options, std::ostream& out = std::cout);

struct SplitOptions {
    std::string pose_log;
    std::string pairs;
    std::string out_train;
    std::string out_test;
    std::string config_path;
    double test_fraction = 0.3;
    std::uint64_t seed = 0;
    bool has_fraction = false, has_seed = false;
};
int cmd_split(const SplitOptions& options, std::ostream& out = std::cout);

struct AggregateOptions {
    std::string fmap_dir;
    std::string suffix = ".fmap";
    std::string variant = "gem";
    std::string out_desc;
    std::string config_path;
    std::size_t dim = 640; // parametric aggregators only; spoc/gem emit k
    std::uint64_t seed = 0;
    bool normalize = false;
    unsigned threads = 1;
    bool has_dim = false, has_seed = false, has_threads = false;
};
int cmd_aggregate(const AggregateOptions& options, std::ostream& out = std::cout);

struct EvalOptions {
    std::string query_desc;
    std::string gallery_desc;
    // optional second modality fused with the first before retrieval
    std::string query_desc2;
    std::string gallery_desc2;
    double w_v = 1.0, w_s = 1.0;
    bool fuse_normalize = true;
    std::string pairs;
    std::string pose_log; // enables consecutive-frame exclusion
    double window_s = 2.0;
    std::vector<std::size_t> ks = {1, 5, 10};
    std::string out_report;
    std::string compare;
    std::string config_path;
    unsigned threads = 1;
    bool has_threads = false, has_window = false;
};
int cmd_eval(const EvalOptions& options, std::ostream& out = std::cout);

struct GradcheckOptions {
    std::size_t seeds = 10;
    std::uint64_t base_seed = 0;
    double step = 1e-4;
    double rel_tol = 1e-4;
    double margin = 0.5;
};
int cmd_gradcheck(const GradcheckOptions& options, std::ostream& out = std::cout);

struct TrainOptions {
    std::size_t steps = 200;
    double learning_rate = 0.2;
    std::uint64_t seed = 0;
    std::size_t groups = 6;
    std::size_t n_neg = 3;
    double margin = 0.5;
    std::size_t remine_every = 0;
    std::string trace_out;
    std::string mining_log_out;
};
int cmd_train(const TrainOptions& options, std::ostream& out = std::cout);

struct SynthOptions {
    std::string out_dir;
    std::size_t places = 60;
    std::size_t lone_places = 6;
    double spacing_m = 100.0;
    double corruption = 0.1;
    std::uint32_t h = 4, w = 4, vis_k = 16, str_k = 8;
    std::uint64_t seed = 0;
};
int cmd_synth(const SynthOptions& options, std::ostream& out = std::cout);

} // namespace vpr
