#pragma once

#include <string>

#include "vpr/miner.hpp"
#include "vpr/model.hpp"

namespace vpr {

struct TrainConfig {
    std::size_t steps = 200;
    double learning_rate = 0.2;
    double min_exponent = 0.1;   // pooling exponents are clamped here
    double divergence_limit = 1e6;
    std::size_t remine_every = 0; // re-pick negatives every N steps, 0 = never
    HardMinerState miner;
    std::uint64_t seed = 0; // drives the random share of re-mined negatives
};

struct TraceRow {
    std::size_t step = 0;
    MultiHeadLoss loss; // evaluated before the update at this step
    double w_v = 0.0;
    double w_s = 0.0;
};

struct MiningRow {
    std::size_t epoch = 0;
    double loss_total = 0.0;
    double hard_ratio = 0.0;
};

struct TrainResult {
    ModelParams params;
    std::vector<TraceRow> trace;
    std::vector<MiningRow> mining_log;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    bool diverged = false;
    std::size_t steps_run = 0;
};

// Full-batch gradient descent on the multi-head triplet loss.  Deterministic
// for fixed inputs; stops early when the loss leaves [0, divergence_limit].
TrainResult toy_train(const ModelConfig& config, const ModelParams& start,
                      const Batch& batch, const TrainConfig& train);

// "step,loss_F,loss_R,loss_B,w_v,w_s" with full-precision floats, so equal
// runs produce byte-identical text.
std::string trace_to_csv(const std::vector<TraceRow>& trace);

// "epoch,loss_total,hard_ratio"
std::string mining_log_to_csv(const std::vector<MiningRow>& log);

// Synthetic separable batch: n_groups places, one query + one positive each,
// n_neg negatives sampled from the other places.  Visual maps get a random
// per-place channel profile; structural maps get a per-place peaky channel
// whose pooled value rises with the exponent, so every trainable matters.
Batch make_toy_batch(const ModelConfig& config, std::size_t n_groups,
                     std::size_t n_neg, std::uint64_t seed);

} // namespace vpr
