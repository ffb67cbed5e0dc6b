#include "vpr/trainer.hpp"

#include <cmath>
#include <cstdio>

namespace vpr {

namespace {

std::string format_row(std::size_t step, const double* values,
                       std::size_t count) {
    char buf[64];
    std::string line = std::to_string(step);
    for (std::size_t i = 0; i < count; ++i) {
        std::snprintf(buf, sizeof(buf), ",%.17g", values[i]);
        line += buf;
    }
    line += '\n';
    return line;
}

void remine_negatives(const ModelConfig& config, const ModelParams& params,
                      Batch& batch, double hard_ratio, Rng& rng) {
    std::vector<Descriptor> fused;
    fused.reserve(batch.samples.size());
    for (const auto& sample : batch.samples)
        fused.push_back(model_forward(config, params, sample).fused);

    for (auto& group : batch.groups) {
        std::vector<char> banned(batch.samples.size(), 0);
        banned[group.query] = 1;
        for (const std::size_t i : group.positives) banned[i] = 1;
        std::vector<std::size_t> pool_index;
        std::vector<Descriptor> pool;
        for (std::size_t i = 0; i < batch.samples.size(); ++i) {
            if (banned[i]) continue;
            pool_index.push_back(i);
            pool.push_back(fused[i]);
        }
        const std::vector<std::size_t> picked = select_negatives(
            fused[group.query], pool, group.negatives.size(), hard_ratio, rng);
        for (std::size_t i = 0; i < picked.size(); ++i)
            group.negatives[i] = pool_index[picked[i]];
    }
}

} // namespace

TrainResult toy_train(const ModelConfig& config, const ModelParams& start,
                      const Batch& batch, const TrainConfig& train) {
    if (train.steps == 0) throw InvalidInput("toy_train: steps must be >= 1");
    if (!(train.learning_rate > 0.0) || !std::isfinite(train.learning_rate))
        throw InvalidInput("toy_train: learning rate must be finite and > 0");
    if (!(train.min_exponent > 0.0))
        throw InvalidInput("toy_train: exponent floor must be > 0");

    const ParamLayout layout = layout_of(config);
    TrainResult result;
    result.params = start;
    Batch working = batch;
    Rng rng(train.seed);
    HardMinerState miner = train.miner;
    double epoch_prev_loss = 0.0;
    bool have_epoch_loss = false;

    std::vector<double> theta = params_to_vector(start);
    for (std::size_t step = 0; step < train.steps; ++step) {
        if (train.remine_every > 0 && step % train.remine_every == 0 && step > 0) {
            if (have_epoch_loss) {
                const double curr = result.trace.back().loss.total;
                update_miner(miner, epoch_prev_loss, curr);
                epoch_prev_loss = curr;
            } else {
                epoch_prev_loss = result.trace.back().loss.total;
                have_epoch_loss = true;
            }
            remine_negatives(config, result.params, working, miner.hard_ratio,
                             rng);
            result.mining_log.push_back(
                {step / train.remine_every, epoch_prev_loss, miner.hard_ratio});
        }

        const GradientResult grads =
            analytic_gradients(config, result.params, working);
        result.trace.push_back(
            {step, grads.loss, result.params.w_v, result.params.w_s});
        if (step == 0) result.initial_loss = grads.loss.total;
        if (!std::isfinite(grads.loss.total) ||
            grads.loss.total > train.divergence_limit) {
            result.diverged = true;
            result.steps_run = step;
            result.final_loss = grads.loss.total;
            return result;
        }

        for (std::size_t i = 0; i < theta.size(); ++i)
            theta[i] -= train.learning_rate * grads.grad[i];
        for (std::size_t c = 0; c < layout.vis_k + layout.str_k; ++c)
            theta[c] = std::max(theta[c], train.min_exponent);
        result.params = params_from_vector(config, theta);
        result.steps_run = step + 1;
    }
    result.final_loss = model_loss(config, result.params, working).total;
    return result;
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
    std::string out = "step,loss_F,loss_R,loss_B,w_v,w_s\n";
    for (const auto& row : trace) {
        const double values[5] = {row.loss.fused, row.loss.visual,
                                  row.loss.structural, row.w_v, row.w_s};
        out += format_row(row.step, values, 5);
    }
    return out;
}

std::string mining_log_to_csv(const std::vector<MiningRow>& log) {
    std::string out = "epoch,loss_total,hard_ratio\n";
    for (const auto& row : log) {
        const double values[2] = {row.loss_total, row.hard_ratio};
        out += format_row(row.epoch, values, 2);
    }
    return out;
}

Batch make_toy_batch(const ModelConfig& config, std::size_t n_groups,
                     std::size_t n_neg, std::uint64_t seed) {
    if (n_groups < 2)
        throw InvalidInput("make_toy_batch: need >= 2 groups for negatives");
    if (n_neg == 0) throw InvalidInput("make_toy_batch: n_neg must be >= 1");
    if (n_neg > 2 * (n_groups - 1))
        throw InvalidInput("make_toy_batch: not enough foreign samples for n_neg");

    Rng rng(seed);
    Batch batch;
    const std::size_t vis_n =
        static_cast<std::size_t>(config.vis_h) * config.vis_w;
    const std::size_t str_n =
        static_cast<std::size_t>(config.str_h) * config.str_w;

    for (std::size_t place = 0; place < n_groups; ++place) {
        // Random per-place channel profile for the visual map; peaky
        // signature channel for the structural map (hot at one location,
        // lukewarm elsewhere, mean held at the flat channels' level).
        std::vector<double> vis_base(config.vis_k);
        for (auto& v : vis_base) v = rng.uniform(0.5, 1.5);
        const std::uint32_t peaky =
            static_cast<std::uint32_t>(place % config.str_k);
        const double hot = 4.0;
        const double lukewarm =
            (static_cast<double>(str_n) - hot) / static_cast<double>(str_n - 1);

        for (int copy = 0; copy < 2; ++copy) {
            ModelSample sample;
            sample.visual = FeatureMap(config.vis_h, config.vis_w, config.vis_k);
            for (std::size_t l = 0; l < vis_n; ++l)
                for (std::uint32_t c = 0; c < config.vis_k; ++c)
                    sample.visual.data[l * config.vis_k + c] = static_cast<float>(
                        std::max(0.05, vis_base[c] + rng.gaussian(0.0, 0.02)));
            sample.structural =
                FeatureMap(config.str_h, config.str_w, config.str_k);
            for (std::size_t l = 0; l < str_n; ++l)
                for (std::uint32_t c = 0; c < config.str_k; ++c) {
                    double v = 1.0;
                    if (c == peaky) v = (l == 0) ? hot : lukewarm;
                    sample.structural.data[l * config.str_k + c] =
                        static_cast<float>(
                            std::max(0.05, v + rng.gaussian(0.0, 0.02)));
                }
            batch.samples.push_back(std::move(sample));
        }
    }

    for (std::size_t place = 0; place < n_groups; ++place) {
        TripletIndexGroup group;
        group.query = 2 * place;
        group.positives = {2 * place + 1};
        std::vector<std::size_t> foreign;
        for (std::size_t i = 0; i < batch.samples.size(); ++i)
            if (i / 2 != place) foreign.push_back(i);
        for (std::size_t need = 0; need < n_neg; ++need) {
            const std::size_t j = rng.uniform_index(foreign.size());
            group.negatives.push_back(foreign[j]);
            foreign[j] = foreign.back();
            foreign.pop_back();
        }
        batch.groups.push_back(std::move(group));
    }
    return batch;
}

} // namespace vpr
