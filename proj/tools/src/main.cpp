#include <iostream>

#include <CLI11.hpp>

#include "vpr/commands.hpp"
#include "vpr/error.hpp"

namespace {

void add_config_flag(CLI::App* cmd, std::string& path) {
    cmd->add_option("--config", path, "JSON config file; flags override it")
        ->check(CLI::ExistingFile);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale place-recognition toolkit"};
    app.require_subcommand(1);

    vpr::MineOptions mine;
    CLI::App* cmd_mine = app.add_subcommand(
        "mine", "mine positive/negative pairs from a pose log");
    cmd_mine->add_option("--pose-log", mine.pose_log, "pose log CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_mine->add_option("--out", mine.out_pairs, "output pairs JSONL")
        ->required();
    add_config_flag(cmd_mine, mine.config_path);
    auto* opt_dist = cmd_mine->add_option(
        "--dist-threshold", mine.dist_threshold,
        "image-position distance threshold in metres");
    auto* opt_angle =
        cmd_mine->add_option("--angle-threshold-deg", mine.angle_threshold_deg,
                             "direction angle threshold in degrees");
    auto* opt_offset = cmd_mine->add_option(
        "--offset-m", mine.offset_m, "image position offset ahead of the camera");
    auto* opt_window = cmd_mine->add_option(
        "--window-s", mine.window_s, "consecutive-frame window in seconds");
    auto* opt_mine_threads =
        cmd_mine->add_option("--threads", mine.threads, "worker threads");

    vpr::SplitOptions split;
    CLI::App* cmd_split = app.add_subcommand(
        "split", "assign scene-graph components to train/test");
    cmd_split->add_option("--pose-log", split.pose_log, "pose log CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_split->add_option("--pairs", split.pairs, "mined pairs JSONL")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_split->add_option("--out-train", split.out_train, "train scene list")
        ->required();
    cmd_split->add_option("--out-test", split.out_test, "test scene list")
        ->required();
    add_config_flag(cmd_split, split.config_path);
    auto* opt_fraction = cmd_split->add_option(
        "--test-fraction", split.test_fraction, "rare-condition test share");
    auto* opt_split_seed =
        cmd_split->add_option("--seed", split.seed, "split seed");

    vpr::AggregateOptions aggregate;
    CLI::App* cmd_aggregate = app.add_subcommand(
        "aggregate", "pool feature maps into descriptors");
    cmd_aggregate
        ->add_option("--fmap-dir", aggregate.fmap_dir, "directory of FMAP files")
        ->required()
        ->check(CLI::ExistingDirectory);
    cmd_aggregate->add_option("--suffix", aggregate.suffix,
                              "input filename suffix");
    cmd_aggregate
        ->add_option("--variant", aggregate.variant,
                     "spoc|netvlad|gem|conv_ap|eigenplaces|mixvpr")
        ->required();
    cmd_aggregate->add_option("--out", aggregate.out_desc, "output DESC file")
        ->required();
    add_config_flag(cmd_aggregate, aggregate.config_path);
    auto* opt_dim = cmd_aggregate->add_option(
        "--dim", aggregate.dim,
        "descriptor dim for parametric aggregators (spoc/gem always emit k)");
    auto* opt_agg_seed = cmd_aggregate->add_option(
        "--seed", aggregate.seed, "parameter initialisation seed");
    cmd_aggregate->add_flag("--normalize", aggregate.normalize,
                            "unit-normalize each descriptor");
    auto* opt_agg_threads =
        cmd_aggregate->add_option("--threads", aggregate.threads,
                                  "worker threads");

    vpr::EvalOptions eval;
    CLI::App* cmd_eval =
        app.add_subcommand("eval", "exact retrieval and recall@K");
    cmd_eval->add_option("--query-desc", eval.query_desc, "query DESC file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_eval
        ->add_option("--gallery-desc", eval.gallery_desc, "gallery DESC file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_eval->add_option("--query-desc2", eval.query_desc2,
                         "second query modality, fused before retrieval");
    cmd_eval->add_option("--gallery-desc2", eval.gallery_desc2,
                         "second gallery modality, fused before retrieval");
    cmd_eval->add_option("--w-v", eval.w_v, "fusion weight of the first modality");
    cmd_eval->add_option("--w-s", eval.w_s,
                         "fusion weight of the second modality");
    cmd_eval->add_flag("!--no-fuse-normalize", eval.fuse_normalize,
                       "skip unit normalization after fusion");
    cmd_eval->add_option("--pairs", eval.pairs, "ground-truth pairs JSONL")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_eval->add_option("--pose-log", eval.pose_log,
                         "pose log; enables consecutive-frame exclusion")
        ->check(CLI::ExistingFile);
    auto* opt_eval_window = cmd_eval->add_option(
        "--window-s", eval.window_s, "consecutive-frame window in seconds");
    cmd_eval->add_option("--k", eval.ks, "recall cutoffs");
    cmd_eval->add_option("--out-report", eval.out_report, "report JSON path");
    cmd_eval
        ->add_option("--compare", eval.compare,
                     "baseline report JSON to diff against")
        ->check(CLI::ExistingFile);
    add_config_flag(cmd_eval, eval.config_path);
    auto* opt_eval_threads =
        cmd_eval->add_option("--threads", eval.threads, "worker threads");

    vpr::GradcheckOptions gradcheck;
    CLI::App* cmd_gradcheck = app.add_subcommand(
        "gradcheck", "compare analytic gradients with finite differences");
    cmd_gradcheck->add_option("--seeds", gradcheck.seeds, "number of seeds");
    cmd_gradcheck->add_option("--seed", gradcheck.base_seed, "first seed");
    cmd_gradcheck->add_option("--step", gradcheck.step,
                              "central-difference half step");
    cmd_gradcheck->add_option("--rel-tol", gradcheck.rel_tol,
                              "relative-error pass threshold");
    cmd_gradcheck->add_option("--margin", gradcheck.margin, "triplet margin");

    vpr::TrainOptions train;
    CLI::App* cmd_train = app.add_subcommand(
        "train", "toy full-batch training run on synthetic triplets");
    cmd_train->add_option("--steps", train.steps, "gradient steps");
    cmd_train->add_option("--lr", train.learning_rate, "learning rate");
    cmd_train->add_option("--seed", train.seed, "batch/init seed");
    cmd_train->add_option("--groups", train.groups, "triplet groups");
    cmd_train->add_option("--n-neg", train.n_neg, "negatives per group");
    cmd_train->add_option("--margin", train.margin, "triplet margin");
    cmd_train->add_option("--remine-every", train.remine_every,
                          "re-pick negatives every N steps (0 = never)");
    cmd_train->add_option("--trace-out", train.trace_out, "trace CSV path");
    cmd_train->add_option("--mining-log-out", train.mining_log_out,
                          "mining log CSV path");

    vpr::SynthOptions synth;
    CLI::App* cmd_synth = app.add_subcommand(
        "synth", "generate a synthetic corpus (pose log + feature maps)");
    cmd_synth->add_option("--out-dir", synth.out_dir, "output directory")
        ->required();
    cmd_synth->add_option("--places", synth.places, "number of places");
    cmd_synth->add_option("--lone-places", synth.lone_places,
                          "places visited only once");
    cmd_synth->add_option("--spacing-m", synth.spacing_m, "grid spacing");
    cmd_synth->add_option("--corruption", synth.corruption,
                          "night-time visual signal retention in [0, 1]");
    cmd_synth->add_option("--seed", synth.seed, "corpus seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_mine->parsed()) {
            mine.has_dist = opt_dist->count() > 0;
            mine.has_angle = opt_angle->count() > 0;
            mine.has_offset = opt_offset->count() > 0;
            mine.has_window = opt_window->count() > 0;
            mine.has_threads = opt_mine_threads->count() > 0;
            return vpr::cmd_mine(mine);
        }
        if (cmd_split->parsed()) {
            split.has_fraction = opt_fraction->count() > 0;
            split.has_seed = opt_split_seed->count() > 0;
            return vpr::cmd_split(split);
        }
        if (cmd_aggregate->parsed()) {
            aggregate.has_dim = opt_dim->count() > 0;
            aggregate.has_seed = opt_agg_seed->count() > 0;
            aggregate.has_threads = opt_agg_threads->count() > 0;
            return vpr::cmd_aggregate(aggregate);
        }
        if (cmd_eval->parsed()) {
            eval.has_threads = opt_eval_threads->count() > 0;
            eval.has_window = opt_eval_window->count() > 0;
            return vpr::cmd_eval(eval);
        }
        if (cmd_gradcheck->parsed()) return vpr::cmd_gradcheck(gradcheck);
        if (cmd_train->parsed()) return vpr::cmd_train(train);
        if (cmd_synth->parsed()) return vpr::cmd_synth(synth);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
