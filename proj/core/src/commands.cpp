#include "vpr/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <unordered_map>

#include "vpr/aggregators.hpp"
#include "vpr/config.hpp"
#include "vpr/gradcheck.hpp"
#include "vpr/mining.hpp"
#include "vpr/pairset_io.hpp"
#include "vpr/parallel.hpp"
#include "vpr/pose_log.hpp"
#include "vpr/report_io.hpp"
#include "vpr/split.hpp"
#include "vpr/synth.hpp"
#include "vpr/tensor_io.hpp"
#include "vpr/trainer.hpp"

namespace vpr {

namespace {

PipelineConfig config_or_default(const std::string& path) {
    if (path.empty()) return PipelineConfig{};
    return load_pipeline_config(path);
}

std::int64_t window_us(double seconds) {
    if (!(seconds >= 0.0) || !std::isfinite(seconds))
        throw InvalidInput("consecutive-frame window must be >= 0 seconds");
    return static_cast<std::int64_t>(std::llround(seconds * 1e6));
}

std::set<std::string> all_scenes(const std::vector<SampleMeta>& meta) {
    std::set<std::string> scenes;
    for (const auto& m : meta) scenes.insert(m.scene_id);
    return scenes;
}

// One row per condition, difficulty, and total, one column per split; the
// usual corpus summary layout.
std::string format_stats_table(const std::vector<std::string>& names,
                               const std::vector<SplitStats>& columns) {
    std::string out(12, ' ');
    char buf[64];
    for (const auto& name : names) {
        std::snprintf(buf, sizeof(buf), "%10s", name.c_str());
        out += buf;
    }
    out += '\n';
    const auto emit_row = [&](const std::string& label, auto getter) {
        std::snprintf(buf, sizeof(buf), "%-12s", label.c_str());
        out += buf;
        for (const auto& stats : columns) {
            std::snprintf(buf, sizeof(buf), "%10zu", getter(stats));
            out += buf;
        }
        out += '\n';
    };
    for (const Condition c : kAllConditions)
        emit_row(to_string(c),
                 [c](const SplitStats& s) { return s.condition(c); });
    for (const Difficulty d :
         {Difficulty::Easy, Difficulty::SemiHard, Difficulty::Hard})
        emit_row(to_string(d),
                 [d](const SplitStats& s) { return s.difficulty(d); });
    emit_row("scenes", [](const SplitStats& s) { return s.scenes; });
    emit_row("samples", [](const SplitStats& s) { return s.samples; });
    return out;
}

void write_lines(const std::string& path, const std::set<std::string>& lines) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    for (const auto& line : lines) out << line << '\n';
    if (!out.good()) throw FormatError("short write to '" + path + "'");
}

} // namespace

int cmd_mine(const MineOptions& options, std::ostream& out) {
    PipelineConfig pipeline = config_or_default(options.config_path);
    if (options.has_dist) pipeline.dist_threshold_m = options.dist_threshold;
    if (options.has_angle)
        pipeline.angle_threshold_deg = options.angle_threshold_deg;
    if (options.has_offset) pipeline.offset_m = options.offset_m;
    if (options.has_window) pipeline.consec_window_s = options.window_s;
    if (options.has_threads) pipeline.threads = options.threads;
    const MiningConfig mining = mining_config_of(pipeline);

    const std::vector<SampleMeta> samples = load_pose_log(options.pose_log);
    const std::vector<PairSet> pairs =
        mine_pairs(samples, mining, pipeline.threads);
    save_pairsets(options.out_pairs, pairs);

    std::size_t with_positives = 0;
    for (const auto& pair : pairs)
        if (pair.has_positives()) ++with_positives;
    const SplitStats stats = compute_stats(all_scenes(samples), samples, pairs);
    out << format_stats_table({"all"}, {stats});
    out << "queries with positives: " << with_positives << " of "
        << pairs.size() << '\n';
    out << "wrote " << pairs.size() << " pair sets to " << options.out_pairs
        << '\n';
    return 0;
}

int cmd_split(const SplitOptions& options, std::ostream& out) {
    PipelineConfig pipeline = config_or_default(options.config_path);
    if (options.has_fraction) pipeline.test_fraction = options.test_fraction;
    if (options.has_seed) pipeline.seed = options.seed;
    validate_pipeline_config(pipeline);

    const std::vector<SampleMeta> meta = load_pose_log(options.pose_log);
    const std::vector<PairSet> pairs = load_pairsets(options.pairs);
    const SceneGraph graph = build_graph(pairs, meta);
    const ComponentPartition parts = connected_components(graph);

    std::vector<SplitStats> component_stats;
    component_stats.reserve(parts.components.size());
    for (const auto& component : parts.components)
        component_stats.push_back(compute_stats(component, meta, pairs));

    const SplitAssignment assignment =
        balanced_split(parts.components, component_stats,
                       pipeline.test_fraction, pipeline.seed, parts.isolated);
    write_lines(options.out_train, assignment.train_scenes);
    write_lines(options.out_test, assignment.test_scenes);

    out << "components: " << parts.components.size()
        << ", isolated scenes: " << assignment.isolated_scenes.size() << '\n';
    for (const auto& warning : assignment.warnings)
        out << "warning: " << warning << '\n';
    const SplitStats train_stats =
        compute_stats(assignment.train_scenes, meta, pairs);
    const SplitStats test_stats =
        compute_stats(assignment.test_scenes, meta, pairs);
    out << format_stats_table({"train", "test"}, {train_stats, test_stats});
    out << "wrote " << assignment.train_scenes.size() << " train scenes to "
        << options.out_train << ", " << assignment.test_scenes.size()
        << " test scenes to " << options.out_test << '\n';
    return 0;
}

int cmd_aggregate(const AggregateOptions& options, std::ostream& out) {
    PipelineConfig pipeline = config_or_default(options.config_path);
    if (options.has_dim) pipeline.dim = options.dim;
    if (options.has_seed) pipeline.seed = options.seed;
    if (options.has_threads) pipeline.threads = options.threads;
    validate_pipeline_config(pipeline);
    const Variant variant = variant_from_string(options.variant);

    namespace fs = std::filesystem;
    std::vector<std::pair<std::string, std::string>> inputs; // id, path
    if (!fs::is_directory(options.fmap_dir))
        throw InvalidInput("aggregate: '" + options.fmap_dir +
                           "' is not a directory");
    for (const auto& entry : fs::directory_iterator(options.fmap_dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.size() <= options.suffix.size() ||
            name.compare(name.size() - options.suffix.size(),
                         options.suffix.size(), options.suffix) != 0)
            continue;
        inputs.emplace_back(name.substr(0, name.size() - options.suffix.size()),
                            entry.path().string());
    }
    if (inputs.empty())
        throw InvalidInput("aggregate: no '" + options.suffix + "' files in '" +
                           options.fmap_dir + "'");
    std::sort(inputs.begin(), inputs.end());

    const FeatureMap first = load_feature_map(inputs.front().second);
    // Fixed-output aggregators ignore the requested dim.
    const std::size_t target =
        (variant == Variant::Spoc || variant == Variant::Gem) ? 0 : pipeline.dim;
    const AggregatorParams params = init_params(
        variant, first.h, first.w, first.k, target, pipeline.seed);

    std::vector<Descriptor> descriptors(inputs.size());
    parallel_for(inputs.size(), pipeline.threads, [&](std::size_t i) {
        const FeatureMap map = load_feature_map(inputs[i].second);
        if (map.h != first.h || map.w != first.w || map.k != first.k)
            throw InvalidInput("aggregate: '" + inputs[i].second +
                               "' shape differs from the first map");
        Descriptor desc = aggregate(variant, map, params);
        if (options.normalize) desc = l2_normalize(desc);
        descriptors[i] = std::move(desc);
    });

    DescriptorSet set;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        set.add(inputs[i].first, descriptors[i]);
    save_descriptor_set(options.out_desc, set);
    out << "aggregated " << set.count() << " maps with " << options.variant
        << " (dim " << set.dim << ") to " << options.out_desc << '\n';
    return 0;
}

int cmd_eval(const EvalOptions& options, std::ostream& out) {
    PipelineConfig pipeline = config_or_default(options.config_path);
    if (options.has_threads) pipeline.threads = options.threads;
    if (options.has_window) pipeline.consec_window_s = options.window_s;
    validate_pipeline_config(pipeline);

    DescriptorSet queries = load_descriptor_set(options.query_desc);
    DescriptorSet gallery = load_descriptor_set(options.gallery_desc);
    if (options.query_desc2.empty() != options.gallery_desc2.empty())
        throw InvalidInput(
            "eval: fusion needs both --query-desc2 and --gallery-desc2");
    if (!options.query_desc2.empty()) {
        const FusionWeights weights{options.w_v, options.w_s};
        const auto fuse_sets = [&](const DescriptorSet& primary,
                                   const std::string& path2) {
            const DescriptorSet second = load_descriptor_set(path2);
            std::unordered_map<std::string, std::size_t> index;
            for (std::size_t i = 0; i < second.count(); ++i)
                index.emplace(second.ids[i], i);
            DescriptorSet fused;
            for (std::size_t i = 0; i < primary.count(); ++i) {
                const auto it = index.find(primary.ids[i]);
                if (it == index.end())
                    throw InvalidInput("eval: '" + path2 + "' lacks id '" +
                                       primary.ids[i] + "'");
                const double* a = primary.row(i);
                const double* b = second.row(it->second);
                fused.add(primary.ids[i],
                          fuse(Descriptor(a, a + primary.dim),
                               Descriptor(b, b + second.dim), weights,
                               options.fuse_normalize));
            }
            return fused;
        };
        queries = fuse_sets(queries, options.query_desc2);
        gallery = fuse_sets(gallery, options.gallery_desc2);
    }

    std::unordered_map<std::string, const PairSet*> pair_of;
    const std::vector<PairSet> pairs = load_pairsets(options.pairs);
    for (const auto& pair : pairs) pair_of.emplace(pair.query_id, &pair);

    // Consecutive frames of the query's own scene never count as candidates.
    std::unordered_map<std::string, const SampleMeta*> meta_of;
    std::map<std::string, std::vector<const SampleMeta*>> scene_members;
    std::vector<SampleMeta> meta;
    if (!options.pose_log.empty()) {
        meta = load_pose_log(options.pose_log);
        for (const auto& m : meta) {
            meta_of.emplace(m.sample_id, &m);
            scene_members[m.scene_id].push_back(&m);
        }
    }
    const std::int64_t window = window_us(pipeline.consec_window_s);

    std::vector<EvalQuery> eval_queries;
    eval_queries.reserve(queries.count());
    for (std::size_t i = 0; i < queries.count(); ++i) {
        EvalQuery q;
        q.id = queries.ids[i];
        q.desc.assign(queries.row(i), queries.row(i) + queries.dim);
        const auto it = pair_of.find(q.id);
        if (it != pair_of.end()) {
            q.positives.insert(it->second->positive_ids.begin(),
                               it->second->positive_ids.end());
            q.difficulty = it->second->difficulty;
        }
        q.excluded.insert(q.id);
        const auto mit = meta_of.find(q.id);
        if (mit != meta_of.end()) {
            for (const SampleMeta* other : scene_members[mit->second->scene_id])
                if (std::llabs(other->timestamp_us -
                               mit->second->timestamp_us) <= window)
                    q.excluded.insert(other->sample_id);
        }
        eval_queries.push_back(std::move(q));
    }

    const RecallReport report =
        recall_at_k(gallery, eval_queries, options.ks, pipeline.threads);
    out << format_recall_table(report);
    if (!options.compare.empty()) {
        const RecallReport baseline = load_recall_report(options.compare);
        out << "improvements over " << options.compare << ":\n"
            << format_recall_comparison(baseline, report);
    }
    if (!options.out_report.empty()) {
        save_recall_report(options.out_report, report);
        out << "wrote report to " << options.out_report << '\n';
    }
    return 0;
}

int cmd_gradcheck(const GradcheckOptions& options, std::ostream& out) {
    if (options.seeds == 0)
        throw InvalidInput("gradcheck: seeds must be >= 1");
    ModelConfig config;
    config.loss.margin = options.margin;
    GradCheckConfig check;
    check.step = options.step;
    check.rel_tol = options.rel_tol;

    bool all_passed = true;
    char buf[160];
    for (std::size_t s = 0; s < options.seeds; ++s) {
        const std::uint64_t seed = options.base_seed + s;
        const ModelParams params = init_model_params(config, seed * 77 + 1);
        GradReport report;
        bool clean = false;
        // Hinges sitting on their kink make central differences lie; redraw
        // the batch until none are near the boundary.
        for (std::uint64_t attempt = 0; attempt < 32 && !clean; ++attempt) {
            const Batch batch =
                make_toy_batch(config, 5, 3, seed * 1009 + attempt);
            report = check_gradients(config, params, batch, {}, check);
            clean = report.boundary_triplets == 0;
        }
        all_passed &= clean && report.passed;
        std::snprintf(buf, sizeof(buf),
                      "seed %llu: max rel err %.3e at theta[%zu]%s [%s]\n",
                      static_cast<unsigned long long>(seed),
                      report.max_rel_err, report.worst_index,
                      clean ? "" : " (boundary hinges persisted)",
                      clean && report.passed ? "ok" : "FAIL");
        out << buf;
    }
    out << (all_passed ? "gradcheck passed" : "gradcheck FAILED") << '\n';
    return all_passed ? 0 : 1;
}

int cmd_train(const TrainOptions& options, std::ostream& out) {
    ModelConfig config;
    config.loss.margin = options.margin;
    const Batch batch =
        make_toy_batch(config, options.groups, options.n_neg, options.seed);
    const ModelParams start = init_model_params(config, options.seed + 1);
    TrainConfig train;
    train.steps = options.steps;
    train.learning_rate = options.learning_rate;
    train.remine_every = options.remine_every;
    train.seed = options.seed;
    const TrainResult result = toy_train(config, start, batch, train);

    if (!options.trace_out.empty()) {
        std::ofstream trace(options.trace_out, std::ios::trunc);
        if (!trace)
            throw FormatError("cannot open '" + options.trace_out +
                              "' for writing");
        trace << trace_to_csv(result.trace);
        out << "wrote trace to " << options.trace_out << '\n';
    }
    if (!options.mining_log_out.empty()) {
        std::ofstream log(options.mining_log_out, std::ios::trunc);
        if (!log)
            throw FormatError("cannot open '" + options.mining_log_out +
                              "' for writing");
        log << mining_log_to_csv(result.mining_log);
        out << "wrote mining log to " << options.mining_log_out << '\n';
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "steps %zu, loss %.6f -> %.6f (%.1f%% of start)%s\n",
                  result.steps_run, result.initial_loss, result.final_loss,
                  result.initial_loss > 0.0
                      ? 100.0 * result.final_loss / result.initial_loss
                      : 0.0,
                  result.diverged ? " DIVERGED" : "");
    out << buf;
    return result.diverged ? 1 : 0;
}

int cmd_synth(const SynthOptions& options, std::ostream& out) {
    SynthSpec spec;
    spec.places = options.places;
    spec.lone_places = options.lone_places;
    spec.spacing_m = options.spacing_m;
    spec.corruption = options.corruption;
    spec.h = options.h;
    spec.w = options.w;
    spec.vis_k = options.vis_k;
    spec.str_k = options.str_k;
    spec.seed = options.seed;
    const SynthCorpus corpus = generate_corpus(spec);

    namespace fs = std::filesystem;
    fs::create_directories(options.out_dir);
    const fs::path dir(options.out_dir);
    save_pose_log((dir / "pose_log.csv").string(), corpus.meta);
    for (std::size_t i = 0; i < corpus.meta.size(); ++i) {
        const std::string& id = corpus.meta[i].sample_id;
        save_feature_map((dir / (id + ".vis.fmap")).string(), corpus.visual[i]);
        save_feature_map((dir / (id + ".str.fmap")).string(),
                         corpus.structural[i]);
    }
    out << "wrote " << corpus.meta.size() << " samples ("
        << all_scenes(corpus.meta).size() << " scenes) to " << options.out_dir
        << '\n';
    return 0;
}

} // namespace vpr
