// Acceptance gate: one check per release criterion, each printing a single
// [PASS]/[FAIL] line.  Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>
#include <unistd.h>

#include "vpr/aggregators.hpp"
#include "vpr/commands.hpp"
#include "vpr/error.hpp"
#include "vpr/fusion.hpp"
#include "vpr/gradcheck.hpp"
#include "vpr/mining.hpp"
#include "vpr/report_io.hpp"
#include "vpr/retrieval.hpp"
#include "vpr/rng.hpp"
#include "vpr/scene_graph.hpp"
#include "vpr/split.hpp"
#include "vpr/tensor_io.hpp"
#include "vpr/trainer.hpp"

#include "oracles.hpp"

using namespace vpr;

namespace {

// Pinned tolerances and budgets.  Loosening any of these is a release
// decision, not a test fix.
constexpr double kAggregatorRelTol = 1e-6;
constexpr double kGemSpocTol = 1e-9;
constexpr double kGemMaxPoolRatio = 0.98; // within 2 % of the channel max
constexpr double kGradRelTol = 1e-4;
constexpr std::size_t kGradSeeds = 10;
constexpr std::size_t kMinerFuzzSteps = 100'000;
constexpr double kTrainLossShare = 0.10; // final loss below 10 % of start
constexpr std::size_t kRoundTripTensors = 1'000;
constexpr double kOverallDropBudgetPts = 1.0; // percent points
constexpr int kFusionSeeds = 5;
constexpr int kFusionSeedsRequired = 4;
constexpr double kAggregatorBudgetSec = 5.0;
constexpr double kFusionBudgetSec = 60.0;

struct Criterion {
    int id;
    const char* label;
    bool passed;
    std::string detail;
};

double rel_err(double got, double want) {
    return std::abs(got - want) /
           std::max({std::abs(got), std::abs(want), 1e-8});
}

double max_rel_err(const Descriptor& got, const std::vector<double>& want) {
    if (got.size() != want.size()) return 1e9;
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i)
        worst = std::max(worst, rel_err(got[i], want[i]));
    return worst;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

// 1. Every aggregator agrees with its naive reference on random maps.
Criterion check_aggregator_oracles() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(401);
    double worst = 0.0;
    for (int round = 0; round < 100; ++round) {
        const auto x = oracle::random_map(rng, 4, 4, 3, 0.05, 2.0);
        const std::uint64_t seed = 1000 + round;

        worst = std::max(worst, max_rel_err(spoc(x), oracle::spoc(x)));

        std::vector<double> p(3);
        for (auto& v : p) v = rng.uniform(0.5, 4.0);
        worst = std::max(worst, max_rel_err(gem(x, p), oracle::gem(x, p)));

        const auto nv = std::get<NetVladParams>(
            init_params(Variant::NetVlad, 4, 4, 3, 12, seed, 0.05, 2.0));
        worst = std::max(worst, max_rel_err(netvlad(x, nv), oracle::netvlad(x, nv)));

        const auto ca = std::get<ConvApParams>(
            init_params(Variant::ConvAp, 4, 4, 3, 8, seed));
        worst = std::max(worst, max_rel_err(conv_ap(x, ca), oracle::conv_ap(x, ca)));

        const auto ep = std::get<EigenPlacesParams>(
            init_params(Variant::EigenPlaces, 4, 4, 3, 10, seed));
        worst = std::max(worst,
                         max_rel_err(eigenplaces(x, ep), oracle::eigenplaces(x, ep)));

        const auto mv = std::get<MixVprParams>(
            init_params(Variant::MixVpr, 4, 4, 3, 8, seed));
        worst = std::max(worst, max_rel_err(mixvpr(x, mv), oracle::mixvpr(x, mv)));
    }
    const double elapsed = seconds_since(start);

    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "max rel err %.2e (tol %.0e), %.2fs (budget %.0fs)", worst,
                  kAggregatorRelTol, elapsed, kAggregatorBudgetSec);
    return {1, "six aggregators match naive-loop references on 100 random maps",
            worst <= kAggregatorRelTol && elapsed < kAggregatorBudgetSec,
            detail};
}

// 2. GeM limit behaviour: p=1 is the mean, p=100 approaches the max.
Criterion check_gem_limits() {
    Rng rng(402);
    double worst_mean = 0.0;
    for (int round = 0; round < 50; ++round) {
        const auto x = oracle::random_map(rng, 4, 4, 5, 0.0, 3.0);
        const auto mean = spoc(x);
        const auto unit = gem(x, std::vector<double>(5, 1.0));
        for (std::size_t i = 0; i < mean.size(); ++i)
            worst_mean = std::max(worst_mean, std::abs(unit[i] - mean[i]));
    }

    // Large p: keep the location count small; with N locations the pooled
    // value can sit as low as (1/N)^(1/100) of the max.
    double worst_ratio = 1.0;
    bool overshoot = false;
    for (int round = 0; round < 50; ++round) {
        const auto x = oracle::random_map(rng, 2, 2, 4, 0.1, 1.0);
        const auto pooled = gem(x, std::vector<double>(4, 100.0));
        for (std::uint32_t c = 0; c < x.k; ++c) {
            double mx = 0.0;
            for (std::size_t l = 0; l < x.locations(); ++l)
                mx = std::max(mx, static_cast<double>(x.data[l * x.k + c]));
            worst_ratio = std::min(worst_ratio, pooled[c] / mx);
            overshoot = overshoot || pooled[c] > mx * (1.0 + 1e-12);
        }
    }

    FeatureMap line(1, 4, 1);
    for (std::uint32_t i = 0; i < 4; ++i)
        line.at(0, i, 0) = static_cast<float>(i + 1);
    const double spike = gem(line, {100.0})[0];

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "p=1 max abs dev %.2e (tol %.0e); p=100 worst ratio %.4f "
                  "(floor %.2f), 1..4 -> %.4f",
                  worst_mean, kGemSpocTol, worst_ratio, kGemMaxPoolRatio, spike);
    return {2, "generalized mean hits its p=1 and p->inf limits",
            worst_mean <= kGemSpocTol && worst_ratio >= kGemMaxPoolRatio &&
                !overshoot && spike >= kGemMaxPoolRatio * 4.0 && spike <= 4.0,
            detail};
}

// 3. The condition-pair difficulty table, enumerated exhaustively.
Criterion check_difficulty_matrix() {
    using C = Condition;
    using D = Difficulty;
    // Hand-pinned 4x4 expectation, indexed [query][positive] in declaration
    // order Day, Night, DayRain, NightRain.
    const D want[4][4] = {
        /* Day       */ {D::Easy, D::Hard, D::SemiHard, D::Hard},
        /* Night     */ {D::Hard, D::Easy, D::Hard, D::SemiHard},
        /* DayRain   */ {D::SemiHard, D::Hard, D::Easy, D::Hard},
        /* NightRain */ {D::Hard, D::SemiHard, D::Hard, D::Easy},
    };
    const C order[4] = {C::Day, C::Night, C::DayRain, C::NightRain};
    std::size_t mismatches = 0;
    for (int q = 0; q < 4; ++q)
        for (int p = 0; p < 4; ++p)
            if (pairwise_difficulty(order[q], order[p]) != want[q][p])
                ++mismatches;

    char detail[64];
    std::snprintf(detail, sizeof(detail), "%zu of 16 pairs mismatched",
                  mismatches);
    return {3, "all 16 condition pairs map to the pinned difficulty table",
            mismatches == 0, detail};
}

// 4. Analytic gradients match central differences through the full loss.
Criterion check_gradients_criterion() {
    ModelConfig config; // exponents, projection and fusion weights all live
    const ParamLayout layout = layout_of(config);
    std::vector<std::size_t> probe;
    for (std::size_t i = 0; i < layout.vis_k + layout.str_k; ++i)
        probe.push_back(i); // every pooling exponent
    probe.push_back(layout.w_offset()); // one projection entry
    probe.push_back(layout.w_v_offset());
    probe.push_back(layout.w_s_offset());

    double worst = 0.0;
    std::size_t failed_seeds = 0;
    for (std::uint64_t seed = 0; seed < kGradSeeds; ++seed) {
        const ModelParams params = init_model_params(config, seed * 77 + 1);
        GradReport report;
        bool clean = false;
        for (int attempt = 0; attempt < 32 && !clean; ++attempt) {
            const Batch batch = make_toy_batch(config, 5, 3, seed * 1009 + attempt);
            report = check_gradients(config, params, batch, probe);
            // A hinge near its kink voids the finite-difference comparison;
            // redraw the batch instead of comparing garbage.
            clean = report.boundary_triplets == 0;
        }
        if (!clean || !report.passed) ++failed_seeds;
        if (clean) worst = std::max(worst, report.max_rel_err);
    }

    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "%zu/%zu seeds failed, worst rel err %.2e (tol %.0e)",
                  failed_seeds, kGradSeeds, worst, kGradRelTol);
    return {4,
            "analytic gradients match central differences for exponents, "
            "fusion weights and projection",
            failed_seeds == 0 && worst < kGradRelTol, detail};
}

// 5. recall_at_k equals a full-sort reimplementation on 200 descriptors.
Criterion check_recall_oracle() {
    Rng rng(405);
    const std::size_t dim = 8;
    DescriptorSet gallery;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 200; ++i) {
        char id[16];
        std::snprintf(id, sizeof(id), "d%03d", i);
        Descriptor d(dim);
        for (auto& v : d) v = rng.uniform(-1.0, 1.0);
        gallery.add(id, d);
        rows.push_back(d);
    }

    const Difficulty wheel[3] = {Difficulty::Easy, Difficulty::SemiHard,
                                 Difficulty::Hard};
    std::vector<EvalQuery> queries;
    for (int i = 0; i < 120; ++i) {
        EvalQuery q;
        q.id = "q" + std::to_string(i);
        q.desc.resize(dim);
        for (auto& v : q.desc) v = rng.uniform(-1.0, 1.0);
        const std::size_t n_pos = rng.uniform_index(4); // sometimes zero
        for (std::size_t p = 0; p < n_pos; ++p)
            q.positives.insert(gallery.ids[rng.uniform_index(gallery.count())]);
        if (rng.uniform() < 0.3)
            q.excluded.insert(gallery.ids[rng.uniform_index(gallery.count())]);
        if (i % 5 != 0) q.difficulty = wheel[i % 3];
        queries.push_back(std::move(q));
    }

    const std::vector<std::size_t> ks = {1, 5, 10};
    const auto report = recall_at_k(gallery, queries, ks, 3);

    RecallSubset want[4];
    for (auto& s : want) s.hits.assign(ks.size(), 0);
    std::size_t want_skipped = 0;
    for (const auto& q : queries) {
        std::set<std::string> reachable;
        for (const auto& p : q.positives)
            if (!q.excluded.count(p)) reachable.insert(p);
        if (reachable.empty()) {
            ++want_skipped;
            continue;
        }
        const auto order = oracle::ranked(gallery.ids, rows, q.desc, q.excluded);
        std::size_t rank = order.size();
        for (std::size_t r = 0; r < order.size(); ++r)
            if (reachable.count(order[r].id)) {
                rank = r;
                break;
            }
        const auto tally = [&](RecallSubset& subset) {
            ++subset.queries;
            for (std::size_t ki = 0; ki < ks.size(); ++ki)
                if (rank < ks[ki]) ++subset.hits[ki];
        };
        tally(want[0]);
        if (q.difficulty == Difficulty::Easy) tally(want[1]);
        if (q.difficulty == Difficulty::SemiHard) tally(want[2]);
        if (q.difficulty == Difficulty::Hard) tally(want[3]);
    }

    const RecallSubset* got[4] = {&report.overall, &report.easy,
                                  &report.semi_hard, &report.hard};
    bool exact = report.skipped == want_skipped;
    for (int s = 0; s < 4; ++s)
        exact = exact && got[s]->queries == want[s].queries &&
                got[s]->hits == want[s].hits;

    char detail[96];
    std::snprintf(detail, sizeof(detail),
                  "overall %zu queries, %zu skipped, subsets %s",
                  report.overall.queries, report.skipped,
                  exact ? "all exact" : "DIVERGE");
    return {5, "recall over 200 descriptors equals the full-sort oracle",
            exact, detail};
}

// 6. Random scene graphs: components match a closure oracle and the split
// never divides one.
Criterion check_split_integrity() {
    Rng rng(406);
    bool ok = true;
    std::string why = "50 graphs clean";
    for (int round = 0; round < 50 && ok; ++round) {
        const std::size_t n = 3 + rng.uniform_index(18);
        std::vector<std::string> nodes;
        for (std::size_t i = 0; i < n; ++i)
            nodes.push_back("s" + std::to_string(i));
        SceneGraph graph;
        graph.nodes = {nodes.begin(), nodes.end()};
        std::set<std::pair<std::string, std::string>> edges;
        for (std::size_t e = 0; e < 2 * n; ++e) {
            const auto& a = nodes[rng.uniform_index(n)];
            const auto& b = nodes[rng.uniform_index(n)];
            if (a == b) continue;
            if (rng.uniform() < 0.45) {
                graph.add_edge(a, b, rng.uniform(0.05, 1.0));
                edges.insert({std::min(a, b), std::max(a, b)});
            }
        }

        const auto part = connected_components(graph);
        auto closure = oracle::closure_components(nodes, edges);
        std::vector<std::set<std::string>> want_components;
        std::set<std::string> want_isolated;
        for (auto& comp : closure) {
            if (comp.size() == 1)
                want_isolated.insert(*comp.begin());
            else
                want_components.push_back(std::move(comp));
        }
        const auto by_front = [](const std::set<std::string>& a,
                                 const std::set<std::string>& b) {
            return *a.begin() < *b.begin();
        };
        auto got_components = part.components;
        std::sort(got_components.begin(), got_components.end(), by_front);
        std::sort(want_components.begin(), want_components.end(), by_front);
        if (got_components != want_components || part.isolated != want_isolated) {
            ok = false;
            why = "component mismatch on graph " + std::to_string(round);
            break;
        }
        if (part.components.empty()) continue;

        std::vector<SplitStats> stats(part.components.size());
        for (auto& s : stats) {
            for (Condition c : kAllConditions) {
                const std::size_t count = rng.uniform_index(6);
                s.by_condition[static_cast<std::size_t>(c)] = count;
                s.samples += count;
            }
        }
        const auto split =
            balanced_split(part.components, stats, 0.3, 1, part.isolated);
        const auto again =
            balanced_split(part.components, stats, 0.3, 99, part.isolated);
        if (split.train_scenes != again.train_scenes ||
            split.test_scenes != again.test_scenes) {
            ok = false;
            why = "split not deterministic on graph " + std::to_string(round);
            break;
        }
        for (const auto& comp : part.components) {
            bool any_train = false, any_test = false;
            for (const auto& scene : comp) {
                any_train = any_train || split.train_scenes.count(scene) > 0;
                any_test = any_test || split.test_scenes.count(scene) > 0;
            }
            if (any_train && any_test) {
                ok = false;
                why = "component divided on graph " + std::to_string(round);
                break;
            }
        }
    }
    return {6, "components match the closure oracle and are never divided",
            ok, why};
}

// 7. On the synthetic corpus, fusing the stable structural stream rescues
// hard queries without giving up overall recall.
Criterion check_fusion_direction() {
    const auto start = std::chrono::steady_clock::now();
    namespace fs = std::filesystem;
    const fs::path root =
        fs::temp_directory_path() /
        ("vpr_accept_" + std::to_string(::getpid()));
    fs::create_directories(root);

    int improved = 0;
    double worst_overall_drop = 0.0;
    std::size_t min_queries = static_cast<std::size_t>(-1);
    bool ran = true;
    std::string error;

    for (int seed = 0; seed < kFusionSeeds && ran; ++seed) {
        try {
            const fs::path dir = root / ("seed" + std::to_string(seed));
            std::ostringstream sink;

            SynthOptions synth;
            synth.out_dir = (dir / "corpus").string();
            synth.seed = static_cast<std::uint64_t>(seed);
            // defaults: 60 places, corruption 0.1 -> 216 queries with positives
            if (cmd_synth(synth, sink) != 0) throw InvalidInput("synth failed");

            MineOptions mine;
            mine.pose_log = (dir / "corpus/pose_log.csv").string();
            mine.out_pairs = (dir / "pairs.jsonl").string();
            mine.threads = 2;
            if (cmd_mine(mine, sink) != 0) throw InvalidInput("mine failed");

            AggregateOptions agg;
            agg.fmap_dir = (dir / "corpus").string();
            // Unit-norm streams keep concat fusion scale-balanced; without
            // this the corrupted stream's small norm skews the fused vector.
            agg.normalize = true;
            agg.suffix = ".vis.fmap";
            agg.out_desc = (dir / "vis.desc").string();
            if (cmd_aggregate(agg, sink) != 0)
                throw InvalidInput("aggregate failed");
            agg.suffix = ".str.fmap";
            agg.out_desc = (dir / "str.desc").string();
            if (cmd_aggregate(agg, sink) != 0)
                throw InvalidInput("aggregate failed");

            EvalOptions eval;
            eval.query_desc = (dir / "vis.desc").string();
            eval.gallery_desc = eval.query_desc;
            eval.pairs = mine.out_pairs;
            eval.pose_log = mine.pose_log;
            eval.out_report = (dir / "vis.json").string();
            eval.threads = 2;
            if (cmd_eval(eval, sink) != 0) throw InvalidInput("eval failed");

            EvalOptions fused = eval;
            fused.query_desc2 = (dir / "str.desc").string();
            fused.gallery_desc2 = fused.query_desc2;
            fused.out_report = (dir / "fused.json").string();
            if (cmd_eval(fused, sink) != 0) throw InvalidInput("eval failed");

            const auto vis = load_recall_report((dir / "vis.json").string());
            const auto fus = load_recall_report((dir / "fused.json").string());
            min_queries = std::min(min_queries, vis.overall.queries);

            const double vis_hard = 100.0 * vis.hard.at(0);
            const double fus_hard = 100.0 * fus.hard.at(0);
            const double vis_all = 100.0 * vis.overall.at(0);
            const double fus_all = 100.0 * fus.overall.at(0);
            if (fus_hard > vis_hard) ++improved;
            worst_overall_drop = std::max(worst_overall_drop, vis_all - fus_all);
        } catch (const std::exception& e) {
            ran = false;
            error = e.what();
        }
    }
    fs::remove_all(root);
    const double elapsed = seconds_since(start);

    if (!ran)
        return {7, "fused descriptors rescue hard queries on the synthetic corpus",
                false, "pipeline error: " + error};

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "hard R@1 up in %d/%d seeds, worst overall drop %.2f pts "
                  "(budget %.1f), min %zu queries, %.1fs",
                  improved, kFusionSeeds, worst_overall_drop,
                  kOverallDropBudgetPts, min_queries, elapsed);
    return {7, "fused descriptors rescue hard queries on the synthetic corpus",
            improved >= kFusionSeedsRequired &&
                worst_overall_drop <= kOverallDropBudgetPts &&
                min_queries >= 200 && elapsed < kFusionBudgetSec,
            detail};
}

// 8. Miner bounds under fuzz, and exact nearest selection at ratio 1.
Criterion check_miner() {
    Rng rng(408);
    HardMinerState state;
    bool in_bounds = true;
    double prev = rng.uniform(0.0, 2.0);
    for (std::size_t i = 0; i < kMinerFuzzSteps; ++i) {
        const double cur = rng.uniform(0.0, 2.0);
        update_miner(state, prev, cur);
        in_bounds = in_bounds && state.hard_ratio >= state.min_ratio &&
                    state.hard_ratio <= state.max_ratio;
        prev = cur;
    }

    bool exact = true;
    for (int round = 0; round < 50 && exact; ++round) {
        const std::size_t pool_size = 8 + rng.uniform_index(40);
        const std::size_t dim = 4;
        std::vector<Descriptor> pool(pool_size, Descriptor(dim));
        for (auto& d : pool)
            for (auto& v : d) v = rng.uniform(-1.0, 1.0);
        Descriptor query(dim);
        for (auto& v : query) v = rng.uniform(-1.0, 1.0);
        const std::size_t n_neg = 1 + rng.uniform_index(pool_size);

        const auto picked = select_negatives(query, pool, n_neg, 1.0, rng);
        std::vector<std::size_t> want(pool_size);
        for (std::size_t i = 0; i < pool_size; ++i) want[i] = i;
        std::sort(want.begin(), want.end(), [&](std::size_t a, std::size_t b) {
            const double da = euclidean(query, pool[a]);
            const double db = euclidean(query, pool[b]);
            if (da != db) return da < db;
            return a < b;
        });
        want.resize(n_neg);
        exact = picked == want;
    }

    char detail[96];
    std::snprintf(detail, sizeof(detail),
                  "bounds %s over %zu updates, ratio-1 selection %s",
                  in_bounds ? "held" : "VIOLATED", kMinerFuzzSteps,
                  exact ? "exact" : "DIVERGED");
    return {8, "miner ratio stays in bounds and ratio-1 picks the closest",
            in_bounds && exact, detail};
}

// 9. Toy training converges and is reproducible to the byte.
Criterion check_toy_training() {
    ModelConfig config;
    const Batch batch = make_toy_batch(config, 8, 4, 21);
    const ModelParams start = init_model_params(config, 1);
    TrainConfig train;
    train.steps = 200;

    const TrainResult a = toy_train(config, start, batch, train);
    const TrainResult b = toy_train(config, start, batch, train);
    const bool identical = trace_to_csv(a.trace) == trace_to_csv(b.trace);
    const bool converged = !a.diverged && a.initial_loss > 0.0 &&
                           a.final_loss < kTrainLossShare * a.initial_loss;

    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "loss %.4f -> %.6f (%.1f%% of start, limit %.0f%%), traces %s",
                  a.initial_loss, a.final_loss,
                  a.initial_loss > 0.0
                      ? 100.0 * a.final_loss / a.initial_loss
                      : 0.0,
                  100.0 * kTrainLossShare,
                  identical ? "byte-identical" : "DIFFER");
    return {9, "200 descent steps cut the toy loss below 10 % of start",
            converged && identical, detail};
}

// 10. Binary tensor containers round-trip bit-exactly, edge shapes included.
Criterion check_format_roundtrip() {
    Rng rng(410);
    std::size_t failures = 0;

    const auto map_ok = [&](const FeatureMap& map) {
        std::stringstream buf;
        write_feature_map(buf, map);
        const FeatureMap back = read_feature_map(buf);
        return back.h == map.h && back.w == map.w && back.k == map.k &&
               back.data.size() == map.data.size() &&
               std::memcmp(back.data.data(), map.data.data(),
                           map.data.size() * sizeof(float)) == 0;
    };
    const auto block_ok = [&](const DescriptorBlock& block) {
        std::stringstream buf;
        write_descriptors(buf, block);
        const DescriptorBlock back = read_descriptors(buf);
        return back.count == block.count && back.dim == block.dim &&
               std::memcmp(back.data.data(), block.data.data(),
                           block.data.size() * sizeof(float)) == 0;
    };
    const auto random_float = [&]() {
        return static_cast<float>(rng.gaussian(0.0, 1.0) *
                                  std::pow(10.0, rng.uniform(-9.0, 9.0)));
    };

    for (std::size_t i = 0; i < kRoundTripTensors / 2; ++i) {
        std::uint32_t h, w, k;
        if (i == 0) {
            h = w = k = 1; // smallest legal map
        } else if (i % 7 == 1) {
            h = 1; // single-row edge shape
            w = 1 + static_cast<std::uint32_t>(rng.uniform_index(8));
            k = 1 + static_cast<std::uint32_t>(rng.uniform_index(8));
        } else {
            h = 1 + static_cast<std::uint32_t>(rng.uniform_index(6));
            w = 1 + static_cast<std::uint32_t>(rng.uniform_index(6));
            k = 1 + static_cast<std::uint32_t>(rng.uniform_index(8));
        }
        FeatureMap map(h, w, k);
        for (auto& v : map.data) v = random_float();
        if (!map_ok(map)) ++failures;
    }

    for (std::size_t i = 0; i < kRoundTripTensors - kRoundTripTensors / 2; ++i) {
        DescriptorBlock block;
        block.count = 1 + static_cast<std::uint32_t>(rng.uniform_index(12));
        block.dim = 1 + static_cast<std::uint32_t>(rng.uniform_index(16));
        block.data.resize(static_cast<std::size_t>(block.count) * block.dim);
        for (auto& v : block.data) v = random_float();
        if (!block_ok(block)) ++failures;
    }

    char detail[96];
    std::snprintf(detail, sizeof(detail), "%zu of %zu tensors failed",
                  failures, kRoundTripTensors);
    return {10, "binary containers round-trip 1000 tensors bit-exactly",
            failures == 0, detail};
}

} // namespace

int main() {
    const Criterion results[] = {
        check_aggregator_oracles(), check_gem_limits(),
        check_difficulty_matrix(),  check_gradients_criterion(),
        check_recall_oracle(),      check_split_integrity(),
        check_fusion_direction(),   check_miner(),
        check_toy_training(),       check_format_roundtrip(),
    };

    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] criterion %d: %s (%s)\n", r.passed ? "PASS" : "FAIL",
                    r.id, r.label, r.detail.c_str());
        if (!r.passed) ++failures;
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
