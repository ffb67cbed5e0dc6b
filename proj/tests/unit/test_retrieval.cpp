#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "vpr/retrieval.hpp"
#include "vpr/rng.hpp"

#include "oracles.hpp"

using namespace vpr;

namespace {

DescriptorSet random_gallery(Rng& rng, std::size_t n, std::size_t dim) {
    DescriptorSet gallery;
    for (std::size_t i = 0; i < n; ++i) {
        char id[32];
        std::snprintf(id, sizeof(id), "g%04zu", i);
        Descriptor d(dim);
        for (auto& v : d) v = rng.uniform(-1.0, 1.0);
        gallery.add(id, d);
    }
    return gallery;
}

std::vector<std::vector<double>> rows_of(const DescriptorSet& set) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < set.count(); ++i)
        rows.push_back({set.row(i), set.row(i) + set.dim});
    return rows;
}

} // namespace

TEST_CASE("DescriptorSet add and validate") {
    DescriptorSet set;
    set.add("a", {1.0, 2.0});
    CHECK(set.dim == 2);
    CHECK(set.count() == 1);
    CHECK_THROWS_AS(set.add("b", {1.0}), InvalidInput); // dim mismatch
    set.add("b", {3.0, 4.0});
    CHECK_NOTHROW(set.validate());

    set.add("a", {5.0, 6.0}); // duplicate id surfaces in validate
    CHECK_THROWS_AS(set.validate(), InvalidInput);

    DescriptorSet empty_desc;
    CHECK_THROWS_AS(empty_desc.add("x", {}), InvalidInput);
}

TEST_CASE("top_k equals the full-sort oracle") {
    Rng rng(5);
    const auto gallery = random_gallery(rng, 64, 6);
    const auto rows = rows_of(gallery);
    for (int round = 0; round < 25; ++round) {
        Descriptor q(6);
        for (auto& v : q) v = rng.uniform(-1.0, 1.0);
        const std::size_t k = 1 + rng.uniform_index(10);
        const auto got = top_k(gallery, q, k);
        const auto want = oracle::ranked(gallery.ids, rows, q, {});
        REQUIRE(got.size() == k);
        for (std::size_t i = 0; i < k; ++i) {
            CHECK(gallery.ids[got[i].index] == want[i].id);
            CHECK(got[i].distance == doctest::Approx(want[i].distance).epsilon(1e-12));
        }
    }
}

TEST_CASE("top_k breaks distance ties by ascending id") {
    DescriptorSet gallery;
    gallery.add("zz", {1.0});
    gallery.add("aa", {1.0});
    gallery.add("mm", {1.0});
    gallery.add("bb", {5.0});
    const auto got = top_k(gallery, {0.0}, 3);
    REQUIRE(got.size() == 3);
    CHECK(gallery.ids[got[0].index] == "aa");
    CHECK(gallery.ids[got[1].index] == "mm");
    CHECK(gallery.ids[got[2].index] == "zz");
}

TEST_CASE("top_k honours the mask and caps k at the pool size") {
    DescriptorSet gallery;
    gallery.add("a", {1.0});
    gallery.add("b", {2.0});
    gallery.add("c", {3.0});
    std::vector<bool> mask = {true, false, false};
    const auto got = top_k(gallery, {0.0}, 5, &mask);
    REQUIRE(got.size() == 2); // k capped, masked row gone
    CHECK(gallery.ids[got[0].index] == "b");
    CHECK(gallery.ids[got[1].index] == "c");

    const std::vector<bool> all = {true, true, true};
    CHECK(top_k(gallery, {0.0}, 3, &all).empty());
}

TEST_CASE("top_k validation") {
    DescriptorSet gallery;
    gallery.add("a", {1.0, 2.0});
    CHECK_THROWS_AS(top_k(gallery, {1.0, 2.0}, 0), InvalidInput);
    CHECK_THROWS_AS(top_k(gallery, {1.0}, 1), InvalidInput); // dim mismatch
    std::vector<bool> short_mask = {true, false};
    CHECK_THROWS_AS(top_k(gallery, {1.0, 2.0}, 1, &short_mask), InvalidInput);
}

TEST_CASE("recall_at_k equals a first-hit oracle with buckets") {
    Rng rng(41);
    const std::size_t dim = 5;
    const auto gallery = random_gallery(rng, 80, dim);
    const auto rows = rows_of(gallery);

    std::vector<EvalQuery> queries;
    const Difficulty wheel[3] = {Difficulty::Easy, Difficulty::SemiHard,
                                 Difficulty::Hard};
    for (int i = 0; i < 60; ++i) {
        EvalQuery q;
        q.id = "q" + std::to_string(i);
        q.desc.resize(dim);
        for (auto& v : q.desc) v = rng.uniform(-1.0, 1.0);
        // Random positives; sometimes none so skips are exercised too.
        const std::size_t n_pos = rng.uniform_index(4);
        for (std::size_t p = 0; p < n_pos; ++p)
            q.positives.insert(gallery.ids[rng.uniform_index(gallery.count())]);
        if (rng.uniform() < 0.2)
            q.excluded.insert(gallery.ids[rng.uniform_index(gallery.count())]);
        if (rng.uniform() < 0.8) q.difficulty = wheel[i % 3];
        queries.push_back(std::move(q));
    }

    const std::vector<std::size_t> ks = {1, 5, 10};
    const auto report = recall_at_k(gallery, queries, ks);
    REQUIRE(report.ks == ks);

    // Oracle: full sort, find the first reachable positive's rank.
    RecallSubset want_overall, want_easy, want_semi, want_hard;
    want_overall.hits.assign(ks.size(), 0);
    want_easy.hits.assign(ks.size(), 0);
    want_semi.hits.assign(ks.size(), 0);
    want_hard.hits.assign(ks.size(), 0);
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
        auto tally = [&](RecallSubset& subset) {
            ++subset.queries;
            for (std::size_t ki = 0; ki < ks.size(); ++ki)
                if (rank < ks[ki]) ++subset.hits[ki];
        };
        tally(want_overall);
        if (q.difficulty == Difficulty::Easy) tally(want_easy);
        if (q.difficulty == Difficulty::SemiHard) tally(want_semi);
        if (q.difficulty == Difficulty::Hard) tally(want_hard);
    }

    CHECK(report.skipped == want_skipped);
    const std::pair<const RecallSubset*, const RecallSubset*> pairs[4] = {
        {&report.overall, &want_overall},
        {&report.easy, &want_easy},
        {&report.semi_hard, &want_semi},
        {&report.hard, &want_hard},
    };
    for (const auto& [got, want] : pairs) {
        CHECK(got->queries == want->queries);
        CHECK(got->hits == want->hits);
    }
    CHECK(report.overall.queries + report.skipped == queries.size());
}

TEST_CASE("recall_at_k is thread-count invariant") {
    Rng rng(53);
    const auto gallery = random_gallery(rng, 100, 4);
    std::vector<EvalQuery> queries;
    for (int i = 0; i < 40; ++i) {
        EvalQuery q;
        q.id = "q" + std::to_string(i);
        q.desc.resize(4);
        for (auto& v : q.desc) v = rng.uniform(-1.0, 1.0);
        q.positives.insert(gallery.ids[rng.uniform_index(gallery.count())]);
        q.difficulty = Difficulty::Hard;
        queries.push_back(std::move(q));
    }
    const std::vector<std::size_t> ks = {1, 3};
    const auto one = recall_at_k(gallery, queries, ks, 1);
    const auto four = recall_at_k(gallery, queries, ks, 4);
    CHECK(one.overall.hits == four.overall.hits);
    CHECK(one.hard.hits == four.hard.hits);
    CHECK(one.skipped == four.skipped);
}

TEST_CASE("recall_at_k handles exclusion of the query's own sample") {
    // Classic leak: the query itself sits in the gallery at distance zero.
    DescriptorSet gallery;
    gallery.add("self", {0.0});
    gallery.add("match", {0.1});
    gallery.add("other", {5.0});

    EvalQuery q;
    q.id = "self";
    q.desc = {0.0};
    q.positives = {"match"};
    q.excluded = {"self"};
    const auto report = recall_at_k(gallery, {q}, {1});
    CHECK(report.overall.queries == 1);
    CHECK(report.overall.hits[0] == 1); // "match" ranks first once self is gone

    // Without the exclusion the self row steals rank 0.
    q.excluded.clear();
    const auto leaky = recall_at_k(gallery, {q}, {1});
    CHECK(leaky.overall.hits[0] == 0);
}

TEST_CASE("recall_at_k validation") {
    DescriptorSet gallery;
    gallery.add("a", {1.0});
    EvalQuery q;
    q.id = "q";
    q.desc = {0.0};
    q.positives = {"a"};
    CHECK_THROWS_AS(recall_at_k(gallery, {q}, {}), InvalidInput);
    CHECK_THROWS_AS(recall_at_k(gallery, {q}, {0}), InvalidInput);
    EvalQuery bad = q;
    bad.desc = {0.0, 1.0};
    CHECK_THROWS_AS(recall_at_k(gallery, {bad}, {1}), InvalidInput);
}
