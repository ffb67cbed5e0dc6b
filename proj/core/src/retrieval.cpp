#include "vpr/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "vpr/parallel.hpp"

namespace vpr {

void DescriptorSet::add(const std::string& id, const Descriptor& desc) {
    if (desc.empty()) throw InvalidInput("descriptor set: empty descriptor");
    if (ids.empty()) dim = desc.size();
    if (desc.size() != dim)
        throw InvalidInput("descriptor set: descriptor for '" + id + "' has dim " +
                           std::to_string(desc.size()) + ", set uses " +
                           std::to_string(dim));
    ids.push_back(id);
    data.insert(data.end(), desc.begin(), desc.end());
}

void DescriptorSet::validate() const {
    if (data.size() != ids.size() * dim)
        throw InvalidInput("descriptor set: buffer does not match count * dim");
    std::vector<std::string> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
        throw InvalidInput("descriptor set: duplicate id '" + *dup + "'");
}

std::vector<Neighbor> top_k(const DescriptorSet& gallery,
                            const Descriptor& query, std::size_t k,
                            const std::vector<bool>* mask) {
    if (k == 0) throw InvalidInput("top_k: k must be >= 1");
    if (query.size() != gallery.dim)
        throw InvalidInput("top_k: query dim " + std::to_string(query.size()) +
                           " does not match gallery dim " +
                           std::to_string(gallery.dim));
    if (mask && mask->size() != gallery.count())
        throw InvalidInput("top_k: mask length does not match gallery size");

    std::vector<Neighbor> pool;
    pool.reserve(gallery.count());
    for (std::size_t i = 0; i < gallery.count(); ++i) {
        if (mask && (*mask)[i]) continue;
        const double* row = gallery.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < gallery.dim; ++j) {
            const double d = query[j] - row[j];
            acc += d * d;
        }
        pool.push_back({i, acc});
    }

    const auto closer = [&](const Neighbor& a, const Neighbor& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return gallery.ids[a.index] < gallery.ids[b.index];
    };
    const std::size_t take = std::min(k, pool.size());
    std::partial_sort(pool.begin(), pool.begin() + take, pool.end(), closer);
    pool.resize(take);
    for (auto& n : pool) n.distance = std::sqrt(n.distance);
    return pool;
}

RecallReport recall_at_k(const DescriptorSet& gallery,
                         const std::vector<EvalQuery>& queries,
                         const std::vector<std::size_t>& ks,
                         unsigned threads) {
    if (ks.empty()) throw InvalidInput("recall_at_k: no K values given");
    for (const std::size_t k : ks)
        if (k == 0) throw InvalidInput("recall_at_k: K values must be >= 1");
    gallery.validate();

    std::unordered_map<std::string, std::size_t> index_of;
    index_of.reserve(gallery.count());
    for (std::size_t i = 0; i < gallery.count(); ++i)
        index_of.emplace(gallery.ids[i], i);

    const std::size_t max_k = *std::max_element(ks.begin(), ks.end());

    // Rank of the first positive within the top-max_k list, or npos.
    constexpr std::size_t kMiss = static_cast<std::size_t>(-1);
    constexpr std::size_t kSkipped = static_cast<std::size_t>(-2);
    std::vector<std::size_t> first_hit(queries.size(), kMiss);

    parallel_for(queries.size(), threads, [&](std::size_t qi) {
        const EvalQuery& q = queries[qi];
        std::vector<bool> mask(gallery.count(), false);
        for (const auto& id : q.excluded) {
            const auto it = index_of.find(id);
            if (it != index_of.end()) mask[it->second] = true;
        }
        bool reachable = false;
        for (const auto& id : q.positives) {
            const auto it = index_of.find(id);
            if (it != index_of.end() && !mask[it->second]) {
                reachable = true;
                break;
            }
        }
        if (!reachable) {
            first_hit[qi] = kSkipped;
            return;
        }
        const std::vector<Neighbor> top = top_k(gallery, q.desc, max_k, &mask);
        for (std::size_t rank = 0; rank < top.size(); ++rank) {
            if (q.positives.count(gallery.ids[top[rank].index])) {
                first_hit[qi] = rank;
                return;
            }
        }
    });

    RecallReport report;
    report.ks = ks;
    for (RecallSubset* s : {&report.overall, &report.easy, &report.semi_hard,
                            &report.hard})
        s->hits.assign(ks.size(), 0);

    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        if (first_hit[qi] == kSkipped) {
            ++report.skipped;
            continue;
        }
        RecallSubset* bucket = nullptr;
        if (queries[qi].difficulty) {
            switch (*queries[qi].difficulty) {
                case Difficulty::Easy: bucket = &report.easy; break;
                case Difficulty::SemiHard: bucket = &report.semi_hard; break;
                case Difficulty::Hard: bucket = &report.hard; break;
            }
        }
        ++report.overall.queries;
        if (bucket) ++bucket->queries;
        if (first_hit[qi] == kMiss) continue;
        for (std::size_t ki = 0; ki < ks.size(); ++ki) {
            if (first_hit[qi] < ks[ki]) {
                ++report.overall.hits[ki];
                if (bucket) ++bucket->hits[ki];
            }
        }
    }
    return report;
}

} // namespace vpr
