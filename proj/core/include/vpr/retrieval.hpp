#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vpr/fusion.hpp"
#include "vpr/geometry.hpp"

namespace vpr {

// Flat row-major descriptor store keyed by sample id.
struct DescriptorSet {
    std::size_t dim = 0;
    std::vector<std::string> ids;
    std::vector<double> data;

    std::size_t count() const { return ids.size(); }
    const double* row(std::size_t i) const { return data.data() + i * dim; }
    void add(const std::string& id, const Descriptor& desc);
    // Duplicate ids would make id-based tie-breaking ambiguous.
    void validate() const;
};

struct Neighbor {
    std::size_t index = 0;
    double distance = 0.0;
};

// Exact brute-force nearest neighbours, ascending distance with ties broken
// by ascending id.  `mask[i] == true` removes gallery row i from the pool.
// Returns min(k, pool size) entries.
std::vector<Neighbor> top_k(const DescriptorSet& gallery,
                            const Descriptor& query, std::size_t k,
                            const std::vector<bool>* mask = nullptr);

struct EvalQuery {
    std::string id;
    Descriptor desc;
    std::set<std::string> positives; // gallery ids counted as correct
    std::optional<Difficulty> difficulty;
    std::set<std::string> excluded; // gallery ids removed from the pool
};

struct RecallSubset {
    std::size_t queries = 0;
    std::vector<std::size_t> hits; // aligned with RecallReport::ks
    double at(std::size_t k_index) const {
        return queries == 0
                   ? 0.0
                   : static_cast<double>(hits[k_index]) / static_cast<double>(queries);
    }
};

struct RecallReport {
    std::vector<std::size_t> ks;
    RecallSubset overall, easy, semi_hard, hard;
    std::size_t skipped = 0; // queries with no reachable positive
};

// Recall@K over the whole query set and per difficulty bucket.  Queries whose
// positives are absent from the gallery (or fully excluded) are skipped and
// counted.  Thread count never changes the result.
RecallReport recall_at_k(const DescriptorSet& gallery,
                         const std::vector<EvalQuery>& queries,
                         const std::vector<std::size_t>& ks,
                         unsigned threads = 1);

} // namespace vpr
