#include "vpr/scene_graph.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace vpr {

namespace {

std::pair<std::string, std::string> edge_key(const std::string& a,
                                             const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

} // namespace

double SceneGraph::weight(const std::string& a, const std::string& b) const {
    auto it = edges.find(edge_key(a, b));
    return it == edges.end() ? 0.0 : it->second;
}

bool SceneGraph::has_edge(const std::string& a, const std::string& b) const {
    return edges.count(edge_key(a, b)) > 0;
}

void SceneGraph::add_edge(const std::string& a, const std::string& b, double w) {
    if (a == b) throw InvalidInput("SceneGraph: self-edge on scene '" + a + "'");
    nodes.insert(a);
    nodes.insert(b);
    edges[edge_key(a, b)] = w;
}

double scene_similarity(const std::vector<PairSet>& scene_a,
                        const std::set<std::string>& scene_b_sample_ids) {
    if (scene_a.empty())
        throw InvalidInput("scene_similarity: scene has no queries");
    std::size_t hits = 0;
    for (const auto& ps : scene_a) {
        for (const auto& pid : ps.positive_ids) {
            if (scene_b_sample_ids.count(pid)) {
                ++hits;
                break;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(scene_a.size());
}

SceneGraph build_graph(const std::vector<PairSet>& pairsets,
                       const std::vector<SampleMeta>& meta) {
    std::unordered_map<std::string, const SampleMeta*> by_id;
    by_id.reserve(meta.size());
    for (const auto& m : meta) by_id[m.sample_id] = &m;

    const auto resolve = [&](const std::string& id) -> const SampleMeta& {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw InvalidInput("build_graph: sample_id '" + id +
                               "' not present in metadata");
        return *it->second;
    };

    SceneGraph graph;
    for (const auto& m : meta) graph.nodes.insert(m.scene_id);

    // Directional query counts: queries per scene, and per (scene, other
    // scene) the number of queries with at least one positive there.
    std::unordered_map<std::string, std::size_t> queries_per_scene;
    std::map<std::pair<std::string, std::string>, std::size_t> cross_hits;
    for (const auto& ps : pairsets) {
        const auto& qscene = resolve(ps.query_id).scene_id;
        ++queries_per_scene[qscene];
        std::unordered_set<std::string> touched;
        for (const auto& pid : ps.positive_ids)
            touched.insert(resolve(pid).scene_id);
        for (const auto& other : touched)
            if (other != qscene) ++cross_hits[{qscene, other}];
    }

    std::map<std::pair<std::string, std::string>, double> sym;
    for (const auto& [key, hits] : cross_hits) {
        const double sim = static_cast<double>(hits) /
                           static_cast<double>(queries_per_scene.at(key.first));
        auto& slot = sym[edge_key(key.first, key.second)];
        slot = std::max(slot, sim);
    }
    for (const auto& [key, w] : sym)
        if (w > 0.0) graph.edges[key] = w;
    return graph;
}

ComponentPartition connected_components(const SceneGraph& graph) {
    // Union-find over scene ids.
    std::map<std::string, std::string> parent;
    for (const auto& n : graph.nodes) parent[n] = n;
    const std::function<std::string(const std::string&)> find =
        [&](const std::string& x) -> std::string {
        std::string root = x;
        while (parent[root] != root) root = parent[root];
        std::string cur = x;
        while (parent[cur] != root) {
            std::string next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        return root;
    };
    std::set<std::string> touched;
    for (const auto& [key, w] : graph.edges) {
        (void)w;
        touched.insert(key.first);
        touched.insert(key.second);
        parent[find(key.first)] = find(key.second);
    }

    std::map<std::string, std::set<std::string>> groups;
    for (const auto& n : graph.nodes)
        if (touched.count(n)) groups[find(n)].insert(n);

    ComponentPartition out;
    for (auto& [root, members] : groups) {
        (void)root;
        out.components.push_back(std::move(members));
    }
    // Deterministic order: by smallest member id.
    std::sort(out.components.begin(), out.components.end(),
              [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
    for (const auto& n : graph.nodes)
        if (!touched.count(n)) out.isolated.insert(n);
    return out;
}

} // namespace vpr
