#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vpr/geometry.hpp"

namespace vpr {

// Undirected scene-similarity graph. Edge keys are stored with the smaller
// scene_id first; weights are in (0, 1] (zero-similarity pairs are omitted).
struct SceneGraph {
    std::set<std::string> nodes;
    std::map<std::pair<std::string, std::string>, double> edges;

    double weight(const std::string& a, const std::string& b) const;
    bool has_edge(const std::string& a, const std::string& b) const;
    void add_edge(const std::string& a, const std::string& b, double w);
};

// Fraction of scene-A queries whose positive set touches scene B.
// scene_a holds the pair sets of every query in scene A; scene_b_sample_ids
// holds the sample ids belonging to scene B.
double scene_similarity(const std::vector<PairSet>& scene_a,
                        const std::set<std::string>& scene_b_sample_ids);

// Builds the scene graph from mined pairs. Edge weight between two scenes is
// the larger of the two directional similarities; zero-weight pairs get no
// edge. Every scene occurring in meta becomes a node.
SceneGraph build_graph(const std::vector<PairSet>& pairsets,
                       const std::vector<SampleMeta>& meta);

// Connected components of the scene graph. Scenes with no incident edge are
// reported separately as isolated; every component therefore has >= 2 nodes.
struct ComponentPartition {
    std::vector<std::set<std::string>> components;
    std::set<std::string> isolated;
};

ComponentPartition connected_components(const SceneGraph& graph);

} // namespace vpr
