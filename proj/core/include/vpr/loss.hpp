#pragma once

#include <vector>

#include "vpr/fusion.hpp"

namespace vpr {

struct LossConfig {
    double margin = 0.5;
    double alpha = 1.0; // fused-head weight
    double beta = 1.0;  // visual-head weight
    double gamma = 1.0; // structural-head weight
    std::size_t n_pos = 1;
    std::size_t n_neg = 6;
};

// One query with its sampled positives and negatives, all in one head's
// descriptor space.
struct TripletGroup {
    Descriptor query;
    std::vector<Descriptor> positives;
    std::vector<Descriptor> negatives;
};

// Per-head views of the same queries: fused, visual-only, structural-only.
struct MultiHeadBatch {
    std::vector<TripletGroup> fused;
    std::vector<TripletGroup> visual;
    std::vector<TripletGroup> structural;
};

struct MultiHeadLoss {
    double total = 0.0;
    double fused = 0.0;
    double visual = 0.0;
    double structural = 0.0;
};

// max(d(q,p) - d(q,n) + margin, 0) with Euclidean distances.
double hinge(double d_pos, double d_neg, double margin);
double triplet_loss(const Descriptor& q, const Descriptor& p,
                    const Descriptor& n, double margin);

// Mean hinge over every (positive, negative) pair of every group.
double head_loss(const std::vector<TripletGroup>& batch, double margin);

// alpha * fused + beta * visual + gamma * structural; the three views must
// hold the same number of groups.
MultiHeadLoss multi_head_loss(const MultiHeadBatch& batch,
                              const LossConfig& config = {});

} // namespace vpr
