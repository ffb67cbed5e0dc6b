#include "vpr/loss.hpp"

#include <cmath>

namespace vpr {

namespace {

void check_margin(double margin) {
    if (!(margin > 0.0) || !std::isfinite(margin))
        throw InvalidInput("triplet loss: margin must be finite and > 0");
}

} // namespace

double hinge(double d_pos, double d_neg, double margin) {
    check_margin(margin);
    return std::max(d_pos - d_neg + margin, 0.0);
}

double triplet_loss(const Descriptor& q, const Descriptor& p,
                    const Descriptor& n, double margin) {
    return hinge(euclidean(q, p), euclidean(q, n), margin);
}

double head_loss(const std::vector<TripletGroup>& batch, double margin) {
    check_margin(margin);
    if (batch.empty()) throw InvalidInput("head_loss: empty batch");
    double acc = 0.0;
    std::size_t triplets = 0;
    for (const auto& group : batch) {
        if (group.positives.empty() || group.negatives.empty())
            throw InvalidInput("head_loss: every group needs >= 1 positive and negative");
        std::vector<double> d_pos(group.positives.size());
        for (std::size_t i = 0; i < group.positives.size(); ++i)
            d_pos[i] = euclidean(group.query, group.positives[i]);
        for (const auto& neg : group.negatives) {
            const double d_neg = euclidean(group.query, neg);
            for (const double dp : d_pos) acc += hinge(dp, d_neg, margin);
        }
        triplets += group.positives.size() * group.negatives.size();
    }
    return acc / static_cast<double>(triplets);
}

MultiHeadLoss multi_head_loss(const MultiHeadBatch& batch,
                              const LossConfig& config) {
    if (batch.fused.size() != batch.visual.size() ||
        batch.fused.size() != batch.structural.size())
        throw InvalidInput("multi_head_loss: head views differ in group count");
    MultiHeadLoss out;
    out.fused = head_loss(batch.fused, config.margin);
    out.visual = head_loss(batch.visual, config.margin);
    out.structural = head_loss(batch.structural, config.margin);
    out.total = config.alpha * out.fused + config.beta * out.visual +
                config.gamma * out.structural;
    return out;
}

} // namespace vpr
