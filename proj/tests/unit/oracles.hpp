#pragma once

// Naive reference implementations the tests compare the library against.
// Everything here favours directness over speed: plain loops, full sorts,
// closure matrices.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vpr/aggregators.hpp"
#include "vpr/feature_map.hpp"
#include "vpr/geometry.hpp"
#include "vpr/rng.hpp"

namespace oracle {

inline double at(const vpr::FeatureMap& x, std::uint32_t y, std::uint32_t col,
                 std::uint32_t c) {
    return static_cast<double>(x.data[(static_cast<std::size_t>(y) * x.w + col) * x.k + c]);
}

inline std::vector<double> spoc(const vpr::FeatureMap& x) {
    std::vector<double> out(x.k, 0.0);
    for (std::uint32_t c = 0; c < x.k; ++c) {
        double acc = 0.0;
        for (std::uint32_t y = 0; y < x.h; ++y)
            for (std::uint32_t col = 0; col < x.w; ++col) acc += at(x, y, col, c);
        out[c] = acc / (static_cast<double>(x.h) * x.w);
    }
    return out;
}

inline std::vector<double> gem(const vpr::FeatureMap& x,
                               const std::vector<double>& p) {
    std::vector<double> out(x.k, 0.0);
    const double n = static_cast<double>(x.h) * x.w;
    for (std::uint32_t c = 0; c < x.k; ++c) {
        double acc = 0.0;
        for (std::uint32_t y = 0; y < x.h; ++y)
            for (std::uint32_t col = 0; col < x.w; ++col)
                acc += std::pow(at(x, y, col, c), p[c]);
        out[c] = std::pow(acc / n, 1.0 / p[c]);
    }
    return out;
}

inline std::vector<double> netvlad(const vpr::FeatureMap& x,
                                   const vpr::NetVladParams& params) {
    const std::size_t s = params.clusters();
    std::vector<double> out(s * x.k, 0.0);
    for (std::uint32_t y = 0; y < x.h; ++y) {
        for (std::uint32_t col = 0; col < x.w; ++col) {
            std::vector<double> score(s, 0.0);
            double denom = 0.0;
            for (std::size_t j = 0; j < s; ++j) {
                double dot = params.b[j];
                for (std::uint32_t c = 0; c < x.k; ++c)
                    dot += params.w.at(j, c) * at(x, y, col, c);
                score[j] = std::exp(dot);
                denom += score[j];
            }
            for (std::size_t j = 0; j < s; ++j)
                for (std::uint32_t c = 0; c < x.k; ++c)
                    out[j * x.k + c] += score[j] / denom *
                                        (at(x, y, col, c) - params.c.at(j, c));
        }
    }
    return out;
}

inline std::vector<double> conv_ap(const vpr::FeatureMap& x,
                                   const vpr::ConvApParams& params) {
    const std::size_t kp = params.projection.rows;
    // Block sizes: even share, remainder handed to the leading blocks.
    const auto sizes = [](std::uint32_t extent, std::uint32_t blocks) {
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 0; i < blocks; ++i)
            out.push_back(extent / blocks + (i < extent % blocks ? 1 : 0));
        return out;
    };
    const auto rows = sizes(x.h, params.s1);
    const auto cols = sizes(x.w, params.s2);

    std::vector<double> out;
    std::uint32_t y0 = 0;
    for (std::uint32_t gi = 0; gi < params.s1; ++gi) {
        std::uint32_t c0 = 0;
        for (std::uint32_t gj = 0; gj < params.s2; ++gj) {
            std::vector<double> cell(kp, 0.0);
            for (std::uint32_t y = y0; y < y0 + rows[gi]; ++y)
                for (std::uint32_t col = c0; col < c0 + cols[gj]; ++col)
                    for (std::size_t j = 0; j < kp; ++j) {
                        double dot = 0.0;
                        for (std::uint32_t c = 0; c < x.k; ++c)
                            dot += params.projection.at(j, c) * at(x, y, col, c);
                        cell[j] += dot;
                    }
            const double count = static_cast<double>(rows[gi]) * cols[gj];
            for (std::size_t j = 0; j < kp; ++j) out.push_back(cell[j] / count);
            c0 += cols[gj];
        }
        y0 += rows[gi];
    }
    // Re-order from block-major walk above; the walk already matches
    // ((gi*s2)+gj)*kp + j, so nothing to do.
    return out;
}

inline std::vector<double> eigenplaces(const vpr::FeatureMap& x,
                                       const vpr::EigenPlacesParams& params) {
    const std::vector<double> pooled = oracle::gem(x, params.p);
    std::vector<double> out(params.projection.rows, 0.0);
    for (std::size_t i = 0; i < params.projection.rows; ++i) {
        double acc = params.bias[i];
        for (std::uint32_t c = 0; c < x.k; ++c)
            acc += params.projection.at(i, c) * pooled[c];
        out[i] = acc;
    }
    return out;
}

inline std::vector<double> mixvpr(const vpr::FeatureMap& x,
                                  const vpr::MixVprParams& params) {
    const std::size_t d = static_cast<std::size_t>(x.h) * x.w;
    std::vector<std::vector<double>> z(x.k, std::vector<double>(d, 0.0));
    for (std::uint32_t c = 0; c < x.k; ++c)
        for (std::size_t l = 0; l < d; ++l)
            z[c][l] = static_cast<double>(x.data[l * x.k + c]);

    for (const auto& block : params.mixers) {
        for (std::uint32_t c = 0; c < x.k; ++c) {
            std::vector<double> hidden(d, 0.0);
            for (std::size_t i = 0; i < d; ++i) {
                double acc = 0.0;
                for (std::size_t l = 0; l < d; ++l)
                    acc += block.w1.at(i, l) * z[c][l];
                hidden[i] = std::max(acc, 0.0);
            }
            std::vector<double> next(d, 0.0);
            for (std::size_t i = 0; i < d; ++i) {
                double acc = 0.0;
                for (std::size_t l = 0; l < d; ++l)
                    acc += block.w2.at(i, l) * hidden[l];
                next[i] = z[c][i] + acc;
            }
            z[c] = next;
        }
    }

    const std::size_t dp = params.depth_projection.rows;
    const std::size_t r = params.row_projection.rows;
    // Z' = Z^T W_d^T (D x dp), F = Z'^T W_r^T (dp x r), row-major flatten.
    std::vector<std::vector<double>> zp(d, std::vector<double>(dp, 0.0));
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t j = 0; j < dp; ++j)
            for (std::uint32_t c = 0; c < x.k; ++c)
                zp[l][j] += z[c][l] * params.depth_projection.at(j, c);
    std::vector<double> out;
    for (std::size_t j = 0; j < dp; ++j)
        for (std::size_t t = 0; t < r; ++t) {
            double acc = 0.0;
            for (std::size_t l = 0; l < d; ++l)
                acc += zp[l][j] * params.row_projection.at(t, l);
            out.push_back(acc);
        }
    return out;
}

// Hand-written condition-pair difficulty table.
inline vpr::Difficulty difficulty_table(vpr::Condition a, vpr::Condition b) {
    using C = vpr::Condition;
    using D = vpr::Difficulty;
    if (a == b) return D::Easy;
    const auto day_side = [](C c) { return c == C::Day || c == C::DayRain; };
    if (day_side(a) == day_side(b)) return D::SemiHard;
    return D::Hard;
}

// Reachability closure over an adjacency matrix.
inline std::vector<std::set<std::string>> closure_components(
    const std::vector<std::string>& nodes,
    const std::set<std::pair<std::string, std::string>>& edges) {
    const std::size_t n = nodes.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[nodes[i]] = i;
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (const auto& [a, b] : edges) {
        reach[index.at(a)][index.at(b)] = true;
        reach[index.at(b)][index.at(a)] = true;
    }
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][m] && reach[m][j]) reach[i][j] = true;

    std::vector<std::set<std::string>> components;
    std::vector<bool> placed(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (placed[i]) continue;
        std::set<std::string> comp;
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j]) {
                comp.insert(nodes[j]);
                placed[j] = true;
            }
        components.push_back(std::move(comp));
    }
    return components;
}

// Full-sort nearest neighbours, ties by ascending id.
struct RankedHit {
    std::string id;
    double distance;
};

inline std::vector<RankedHit> ranked(const std::vector<std::string>& ids,
                                     const std::vector<std::vector<double>>& rows,
                                     const std::vector<double>& query,
                                     const std::set<std::string>& excluded) {
    std::vector<RankedHit> all;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (excluded.count(ids[i])) continue;
        double acc = 0.0;
        for (std::size_t j = 0; j < query.size(); ++j) {
            const double diff = query[j] - rows[i][j];
            acc += diff * diff;
        }
        all.push_back({ids[i], std::sqrt(acc)});
    }
    std::sort(all.begin(), all.end(), [](const RankedHit& a, const RankedHit& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.id < b.id;
    });
    return all;
}

inline vpr::FeatureMap random_map(vpr::Rng& rng, std::uint32_t h,
                                  std::uint32_t w, std::uint32_t k,
                                  double lo = 0.0, double hi = 1.0) {
    vpr::FeatureMap map(h, w, k);
    for (auto& v : map.data) v = static_cast<float>(rng.uniform(lo, hi));
    return map;
}

} // namespace oracle
