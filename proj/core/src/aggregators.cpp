#include "vpr/aggregators.hpp"

#include <algorithm>
#include <cmath>

#include "vpr/rng.hpp"

namespace vpr {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Spoc: return "spoc";
        case Variant::NetVlad: return "netvlad";
        case Variant::Gem: return "gem";
        case Variant::ConvAp: return "conv_ap";
        case Variant::EigenPlaces: return "eigenplaces";
        case Variant::MixVpr: return "mixvpr";
    }
    return "spoc";
}

Variant variant_from_string(const std::string& s) {
    if (s == "spoc") return Variant::Spoc;
    if (s == "netvlad") return Variant::NetVlad;
    if (s == "gem") return Variant::Gem;
    if (s == "conv_ap") return Variant::ConvAp;
    if (s == "eigenplaces") return Variant::EigenPlaces;
    if (s == "mixvpr") return Variant::MixVpr;
    throw InvalidInput("unknown aggregator variant '" + s + "'");
}

namespace {

void require_nonempty(const FeatureMap& x, const char* op) {
    if (x.locations() == 0 || x.k == 0)
        throw InvalidInput(std::string(op) + ": empty feature map");
    if (x.data.size() != x.size())
        throw InvalidInput(std::string(op) + ": inconsistent feature map buffer");
}

bool is_integer(double v) { return std::nearbyint(v) == v; }

// Signed p-th root; negative means can only come from odd integer exponents.
double signed_root(double mean, double p) {
    if (mean == 0.0) return 0.0;
    if (mean > 0.0) return std::pow(mean, 1.0 / p);
    return -std::pow(-mean, 1.0 / p);
}

} // namespace

Descriptor spoc(const FeatureMap& x) {
    require_nonempty(x, "spoc");
    const std::size_t n = x.locations();
    Descriptor out(x.k, 0.0);
    for (std::size_t l = 0; l < n; ++l)
        for (std::uint32_t c = 0; c < x.k; ++c)
            out[c] += static_cast<double>(x.data[l * x.k + c]);
    for (auto& v : out) v /= static_cast<double>(n);
    return out;
}

Matrix netvlad_assignments(const FeatureMap& x, const NetVladParams& params) {
    require_nonempty(x, "netvlad");
    const std::size_t s = params.clusters();
    if (s == 0) throw InvalidInput("netvlad: at least one cluster required");
    if (params.w.cols != x.k || params.c.rows != s || params.c.cols != x.k ||
        params.b.size() != s)
        throw InvalidInput("netvlad: parameter shapes do not match k=" +
                           std::to_string(x.k) + ", S=" + std::to_string(s));

    const std::size_t n = x.locations();
    Matrix a(n, s);
    std::vector<double> scores(s);
    for (std::size_t l = 0; l < n; ++l) {
        const float* loc = x.data.data() + l * x.k;
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < s; ++j) {
            double dot = params.b[j];
            const double* wj = params.w.data.data() + j * params.w.cols;
            for (std::uint32_t c = 0; c < x.k; ++c)
                dot += wj[c] * static_cast<double>(loc[c]);
            scores[j] = dot;
            hi = std::max(hi, dot);
        }
        double norm = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
            scores[j] = std::exp(scores[j] - hi);
            norm += scores[j];
        }
        for (std::size_t j = 0; j < s; ++j) a.at(l, j) = scores[j] / norm;
    }
    return a;
}

Descriptor netvlad(const FeatureMap& x, const NetVladParams& params) {
    const Matrix a = netvlad_assignments(x, params);
    const std::size_t s = params.clusters();
    const std::size_t n = x.locations();
    Descriptor out(s * x.k, 0.0);
    for (std::size_t l = 0; l < n; ++l) {
        const float* loc = x.data.data() + l * x.k;
        for (std::size_t j = 0; j < s; ++j) {
            const double weight = a.at(l, j);
            const double* cj = params.c.data.data() + j * params.c.cols;
            double* fj = out.data() + j * x.k;
            for (std::uint32_t c = 0; c < x.k; ++c)
                fj[c] += weight * (static_cast<double>(loc[c]) - cj[c]);
        }
    }
    return out;
}

Descriptor gem(const FeatureMap& x, const std::vector<double>& p) {
    require_nonempty(x, "gem");
    if (p.size() != x.k)
        throw InvalidInput("gem: expected " + std::to_string(x.k) +
                           " exponents, got " + std::to_string(p.size()));
    for (const double pc : p)
        if (!(pc > 0.0) || !std::isfinite(pc))
            throw InvalidInput("gem: exponents must be finite and > 0");

    const std::size_t n = x.locations();
    Descriptor out(x.k, 0.0);
    for (std::uint32_t c = 0; c < x.k; ++c) {
        const double pc = p[c];
        // Rescale by the channel's largest magnitude so large exponents
        // neither overflow nor flush to zero.
        double scale = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            const double v = static_cast<double>(x.data[l * x.k + c]);
            if (v < 0.0 && !is_integer(pc))
                throw InvalidInput(
                    "gem: negative activation with non-integer exponent on channel " +
                    std::to_string(c));
            scale = std::max(scale, std::abs(v));
        }
        if (scale == 0.0) continue;
        double acc = 0.0;
        for (std::size_t l = 0; l < n; ++l)
            acc += std::pow(static_cast<double>(x.data[l * x.k + c]) / scale, pc);
        out[c] = scale * signed_root(acc / static_cast<double>(n), pc);
    }
    return out;
}

Descriptor conv_ap(const FeatureMap& x, const ConvApParams& params) {
    require_nonempty(x, "conv_ap");
    if (params.projection.cols != x.k)
        throw InvalidInput("conv_ap: projection expects " +
                           std::to_string(params.projection.cols) +
                           " channels, map has " + std::to_string(x.k));
    if (params.s1 == 0 || params.s2 == 0 || params.s1 > x.h || params.s2 > x.w)
        throw InvalidInput("conv_ap: pooling grid " + std::to_string(params.s1) +
                           "x" + std::to_string(params.s2) +
                           " does not fit map " + std::to_string(x.h) + "x" +
                           std::to_string(x.w));

    const std::size_t kp = params.projection.rows;
    const std::size_t n = x.locations();
    // Project every location, then block-average.
    std::vector<double> projected(n * kp, 0.0);
    for (std::size_t l = 0; l < n; ++l) {
        const float* loc = x.data.data() + l * x.k;
        for (std::size_t j = 0; j < kp; ++j) {
            const double* row = params.projection.data.data() + j * x.k;
            double acc = 0.0;
            for (std::uint32_t c = 0; c < x.k; ++c)
                acc += row[c] * static_cast<double>(loc[c]);
            projected[l * kp + j] = acc;
        }
    }

    // Even partition with the remainder handed to the leading blocks.
    const auto bounds = [](std::uint32_t extent, std::uint32_t blocks) {
        std::vector<std::uint32_t> edges(blocks + 1, 0);
        const std::uint32_t base = extent / blocks;
        const std::uint32_t rem = extent % blocks;
        for (std::uint32_t i = 0; i < blocks; ++i)
            edges[i + 1] = edges[i] + base + (i < rem ? 1 : 0);
        return edges;
    };
    const auto row_edges = bounds(x.h, params.s1);
    const auto col_edges = bounds(x.w, params.s2);

    Descriptor out(static_cast<std::size_t>(params.s1) * params.s2 * kp, 0.0);
    for (std::uint32_t gi = 0; gi < params.s1; ++gi) {
        for (std::uint32_t gj = 0; gj < params.s2; ++gj) {
            const std::size_t cell =
                (static_cast<std::size_t>(gi) * params.s2 + gj) * kp;
            const std::size_t count =
                static_cast<std::size_t>(row_edges[gi + 1] - row_edges[gi]) *
                (col_edges[gj + 1] - col_edges[gj]);
            for (std::uint32_t y = row_edges[gi]; y < row_edges[gi + 1]; ++y)
                for (std::uint32_t xp = col_edges[gj]; xp < col_edges[gj + 1]; ++xp)
                    for (std::size_t j = 0; j < kp; ++j)
                        out[cell + j] +=
                            projected[(static_cast<std::size_t>(y) * x.w + xp) * kp + j];
            for (std::size_t j = 0; j < kp; ++j)
                out[cell + j] /= static_cast<double>(count);
        }
    }
    return out;
}

Descriptor eigenplaces(const FeatureMap& x, const EigenPlacesParams& params) {
    require_nonempty(x, "eigenplaces");
    if (params.projection.cols != x.k)
        throw InvalidInput("eigenplaces: projection expects " +
                           std::to_string(params.projection.cols) +
                           " channels, map has " + std::to_string(x.k));
    if (params.bias.size() != params.projection.rows)
        throw InvalidInput("eigenplaces: bias length " +
                           std::to_string(params.bias.size()) +
                           " does not match output dim " +
                           std::to_string(params.projection.rows));
    Descriptor pooled = gem(x, params.p);
    Descriptor out = matvec(params.projection, pooled);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += params.bias[i];
    return out;
}

Descriptor mixvpr(const FeatureMap& x, const MixVprParams& params) {
    require_nonempty(x, "mixvpr");
    const std::size_t d = x.locations();
    for (const auto& block : params.mixers)
        if (block.w1.rows != d || block.w1.cols != d || block.w2.rows != d ||
            block.w2.cols != d)
            throw InvalidInput("mixvpr: mixer weights must be " +
                               std::to_string(d) + "x" + std::to_string(d));
    if (params.depth_projection.cols != x.k)
        throw InvalidInput("mixvpr: depth projection expects " +
                           std::to_string(params.depth_projection.cols) +
                           " channels, map has " + std::to_string(x.k));
    if (params.row_projection.cols != d)
        throw InvalidInput("mixvpr: row projection expects " +
                           std::to_string(params.row_projection.cols) +
                           " locations, map has " + std::to_string(d));

    // Flatten channel-last storage to K rows of D spatial values.
    Matrix z(x.k, d);
    for (std::uint32_t c = 0; c < x.k; ++c)
        for (std::size_t l = 0; l < d; ++l)
            z.at(c, l) = static_cast<double>(x.data[l * x.k + c]);

    // Residual two-layer MLP over each row's spatial dimension.
    std::vector<double> row(d), hidden(d);
    for (const auto& block : params.mixers) {
        for (std::uint32_t c = 0; c < x.k; ++c) {
            for (std::size_t l = 0; l < d; ++l) row[l] = z.at(c, l);
            for (std::size_t i = 0; i < d; ++i) {
                double acc = 0.0;
                const double* w1i = block.w1.data.data() + i * d;
                for (std::size_t l = 0; l < d; ++l) acc += w1i[l] * row[l];
                hidden[i] = acc > 0.0 ? acc : 0.0;
            }
            for (std::size_t i = 0; i < d; ++i) {
                double acc = 0.0;
                const double* w2i = block.w2.data.data() + i * d;
                for (std::size_t l = 0; l < d; ++l) acc += w2i[l] * hidden[l];
                z.at(c, i) = row[i] + acc;
            }
        }
    }

    // Depth projection on the channel axis, then row projection on the
    // spatial axis: P = W_d * Z, F = P * W_r^T, flattened row-major.
    const Matrix p = matmul(params.depth_projection, z);
    const Matrix f = matmul(p, transpose(params.row_projection));
    return f.data;
}

Descriptor aggregate(Variant variant, const FeatureMap& x,
                     const AggregatorParams& params) {
    switch (variant) {
        case Variant::Spoc:
            if (!std::holds_alternative<SpocParams>(params))
                throw InvalidInput("aggregate: params are not SpocParams");
            return spoc(x);
        case Variant::NetVlad:
            if (const auto* p = std::get_if<NetVladParams>(&params)) return netvlad(x, *p);
            throw InvalidInput("aggregate: params are not NetVladParams");
        case Variant::Gem:
            if (const auto* p = std::get_if<GemParams>(&params)) return gem(x, p->p);
            throw InvalidInput("aggregate: params are not GemParams");
        case Variant::ConvAp:
            if (const auto* p = std::get_if<ConvApParams>(&params)) return conv_ap(x, *p);
            throw InvalidInput("aggregate: params are not ConvApParams");
        case Variant::EigenPlaces:
            if (const auto* p = std::get_if<EigenPlacesParams>(&params))
                return eigenplaces(x, *p);
            throw InvalidInput("aggregate: params are not EigenPlacesParams");
        case Variant::MixVpr:
            if (const auto* p = std::get_if<MixVprParams>(&params)) return mixvpr(x, *p);
            throw InvalidInput("aggregate: params are not MixVprParams");
    }
    throw InvalidInput("aggregate: unknown variant");
}

std::size_t descriptor_dim(Variant variant, const AggregatorParams& params,
                           std::uint32_t h, std::uint32_t w, std::uint32_t k) {
    (void)h;
    (void)w;
    switch (variant) {
        case Variant::Spoc: return k;
        case Variant::Gem: return k;
        case Variant::NetVlad:
            return std::get<NetVladParams>(params).clusters() * k;
        case Variant::ConvAp: {
            const auto& p = std::get<ConvApParams>(params);
            return static_cast<std::size_t>(p.s1) * p.s2 * p.projection.rows;
        }
        case Variant::EigenPlaces:
            return std::get<EigenPlacesParams>(params).projection.rows;
        case Variant::MixVpr: {
            const auto& p = std::get<MixVprParams>(params);
            return p.depth_projection.rows * p.row_projection.rows;
        }
    }
    throw InvalidInput("descriptor_dim: unknown variant");
}

namespace {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double bound) {
    Matrix m(rows, cols);
    for (auto& v : m.data) v = rng.uniform(-bound, bound);
    return m;
}

std::size_t divide_dim(std::size_t target, std::size_t divisor, const char* what) {
    if (target % divisor != 0)
        throw InvalidInput(std::string("init_params: target dim ") +
                           std::to_string(target) + " is not divisible by " +
                           what + " (" + std::to_string(divisor) + ")");
    return target / divisor;
}

} // namespace

AggregatorParams init_params(Variant variant, std::uint32_t h, std::uint32_t w,
                             std::uint32_t k, std::size_t target_dim,
                             std::uint64_t seed, double feature_lo,
                             double feature_hi) {
    if (k == 0 || h == 0 || w == 0)
        throw InvalidInput("init_params: empty feature map shape");
    Rng rng(seed);
    const std::size_t d = static_cast<std::size_t>(h) * w;
    const double k_bound = 1.0 / std::sqrt(static_cast<double>(k));
    const double d_bound = 1.0 / std::sqrt(static_cast<double>(d));

    switch (variant) {
        case Variant::Spoc:
            if (target_dim != 0 && target_dim != k)
                throw InvalidInput("init_params: spoc output dim is fixed to k=" +
                                   std::to_string(k));
            return SpocParams{};
        case Variant::Gem: {
            if (target_dim != 0 && target_dim != k)
                throw InvalidInput("init_params: gem output dim is fixed to k=" +
                                   std::to_string(k));
            GemParams p;
            p.p.assign(k, 3.0);
            return p;
        }
        case Variant::NetVlad: {
            const std::size_t s =
                target_dim == 0 ? 8 : divide_dim(target_dim, k, "k");
            if (s == 0) throw InvalidInput("init_params: netvlad needs >= 1 cluster");
            NetVladParams p;
            p.w = random_matrix(rng, s, k, k_bound);
            p.b.assign(s, 0.0);
            p.c = Matrix(s, k);
            for (auto& v : p.c.data) v = rng.uniform(feature_lo, feature_hi);
            return p;
        }
        case Variant::ConvAp: {
            ConvApParams p;
            p.s1 = std::min<std::uint32_t>(2, h);
            p.s2 = std::min<std::uint32_t>(2, w);
            const std::size_t cells = static_cast<std::size_t>(p.s1) * p.s2;
            const std::size_t kp =
                target_dim == 0 ? k : divide_dim(target_dim, cells, "pool cells");
            p.projection = random_matrix(rng, kp, k, k_bound);
            return p;
        }
        case Variant::EigenPlaces: {
            const std::size_t out = target_dim == 0 ? 512 : target_dim;
            EigenPlacesParams p;
            p.p.assign(k, 3.0);
            p.projection = random_matrix(rng, out, k, k_bound);
            p.bias.assign(out, 0.0);
            return p;
        }
        case Variant::MixVpr: {
            MixVprParams p;
            // Largest row count <= 4 that divides the requested dim.
            std::size_t rows = target_dim == 0 ? std::min<std::size_t>(4, d) : 1;
            if (target_dim != 0)
                for (std::size_t r = std::min<std::size_t>(4, target_dim); r >= 1; --r)
                    if (target_dim % r == 0) {
                        rows = r;
                        break;
                    }
            const std::size_t dp = target_dim == 0 ? k : target_dim / rows;
            p.mixers.resize(2);
            for (auto& block : p.mixers) {
                block.w1 = random_matrix(rng, d, d, d_bound);
                block.w2 = random_matrix(rng, d, d, d_bound);
            }
            p.depth_projection = random_matrix(rng, dp, k, k_bound);
            p.row_projection = random_matrix(rng, rows, d, d_bound);
            return p;
        }
    }
    throw InvalidInput("init_params: unknown variant");
}

} // namespace vpr
