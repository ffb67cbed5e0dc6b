#include "vpr/model.hpp"

#include <cmath>

#include "vpr/aggregators.hpp"
#include "vpr/rng.hpp"

namespace vpr {

ParamLayout layout_of(const ModelConfig& config) {
    ParamLayout layout;
    layout.vis_k = config.vis_k;
    layout.str_k = config.str_k;
    layout.proj_dim = config.proj_dim;
    return layout;
}

std::vector<double> params_to_vector(const ModelParams& params) {
    std::vector<double> theta;
    theta.reserve(params.p_vis.size() + params.p_str.size() +
                  params.w.data.size() + 2);
    theta.insert(theta.end(), params.p_vis.begin(), params.p_vis.end());
    theta.insert(theta.end(), params.p_str.begin(), params.p_str.end());
    theta.insert(theta.end(), params.w.data.begin(), params.w.data.end());
    theta.push_back(params.w_v);
    theta.push_back(params.w_s);
    return theta;
}

ModelParams params_from_vector(const ModelConfig& config,
                               const std::vector<double>& theta) {
    const ParamLayout layout = layout_of(config);
    if (theta.size() != layout.size())
        throw InvalidInput("params_from_vector: expected " +
                           std::to_string(layout.size()) + " values, got " +
                           std::to_string(theta.size()));
    ModelParams params;
    params.p_vis.assign(theta.begin(), theta.begin() + config.vis_k);
    params.p_str.assign(theta.begin() + layout.p_str_offset(),
                        theta.begin() + layout.p_str_offset() + config.str_k);
    params.w = Matrix(config.proj_dim, config.vis_k);
    std::copy(theta.begin() + layout.w_offset(),
              theta.begin() + layout.w_v_offset(), params.w.data.begin());
    params.w_v = theta[layout.w_v_offset()];
    params.w_s = theta[layout.w_s_offset()];
    return params;
}

ModelParams init_model_params(const ModelConfig& config, std::uint64_t seed,
                              double init_p) {
    if (config.vis_k == 0 || config.str_k == 0 || config.proj_dim == 0)
        throw InvalidInput("init_model_params: empty model shape");
    if (!(init_p > 0.0))
        throw InvalidInput("init_model_params: init_p must be > 0");
    Rng rng(seed);
    ModelParams params;
    params.p_vis.assign(config.vis_k, init_p);
    params.p_str.assign(config.str_k, init_p);
    params.w = Matrix(config.proj_dim, config.vis_k);
    const double bound = 1.0 / std::sqrt(static_cast<double>(config.vis_k));
    for (auto& v : params.w.data) v = rng.uniform(-bound, bound);
    params.w_v = 1.0;
    params.w_s = 1.0;
    return params;
}

namespace {

void check_params(const ModelConfig& config, const ModelParams& params) {
    if (params.p_vis.size() != config.vis_k ||
        params.p_str.size() != config.str_k ||
        params.w.rows != config.proj_dim || params.w.cols != config.vis_k)
        throw InvalidInput("model: parameter shapes do not match the config");
}

void check_sample(const ModelConfig& config, const ModelSample& sample) {
    if (sample.visual.h != config.vis_h || sample.visual.w != config.vis_w ||
        sample.visual.k != config.vis_k)
        throw InvalidInput("model: visual map shape does not match the config");
    if (sample.structural.h != config.str_h ||
        sample.structural.w != config.str_w ||
        sample.structural.k != config.str_k)
        throw InvalidInput("model: structural map shape does not match the config");
}

void check_groups(const Batch& batch) {
    if (batch.groups.empty()) throw InvalidInput("model: batch has no groups");
    for (const auto& group : batch.groups) {
        if (group.positives.empty() || group.negatives.empty())
            throw InvalidInput("model: group needs >= 1 positive and negative");
        auto in_range = [&](std::size_t i) { return i < batch.samples.size(); };
        if (!in_range(group.query))
            throw InvalidInput("model: group query index out of range");
        for (const std::size_t i : group.positives)
            if (!in_range(i)) throw InvalidInput("model: positive index out of range");
        for (const std::size_t i : group.negatives)
            if (!in_range(i)) throw InvalidInput("model: negative index out of range");
    }
}

// Generalized mean per channel plus its exponent derivative, evaluated with
// the same max-rescaling as gem() so both agree to the last bit.
void gem_value_grad(const FeatureMap& x, const std::vector<double>& p,
                    std::vector<double>& value, std::vector<double>& dvalue) {
    const std::size_t n = x.locations();
    value.assign(x.k, 0.0);
    dvalue.assign(x.k, 0.0);
    for (std::uint32_t c = 0; c < x.k; ++c) {
        const double pc = p[c];
        if (!(pc > 0.0))
            throw InvalidInput("model: pooling exponents must stay > 0");
        double scale = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            const double v = static_cast<double>(x.data[l * x.k + c]);
            if (v < 0.0)
                throw InvalidInput("model: negative activations are not supported");
            scale = std::max(scale, v);
        }
        if (scale == 0.0) continue;
        double s = 0.0;  // mean t^p
        double sl = 0.0; // mean t^p ln t
        for (std::size_t l = 0; l < n; ++l) {
            const double t = static_cast<double>(x.data[l * x.k + c]) / scale;
            if (t == 0.0) continue;
            const double tp = std::pow(t, pc);
            s += tp;
            sl += tp * std::log(t);
        }
        s /= static_cast<double>(n);
        sl /= static_cast<double>(n);
        const double g = scale * std::pow(s, 1.0 / pc);
        value[c] = g;
        dvalue[c] = g * (-std::log(s) / (pc * pc) + sl / (pc * s));
    }
}

struct SampleCache {
    std::vector<double> g_v, dg_v, g_s, dg_s;
    Descriptor f_v, f_s;
    double norm_v = 0.0, norm_s = 0.0, norm_z = 0.0;
    Descriptor head_r, head_b, head_f;
};

SampleCache forward_cached(const ModelConfig& config, const ModelParams& params,
                           const ModelSample& sample) {
    check_sample(config, sample);
    SampleCache cache;
    gem_value_grad(sample.visual, params.p_vis, cache.g_v, cache.dg_v);
    gem_value_grad(sample.structural, params.p_str, cache.g_s, cache.dg_s);
    cache.f_v = matvec(params.w, cache.g_v);
    cache.f_s = cache.g_s;
    cache.norm_v = l2_norm(cache.f_v);
    cache.norm_s = l2_norm(cache.f_s);
    if (cache.norm_v == 0.0 || cache.norm_s == 0.0)
        throw InvalidInput("model: head descriptor collapsed to zero norm");
    cache.head_r = l2_normalize(cache.f_v);
    cache.head_b = l2_normalize(cache.f_s);
    Descriptor z = fuse(cache.f_v, cache.f_s, {params.w_v, params.w_s}, false);
    cache.norm_z = l2_norm(z);
    if (cache.norm_z == 0.0)
        throw InvalidInput("model: fused descriptor collapsed to zero norm");
    cache.head_f = l2_normalize(z);
    return cache;
}

} // namespace

HeadDescriptors model_forward(const ModelConfig& config,
                              const ModelParams& params,
                              const ModelSample& sample) {
    check_params(config, params);
    SampleCache cache = forward_cached(config, params, sample);
    return HeadDescriptors{std::move(cache.head_f), std::move(cache.head_r),
                           std::move(cache.head_b)};
}

MultiHeadLoss model_loss(const ModelConfig& config, const ModelParams& params,
                         const Batch& batch) {
    check_params(config, params);
    check_groups(batch);
    std::vector<HeadDescriptors> heads;
    heads.reserve(batch.samples.size());
    for (const auto& sample : batch.samples)
        heads.push_back(model_forward(config, params, sample));

    MultiHeadBatch views;
    for (const auto& group : batch.groups) {
        TripletGroup f, r, b;
        f.query = heads[group.query].fused;
        r.query = heads[group.query].visual;
        b.query = heads[group.query].structural;
        for (const std::size_t i : group.positives) {
            f.positives.push_back(heads[i].fused);
            r.positives.push_back(heads[i].visual);
            b.positives.push_back(heads[i].structural);
        }
        for (const std::size_t i : group.negatives) {
            f.negatives.push_back(heads[i].fused);
            r.negatives.push_back(heads[i].visual);
            b.negatives.push_back(heads[i].structural);
        }
        views.fused.push_back(std::move(f));
        views.visual.push_back(std::move(r));
        views.structural.push_back(std::move(b));
    }
    return multi_head_loss(views, config.loss);
}

GradientResult analytic_gradients(const ModelConfig& config,
                                  const ModelParams& params, const Batch& batch,
                                  double boundary_band) {
    check_params(config, params);
    check_groups(batch);

    std::vector<SampleCache> caches;
    caches.reserve(batch.samples.size());
    for (const auto& sample : batch.samples)
        caches.push_back(forward_cached(config, params, sample));

    std::size_t triplets = 0;
    for (const auto& group : batch.groups)
        triplets += group.positives.size() * group.negatives.size();

    const ParamLayout layout = layout_of(config);
    GradientResult result;
    result.grad.assign(layout.size(), 0.0);

    // Per-sample loss gradients w.r.t. each head descriptor.
    const std::size_t n_samples = batch.samples.size();
    std::vector<Descriptor> grad_f(n_samples), grad_r(n_samples), grad_b(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        grad_f[s].assign(caches[s].head_f.size(), 0.0);
        grad_r[s].assign(caches[s].head_r.size(), 0.0);
        grad_b[s].assign(caches[s].head_b.size(), 0.0);
    }

    struct HeadView {
        const Descriptor& (*get)(const SampleCache&);
        std::vector<Descriptor>* grads;
        double weight;
        double* loss_slot;
    };
    static const auto get_f = [](const SampleCache& c) -> const Descriptor& {
        return c.head_f;
    };
    static const auto get_r = [](const SampleCache& c) -> const Descriptor& {
        return c.head_r;
    };
    static const auto get_b = [](const SampleCache& c) -> const Descriptor& {
        return c.head_b;
    };
    HeadView views[3] = {
        {+get_f, &grad_f, config.loss.alpha, &result.loss.fused},
        {+get_r, &grad_r, config.loss.beta, &result.loss.visual},
        {+get_b, &grad_b, config.loss.gamma, &result.loss.structural},
    };

    constexpr double kTinyDistance = 1e-12;
    for (auto& view : views) {
        double acc = 0.0;
        for (const auto& group : batch.groups) {
            const Descriptor& q = view.get(caches[group.query]);
            std::vector<double> d_pos(group.positives.size());
            for (std::size_t i = 0; i < group.positives.size(); ++i)
                d_pos[i] = euclidean(q, view.get(caches[group.positives[i]]));
            for (const std::size_t ni : group.negatives) {
                const Descriptor& u_n = view.get(caches[ni]);
                const double d_neg = euclidean(q, u_n);
                for (std::size_t pi = 0; pi < group.positives.size(); ++pi) {
                    const double z = d_pos[pi] - d_neg + config.loss.margin;
                    acc += std::max(z, 0.0);
                    if (std::abs(z) <= boundary_band) ++result.boundary_triplets;
                    if (z <= 0.0) continue;
                    const double coeff =
                        view.weight / static_cast<double>(triplets);
                    const Descriptor& u_p = view.get(caches[group.positives[pi]]);
                    Descriptor& gq = (*view.grads)[group.query];
                    Descriptor& gp = (*view.grads)[group.positives[pi]];
                    Descriptor& gn = (*view.grads)[ni];
                    if (d_pos[pi] > kTinyDistance) {
                        const double c = coeff / d_pos[pi];
                        for (std::size_t j = 0; j < q.size(); ++j) {
                            const double diff = q[j] - u_p[j];
                            gq[j] += c * diff;
                            gp[j] -= c * diff;
                        }
                    } else {
                        ++result.degenerate_distances;
                    }
                    if (d_neg > kTinyDistance) {
                        const double c = coeff / d_neg;
                        for (std::size_t j = 0; j < q.size(); ++j) {
                            const double diff = q[j] - u_n[j];
                            gq[j] -= c * diff;
                            gn[j] += c * diff;
                        }
                    } else {
                        ++result.degenerate_distances;
                    }
                }
            }
        }
        *view.loss_slot = acc / static_cast<double>(triplets);
    }
    result.loss.total = config.loss.alpha * result.loss.fused +
                        config.loss.beta * result.loss.visual +
                        config.loss.gamma * result.loss.structural;

    // Pull the head gradients back to the trainables sample by sample.
    const std::size_t dv = config.proj_dim;
    const auto normalize_pullback = [](const Descriptor& unit,
                                       const Descriptor& g, double norm) {
        double dot = 0.0;
        for (std::size_t j = 0; j < unit.size(); ++j) dot += unit[j] * g[j];
        Descriptor out(unit.size());
        for (std::size_t j = 0; j < unit.size(); ++j)
            out[j] = (g[j] - unit[j] * dot) / norm;
        return out;
    };

    for (std::size_t s = 0; s < n_samples; ++s) {
        const SampleCache& cache = caches[s];
        const Descriptor gz =
            normalize_pullback(cache.head_f, grad_f[s], cache.norm_z);
        Descriptor g_fv =
            normalize_pullback(cache.head_r, grad_r[s], cache.norm_v);
        Descriptor g_fs =
            normalize_pullback(cache.head_b, grad_b[s], cache.norm_s);
        for (std::size_t j = 0; j < dv; ++j) {
            result.grad[layout.w_v_offset()] += cache.f_v[j] * gz[j];
            g_fv[j] += params.w_v * gz[j];
        }
        for (std::size_t j = 0; j < config.str_k; ++j) {
            result.grad[layout.w_s_offset()] += cache.f_s[j] * gz[dv + j];
            g_fs[j] += params.w_s * gz[dv + j];
        }
        for (std::size_t i = 0; i < dv; ++i)
            for (std::size_t c = 0; c < config.vis_k; ++c)
                result.grad[layout.w_offset() + i * config.vis_k + c] +=
                    g_fv[i] * cache.g_v[c];
        for (std::size_t c = 0; c < config.vis_k; ++c) {
            double back = 0.0;
            for (std::size_t i = 0; i < dv; ++i)
                back += g_fv[i] * params.w.at(i, c);
            result.grad[layout.p_vis_offset() + c] += back * cache.dg_v[c];
        }
        for (std::size_t c = 0; c < config.str_k; ++c)
            result.grad[layout.p_str_offset() + c] += g_fs[c] * cache.dg_s[c];
    }
    return result;
}

} // namespace vpr
