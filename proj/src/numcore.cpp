#include "clbench/numcore.hpp"

#include <cmath>
#include <string>

#include "clbench/checksum.hpp"
#include "clbench/errors.hpp"

namespace clb {

uint64_t param_checksum(const ParamVector& v) {
    return fnv1a64(v.data(), v.size() * sizeof(double));
}

void require_finite(const ParamVector& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw NumericError(std::string(what) + ": non-finite entry at index " +
                               std::to_string(i));
        }
    }
}

namespace {

void require_same_length(const ParamVector& x, const ParamVector& y, const char* op) {
    if (x.size() != y.size()) {
        throw StructuralError(std::string(op) + ": length mismatch (" +
                              std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
    }
}

} // namespace

ParamVector axpy(double alpha, const ParamVector& x, const ParamVector& y) {
    require_same_length(x, y, "axpy");
    ParamVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = alpha * x[i] + y[i];
    }
    return out;
}

double dot(const ParamVector& x, const ParamVector& y) {
    require_same_length(x, y, "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i] * y[i];
    }
    return acc;
}

double l2_norm(const ParamVector& x) {
    return std::sqrt(dot(x, x));
}

ParamVector weighted_mean(const std::vector<ParamVector>& vectors,
                          const std::vector<double>& weights) {
    if (vectors.empty() || vectors.size() != weights.size()) {
        throw StructuralError("weighted_mean: need equally many vectors and weights");
    }
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ConfigError("weighted_mean: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12) {
        throw ConfigError("weighted_mean: weights sum to " + std::to_string(wsum) +
                          ", expected 1 within 1e-12");
    }
    const std::size_t n = vectors[0].size();
    ParamVector out(n, 0.0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        require_same_length(vectors[i], out, "weighted_mean");
        const double w = weights[i];
        for (std::size_t j = 0; j < n; ++j) {
            out[j] += w * vectors[i][j];
        }
    }
    return out;
}

OptimizerState make_optimizer(const OptimizerSpec& spec, std::size_t param_count) {
    if (spec.learning_rate <= 0.0) throw ConfigError("optimizer: learning rate must be > 0");
    OptimizerState state;
    state.spec = spec;
    if (spec.kind == OptKind::AdamW) {
        state.m.assign(param_count, 0.0);
        state.v.assign(param_count, 0.0);
    }
    return state;
}

std::pair<OptimizerState, ParamVector> optimizer_step(OptimizerState state,
                                                      ParamVector params,
                                                      const ParamVector& grad) {
    require_same_length(params, grad, "optimizer_step");
    require_finite(grad, "optimizer_step gradient");
    const OptimizerSpec& s = state.spec;
    state.step += 1;
    if (s.kind == OptKind::Sgd) {
        for (std::size_t i = 0; i < params.size(); ++i) {
            params[i] -= s.learning_rate * grad[i];
        }
        return {std::move(state), std::move(params)};
    }
    // AdamW: bias-corrected moments, decay decoupled from the gradient path.
    const double bc1 = 1.0 - std::pow(s.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(s.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = s.beta1 * state.m[i] + (1.0 - s.beta1) * grad[i];
        state.v[i] = s.beta2 * state.v[i] + (1.0 - s.beta2) * grad[i] * grad[i];
        const double mhat = state.m[i] / bc1;
        const double vhat = state.v[i] / bc2;
        params[i] -= s.learning_rate * (mhat / (std::sqrt(vhat) + s.eps) + s.weight_decay * params[i]);
    }
    return {std::move(state), std::move(params)};
}

ParamVector finite_diff_grad(const std::function<double(const ParamVector&)>& f,
                             const ParamVector& params, double h) {
    if (h <= 0.0) throw ConfigError("finite_diff_grad: h must be > 0");
    ParamVector grad(params.size());
    ParamVector probe = params;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = probe[i];
        probe[i] = saved + h;
        const double fp = f(probe);
        probe[i] = saved - h;
        const double fm = f(probe);
        probe[i] = saved;
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw NumericError("finite_diff_grad: non-finite loss at index " + std::to_string(i));
        }
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

} // namespace clb
