#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "clbench/rng.hpp"

namespace clb {

// Flat model parameter vector, the only thing clients and server exchange.
// Every vector in one experiment has the same fixed length.
using ParamVector = std::vector<double>;

// Serialized size in bytes of one model exchange (raw 64-bit payload).
inline uint64_t serialized_size_bytes(const ParamVector& v) {
    return static_cast<uint64_t>(v.size()) * 8u;
}

uint64_t param_checksum(const ParamVector& v);

// Throws NumericError naming the first offending index if any entry is not finite.
void require_finite(const ParamVector& v, const char* what);

// alpha*x + y, accumulated in index order.
ParamVector axpy(double alpha, const ParamVector& x, const ParamVector& y);

double dot(const ParamVector& x, const ParamVector& y);
double l2_norm(const ParamVector& x);

// Convex combination sum_i w_i * v_i in client index order. Weights must be
// non-negative and sum to 1 within 1e-12.
ParamVector weighted_mean(const std::vector<ParamVector>& vectors,
                          const std::vector<double>& weights);

enum class OptKind : uint8_t {
    Sgd,   // plain SGD, also the base step of DP-SGD
    AdamW, // adaptive moments with decoupled weight decay
};

struct OptimizerSpec {
    OptKind kind = OptKind::AdamW;
    double learning_rate = 0.001;
    double weight_decay = 0.01; // AdamW only, applied directly to params
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct OptimizerState {
    OptimizerSpec spec;
    int64_t step = 0;
    ParamVector m; // first moment, AdamW only
    ParamVector v; // second moment, AdamW only
};

OptimizerState make_optimizer(const OptimizerSpec& spec, std::size_t param_count);

// One optimizer step; takes state and params by value and returns the
// advanced pair, so callers can run steps concurrently on private copies.
std::pair<OptimizerState, ParamVector> optimizer_step(OptimizerState state,
                                                      ParamVector params,
                                                      const ParamVector& grad);

// Central-difference gradient, the oracle every analytic gradient is checked against.
ParamVector finite_diff_grad(const std::function<double(const ParamVector&)>& f,
                             const ParamVector& params, double h);

} // namespace clb
