#pragma once

#include <utility>
#include <vector>

#include "clbench/numcore.hpp"
#include "clbench/volume.hpp"

namespace clb {

// Patchwise two-layer scorer: for every voxel, the local intensity patch is
// pushed through a tanh hidden layer and a sigmoid output. Small enough to
// train in seconds, yet it exposes everything the benchmark exercises:
// dropout uncertainty, Dice training, sensitivity to acquisition shifts.
struct SegArch {
    int patch_radius = 2;
    int hidden_width = 16;
    double dropout_rate = 0.3; // in [0, 1)
    int dims = 2;              // 2: patch spans (1, 2r+1, 2r+1); 3: full cube

    int patch_len() const {
        const int side = 2 * patch_radius + 1;
        return (dims == 3) ? side * side * side : side * side;
    }
    // W1 (hidden x patch) + b1 + w2 + b2
    std::size_t param_count() const {
        return static_cast<std::size_t>(hidden_width) * patch_len() + 2 * hidden_width + 1;
    }
};

struct SegModel {
    SegArch arch;
    ParamVector params;
};

// Random init, scaled by fan-in so the scorer starts near the linear regime.
SegModel make_model(const SegArch& arch, Rng rng);

// Deterministic forward pass (dropout off).
ProbVolume forward(const SegModel& model, const ImageVolume& image);

// MC-dropout forward pass: one Bernoulli mask over hidden units per call,
// survivors rescaled by 1/(1-p).
ProbVolume forward_dropout(const SegModel& model, const ImageVolume& image, Rng& rng);

// 1 - (2*sum(p*t) + eps) / (sum(p) + sum(t) + eps); smoothing avoids 0/0 on empty masks.
inline constexpr double kDiceSmoothing = 1e-5;
double dice_loss(const ProbVolume& pred, const MaskVolume& truth);

// Mean Dice loss over the batch and its analytic gradient. When dropout_rng
// is non-null a fresh mask is drawn per batch element and the same mask is
// used in the forward and backward passes.
std::pair<double, ParamVector> loss_and_grad(const SegModel& model,
                                             const std::vector<const Sample*>& batch,
                                             Rng* dropout_rng = nullptr);

// prob >= threshold -> 1. Threshold must lie strictly inside (0, 1).
MaskVolume predict_mask(const SegModel& model, const ImageVolume& image,
                        double threshold = 0.5);

MaskVolume threshold_probs(const ProbVolume& probs, double threshold = 0.5);

} // namespace clb
