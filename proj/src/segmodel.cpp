#include "clbench/segmodel.hpp"

#include <cmath>
#include <cstring>

#include "clbench/errors.hpp"

namespace clb {

namespace {

double sigmoid(double s) {
    if (s >= 0.0) {
        return 1.0 / (1.0 + std::exp(-s));
    }
    const double e = std::exp(s);
    return e / (1.0 + e);
}

struct PatchLayout {
    int r;
    int zlo, zhi; // patch extent in z, inclusive offsets
    int side;

    explicit PatchLayout(const SegArch& arch)
        : r(arch.patch_radius),
          zlo(arch.dims == 3 ? -arch.patch_radius : 0),
          zhi(arch.dims == 3 ? arch.patch_radius : 0),
          side(2 * arch.patch_radius + 1) {}
};

// Zero-padded local patch around (z, y, x), written in (dz, dy, dx) order.
void extract_patch(const ImageVolume& img, const PatchLayout& L, int z, int y, int x,
                   double* out) {
    const Shape& s = img.shape;
    int k = 0;
    for (int dz = L.zlo; dz <= L.zhi; ++dz) {
        const int zz = z + dz;
        const bool zok = zz >= 0 && zz < s.d;
        for (int dy = -L.r; dy <= L.r; ++dy) {
            const int yy = y + dy;
            const bool yok = zok && yy >= 0 && yy < s.h;
            if (yok && x - L.r >= 0 && x + L.r < s.w) {
                const double* row = &img.vox[s.index(zz, yy, x - L.r)];
                std::memcpy(out + k, row, sizeof(double) * L.side);
                k += L.side;
            } else {
                for (int dx = -L.r; dx <= L.r; ++dx) {
                    const int xx = x + dx;
                    out[k++] = (yok && xx >= 0 && xx < s.w) ? img.at(zz, yy, xx) : 0.0;
                }
            }
        }
    }
}

// Forward over the whole volume. When `hidden` is non-null it receives the
// pre-dropout tanh activations (n_vox x H) for reuse in the backward pass.
ProbVolume forward_impl(const SegModel& model, const ImageVolume& image,
                        const std::vector<double>* drop_scale,
                        std::vector<double>* hidden) {
    const SegArch& a = model.arch;
    const int H = a.hidden_width;
    const int P = a.patch_len();
    if (model.params.size() != a.param_count()) {
        throw StructuralError("segmodel: params length " + std::to_string(model.params.size()) +
                              " does not match architecture count " +
                              std::to_string(a.param_count()));
    }
    const double* W1 = model.params.data();
    const double* b1 = W1 + static_cast<std::size_t>(H) * P;
    const double* w2 = b1 + H;
    const double b2 = w2[H];

    const PatchLayout L(a);
    ProbVolume out(image.shape);
    const std::size_t n_vox = image.shape.count();
    if (hidden) hidden->assign(n_vox * H, 0.0);

    std::vector<double> patch(P);
    std::size_t vi = 0;
    for (int z = 0; z < image.shape.d; ++z) {
        for (int y = 0; y < image.shape.h; ++y) {
            for (int x = 0; x < image.shape.w; ++x, ++vi) {
                extract_patch(image, L, z, y, x, patch.data());
                double s = b2;
                double* hrow = hidden ? hidden->data() + vi * H : nullptr;
                for (int j = 0; j < H; ++j) {
                    const double* wrow = W1 + static_cast<std::size_t>(j) * P;
                    double u = b1[j];
                    for (int k = 0; k < P; ++k) u += wrow[k] * patch[k];
                    const double h = std::tanh(u);
                    if (hrow) hrow[j] = h;
                    s += w2[j] * (drop_scale ? (*drop_scale)[j] * h : h);
                }
                out.vox[vi] = sigmoid(s);
            }
        }
    }
    return out;
}

std::vector<double> draw_dropout_scale(const SegArch& a, Rng& rng) {
    // Unit j is zeroed with probability p, survivors rescaled by 1/(1-p).
    std::vector<double> scale(a.hidden_width, 0.0);
    const double p = a.dropout_rate;
    const double keep_scale = 1.0 / (1.0 - p);
    for (int j = 0; j < a.hidden_width; ++j) {
        scale[j] = (rng.next_double() >= p) ? keep_scale : 0.0;
    }
    return scale;
}

} // namespace

SegModel make_model(const SegArch& arch, Rng rng) {
    SegModel model;
    model.arch = arch;
    model.params.resize(arch.param_count());
    const double a1 = 1.0 / std::sqrt(static_cast<double>(arch.patch_len()));
    const double a2 = 1.0 / std::sqrt(static_cast<double>(arch.hidden_width));
    const std::size_t w1_end = static_cast<std::size_t>(arch.hidden_width) * arch.patch_len();
    const std::size_t b1_end = w1_end + arch.hidden_width;
    const std::size_t w2_end = b1_end + arch.hidden_width;
    for (std::size_t i = 0; i < model.params.size(); ++i) {
        if (i < w1_end) {
            model.params[i] = a1 * (2.0 * rng.next_double() - 1.0);
        } else if (i < b1_end) {
            model.params[i] = 0.0;
        } else if (i < w2_end) {
            model.params[i] = a2 * (2.0 * rng.next_double() - 1.0);
        } else {
            model.params[i] = 0.0;
        }
    }
    return model;
}

ProbVolume forward(const SegModel& model, const ImageVolume& image) {
    return forward_impl(model, image, nullptr, nullptr);
}

ProbVolume forward_dropout(const SegModel& model, const ImageVolume& image, Rng& rng) {
    const std::vector<double> scale = draw_dropout_scale(model.arch, rng);
    return forward_impl(model, image, &scale, nullptr);
}

double dice_loss(const ProbVolume& pred, const MaskVolume& truth) {
    require_same_shape(pred.shape, truth.shape, "dice_loss");
    double inter = 0.0, psum = 0.0, tsum = 0.0;
    for (std::size_t i = 0; i < pred.vox.size(); ++i) {
        const double p = pred.vox[i];
        const double t = static_cast<double>(truth.vox[i]);
        inter += p * t;
        psum += p;
        tsum += t;
    }
    return 1.0 - (2.0 * inter + kDiceSmoothing) / (psum + tsum + kDiceSmoothing);
}

std::pair<double, ParamVector> loss_and_grad(const SegModel& model,
                                             const std::vector<const Sample*>& batch,
                                             Rng* dropout_rng) {
    if (batch.empty()) throw StructuralError("loss_and_grad: empty batch");
    const SegArch& a = model.arch;
    const int H = a.hidden_width;
    const int P = a.patch_len();
    const double* W1 = model.params.data();
    const double* w2 = model.params.data() + static_cast<std::size_t>(H) * P + H;
    const PatchLayout L(a);

    ParamVector grad(model.params.size(), 0.0);
    double* gW1 = grad.data();
    double* gb1 = gW1 + static_cast<std::size_t>(H) * P;
    double* gw2 = gb1 + H;
    double* gb2 = gw2 + H;

    const double inv_b = 1.0 / static_cast<double>(batch.size());
    double loss_sum = 0.0;
    std::vector<double> hidden;
    std::vector<double> patch(P);

    for (const Sample* sample : batch) {
        std::vector<double> scale;
        const std::vector<double>* scale_ptr = nullptr;
        if (dropout_rng) {
            scale = draw_dropout_scale(a, *dropout_rng);
            scale_ptr = &scale;
        }
        const ProbVolume pred = forward_impl(model, sample->image, scale_ptr, &hidden);
        const MaskVolume& truth = sample->mask;
        require_same_shape(pred.shape, truth.shape, "loss_and_grad");

        double inter = 0.0, psum = 0.0, tsum = 0.0;
        for (std::size_t i = 0; i < pred.vox.size(); ++i) {
            inter += pred.vox[i] * truth.vox[i];
            psum += pred.vox[i];
            tsum += truth.vox[i];
        }
        const double denom = psum + tsum + kDiceSmoothing;
        const double numer = 2.0 * inter + kDiceSmoothing;
        loss_sum += 1.0 - numer / denom;

        // dLoss/dp_x = -(2*t_x*denom - numer) / denom^2, then chain through
        // sigmoid, the output layer and tanh back to every parameter.
        const double inv_d2 = 1.0 / (denom * denom);
        std::size_t vi = 0;
        for (int z = 0; z < pred.shape.d; ++z) {
            for (int y = 0; y < pred.shape.h; ++y) {
                for (int x = 0; x < pred.shape.w; ++x, ++vi) {
                    const double p = pred.vox[vi];
                    const double t = static_cast<double>(truth.vox[vi]);
                    const double gp = -(2.0 * t * denom - numer) * inv_d2;
                    const double gs = gp * p * (1.0 - p) * inv_b;
                    if (gs == 0.0) continue;
                    *gb2 += gs;
                    extract_patch(sample->image, L, z, y, x, patch.data());
                    const double* hrow = hidden.data() + vi * H;
                    for (int j = 0; j < H; ++j) {
                        const double sj = scale_ptr ? scale[j] : 1.0;
                        const double h = hrow[j];
                        gw2[j] += gs * sj * h;
                        if (sj == 0.0) continue;
                        const double gu = gs * w2[j] * sj * (1.0 - h * h);
                        gb1[j] += gu;
                        double* gW1row = gW1 + static_cast<std::size_t>(j) * P;
                        for (int k = 0; k < P; ++k) gW1row[k] += gu * patch[k];
                    }
                }
            }
        }
    }
    const double loss = loss_sum * inv_b;
    if (!std::isfinite(loss)) throw NumericError("loss_and_grad: non-finite loss");
    return {loss, std::move(grad)};
}

MaskVolume threshold_probs(const ProbVolume& probs, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw ConfigError("threshold must lie strictly inside (0, 1)");
    }
    MaskVolume mask(probs.shape);
    for (std::size_t i = 0; i < probs.vox.size(); ++i) {
        mask.vox[i] = probs.vox[i] >= threshold ? 1 : 0;
    }
    return mask;
}

MaskVolume predict_mask(const SegModel& model, const ImageVolume& image, double threshold) {
    return threshold_probs(forward(model, image), threshold);
}

} // namespace clb
