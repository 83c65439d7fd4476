#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clbench/rng.hpp"
#include "clbench/volume.hpp"

namespace clb {

// One center's acquisition fingerprint. Gain/offset model scanner calibration,
// noise models SNR, the bias field models a coil-style multiplicative
// artifact, and the organ size distribution models population differences.
struct CenterProfile {
    std::string center_id;
    int sample_count = 0;
    double gain = 1.0;
    double offset = 0.0;
    double noise_scale = 0.0;
    double bias_strength = 0.0; // 0 = none
    double organ_radius_mean = 7.0; // voxels
    double organ_radius_std = 1.0;
    bool test_only = false;
};

struct ClientDataset {
    std::string center_id;
    std::vector<Sample> train;
    std::vector<Sample> test;
    uint64_t provenance_seed = 0;
    bool test_only = false;
};

// The six-center default: four training centers with distinct acquisition
// profiles (one artifact-heavy), plus a tiny and a mid-sized test-only center.
std::vector<CenterProfile> default_profiles();

// Renders `sample_count` blurred-ellipsoid organs with the profile's
// gain/offset/noise/bias. Pure function of (profile, rng key, shape).
ClientDataset generate_center(const CenterProfile& profile, Rng rng, Shape shape);

struct PreprocessSpec {
    Shape target{1, 32, 32};
    bool normalize = true;     // z-score over the non-padded region
    bool bias_correct = false; // divide by a large-kernel smoothed copy
    int smooth_radius = 8;
    double flip_prob = 0.5; // applied only when a training rng is supplied
};

// Mirror along the width axis; applying it twice is the identity.
void flip_width(ImageVolume& img);
void flip_width(MaskVolume& mask);

// Bias-correct, crop/pad to target, optional random flip (train only), then
// normalize. flat_count, when given, counts zero-variance images that had
// their std substituted by 1.
Sample preprocess(const Sample& sample, const PreprocessSpec& spec,
                  Rng* train_rng = nullptr, int* flat_count = nullptr);

// CLBENCH1 container: magic, text header, raw f64/u8 payload, CRC-32 trailer.
void save_dataset(const ClientDataset& ds, const std::string& path);
ClientDataset load_dataset(const std::string& path);

// Binary PGM (P5, maxval 1); one file per slice for depth > 1 (suffix _z###).
void write_mask_pgm(const MaskVolume& mask, const std::string& path);

} // namespace clb
