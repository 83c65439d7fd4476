#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clbench/errors.hpp"

namespace clb {

// Row-major (depth, height, width) voxel grid; depth = 1 for 2D.
struct Shape {
    int d = 1;
    int h = 0;
    int w = 0;

    std::size_t count() const { return static_cast<std::size_t>(d) * h * w; }
    std::size_t index(int z, int y, int x) const {
        return (static_cast<std::size_t>(z) * h + y) * w + x;
    }
    bool operator==(const Shape&) const = default;
    std::string str() const {
        return std::to_string(d) + "x" + std::to_string(h) + "x" + std::to_string(w);
    }
};

struct ImageVolume {
    Shape shape;
    std::vector<double> vox;

    ImageVolume() = default;
    explicit ImageVolume(Shape s, double fill = 0.0) : shape(s), vox(s.count(), fill) {}
    double& at(int z, int y, int x) { return vox[shape.index(z, y, x)]; }
    double at(int z, int y, int x) const { return vox[shape.index(z, y, x)]; }
};

struct MaskVolume {
    Shape shape;
    std::vector<uint8_t> vox; // strictly 0 or 1

    MaskVolume() = default;
    explicit MaskVolume(Shape s, uint8_t fill = 0) : shape(s), vox(s.count(), fill) {}
    uint8_t& at(int z, int y, int x) { return vox[shape.index(z, y, x)]; }
    uint8_t at(int z, int y, int x) const { return vox[shape.index(z, y, x)]; }
    bool operator==(const MaskVolume&) const = default;
};

struct ProbVolume {
    Shape shape;
    std::vector<double> vox; // entries in [0, 1]

    ProbVolume() = default;
    explicit ProbVolume(Shape s, double fill = 0.0) : shape(s), vox(s.count(), fill) {}
};

struct Sample {
    ImageVolume image;
    MaskVolume mask;
};

inline void require_same_shape(const Shape& a, const Shape& b, const char* op) {
    if (!(a == b)) {
        throw StructuralError(std::string(op) + ": shape mismatch (" + a.str() + " vs " + b.str() + ")");
    }
}

} // namespace clb
