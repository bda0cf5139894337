#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Shared domain types for sparse disparity hints and dense disparity maps.
//
// Indexing convention: (x, y) = (row, column), row-major storage. A hint
// value of 0 means "no hint"; any stored hint must be finite and > 0.

namespace hintex {

struct HintMap {
    int height = 0;
    int width = 0;
    std::vector<double> values;  // 0 = absent, > 0 = disparity in pixels

    HintMap() = default;
    HintMap(int h, int w)
        : height(h), width(w), values(static_cast<std::size_t>(h) * w, 0.0) {}

    double& at(int x, int y) { return values[static_cast<std::size_t>(x) * width + y]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(x) * width + y]; }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < height && y >= 0 && y < width;
    }
    std::size_t size() const { return values.size(); }
};

struct DisparityMap {
    int height = 0;
    int width = 0;
    std::vector<double> values;
    std::vector<std::uint8_t> valid;  // invalid pixels are excluded from every metric

    DisparityMap() = default;
    DisparityMap(int h, int w)
        : height(h),
          width(w),
          values(static_cast<std::size_t>(h) * w, 0.0),
          valid(static_cast<std::size_t>(h) * w, 1) {}

    double& at(int x, int y) { return values[static_cast<std::size_t>(x) * width + y]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(x) * width + y]; }
    bool is_valid(int x, int y) const {
        return valid[static_cast<std::size_t>(x) * width + y] != 0;
    }
    void set_valid(int x, int y, bool v) {
        valid[static_cast<std::size_t>(x) * width + y] = v ? 1 : 0;
    }
    std::size_t size() const { return values.size(); }
};

// 3-channel color image, channels normalized to [0,1]. 8-bit sources are
// divided by 255 at ingestion (see io).
struct RgbImage {
    int height = 0;
    int width = 0;
    std::vector<double> values;  // 3 per pixel, interleaved

    RgbImage() = default;
    RgbImage(int h, int w)
        : height(h), width(w), values(static_cast<std::size_t>(h) * w * 3, 0.0) {}

    double* px(int x, int y) { return &values[(static_cast<std::size_t>(x) * width + y) * 3]; }
    const double* px(int x, int y) const {
        return &values[(static_cast<std::size_t>(x) * width + y) * 3];
    }
};

struct GrayImage {
    int height = 0;
    int width = 0;
    std::vector<double> values;

    GrayImage() = default;
    GrayImage(int h, int w)
        : height(h), width(w), values(static_cast<std::size_t>(h) * w, 0.0) {}

    double& at(int x, int y) { return values[static_cast<std::size_t>(x) * width + y]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(x) * width + y]; }
};

// Channel mean. Intensities stay in [0,1].
GrayImage to_gray(const RgbImage& img);

// 3D random-geometric-graph expansion parameters. The search ball lives in
// (row, col, disparity) space with spatial and disparity units mixed 1:1.
struct GraphParams {
    double radius = 8.0;
    double color_tau = 0.9;  // cosine-similarity gate in [0,1]

    enum class SortKey { dist3d, dist2d };
    SortKey sort_key = SortKey::dist3d;  // dist2d reproduces the listing-compatible order

    void validate() const;
};

struct LinearParams {
    std::vector<int> windows{8, 16};  // patch side lengths, applied in order

    enum class FillMode { clamped, between };
    FillMode fill_mode = FillMode::clamped;  // clamped = full-line fill with end clamping

    void validate() const;
};

struct GuidanceParams {
    double alpha = 0.2;    // relative search-range margin
    double d_min = 0.0;    // disparity bounds in pixels
    double d_max = 192.0;
    double k = 10.0;       // modulation magnitude
    double c = 1.0;        // modulation variance
    double conf_tau = 0.9; // confidence threshold
    int shift_sign = +1;   // column shift direction for the confidence lookup;
                           // real rectified pairs typically need -1

    void validate() const;
};

struct Violation {
    int x = 0;
    int y = 0;
    std::string rule;
};

// Diagnostic check of the HintMap invariants. Empty result means all hold.
std::vector<Violation> validate_hint_map(const HintMap& h);

std::size_t count_hints(const HintMap& h);

// Fraction of nonzero cells. Throws on a zero-area map.
double density(const HintMap& h);

}  // namespace hintex
