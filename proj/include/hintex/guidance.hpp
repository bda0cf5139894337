#pragma once

#include <optional>
#include <vector>

#include "hintex/core.hpp"

// Turns (expanded) hints into per-pixel search ranges, cost-volume modulation
// factors, and confidence-filtered hint sets.

namespace hintex {

struct GuidanceRange {
    int height = 0;
    int width = 0;
    std::vector<double> low;
    std::vector<double> high;

    GuidanceRange() = default;
    GuidanceRange(int h, int w)
        : height(h),
          width(w),
          low(static_cast<std::size_t>(h) * w, 0.0),
          high(static_cast<std::size_t>(h) * w, 0.0) {}

    double lo(int x, int y) const { return low[static_cast<std::size_t>(x) * width + y]; }
    double hi(int x, int y) const { return high[static_cast<std::size_t>(x) * width + y]; }
};

// Per-pixel, per-disparity values with similarity polarity: higher = better.
// Callers holding cost-polarity volumes must negate before modulating.
struct CostVolume {
    int height = 0;
    int width = 0;
    int d_min = 0;  // inclusive integer disparity levels d_min .. d_max
    int d_max = 0;
    std::vector<double> values;

    CostVolume() = default;
    CostVolume(int h, int w, int dmin, int dmax)
        : height(h),
          width(w),
          d_min(dmin),
          d_max(dmax),
          values(static_cast<std::size_t>(h) * w * (dmax - dmin + 1), 0.0) {}

    int levels() const { return d_max - d_min + 1; }
    double& at(int x, int y, int d) {
        return values[(static_cast<std::size_t>(x) * width + y) * levels() + (d - d_min)];
    }
    double at(int x, int y, int d) const {
        return values[(static_cast<std::size_t>(x) * width + y) * levels() + (d - d_min)];
    }
};

// Fixed-length unit-norm descriptor per pixel.
struct FeatureMap {
    int height = 0;
    int width = 0;
    int length = 0;

    std::vector<double> values;

    FeatureMap() = default;
    FeatureMap(int h, int w, int len)
        : height(h),
          width(w),
          length(len),
          values(static_cast<std::size_t>(h) * w * len, 0.0) {}

    double* descriptor(int x, int y) {
        return &values[(static_cast<std::size_t>(x) * width + y) * length];
    }
    const double* descriptor(int x, int y) const {
        return &values[(static_cast<std::size_t>(x) * width + y) * length];
    }
};

// Hinted pixels get [h*(1-alpha), h*(1+alpha)] clamped into [d_min, d_max];
// unhinted pixels get the full [d_min, d_max].
GuidanceRange compute_range(const HintMap& h, const GuidanceParams& params);

// n disparities uniformly spaced over [low, high] inclusive. n = 1 yields the
// midpoint. Deterministic, not random.
std::vector<double> sample_candidates(const GuidanceRange& r, int x, int y, int n);

// Gaussian modulation around the hint: G = (1 - V + V*k*exp(-(d-h)^2/(2c))) * F.
// Unhinted pixels pass through bit-identically.
CostVolume modulate_cost_volume(const CostVolume& F, const HintMap& h,
                                const GuidanceParams& params);

struct FilterResult {
    HintMap hints;
    std::vector<double> confidence;  // per pixel, 0 where the input has no hint
};

// conf = 1 - tanh(||fL(x,y) - fR(x, y + sign*round(h))||^2) at hint pixels;
// hints survive iff conf > conf_tau. Shifted columns out of bounds score 0.
FilterResult confidence_filter(const HintMap& h, const FeatureMap& fL, const FeatureMap& fR,
                               const GuidanceParams& params);

// Zero-mean unit-norm flattened window of intensities around each pixel,
// borders clamped. Window must be odd and >= 3. Constant windows map to the
// canonical uniform unit vector (every entry 1/sqrt(window^2)).
FeatureMap patch_descriptor(const GrayImage& img, int window);

}  // namespace hintex
