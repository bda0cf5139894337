#pragma once

#include <cstdint>
#include <vector>

#include "hintex/core.hpp"

// Seedable synthetic piecewise-planar scenes with ground-truth disparity,
// warped right views, and keypoint-biased sparse hint sampling. All outputs
// are deterministic functions of the spec.

namespace hintex {

enum class TextureKind { noise, gradient, checker };

struct SceneSpec {
    std::uint64_t seed = 1;
    int height = 240;
    int width = 320;
    int plane_count = 3;
    double d_min = 4.0;
    double d_max = 64.0;
    TextureKind texture = TextureKind::noise;
    double hint_density = 0.005;    // target fraction of pixels, in (0, 0.05]
    double hint_noise_sigma = 0.0;  // disparity noise in pixels
    double slope_limit = -1.0;      // max |a|,|b| of the planes; < 0 picks an
                                    // automatic limit from the range and dims
    double texture_coverage = 1.0;  // noise texture only: 1 = textured
                                    // everywhere, < 1 = compact textured
                                    // patches on flat background, mimicking
                                    // scenes where keypoints cluster

    void validate() const;
};

// SplitMix64: fixed, portable 64-bit generator (Steele et al.). All synth
// randomness flows through this; platform default generators are not used.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next();
    double uniform();                    // [0, 1), 53-bit
    double uniform(double a, double b);  // [a, b)
    double gaussian();                   // Box-Muller, consumes two uniforms
};

// Derives an independent stream for a named purpose from the scene seed.
SplitMix64 seed_stream(std::uint64_t seed, std::uint64_t tag);

struct Scene {
    RgbImage left;
    DisparityMap gt;
};

// Disparity is a mosaic of slanted planes d = a*x + b*y + c over a seeded
// Voronoi partition, clipped into [d_min, d_max]. The left image is textured
// per spec.texture.
Scene gen_planar_scene(const SceneSpec& spec);

struct WarpedView {
    RgbImage image;
    std::vector<std::uint8_t> valid;  // 0 = disoccluded

    bool is_valid(int x, int y) const {
        return valid[static_cast<std::size_t>(x) * image.width + y] != 0;
    }
};

// Rectified-stereo synthesis: right(x, y - d) = left(x, y), resolved per
// right pixel by inverse warping with linear interpolation. Where several
// sources project to the same column the largest disparity (nearest surface)
// wins; pixels with no source are marked disoccluded and keep the nearest
// resolvable texture.
WarpedView warp_right(const RgbImage& left, const DisparityMap& gt);

// Scharr 3x3 gradient magnitude, borders clamped. Kernels:
//   Gx = [[-3,0,3],[-10,0,10],[-3,0,3]] over columns, Gy = Gx^T over rows.
GrayImage scharr_magnitude(const GrayImage& img);

// Hints drawn without replacement with probability proportional to the left
// image's Scharr gradient magnitude until round(density * pixels) hints are
// placed; each hint is gt + gaussian noise, clamped positive. Pixels with
// invalid gt are never sampled. Throws if the target exceeds the pixel count.
HintMap sample_hints(const DisparityMap& gt, const RgbImage& img, const SceneSpec& spec);

}  // namespace hintex
