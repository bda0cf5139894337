#pragma once

#include "hintex/core.hpp"
#include "hintex/guidance.hpp"

// Guided classical block matcher: per-pixel winner-take-all over candidates
// sampled from the guidance range. No aggregation or smoothing, so the effect
// of the guidance is not confounded.

namespace hintex {

enum class CostKind { sad, zncc };

struct MatchParams {
    int block_radius = 2;     // 5x5 default window
    int num_candidates = 16;  // candidates per pixel, >= 2
    CostKind cost = CostKind::sad;
    GuidanceParams guidance;

    void validate() const;
};

// Block dissimilarity between the left window at (x, y) and the right window
// at (x, y - d); borders clamped, non-integer d sampled by linear
// interpolation along the row. A window fully outside the right image costs
// +infinity. ZNCC is reported as 1 - correlation so lower is always better.
double match_cost(const GrayImage& left, const GrayImage& right, int x, int y, double d,
                  const MatchParams& p);

// Winner-take-all over sample_candidates(compute_range(h), n) per pixel.
// Ties break to the smallest disparity. Every output lies inside the pixel's
// guidance range.
DisparityMap guided_match(const GrayImage& left, const GrayImage& right, const HintMap& h,
                          const MatchParams& p);

// Full-range baseline: identical to guided_match with an empty hint map.
DisparityMap baseline_match(const GrayImage& left, const GrayImage& right,
                            const MatchParams& p);

}  // namespace hintex
