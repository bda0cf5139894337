#pragma once

#include "hintex/core.hpp"

// Patch-wise 3D linear expansion: the map splits into non-overlapping W x W
// tiles; inside each tile rows then columns with two or more hints are filled
// by piecewise-linear interpolation. Ragged right/bottom remainders are left
// untouched.

namespace hintex {

// View of one W x W tile. The tile must lie fully inside the map.
struct Patch {
    HintMap* map = nullptr;
    int x0 = 0;  // top-left corner (row, col)
    int y0 = 0;
    int side = 0;

    double& at(int u, int v) { return map->at(x0 + u, y0 + v); }
    double at(int u, int v) const { return map->at(x0 + u, y0 + v); }
};

// One densification pass: horizontal line fill over the incoming values,
// then vertical over the horizontally densified result. Patches with fewer
// than 3 hints are unchanged. Original hints are interpolation knots and
// keep their exact values.
void densify_patch(Patch& p, LinearParams::FillMode mode = LinearParams::FillMode::clamped);

// Tiles the map with side W and applies densify_patch twice per tile.
// W must be >= 2; a W larger than both dimensions yields the input unchanged.
HintMap expand_linear(const HintMap& h, int window,
                      LinearParams::FillMode mode = LinearParams::FillMode::clamped);

// Sequential expand_linear for each window in params, in order.
HintMap expand_linear_multi(const HintMap& h, const LinearParams& params);

}  // namespace hintex
