#pragma once

#include <array>
#include <vector>

#include "hintex/core.hpp"

// 3D graph hint expansion: hints become nodes at (row, col, disparity),
// edges connect 3D-close color-similar pairs, and each edge rasterizes a
// slanted 3D line into empty cells, shortest edges first.

namespace hintex {

struct HintNode {
    int x = 0;
    int y = 0;
    double z = 0.0;  // disparity, > 0
    std::array<double, 3> color{0.0, 0.0, 0.0};
};

struct Edge {
    int i = 0;  // node indices, i < j
    int j = 0;
    double d3 = 0.0;  // Euclidean over (x, y, z)
    double d2 = 0.0;  // Euclidean over (x, y)
};

// Cosine similarity of two color vectors. Both norms below 1e-12 compare as
// identical (similarity 1); otherwise 1e-12 is added to each norm.
double color_cosine(const std::array<double, 3>& a, const std::array<double, 3>& b);

// Nodes of the nonzero cells in row-major scan order, colors taken from img.
std::vector<HintNode> collect_nodes(const HintMap& h, const RgbImage& img);

// Exactly the pairs with d3 < R and color cosine > color_tau, ordered by
// ascending (i, j). Exact radius search; a uniform grid hash keeps it fast.
std::vector<Edge> build_edges(const std::vector<HintNode>& nodes, const GraphParams& params);

// Ascending by the chosen distance, ties broken by ascending (i, j).
std::vector<Edge> sort_edges(std::vector<Edge> edges,
                             GraphParams::SortKey key = GraphParams::SortKey::dist3d);

// Walks unit 2D steps m = 1 .. ceil(d2)-1 along (b-a)/d2 and writes the
// z value interpolated at m/d2 into the rounded cell, only where the cell is
// empty and in bounds. Endpoints are never touched. Rounding is half away
// from zero. Caller skips adjacent pairs (d2 <= sqrt(2)).
void rasterize_edge(HintMap& h, const HintNode& a, const HintNode& b);

// Full pipeline: collect, build, sort, rasterize in order. Original hints
// are preserved bit-identically. Throws on dimension mismatch.
HintMap expand_graph(const HintMap& h, const RgbImage& img, const GraphParams& params);

}  // namespace hintex
