#include "hintex/expand_linear.hpp"

#include <vector>

namespace hintex {

namespace {

// Piecewise-linear interpolation of one line through its nonzero knots.
// knots holds (position, value) pairs in ascending position order. Queries at
// knot positions return the knot value exactly. In clamped mode positions
// outside the knot span take the nearest end value; in between mode they keep
// their current content.
void interp_line(std::vector<double>& line, const std::vector<int>& kx,
                 const std::vector<double>& kv, LinearParams::FillMode mode) {
    const int n = static_cast<int>(line.size());
    int seg = 0;
    for (int q = 0; q < n; ++q) {
        if (q <= kx.front()) {
            if (q == kx.front())
                line[q] = kv.front();
            else if (mode == LinearParams::FillMode::clamped)
                line[q] = kv.front();
            continue;
        }
        if (q >= kx.back()) {
            if (q == kx.back())
                line[q] = kv.back();
            else if (mode == LinearParams::FillMode::clamped)
                line[q] = kv.back();
            continue;
        }
        while (kx[seg + 1] < q) ++seg;
        if (q == kx[seg]) {
            line[q] = kv[seg];
        } else if (q == kx[seg + 1]) {
            line[q] = kv[seg + 1];
        } else {
            double t = static_cast<double>(q - kx[seg]) / (kx[seg + 1] - kx[seg]);
            line[q] = kv[seg] + t * (kv[seg + 1] - kv[seg]);
        }
    }
}

}  // namespace

void densify_patch(Patch& p, LinearParams::FillMode mode) {
    const int W = p.side;

    int nonzero = 0;
    for (int u = 0; u < W; ++u)
        for (int v = 0; v < W; ++v)
            if (p.at(u, v) != 0.0) ++nonzero;
    if (nonzero < 3) return;

    // Horizontal pass reads the incoming patch; buffer it so row fills do not
    // feed each other.
    std::vector<double> original(static_cast<std::size_t>(W) * W);
    for (int u = 0; u < W; ++u)
        for (int v = 0; v < W; ++v) original[static_cast<std::size_t>(u) * W + v] = p.at(u, v);

    std::vector<int> kx;
    std::vector<double> kv;
    std::vector<double> line(W);

    for (int u = 0; u < W; ++u) {
        kx.clear();
        kv.clear();
        for (int v = 0; v < W; ++v) {
            double val = original[static_cast<std::size_t>(u) * W + v];
            if (val > 0.0) {
                kx.push_back(v);
                kv.push_back(val);
            }
        }
        if (kx.size() < 2) continue;
        for (int v = 0; v < W; ++v) line[v] = p.at(u, v);
        interp_line(line, kx, kv, mode);
        for (int v = 0; v < W; ++v) p.at(u, v) = line[v];
    }

    // Vertical pass sees the horizontally densified values.
    for (int v = 0; v < W; ++v) {
        kx.clear();
        kv.clear();
        for (int u = 0; u < W; ++u) {
            double val = p.at(u, v);
            if (val > 0.0) {
                kx.push_back(u);
                kv.push_back(val);
            }
        }
        if (kx.size() < 2) continue;
        for (int u = 0; u < W; ++u) line[u] = p.at(u, v);
        interp_line(line, kx, kv, mode);
        for (int u = 0; u < W; ++u) p.at(u, v) = line[u];
    }
}

HintMap expand_linear(const HintMap& h, int window, LinearParams::FillMode mode) {
    if (window < 2) throw std::invalid_argument("expand_linear: window must be >= 2");

    HintMap out = h;
    const int tiles_x = h.height / window;
    const int tiles_y = h.width / window;
    for (int i = 0; i < tiles_x; ++i) {
        for (int j = 0; j < tiles_y; ++j) {
            Patch p{&out, i * window, j * window, window};
            densify_patch(p, mode);
            densify_patch(p, mode);
        }
    }
    return out;
}

HintMap expand_linear_multi(const HintMap& h, const LinearParams& params) {
    params.validate();
    HintMap out = h;
    for (int w : params.windows) out = expand_linear(out, w, params.fill_mode);
    return out;
}

}  // namespace hintex
