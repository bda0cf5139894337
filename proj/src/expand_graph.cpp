#include "hintex/expand_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace hintex {

namespace {

constexpr double kAdjacencyEps = 1e-9;  // skip edges with d2 <= sqrt(2) + eps

inline int iround(double v) { return static_cast<int>(std::llround(v)); }

struct CellKey {
    std::int64_t cx, cy, cz;
    bool operator==(const CellKey& o) const { return cx == o.cx && cy == o.cy && cz == o.cz; }
};

struct CellHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t v : {static_cast<std::uint64_t>(k.cx), static_cast<std::uint64_t>(k.cy),
                                static_cast<std::uint64_t>(k.cz)}) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

double color_cosine(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    double nb = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    if (na < 1e-12 && nb < 1e-12) return 1.0;  // black on black is maximally similar
    return dot / ((na + 1e-12) * (nb + 1e-12));
}

std::vector<HintNode> collect_nodes(const HintMap& h, const RgbImage& img) {
    std::vector<HintNode> nodes;
    for (int x = 0; x < h.height; ++x) {
        for (int y = 0; y < h.width; ++y) {
            double z = h.at(x, y);
            if (z == 0.0) continue;
            const double* c = img.px(x, y);
            nodes.push_back({x, y, z, {c[0], c[1], c[2]}});
        }
    }
    return nodes;
}

std::vector<Edge> build_edges(const std::vector<HintNode>& nodes, const GraphParams& params) {
    params.validate();
    std::vector<Edge> edges;
    if (nodes.size() < 2) return edges;

    const double R = params.radius;
    const double r2 = R * R;

    // Uniform grid with cell side R over (x, y, z); candidates live in the
    // 27 surrounding cells.
    std::unordered_map<CellKey, std::vector<int>, CellHash> grid;
    grid.reserve(nodes.size() * 2);
    auto key_of = [R](const HintNode& n) {
        return CellKey{static_cast<std::int64_t>(std::floor(n.x / R)),
                       static_cast<std::int64_t>(std::floor(n.y / R)),
                       static_cast<std::int64_t>(std::floor(n.z / R))};
    };
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        grid[key_of(nodes[i])].push_back(i);

    std::vector<int> partners;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        const HintNode& a = nodes[i];
        CellKey base = key_of(a);
        partners.clear();
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                for (std::int64_t dz = -1; dz <= 1; ++dz) {
                    auto it = grid.find({base.cx + dx, base.cy + dy, base.cz + dz});
                    if (it == grid.end()) continue;
                    for (int j : it->second)
                        if (j > i) partners.push_back(j);
                }
            }
        }
        std::sort(partners.begin(), partners.end());
        for (int j : partners) {
            const HintNode& b = nodes[j];
            double ddx = b.x - a.x;
            double ddy = b.y - a.y;
            double ddz = b.z - a.z;
            double sq3 = ddx * ddx + ddy * ddy + ddz * ddz;
            if (!(sq3 < r2)) continue;  // strict: d3 == R creates no edge
            if (!(color_cosine(a.color, b.color) > params.color_tau)) continue;
            edges.push_back({i, j, std::sqrt(sq3), std::sqrt(ddx * ddx + ddy * ddy)});
        }
    }
    return edges;
}

std::vector<Edge> sort_edges(std::vector<Edge> edges, GraphParams::SortKey key) {
    auto by3 = [](const Edge& a, const Edge& b) {
        if (a.d3 != b.d3) return a.d3 < b.d3;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    auto by2 = [](const Edge& a, const Edge& b) {
        if (a.d2 != b.d2) return a.d2 < b.d2;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };
    if (key == GraphParams::SortKey::dist3d)
        std::sort(edges.begin(), edges.end(), by3);
    else
        std::sort(edges.begin(), edges.end(), by2);
    return edges;
}

void rasterize_edge(HintMap& h, const HintNode& a, const HintNode& b) {
    double dx = b.x - a.x;
    double dy = b.y - a.y;
    double d2 = std::sqrt(dx * dx + dy * dy);
    if (d2 <= 0.0) return;
    double ux = dx / d2;
    double uy = dy / d2;
    int last = static_cast<int>(std::ceil(d2)) - 1;
    for (int m = 1; m <= last; ++m) {
        int cx = iround(a.x + m * ux);
        int cy = iround(a.y + m * uy);
        if (!h.in_bounds(cx, cy)) continue;
        double& cell = h.at(cx, cy);
        if (cell != 0.0) continue;
        cell = a.z + (b.z - a.z) * (m / d2);
    }
}

HintMap expand_graph(const HintMap& h, const RgbImage& img, const GraphParams& params) {
    if (h.height != img.height || h.width != img.width)
        throw std::invalid_argument("expand_graph: hint map and image dimensions differ");
    params.validate();

    HintMap out = h;
    std::vector<HintNode> nodes = collect_nodes(h, img);
    std::vector<Edge> edges = sort_edges(build_edges(nodes, params), params.sort_key);

    const double adjacency = std::sqrt(2.0) + kAdjacencyEps;
    for (const Edge& e : edges) {
        if (e.d2 <= adjacency) continue;  // nothing between spatially adjacent pixels
        rasterize_edge(out, nodes[e.i], nodes[e.j]);
    }
    return out;
}

}  // namespace hintex
