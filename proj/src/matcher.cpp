#include "hintex/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hintex {

void MatchParams::validate() const {
    if (block_radius < 1) throw std::invalid_argument("MatchParams: block_radius must be >= 1");
    if (num_candidates < 2) throw std::invalid_argument("MatchParams: num_candidates must be >= 2");
    guidance.validate();
}

namespace {

// Right-image sample at fractional column, row and column clamped to bounds.
inline double sample_row(const GrayImage& img, int x, double y) {
    y = std::clamp(y, 0.0, static_cast<double>(img.width - 1));
    int y0 = static_cast<int>(y);
    int y1 = std::min(y0 + 1, img.width - 1);
    double t = y - y0;
    return img.at(x, y0) * (1.0 - t) + img.at(x, y1) * t;
}

}  // namespace

double match_cost(const GrayImage& left, const GrayImage& right, int x, int y, double d,
                  const MatchParams& p) {
    const int r = p.block_radius;

    // Window fully outside the right image: no evidence at all.
    if (y + r - d < 0.0 || y - r - d > right.width - 1.0)
        return std::numeric_limits<double>::infinity();

    if (p.cost == CostKind::sad) {
        double sum = 0.0;
        for (int dx = -r; dx <= r; ++dx) {
            int lx = std::clamp(x + dx, 0, left.height - 1);
            for (int dy = -r; dy <= r; ++dy) {
                int ly = std::clamp(y + dy, 0, left.width - 1);
                double rv = sample_row(right, lx, y + dy - d);
                sum += std::abs(left.at(lx, ly) - rv);
            }
        }
        return sum;
    }

    // ZNCC, reported as 1 - correlation so lower is better. Windows with no
    // variance correlate as 0.
    const int n = (2 * r + 1) * (2 * r + 1);
    double ml = 0.0, mr = 0.0;
    std::vector<double> lv(n), rv(n);
    int k = 0;
    for (int dx = -r; dx <= r; ++dx) {
        int lx = std::clamp(x + dx, 0, left.height - 1);
        for (int dy = -r; dy <= r; ++dy) {
            int ly = std::clamp(y + dy, 0, left.width - 1);
            lv[k] = left.at(lx, ly);
            rv[k] = sample_row(right, lx, y + dy - d);
            ml += lv[k];
            mr += rv[k];
            ++k;
        }
    }
    ml /= n;
    mr /= n;
    double num = 0.0, sl = 0.0, sr = 0.0;
    for (int i = 0; i < n; ++i) {
        double a = lv[i] - ml;
        double b = rv[i] - mr;
        num += a * b;
        sl += a * a;
        sr += b * b;
    }
    if (sl < 1e-24 || sr < 1e-24) return 1.0;
    return 1.0 - num / std::sqrt(sl * sr);
}

DisparityMap guided_match(const GrayImage& left, const GrayImage& right, const HintMap& h,
                          const MatchParams& p) {
    if (left.height != right.height || left.width != right.width)
        throw std::invalid_argument("guided_match: image dimensions differ");
    if (h.height != left.height || h.width != left.width)
        throw std::invalid_argument("guided_match: hint map dimensions differ");
    p.validate();

    GuidanceRange range = compute_range(h, p.guidance);
    DisparityMap out(left.height, left.width);
    for (int x = 0; x < left.height; ++x) {
        for (int y = 0; y < left.width; ++y) {
            std::vector<double> cands = sample_candidates(range, x, y, p.num_candidates);
            double best_cost = std::numeric_limits<double>::infinity();
            double best_d = cands.front();
            for (double d : cands) {  // ascending, so ties keep the smallest
                double c = match_cost(left, right, x, y, d, p);
                if (c < best_cost) {
                    best_cost = c;
                    best_d = d;
                }
            }
            out.at(x, y) = best_d;
        }
    }
    return out;
}

DisparityMap baseline_match(const GrayImage& left, const GrayImage& right,
                            const MatchParams& p) {
    return guided_match(left, right, HintMap(left.height, left.width), p);
}

}  // namespace hintex
