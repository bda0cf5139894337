#include "hintex/guidance.hpp"

#include <algorithm>
#include <cmath>

namespace hintex {

GuidanceRange compute_range(const HintMap& h, const GuidanceParams& params) {
    params.validate();
    GuidanceRange r(h.height, h.width);
    for (int x = 0; x < h.height; ++x) {
        for (int y = 0; y < h.width; ++y) {
            std::size_t idx = static_cast<std::size_t>(x) * h.width + y;
            double v = h.at(x, y);
            if (v > 0.0) {
                r.low[idx] = std::clamp(v * (1.0 - params.alpha), params.d_min, params.d_max);
                r.high[idx] = std::clamp(v * (1.0 + params.alpha), params.d_min, params.d_max);
            } else {
                r.low[idx] = params.d_min;
                r.high[idx] = params.d_max;
            }
        }
    }
    return r;
}

std::vector<double> sample_candidates(const GuidanceRange& r, int x, int y, int n) {
    if (n < 1) throw std::invalid_argument("sample_candidates: n must be >= 1");
    double lo = r.lo(x, y);
    double hi = r.hi(x, y);
    std::vector<double> out;
    out.reserve(n);
    if (n == 1) {
        out.push_back((lo + hi) / 2.0);
        return out;
    }
    double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) out.push_back(lo + i * step);
    out.back() = hi;  // exact endpoint regardless of rounding
    return out;
}

CostVolume modulate_cost_volume(const CostVolume& F, const HintMap& h,
                                const GuidanceParams& params) {
    params.validate();
    if (F.height != h.height || F.width != h.width)
        throw std::invalid_argument("modulate_cost_volume: spatial dimensions differ");
    if (F.d_min > static_cast<int>(params.d_min) || F.d_max < static_cast<int>(params.d_max))
        throw std::invalid_argument(
            "modulate_cost_volume: volume disparity axis does not cover [d_min, d_max]");

    CostVolume G = F;
    const double inv2c = 1.0 / (2.0 * params.c);
    for (int x = 0; x < F.height; ++x) {
        for (int y = 0; y < F.width; ++y) {
            double hv = h.at(x, y);
            if (hv <= 0.0) continue;  // V = 0: pass through untouched
            for (int d = F.d_min; d <= F.d_max; ++d) {
                double delta = d - hv;
                double mult = params.k * std::exp(-delta * delta * inv2c);
                G.at(x, y, d) = mult * F.at(x, y, d);
            }
        }
    }
    return G;
}

FilterResult confidence_filter(const HintMap& h, const FeatureMap& fL, const FeatureMap& fR,
                               const GuidanceParams& params) {
    params.validate();
    if (fL.height != h.height || fL.width != h.width || fR.height != h.height ||
        fR.width != h.width)
        throw std::invalid_argument("confidence_filter: feature map dimensions differ");
    if (fL.length != fR.length)
        throw std::invalid_argument("confidence_filter: descriptor lengths differ");

    FilterResult res;
    res.hints = HintMap(h.height, h.width);
    res.confidence.assign(h.size(), 0.0);

    for (int x = 0; x < h.height; ++x) {
        for (int y = 0; y < h.width; ++y) {
            double hv = h.at(x, y);
            if (hv <= 0.0) continue;
            int match_col = y + params.shift_sign * static_cast<int>(std::llround(hv));
            double conf = 0.0;  // out-of-bounds match scores zero
            if (match_col >= 0 && match_col < h.width) {
                const double* a = fL.descriptor(x, y);
                const double* b = fR.descriptor(x, match_col);
                double sq = 0.0;
                for (int k = 0; k < fL.length; ++k) {
                    double diff = a[k] - b[k];
                    sq += diff * diff;
                }
                conf = 1.0 - std::tanh(sq);
            }
            res.confidence[static_cast<std::size_t>(x) * h.width + y] = conf;
            if (conf > params.conf_tau) res.hints.at(x, y) = hv;
        }
    }
    return res;
}

FeatureMap patch_descriptor(const GrayImage& img, int window) {
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("patch_descriptor: window must be odd and >= 3");

    const int r = window / 2;
    const int len = window * window;
    FeatureMap fm(img.height, img.width, len);

    std::vector<double> buf(len);
    const double canonical = 1.0 / std::sqrt(static_cast<double>(len));
    for (int x = 0; x < img.height; ++x) {
        for (int y = 0; y < img.width; ++y) {
            double mean = 0.0;
            int k = 0;
            for (int dx = -r; dx <= r; ++dx) {
                int sx = std::clamp(x + dx, 0, img.height - 1);
                for (int dy = -r; dy <= r; ++dy) {
                    int sy = std::clamp(y + dy, 0, img.width - 1);
                    buf[k++] = img.at(sx, sy);
                    mean += buf[k - 1];
                }
            }
            mean /= len;
            double norm2 = 0.0;
            for (double& v : buf) {
                v -= mean;
                norm2 += v * v;
            }
            double* d = fm.descriptor(x, y);
            if (norm2 < 1e-24) {
                for (int i = 0; i < len; ++i) d[i] = canonical;
            } else {
                double inv = 1.0 / std::sqrt(norm2);
                for (int i = 0; i < len; ++i) d[i] = buf[i] * inv;
            }
        }
    }
    return fm;
}

}  // namespace hintex
