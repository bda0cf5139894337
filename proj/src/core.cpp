#include "hintex/core.hpp"

#include <cmath>

namespace hintex {

GrayImage to_gray(const RgbImage& img) {
    GrayImage out(img.height, img.width);
    for (int x = 0; x < img.height; ++x) {
        for (int y = 0; y < img.width; ++y) {
            const double* p = img.px(x, y);
            out.at(x, y) = (p[0] + p[1] + p[2]) / 3.0;
        }
    }
    return out;
}

void GraphParams::validate() const {
    if (!(radius > 0.0)) throw std::invalid_argument("GraphParams: radius must be > 0");
    if (!(color_tau >= 0.0 && color_tau <= 1.0))
        throw std::invalid_argument("GraphParams: color_tau must be in [0,1]");
}

void LinearParams::validate() const {
    if (windows.empty()) throw std::invalid_argument("LinearParams: windows must be nonempty");
    for (int w : windows)
        if (w < 2) throw std::invalid_argument("LinearParams: every window must be >= 2");
}

void GuidanceParams::validate() const {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("GuidanceParams: alpha must be in [0,1)");
    if (!(d_min >= 0.0 && d_min < d_max))
        throw std::invalid_argument("GuidanceParams: need 0 <= d_min < d_max");
    if (!(k > 0.0)) throw std::invalid_argument("GuidanceParams: k must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("GuidanceParams: c must be > 0");
    if (!(conf_tau >= 0.0 && conf_tau <= 1.0))
        throw std::invalid_argument("GuidanceParams: conf_tau must be in [0,1]");
    if (shift_sign != 1 && shift_sign != -1)
        throw std::invalid_argument("GuidanceParams: shift_sign must be +1 or -1");
}

std::vector<Violation> validate_hint_map(const HintMap& h) {
    std::vector<Violation> out;
    for (int x = 0; x < h.height; ++x) {
        for (int y = 0; y < h.width; ++y) {
            double v = h.at(x, y);
            if (!std::isfinite(v)) {
                out.push_back({x, y, "values must be finite"});
            } else if (v < 0.0) {
                out.push_back({x, y, "nonzero values must be positive"});
            }
        }
    }
    return out;
}

std::size_t count_hints(const HintMap& h) {
    std::size_t n = 0;
    for (double v : h.values)
        if (v != 0.0) ++n;
    return n;
}

double density(const HintMap& h) {
    if (h.height <= 0 || h.width <= 0) throw std::invalid_argument("density: empty map");
    return static_cast<double>(count_hints(h)) / (static_cast<double>(h.height) * h.width);
}

}  // namespace hintex
