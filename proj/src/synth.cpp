#include "hintex/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hintex {

void SceneSpec::validate() const {
    if (height < 8 || width < 8) throw std::invalid_argument("SceneSpec: dims must be >= 8");
    if (plane_count < 1) throw std::invalid_argument("SceneSpec: plane_count must be >= 1");
    if (!(d_min >= 0.0 && d_min < d_max))
        throw std::invalid_argument("SceneSpec: need 0 <= d_min < d_max");
    if (!(hint_density > 0.0 && hint_density <= 0.05))
        throw std::invalid_argument("SceneSpec: hint_density must be in (0, 0.05]");
    if (hint_noise_sigma < 0.0)
        throw std::invalid_argument("SceneSpec: hint_noise_sigma must be >= 0");
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform(double a, double b) { return a + (b - a) * uniform(); }

double SplitMix64::gaussian() {
    // Box-Muller; 1 - u1 keeps the log argument in (0, 1].
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

SplitMix64 seed_stream(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 mixer(seed);
    std::uint64_t base = mixer.next();
    return SplitMix64(base ^ (tag * 0xD1B54A32D192ED03ull));
}

namespace {

constexpr std::uint64_t kSceneTag = 1;
constexpr std::uint64_t kHintTag = 2;

// Texture-patch shaping for the noise texture: value noise on a coarse
// lattice, thresholded so most of the image stays flat and the remaining
// patches carry nearly all of the gradient mass. This mimics how keypoint
// detectors concentrate on textured areas.
constexpr int kNoiseLatticeCell = 40;
constexpr double kAmpThreshold = 0.55;
constexpr double kAmpPower = 1.5;

struct PlaneRegion {
    double sx, sy;     // Voronoi site
    double a, b, c;    // disparity plane d = a*(x-sx) + b*(y-sy) + c
    double base[3];    // flat base color
};

}  // namespace

Scene gen_planar_scene(const SceneSpec& spec) {
    spec.validate();
    SplitMix64 rng = seed_stream(spec.seed, kSceneTag);

    const int H = spec.height;
    const int W = spec.width;
    const double span = spec.d_max - spec.d_min;
    const double margin = 0.25 * span;
    // Slopes shallow enough that planes usually stay inside the range.
    const double max_slope =
        spec.slope_limit >= 0.0 ? spec.slope_limit : std::min(0.15, span / (2.0 * (H + W)));

    std::vector<PlaneRegion> regions(spec.plane_count);
    for (PlaneRegion& r : regions) {
        r.sx = rng.uniform(0.0, H);
        r.sy = rng.uniform(0.0, W);
        r.a = rng.uniform(-max_slope, max_slope);
        r.b = rng.uniform(-max_slope, max_slope);
        r.c = rng.uniform(spec.d_min + margin, spec.d_max - margin);
        for (double& ch : r.base) ch = rng.uniform(0.2, 0.8);
    }

    Scene scene;
    scene.gt = DisparityMap(H, W);
    scene.left = RgbImage(H, W);

    std::vector<int> region_of(static_cast<std::size_t>(H) * W);
    for (int x = 0; x < H; ++x) {
        for (int y = 0; y < W; ++y) {
            int best = 0;
            double best_d2 = std::numeric_limits<double>::infinity();
            for (int k = 0; k < spec.plane_count; ++k) {
                double dx = x - regions[k].sx;
                double dy = y - regions[k].sy;
                double d2 = dx * dx + dy * dy;
                if (d2 < best_d2) {
                    best_d2 = d2;
                    best = k;
                }
            }
            region_of[static_cast<std::size_t>(x) * W + y] = best;
            const PlaneRegion& r = regions[best];
            double d = r.a * (x - r.sx) + r.b * (y - r.sy) + r.c;
            scene.gt.at(x, y) = std::clamp(d, spec.d_min, spec.d_max);
        }
    }

    switch (spec.texture) {
        case TextureKind::noise: {
            // Amplitude lattice first, then per-pixel noise in row-major
            // order, so the draw sequence is fixed.
            const int ln = H / kNoiseLatticeCell + 2;
            const int lm = W / kNoiseLatticeCell + 2;
            std::vector<double> lattice(static_cast<std::size_t>(ln) * lm);
            for (double& v : lattice) v = rng.uniform();
            auto amplitude = [&](int x, int y) {
                double fx = static_cast<double>(x) / kNoiseLatticeCell;
                double fy = static_cast<double>(y) / kNoiseLatticeCell;
                int ix = static_cast<int>(fx);
                int iy = static_cast<int>(fy);
                double tx = fx - ix;
                double ty = fy - iy;
                const double* row0 = &lattice[static_cast<std::size_t>(ix) * lm + iy];
                const double* row1 = row0 + lm;
                double u = (row0[0] * (1 - tx) + row1[0] * tx) * (1 - ty) +
                           (row0[1] * (1 - tx) + row1[1] * tx) * ty;
                if (u <= kAmpThreshold) return 0.0;
                return std::pow((u - kAmpThreshold) / (1.0 - kAmpThreshold), kAmpPower);
            };
            std::vector<double> raw(static_cast<std::size_t>(H) * W * 3);
            for (double& v : raw) v = rng.uniform();
            // Band-limit the noise with one 3x3 binomial pass; white noise
            // would decorrelate under the sub-pixel warp.
            std::vector<double> smooth(raw.size());
            auto raw_at = [&](int x, int y, int ch) {
                x = std::clamp(x, 0, H - 1);
                y = std::clamp(y, 0, W - 1);
                return raw[(static_cast<std::size_t>(x) * W + y) * 3 + ch];
            };
            for (int x = 0; x < H; ++x)
                for (int y = 0; y < W; ++y)
                    for (int ch = 0; ch < 3; ++ch) {
                        double acc = 0.0;
                        static const double kw[3] = {1.0, 2.0, 1.0};
                        for (int dx = -1; dx <= 1; ++dx)
                            for (int dy = -1; dy <= 1; ++dy)
                                acc += kw[dx + 1] * kw[dy + 1] * raw_at(x + dx, y + dy, ch);
                        smooth[(static_cast<std::size_t>(x) * W + y) * 3 + ch] = acc / 16.0;
                    }
            for (int x = 0; x < H; ++x) {
                for (int y = 0; y < W; ++y) {
                    double amp = amplitude(x, y);
                    const PlaneRegion& r = regions[region_of[static_cast<std::size_t>(x) * W + y]];
                    double* p = scene.left.px(x, y);
                    for (int ch = 0; ch < 3; ++ch) {
                        double n = smooth[(static_cast<std::size_t>(x) * W + y) * 3 + ch];
                        p[ch] = std::clamp(r.base[ch] * (1.0 - amp) + amp * n, 0.0, 1.0);
                    }
                }
            }
            break;
        }
        case TextureKind::gradient: {
            for (int x = 0; x < H; ++x) {
                for (int y = 0; y < W; ++y) {
                    double* p = scene.left.px(x, y);
                    p[0] = static_cast<double>(x) / (H - 1);
                    p[1] = static_cast<double>(y) / (W - 1);
                    p[2] = 0.5 * (p[0] + p[1]);
                }
            }
            break;
        }
        case TextureKind::checker: {
            int block = 4 + static_cast<int>(rng.next() % 13);  // 4 .. 16
            double c1[3], c2[3];
            for (double& v : c1) v = rng.uniform(0.1, 0.9);
            for (double& v : c2) v = rng.uniform(0.1, 0.9);
            for (int x = 0; x < H; ++x) {
                for (int y = 0; y < W; ++y) {
                    const double* src = ((x / block + y / block) % 2 == 0) ? c1 : c2;
                    double* p = scene.left.px(x, y);
                    p[0] = src[0];
                    p[1] = src[1];
                    p[2] = src[2];
                }
            }
            break;
        }
    }
    return scene;
}

WarpedView warp_right(const RgbImage& left, const DisparityMap& gt) {
    if (left.height != gt.height || left.width != gt.width)
        throw std::invalid_argument("warp_right: dimensions differ");
    const int H = left.height;
    const int W = left.width;

    WarpedView out;
    out.image = RgbImage(H, W);
    out.valid.assign(static_cast<std::size_t>(H) * W, 1);

    for (int x = 0; x < H; ++x) {
        double d_lo = std::numeric_limits<double>::infinity();
        double d_hi = 0.0;
        for (int y = 0; y < W; ++y) {
            if (!gt.is_valid(x, y)) continue;
            d_lo = std::min(d_lo, gt.at(x, y));
            d_hi = std::max(d_hi, gt.at(x, y));
        }
        if (!std::isfinite(d_lo)) d_lo = 0.0;

        for (int yr = 0; yr < W; ++yr) {
            // Sources solve yl - d(x, yl) = yr on each unit segment; the
            // nearest surface (largest disparity) occludes the rest.
            double best_d = -1.0;
            double best_ys = 0.0;
            int first = std::max(0, yr + static_cast<int>(std::floor(d_lo)) - 1);
            int last = std::min(W - 1, yr + static_cast<int>(std::ceil(d_hi)) + 1);
            for (int yl = first; yl < last; ++yl) {
                if (!gt.is_valid(x, yl) || !gt.is_valid(x, yl + 1)) continue;
                double d0 = gt.at(x, yl);
                double d1 = gt.at(x, yl + 1);
                double denom = 1.0 - (d1 - d0);
                double num = yr - yl + d0;
                double t;
                if (std::abs(denom) < 1e-12) {
                    if (std::abs(num) > 1e-9) continue;
                    t = 0.0;  // whole segment projects onto yr; take its start
                } else {
                    t = num / denom;
                }
                if (t < 0.0 || t >= 1.0) continue;
                double ds = d0 + t * (d1 - d0);
                if (ds > best_d) {
                    best_d = ds;
                    best_ys = yl + t;
                }
            }
            // Exact hit on the final column.
            if (last == W - 1 && gt.is_valid(x, W - 1)) {
                double d_end = gt.at(x, W - 1);
                if (std::abs((W - 1) - d_end - yr) < 1e-9 && d_end > best_d) {
                    best_d = d_end;
                    best_ys = W - 1;
                }
            }

            double* p = out.image.px(x, yr);
            if (best_d >= 0.0) {
                int y0 = static_cast<int>(best_ys);
                int y1 = std::min(y0 + 1, W - 1);
                double t = best_ys - y0;
                const double* a = left.px(x, y0);
                const double* b = left.px(x, y1);
                for (int ch = 0; ch < 3; ++ch) p[ch] = a[ch] * (1.0 - t) + b[ch] * t;
            } else {
                // Disoccluded: keep the background texture that borders the gap.
                out.valid[static_cast<std::size_t>(x) * W + yr] = 0;
                int fallback =
                    std::clamp(yr + static_cast<int>(std::llround(d_lo)), 0, W - 1);
                const double* a = left.px(x, fallback);
                for (int ch = 0; ch < 3; ++ch) p[ch] = a[ch];
            }
        }
    }
    return out;
}

GrayImage scharr_magnitude(const GrayImage& img) {
    GrayImage out(img.height, img.width);
    auto at = [&](int x, int y) {
        x = std::clamp(x, 0, img.height - 1);
        y = std::clamp(y, 0, img.width - 1);
        return img.at(x, y);
    };
    for (int x = 0; x < img.height; ++x) {
        for (int y = 0; y < img.width; ++y) {
            double gx = -3.0 * at(x - 1, y - 1) + 3.0 * at(x - 1, y + 1) - 10.0 * at(x, y - 1) +
                        10.0 * at(x, y + 1) - 3.0 * at(x + 1, y - 1) + 3.0 * at(x + 1, y + 1);
            double gy = -3.0 * at(x - 1, y - 1) - 10.0 * at(x - 1, y) - 3.0 * at(x - 1, y + 1) +
                        3.0 * at(x + 1, y - 1) + 10.0 * at(x + 1, y) + 3.0 * at(x + 1, y + 1);
            out.at(x, y) = std::sqrt(gx * gx + gy * gy);
        }
    }
    return out;
}

namespace {

// Fenwick tree over nonnegative weights; supports prefix search for weighted
// sampling without replacement.
class WeightTree {
  public:
    explicit WeightTree(const std::vector<double>& w) : n_(w.size()), tree_(w.size() + 1, 0.0) {
        for (std::size_t i = 1; i <= n_; ++i) tree_[i] = w[i - 1];
        for (std::size_t i = 1; i <= n_; ++i) {
            std::size_t p = i + (i & (~i + 1));
            if (p <= n_) tree_[p] += tree_[i];
        }
        total_ = 0.0;
        for (double v : w) total_ += v;
    }

    double total() const { return total_; }

    // Smallest index with cumulative weight strictly greater than target.
    std::size_t find(double target) const {
        std::size_t pos = 0;
        std::size_t mask = 1;
        while ((mask << 1) <= n_) mask <<= 1;
        for (; mask > 0; mask >>= 1) {
            std::size_t next = pos + mask;
            if (next <= n_ && tree_[next] <= target) {
                pos = next;
                target -= tree_[next];
            }
        }
        return pos;  // 0-based index of the selected element
    }

    void remove(std::size_t idx, double w) {
        total_ -= w;
        for (std::size_t i = idx + 1; i <= n_; i += i & (~i + 1)) tree_[i] -= w;
    }

  private:
    std::size_t n_;
    std::vector<double> tree_;
    double total_;
};

}  // namespace

HintMap sample_hints(const DisparityMap& gt, const RgbImage& img, const SceneSpec& spec) {
    spec.validate();
    if (gt.height != img.height || gt.width != img.width)
        throw std::invalid_argument("sample_hints: dimensions differ");

    const std::size_t pixels = gt.size();
    const long long target = std::llround(spec.hint_density * static_cast<double>(pixels));
    if (target > static_cast<long long>(pixels))
        throw std::invalid_argument("sample_hints: density target exceeds pixel count");

    GrayImage grad = scharr_magnitude(to_gray(img));
    std::vector<double> weights(pixels, 0.0);
    std::size_t candidates = 0;
    double total = 0.0;
    for (std::size_t i = 0; i < pixels; ++i) {
        if (!gt.valid[i]) continue;
        ++candidates;
        weights[i] = grad.values[i];
        total += weights[i];
    }
    if (target > static_cast<long long>(candidates))
        throw std::invalid_argument("sample_hints: density target exceeds valid pixel count");
    if (total <= 0.0) {
        // Flat image: fall back to uniform weights over valid pixels.
        for (std::size_t i = 0; i < pixels; ++i) weights[i] = gt.valid[i] ? 1.0 : 0.0;
    }

    WeightTree tree(weights);
    SplitMix64 rng = seed_stream(spec.seed, kHintTag);
    HintMap hints(gt.height, gt.width);

    for (long long k = 0; k < target; ++k) {
        if (!(tree.total() > 0.0)) {
            // Gradient mass exhausted before the target; remaining hints
            // draw uniformly from the unspent valid pixels.
            for (std::size_t i = 0; i < pixels; ++i)
                weights[i] = (gt.valid[i] && hints.values[i] == 0.0) ? 1.0 : 0.0;
            tree = WeightTree(weights);
        }
        std::size_t idx = tree.find(rng.uniform() * tree.total());
        if (idx >= pixels || weights[idx] <= 0.0 || hints.values[idx] != 0.0) {
            // Numerical residue steered the search into a spent slot; take
            // the next available pixel deterministically.
            std::size_t probe = (idx + 1) % pixels;
            while (weights[probe] <= 0.0 || hints.values[probe] != 0.0)
                probe = (probe + 1) % pixels;
            idx = probe;
        }
        double noise = rng.gaussian();  // drawn unconditionally to keep the stream fixed
        double value = gt.values[idx] + spec.hint_noise_sigma * noise;
        hints.values[idx] = std::max(value, 1e-6);
        tree.remove(idx, weights[idx]);
        weights[idx] = 0.0;
    }
    return hints;
}

}  // namespace hintex
