#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hintex/guidance.hpp"
#include "hintex/synth.hpp"

using namespace hintex;

TEST_CASE("compute_range brackets hints and clamps to the disparity bounds") {
    HintMap h(1, 3);
    h.at(0, 0) = 50.0;
    h.at(0, 2) = 180.0;
    GuidanceParams p;  // alpha 0.2, bounds [0, 192]

    GuidanceRange r = compute_range(h, p);
    CHECK(r.lo(0, 0) == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(r.hi(0, 0) == doctest::Approx(60.0).epsilon(1e-12));
    CHECK(r.lo(0, 1) == 0.0);
    CHECK(r.hi(0, 1) == 192.0);
    CHECK(r.lo(0, 2) == doctest::Approx(144.0).epsilon(1e-12));
    CHECK(r.hi(0, 2) == 192.0);  // 216 clamped
}

TEST_CASE("compute_range keeps low <= h <= high for in-range hints") {
    SplitMix64 rng(5);
    GuidanceParams p;
    for (int iter = 0; iter < 2000; ++iter) {
        HintMap h(1, 1);
        h.at(0, 0) = rng.uniform(p.d_min + 1e-6, p.d_max);
        p.alpha = rng.uniform(0.0, 0.999);
        GuidanceRange r = compute_range(h, p);
        CHECK(r.lo(0, 0) <= r.hi(0, 0));
        CHECK(r.lo(0, 0) <= h.at(0, 0));
        CHECK(r.hi(0, 0) >= h.at(0, 0));
    }
}

TEST_CASE("sample_candidates spaces uniformly with inclusive endpoints") {
    GuidanceRange r(1, 1);
    r.low[0] = 40.0;
    r.high[0] = 60.0;
    auto c = sample_candidates(r, 0, 0, 5);
    REQUIRE(c.size() == 5);
    const double want[5] = {40, 45, 50, 55, 60};
    for (int i = 0; i < 5; ++i) CHECK(c[i] == doctest::Approx(want[i]).epsilon(1e-12));

    auto mid = sample_candidates(r, 0, 0, 1);
    REQUIRE(mid.size() == 1);
    CHECK(mid[0] == doctest::Approx(50.0));

    r.high[0] = r.low[0];
    auto collapsed = sample_candidates(r, 0, 0, 4);
    for (double v : collapsed) CHECK(v == 40.0);

    CHECK_THROWS_AS(sample_candidates(r, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("modulate_cost_volume passes unhinted pixels through bit-identically") {
    CostVolume F(2, 2, 0, 20);
    SplitMix64 rng(9);
    for (double& v : F.values) v = rng.uniform();
    HintMap h(2, 2);
    h.at(1, 1) = 10.0;
    GuidanceParams p;
    p.d_max = 20.0;

    CostVolume G = modulate_cost_volume(F, h, p);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            if (x == 1 && y == 1) continue;
            for (int d = 0; d <= 20; ++d) CHECK(G.at(x, y, d) == F.at(x, y, d));
        }
}

TEST_CASE("modulation multiplier is k at d = h and Gaussian off the hint") {
    CostVolume F(1, 1, 0, 40);
    for (double& v : F.values) v = 1.0;
    HintMap h(1, 1);
    h.at(0, 0) = 20.0;
    GuidanceParams p;
    p.d_max = 40.0;

    CostVolume G = modulate_cost_volume(F, h, p);
    CHECK(G.at(0, 0, 20) == doctest::Approx(10.0).epsilon(1e-12));
    // 10 * exp(-9/2) at three levels away
    CHECK(G.at(0, 0, 23) == doctest::Approx(0.11108996538242306).epsilon(1e-9));
}

TEST_CASE("modulation peak sits on the hint for uniform volumes") {
    SplitMix64 rng(21);
    GuidanceParams p;
    p.d_max = 64.0;
    for (int iter = 0; iter < 500; ++iter) {
        CostVolume F(1, 1, 0, 64);
        for (double& v : F.values) v = 0.7;
        HintMap h(1, 1);
        double hv = rng.uniform(1.0, 64.0);
        if (std::abs(hv - std::floor(hv) - 0.5) < 1e-3) hv += 0.01;  // avoid rounding ties
        h.at(0, 0) = hv;
        CostVolume G = modulate_cost_volume(F, h, p);
        int best = 0;
        for (int d = 0; d <= 64; ++d)
            if (G.at(0, 0, d) > G.at(0, 0, best)) best = d;
        CHECK(best == static_cast<int>(std::llround(hv)));
    }
}

TEST_CASE("modulate_cost_volume rejects mismatched dimensions") {
    CostVolume F(2, 2, 0, 10);
    HintMap h(2, 3);
    GuidanceParams p;
    p.d_max = 10.0;
    CHECK_THROWS_AS(modulate_cost_volume(F, h, p), std::invalid_argument);

    HintMap h2(2, 2);
    GuidanceParams wide;
    wide.d_max = 192.0;  // volume only spans 0..10
    CHECK_THROWS_AS(modulate_cost_volume(F, h2, wide), std::invalid_argument);
}

namespace {

FeatureMap unit_features(int h, int w, int len, int axis) {
    FeatureMap fm(h, w, len);
    for (int x = 0; x < h; ++x)
        for (int y = 0; y < w; ++y) fm.descriptor(x, y)[axis] = 1.0;
    return fm;
}

}  // namespace

TEST_CASE("confidence_filter keeps perfect matches and drops mismatches") {
    const int W = 8;
    HintMap h(1, W);
    h.at(0, 1) = 3.0;
    GuidanceParams p;  // conf_tau 0.9, shift +1

    FeatureMap fL = unit_features(1, W, 4, 0);
    FeatureMap fR = unit_features(1, W, 4, 0);
    FilterResult res = confidence_filter(h, fL, fR, p);
    CHECK(res.hints.at(0, 1) == 3.0);  // tanh(0) = 0, conf = 1
    CHECK(res.confidence[1] == 1.0);

    // ||diff||^2 = 1 via unit vectors with dot product 1/2.
    FeatureMap fR2(1, W, 4);
    for (int y = 0; y < W; ++y) {
        fR2.descriptor(0, y)[0] = 0.5;
        fR2.descriptor(0, y)[1] = std::sqrt(3.0) / 2.0;
    }
    FilterResult res2 = confidence_filter(h, fL, fR2, p);
    CHECK(res2.confidence[1] == doctest::Approx(0.23840584404423513).epsilon(1e-9));
    CHECK(res2.hints.at(0, 1) == 0.0);  // dropped at tau = 0.9
}

TEST_CASE("confidence_filter zeroes hints whose match leaves the image") {
    HintMap h(1, 4);
    h.at(0, 2) = 50.0;  // column 2 + 50 is far outside
    GuidanceParams p;
    FeatureMap fL = unit_features(1, 4, 3, 0);
    FeatureMap fR = unit_features(1, 4, 3, 0);
    FilterResult res = confidence_filter(h, fL, fR, p);
    CHECK(res.confidence[2] == 0.0);
    CHECK(res.hints.at(0, 2) == 0.0);
}

TEST_CASE("confidence_filter shift sign flag flips the lookup direction") {
    HintMap h(1, 8);
    h.at(0, 6) = 3.0;
    FeatureMap fL = unit_features(1, 8, 3, 0);
    FeatureMap fR(1, 8, 3);
    fR.descriptor(0, 3)[0] = 1.0;  // only column 6 - 3 matches
    for (int y = 0; y < 8; ++y)
        if (y != 3) fR.descriptor(0, y)[1] = 1.0;

    GuidanceParams plus;  // +1: looks at column 9, out of bounds
    FilterResult rp = confidence_filter(h, fL, fR, plus);
    CHECK(rp.hints.at(0, 6) == 0.0);

    GuidanceParams minus;
    minus.shift_sign = -1;
    FilterResult rm = confidence_filter(h, fL, fR, minus);
    CHECK(rm.hints.at(0, 6) == 3.0);
}

TEST_CASE("confidence_filter output is a subset and tau-monotone") {
    SplitMix64 rng(64);
    const int H = 12, W = 40;
    HintMap h(H, W);
    for (int k = 0; k < 60; ++k)
        h.at(static_cast<int>(rng.next() % H), static_cast<int>(rng.next() % W)) =
            rng.uniform(1.0, 12.0);

    FeatureMap fL(H, W, 5), fR(H, W, 5);
    auto randomize = [&](FeatureMap& fm) {
        for (int x = 0; x < H; ++x)
            for (int y = 0; y < W; ++y) {
                double* d = fm.descriptor(x, y);
                double norm2 = 0.0;
                for (int k = 0; k < 5; ++k) {
                    d[k] = rng.uniform(-1.0, 1.0);
                    norm2 += d[k] * d[k];
                }
                for (int k = 0; k < 5; ++k) d[k] /= std::sqrt(norm2);
            }
    };
    randomize(fL);
    randomize(fR);

    GuidanceParams loose;
    loose.conf_tau = 0.2;
    GuidanceParams tight;
    tight.conf_tau = 0.8;
    FilterResult a = confidence_filter(h, fL, fR, loose);
    FilterResult b = confidence_filter(h, fL, fR, tight);

    for (std::size_t i = 0; i < h.size(); ++i) {
        CHECK(a.confidence[i] >= 0.0);
        CHECK(a.confidence[i] <= 1.0);
        if (a.hints.values[i] != 0.0) CHECK(a.hints.values[i] == h.values[i]);  // subset
        if (b.hints.values[i] != 0.0) CHECK(a.hints.values[i] != 0.0);  // tau-monotone
    }
}

TEST_CASE("patch_descriptor yields unit norms and canonical constants") {
    GrayImage flat(6, 6);
    for (double& v : flat.values) v = 0.42;
    FeatureMap fm = patch_descriptor(flat, 3);
    CHECK(fm.length == 9);
    const double canon = 1.0 / 3.0;
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y)
            for (int k = 0; k < 9; ++k)
                CHECK(fm.descriptor(x, y)[k] == doctest::Approx(canon).epsilon(1e-12));

    SplitMix64 rng(17);
    GrayImage tex(10, 10);
    for (double& v : tex.values) v = rng.uniform();
    FeatureMap ft = patch_descriptor(tex, 5);
    for (int x = 0; x < 10; ++x)
        for (int y = 0; y < 10; ++y) {
            double norm2 = 0.0;
            const double* d = ft.descriptor(x, y);
            for (int k = 0; k < 25; ++k) norm2 += d[k] * d[k];
            CHECK(std::abs(std::sqrt(norm2) - 1.0) <= 1e-6);
        }

    CHECK_THROWS_AS(patch_descriptor(flat, 4), std::invalid_argument);
    CHECK_THROWS_AS(patch_descriptor(flat, 1), std::invalid_argument);
}

TEST_CASE("patch_descriptor is a pure function of the neighborhood") {
    GrayImage img(9, 20);
    SplitMix64 rng(3);
    for (double& v : img.values) v = rng.uniform();
    // copy a 5x5 neighborhood so two pixels see identical windows
    for (int dx = -2; dx <= 2; ++dx)
        for (int dy = -2; dy <= 2; ++dy) img.at(4 + dx, 14 + dy) = img.at(4 + dx, 4 + dy);
    FeatureMap fm = patch_descriptor(img, 5);
    for (int k = 0; k < 25; ++k)
        CHECK(fm.descriptor(4, 14)[k] == fm.descriptor(4, 4)[k]);
}
