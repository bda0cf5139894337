#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hintex/metrics.hpp"
#include "hintex/synth.hpp"
#include "oracles.hpp"

using namespace hintex;

namespace {

DisparityMap random_map(SplitMix64& rng, int h, int w, double invalid_frac = 0.0) {
    DisparityMap m(h, w);
    for (std::size_t i = 0; i < m.size(); ++i) {
        m.values[i] = rng.uniform(0.0, 100.0);
        if (rng.uniform() < invalid_frac) m.valid[i] = 0;
    }
    return m;
}

}  // namespace

TEST_CASE("mae basics") {
    DisparityMap gt(2, 1);
    gt.at(0, 0) = 10.0;
    gt.at(1, 0) = 20.0;
    DisparityMap pred = gt;
    CHECK(mae(pred, gt) == 0.0);

    for (double& v : pred.values) v += 1.0;
    CHECK(mae(pred, gt) == doctest::Approx(1.0).epsilon(1e-12));

    pred = gt;
    pred.at(0, 0) += 1.0;
    pred.at(1, 0) -= 3.0;
    CHECK(mae(pred, gt) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("mae ignores pixels invalid in either map and rejects empty domains") {
    DisparityMap gt(2, 2), pred(2, 2);
    gt.at(0, 0) = 5.0;
    pred.at(0, 0) = 9.0;
    gt.set_valid(0, 1, false);
    pred.set_valid(1, 0, false);
    gt.at(1, 1) = 1.0;
    pred.at(1, 1) = 1.0;
    CHECK(mae(pred, gt) == doctest::Approx(2.0));  // pixels (0,0) and (1,1)

    DisparityMap all_invalid(2, 2);
    for (std::size_t i = 0; i < all_invalid.size(); ++i) all_invalid.valid[i] = 0;
    CHECK_THROWS_AS(mae(pred, all_invalid), std::runtime_error);
    DisparityMap other(3, 3);
    CHECK_THROWS_AS(mae(pred, other), std::invalid_argument);
}

TEST_CASE("error_rate counts strictly greater errors") {
    DisparityMap gt(2, 2), pred(2, 2);
    // errors {1, 2.5, 3.5, 9} at t = 3 -> 50%
    const double errs[4] = {1.0, 2.5, 3.5, 9.0};
    for (int i = 0; i < 4; ++i) {
        gt.values[i] = 50.0;
        pred.values[i] = 50.0 + errs[i];
    }
    CHECK(error_rate(pred, gt, 3.0) == doctest::Approx(50.0));
    CHECK(error_rate(gt, gt, 2.0) == 0.0);

    // half off by 10, half exact, t = 3
    pred = gt;
    pred.values[0] += 10.0;
    pred.values[1] -= 10.0;
    CHECK(error_rate(pred, gt, 3.0) == doctest::Approx(50.0));
}

TEST_CASE("error exactly at the threshold is not an error") {
    DisparityMap gt(1, 2), pred(1, 2);
    gt.values = {10.0, 10.0};
    pred.values = {13.0, 10.0};  // error exactly 3
    CHECK(error_rate(pred, gt, 3.0) == 0.0);
    pred.values[0] = 13.0 + 1e-9;
    CHECK(error_rate(pred, gt, 3.0) == doctest::Approx(50.0));
}

TEST_CASE("invalid predictions count as errors at every threshold") {
    DisparityMap gt(1, 4), pred(1, 4);
    for (int i = 0; i < 4; ++i) gt.values[i] = pred.values[i] = 7.0;
    pred.valid[0] = 0;
    for (int t : kErrorThresholds)
        CHECK(error_rate(pred, gt, t) == doctest::Approx(25.0));
    // ... and are excluded from MAE
    CHECK(mae(pred, gt) == 0.0);
}

TEST_CASE("error_rate is non-increasing in t and matches the naive reference") {
    SplitMix64 rng(71);
    for (int iter = 0; iter < 50; ++iter) {
        DisparityMap gt = random_map(rng, 12, 12, 0.1);
        DisparityMap pred = random_map(rng, 12, 12, 0.05);
        double prev = 1e9;
        for (double t : {0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 10.0}) {
            double r = error_rate(pred, gt, t);
            CHECK(r <= prev + 1e-12);
            CHECK(r == doctest::Approx(oracle::naive_error_rate(pred, gt, t)).epsilon(1e-12));
            prev = r;
        }
        CHECK(mae(pred, gt) == doctest::Approx(oracle::naive_mae(pred, gt)).epsilon(1e-12));
    }
}

TEST_CASE("metrics are permutation invariant") {
    SplitMix64 rng(72);
    DisparityMap gt = random_map(rng, 8, 8);
    DisparityMap pred = random_map(rng, 8, 8);

    // same pixel pairs, shuffled locations
    std::vector<int> perm(64);
    for (int i = 0; i < 64; ++i) perm[i] = i;
    for (int i = 63; i > 0; --i)
        std::swap(perm[i], perm[static_cast<int>(rng.next() % (i + 1))]);
    DisparityMap gt2(8, 8), pred2(8, 8);
    for (int i = 0; i < 64; ++i) {
        gt2.values[perm[i]] = gt.values[i];
        pred2.values[perm[i]] = pred.values[i];
    }
    CHECK(mae(pred2, gt2) == doctest::Approx(mae(pred, gt)).epsilon(1e-12));
    CHECK(error_rate(pred2, gt2, 2.0) ==
          doctest::Approx(error_rate(pred, gt, 2.0)).epsilon(1e-12));
}

TEST_CASE("hint_stats reports count, density, and hint MAE") {
    DisparityMap gt(480, 640);
    for (double& v : gt.values) v = 30.0;
    HintMap h(480, 640);
    int placed = 0;
    for (int x = 0; x < 480 && placed < 849; ++x)
        for (int y = (x % 7); y < 640 && placed < 849; y += 23) {
            h.at(x, y) = 30.0 + 1.59;
            ++placed;
        }
    REQUIRE(placed == 849);

    HintStats s = hint_stats(h, gt);
    CHECK(s.count == 849);
    CHECK(s.density == doctest::Approx(849.0 / (480.0 * 640.0)).epsilon(1e-12));
    REQUIRE(s.mae.has_value());
    CHECK(*s.mae == doctest::Approx(1.59).epsilon(1e-12));

    HintMap exact(480, 640);
    exact.at(3, 3) = 30.0;
    CHECK(*hint_stats(exact, gt).mae == 0.0);

    HintMap empty(480, 640);
    HintStats es = hint_stats(empty, gt);
    CHECK(es.count == 0);
    CHECK(es.density == 0.0);
    CHECK(!es.mae.has_value());
}

TEST_CASE("evaluate assembles a full report with monotone error rates") {
    SplitMix64 rng(73);
    DisparityMap gt = random_map(rng, 16, 16, 0.1);
    DisparityMap pred = random_map(rng, 16, 16, 0.05);
    HintMap h(16, 16);
    h.at(2, 2) = 5.0;

    EvalReport r = evaluate(pred, gt, &h);
    for (std::size_t k = 1; k < r.err_rates.size(); ++k)
        CHECK(r.err_rates[k] <= r.err_rates[k - 1] + 1e-12);
    CHECK(r.hint_count == 1);
    CHECK(r.evaluated > 0);

    std::string row = eval_csv_row("case", r);
    std::string header = eval_csv_header();
    CHECK(row.substr(0, 5) == "case,");
    CHECK(std::count(row.begin(), row.end(), ',') ==
          std::count(header.begin(), header.end(), ','));
}
