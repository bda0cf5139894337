#pragma once

#include <array>
#include <optional>
#include <string>

#include "hintex/core.hpp"

// Evaluation protocol: MAE and >t error rates over ground-truth-valid pixels,
// plus hint statistics. The >t convention is strict: |err| = t is not an
// error. Prediction pixels invalid inside the gt-valid domain count as errors
// at every threshold and are excluded from MAE.

namespace hintex {

inline constexpr std::array<int, 4> kErrorThresholds{2, 3, 4, 5};

struct EvalReport {
    double mae = 0.0;
    std::array<double, 4> err_rates{};  // percentages for t = 2, 3, 4, 5
    long long evaluated = 0;            // gt-valid pixels
    long long invalid_pred = 0;         // of those, invalid in the prediction
    long long hint_count = 0;           // 0 unless hints were supplied
    double hint_density = 0.0;
    std::optional<double> hint_mae;
};

// Mean |pred - gt| over pixels valid in both maps. Throws when the overlap
// is empty.
double mae(const DisparityMap& pred, const DisparityMap& gt);

// 100 * fraction of gt-valid pixels with |pred - gt| > t (strict); invalid
// predictions count as errors. Throws on an empty domain or t <= 0.
double error_rate(const DisparityMap& pred, const DisparityMap& gt, double t);

struct HintStats {
    long long count = 0;
    double density = 0.0;
    std::optional<double> mae;  // absent when there are no hints
};

HintStats hint_stats(const HintMap& h, const DisparityMap& gt);

// Full report over the standard thresholds; hints are optional.
EvalReport evaluate(const DisparityMap& pred, const DisparityMap& gt,
                    const HintMap* hints = nullptr);

std::string eval_csv_header();
std::string eval_csv_row(const std::string& name, const EvalReport& r);
std::string eval_human_block(const std::string& name, const EvalReport& r);

}  // namespace hintex
