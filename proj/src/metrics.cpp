#include "hintex/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hintex {

namespace {

void check_dims(const DisparityMap& pred, const DisparityMap& gt) {
    if (pred.height != gt.height || pred.width != gt.width)
        throw std::invalid_argument("metrics: prediction and ground truth dimensions differ");
}

}  // namespace

double mae(const DisparityMap& pred, const DisparityMap& gt) {
    check_dims(pred, gt);
    double sum = 0.0;
    long long n = 0;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (!gt.valid[i] || !pred.valid[i]) continue;
        sum += std::abs(pred.values[i] - gt.values[i]);
        ++n;
    }
    if (n == 0) throw std::runtime_error("mae: empty evaluation domain");
    return sum / n;
}

double error_rate(const DisparityMap& pred, const DisparityMap& gt, double t) {
    check_dims(pred, gt);
    if (!(t > 0.0)) throw std::invalid_argument("error_rate: threshold must be > 0");
    long long n = 0;
    long long bad = 0;
    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (!gt.valid[i]) continue;
        ++n;
        if (!pred.valid[i]) {
            ++bad;  // unanswered pixels count as errors at every threshold
        } else if (std::abs(pred.values[i] - gt.values[i]) > t) {
            ++bad;
        }
    }
    if (n == 0) throw std::runtime_error("error_rate: empty evaluation domain");
    return 100.0 * static_cast<double>(bad) / static_cast<double>(n);
}

HintStats hint_stats(const HintMap& h, const DisparityMap& gt) {
    if (h.height != gt.height || h.width != gt.width)
        throw std::invalid_argument("hint_stats: dimensions differ");
    HintStats s;
    double sum = 0.0;
    long long measured = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h.values[i] == 0.0) continue;
        ++s.count;
        if (gt.valid[i]) {
            sum += std::abs(h.values[i] - gt.values[i]);
            ++measured;
        }
    }
    s.density = static_cast<double>(s.count) / static_cast<double>(h.size());
    if (measured > 0) s.mae = sum / measured;
    return s;
}

EvalReport evaluate(const DisparityMap& pred, const DisparityMap& gt, const HintMap* hints) {
    check_dims(pred, gt);
    EvalReport r;
    r.mae = mae(pred, gt);
    for (std::size_t k = 0; k < kErrorThresholds.size(); ++k)
        r.err_rates[k] = error_rate(pred, gt, kErrorThresholds[k]);
    for (std::size_t i = 0; i < gt.size(); ++i) {
        if (!gt.valid[i]) continue;
        ++r.evaluated;
        if (!pred.valid[i]) ++r.invalid_pred;
    }
    if (hints) {
        HintStats s = hint_stats(*hints, gt);
        r.hint_count = s.count;
        r.hint_density = s.density;
        r.hint_mae = s.mae;
    }
    return r;
}

std::string eval_csv_header() {
    return "name,mae,bad2,bad3,bad4,bad5,evaluated,invalid_pred,hints,hint_density,hint_mae";
}

std::string eval_csv_row(const std::string& name, const EvalReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.4f,%.4f,%.4f,%.4f,%lld,%lld,%lld,%.6f,",
                  name.c_str(), r.mae, r.err_rates[0], r.err_rates[1], r.err_rates[2],
                  r.err_rates[3], r.evaluated, r.invalid_pred, r.hint_count, r.hint_density);
    std::string row(buf);
    if (r.hint_mae) {
        std::snprintf(buf, sizeof(buf), "%.6f", *r.hint_mae);
        row += buf;
    }
    return row;
}

std::string eval_human_block(const std::string& name, const EvalReport& r) {
    std::ostringstream os;
    os << name << "\n";
    char buf[128];
    std::snprintf(buf, sizeof(buf), "  MAE        %8.4f px\n", r.mae);
    os << buf;
    for (std::size_t k = 0; k < kErrorThresholds.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "  >%d         %8.4f %%\n", kErrorThresholds[k],
                      r.err_rates[k]);
        os << buf;
    }
    std::snprintf(buf, sizeof(buf), "  evaluated  %lld px", r.evaluated);
    os << buf;
    if (r.invalid_pred > 0) {
        std::snprintf(buf, sizeof(buf), "  (%lld invalid predictions counted as errors)",
                      r.invalid_pred);
        os << buf;
    }
    os << "\n";
    if (r.hint_count > 0) {
        std::snprintf(buf, sizeof(buf), "  hints      %lld  [%.4f %%]", r.hint_count,
                      100.0 * r.hint_density);
        os << buf;
        if (r.hint_mae) {
            std::snprintf(buf, sizeof(buf), "  hint MAE %.4f px", *r.hint_mae);
            os << buf;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace hintex
