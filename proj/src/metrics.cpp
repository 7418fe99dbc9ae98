#include "gvi/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "gvi/operators.hpp"

namespace gvi {

double error_ratio(const QTable& q_est, const QTable& q_true) {
    if (!q_est.same_shape(q_true)) throw invalid_input("error_ratio: shape mismatch");
    double num = 0.0, den = 0.0;
    for (int s = 0; s < q_true.n_states; ++s) {
        num += q_est(s, argmax_action(q_est, s)) - q_true(s, argmax_action(q_true, s));
        den += q_true(s, argmax_action(q_true, s));
    }
    if (std::fabs(den) < 1e-300) throw numerical_error("error_ratio: zero true-value mass");
    return num / std::fabs(den);
}

VTable action_gap_curve(const QTable& q) {
    if (q.n_actions < 2) throw invalid_input("action_gap_curve: needs at least two actions");
    VTable out(q.n_states);
    for (int s = 0; s < q.n_states; ++s) out[s] = q(s, 0) - q(s, 1);
    return out;
}

double quantile(std::vector<double> xs, double p) {
    if (xs.empty()) throw invalid_input("quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw invalid_input("quantile: p must lie in [0,1]");
    std::sort(xs.begin(), xs.end());
    double h = (static_cast<double>(xs.size()) - 1.0) * p;
    size_t lo = static_cast<size_t>(h);
    if (lo + 1 >= xs.size()) return xs.back();
    double frac = h - static_cast<double>(lo);
    return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
}

std::vector<double> aggregate(const std::vector<std::vector<double>>& rows, AggStat stat) {
    if (rows.empty()) throw invalid_input("aggregate: no rows");
    size_t width = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != width) throw invalid_input("aggregate: ragged rows");

    std::vector<double> out(width, 0.0);
    std::vector<double> col(rows.size());
    for (size_t j = 0; j < width; ++j) {
        for (size_t i = 0; i < rows.size(); ++i) col[i] = rows[i][j];
        switch (stat) {
            case AggStat::mean: {
                double sum = 0.0;
                for (double v : col) sum += v;
                out[j] = sum / static_cast<double>(col.size());
                break;
            }
            case AggStat::median: out[j] = quantile(col, 0.5); break;
            case AggStat::p05: out[j] = quantile(col, 0.05); break;
            case AggStat::p95: out[j] = quantile(col, 0.95); break;
        }
    }
    return out;
}

}  // namespace gvi
