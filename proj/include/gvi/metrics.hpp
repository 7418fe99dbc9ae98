#pragma once

#include <vector>

#include "gvi/types.hpp"

namespace gvi {

/// Over-estimation measure: sum_s (max_a q_est - max_a q_true) divided by
/// |sum_s max_a q_true|. Throws numerical_error when the denominator is 0.
double error_ratio(const QTable& q_est, const QTable& q_true);

/// Q(s, action 0) - Q(s, action 1); only meaningful for 2-action tables.
VTable action_gap_curve(const QTable& q);

enum class AggStat { median, mean, p05, p95 };

/// Columnwise statistic across rows of equal length. Quantiles use linear
/// interpolation between order statistics at h = (n-1)p; the median of an
/// even count averages the two central values.
std::vector<double> aggregate(const std::vector<std::vector<double>>& rows, AggStat stat);

/// Interpolated quantile of one sample, p in [0,1]. Sorts a copy.
double quantile(std::vector<double> xs, double p);

}  // namespace gvi
