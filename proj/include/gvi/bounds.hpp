#pragma once

#include <optional>
#include <vector>

#include "gvi/engine.hpp"
#include "gvi/types.hpp"

namespace gvi {

/// One evaluation of the performance bound
///   ||Q* - Q^{pi_k}|| <= C + (2/(1-gamma)) ((1-alpha)/(1-alpha^{k+1})) (C_k + E_k).
struct BoundReport {
    long k = 0;
    double c_const = 0.0;  // C, the irreducible softness penalty
    double c_k = 0.0;      // contraction of the initial condition
    double e_k = 0.0;      // discounted accumulated update errors
    double bound = 0.0;    // assembled right-hand side
    std::optional<double> actual_gap;  // measured ||Q* - Q^{pi_k}|| when available
};

/// C and C_k of the bound:
///   C   = (gamma/(1-gamma)) ((1-alpha)/beta) log|A|          (0 when beta=inf)
///   C_k = gamma (alpha^{k+1} - gamma^{k+1})/(alpha - gamma)
///         * (2 V_max + (alpha/beta) log|A|),
/// with the ratio replaced by its limit (k+1) alpha^k when |alpha-gamma| < 1e-12.
std::pair<double, double> bound_constants(const GviParams& p, const MdpMeta& meta, long k);

/// E_k = sum_{i=0..k} gamma^i || sum_{j=0..k-i} alpha^j err_{k-i-j} ||_inf.
/// Needs errors for steps 0..k.
double error_term(const std::vector<QTable>& errors, const GviParams& p, double gamma, long k);

/// Assembles the full right-hand side; actual_gap is left unset.
BoundReport performance_bound(const GviParams& p, const MdpMeta& meta,
                              const std::vector<QTable>& errors, long k);

/// Error-decay coefficient
///   D_k = gamma^k (sum_i alpha^i gamma^{-i}) / (sum_i alpha^i),
/// computed as (sum_i alpha^i gamma^{k-i}) / (sum_i alpha^i) so gamma^{-i}
/// never overflows. D_0 = 1; alpha=0 gives gamma^k; alpha=1 the Cesaro mean
/// of gamma^0..gamma^k.
double decay_coefficient(double alpha, double gamma, long k);

/// Realized per-step errors of a recorded run: err_k = Q_{k+1} - (exact
/// backup of Q_k). Exact histories give zeros; injected noise is recovered.
std::vector<QTable> extract_residual_errors(const Mdp& m, const GviParams& p,
                                            const std::vector<QTable>& q_history);

}  // namespace gvi
