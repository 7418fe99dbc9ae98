#pragma once

#include <utility>
#include <vector>

#include "gvi/types.hpp"

namespace gvi {

/// Interpolation knobs of the generalized backup
///   Q' = T_beta Q + alpha (Q - mellowmax_beta Q).
/// alpha=0, beta=inf is value iteration; alpha=0 with finite beta is softmax
/// value iteration; alpha in (0,1), beta=inf is advantage learning; alpha=1
/// is dynamic policy programming.
struct GviParams {
    double alpha;
    SoftmaxTemp beta;

    GviParams(double a, SoftmaxTemp b) : alpha(a), beta(b) {
        if (!(a >= 0.0 && a <= 1.0)) throw invalid_input("GviParams: alpha must lie in [0,1]");
        if (b.is_mean()) throw invalid_input("GviParams: beta must be positive");
    }

    /// Effective temperature beta/(1-alpha) of the limit; inf when alpha=1
    /// or beta=inf.
    SoftmaxTemp theta() const {
        if (alpha == 1.0 || beta.is_max()) return SoftmaxTemp::max();
        return SoftmaxTemp(beta.beta / (1.0 - alpha));
    }
};

struct SolveOptions {
    long max_iters = 100000;
    double tol = 1e-10;
    long snapshot_stride = 0;  // 0: keep no intermediate tables
};

struct GviTrace {
    std::vector<double> residuals;       // sup-norm change per iteration
    std::vector<QTable> snapshots;       // Q after iterations stride, 2*stride, ...
    long iterations = 0;
    bool converged = false;
    bool q0_out_of_bounds = false;       // ||Q0|| exceeded r_max/(1-gamma)
};

/// One generalized backup; err, when given, is added elementwise afterwards.
QTable gvi_step(const Mdp& m, const QTable& q, const GviParams& p, const QTable* err = nullptr);

/// Iterates gvi_step from q0 until the residual drops below opts.tol or the
/// iteration cap is hit (alpha=1 never converges; the trace says so).
std::pair<QTable, GviTrace> gvi_solve(const Mdp& m, const GviParams& p, QTable q0,
                                      const SolveOptions& opts = {});

/// Fixed point of the soft Bellman operator r + gamma P mellowmax_beta,
/// iterated from zeros. beta=inf yields the optimal Q.
QTable fixed_point_q(const Mdp& m, SoftmaxTemp beta, double tol = 1e-12, long max_iters = 1000000);

/// Where the iteration converges for alpha < 1:
///   mm_theta Q_theta + (Q_theta - mm_theta Q_theta) / (1 - alpha),
/// theta = beta/(1-alpha). Throws invalid_input at alpha=1.
QTable theorem1_limit(const Mdp& m, const GviParams& p, double tol = 1e-12,
                      long max_iters = 1000000);

/// The alpha=1 trajectory up to a vanishing remainder (k >= 1):
///   V* + Q0 + k A* + S - mellowmax_beta((k-1) A* + Q0 + S),  A* = Q* - V*,
/// where S is the constant drift the iteration inherits from q0 (zero when
/// q0 = Q* and when gamma = 0). Suboptimal entries slide to -inf linearly in k.
QTable theorem1_divergent_form(const Mdp& m, const GviParams& p, const QTable& q0, long k);

/// Action-gap size below which the limit's greedy action may differ from
/// the optimal one: (gamma log|A| / (1-gamma)) (1-alpha)/beta.
double action_gap_threshold(const GviParams& p, double gamma, int n_actions);

/// Auxiliary sequence q_0..q_K underlying the non-asymptotic analysis:
///   A_{k+1} q_{k+1} = A_k T^{pi_k} q_k + alpha^k T^{pi_k} q_0 + F_k,
/// A_k = (1-alpha^k)/(1-alpha) (= k at alpha=1), F_k = alpha F_{k-1} + err_k,
/// pi_k the mellowmax-matching policy of A_k q_k + alpha^k q_0. errors may be
/// empty (exact updates) or hold one table per step 0..K-1.
std::vector<QTable> q_aux_sequence(const Mdp& m, const GviParams& p, const QTable& q0,
                                   const std::vector<QTable>& errors, long K);

/// alpha^k with the 0^0 = 1 convention used throughout the recursions.
double pow_alpha(double alpha, long k);

/// A_k = sum_{i<k} alpha^i, the normalizer of the auxiliary sequence.
double alpha_partial_sum(double alpha, long k);

}  // namespace gvi
