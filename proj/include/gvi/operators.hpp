#pragma once

#include "gvi/types.hpp"

namespace gvi {

/// Per-state mellowmax: (1/beta) log(mean_a exp(beta q(s,a))).
/// beta=inf gives max, beta=0 the plain mean. Throws on non-finite input.
VTable mellowmax(const QTable& q, SoftmaxTemp beta);

/// Per-state Boltzmann average sum_a q exp(beta q) / sum_a exp(beta q).
/// beta=inf gives the row max; beta=0 throws (use mellowmax for the mean).
VTable boltzmann_value(const QTable& q, SoftmaxTemp beta);

/// Boltzmann (softmax) distribution over each row. beta=inf gives the
/// greedy deterministic policy (ties to the lowest index); beta=0 throws.
PolicyTable boltzmann_policy(const QTable& q, SoftmaxTemp beta);

/// The Boltzmann policy whose expected value matches mellowmax: per state,
/// finds kappa with sum_a exp(kappa q(s,a)) (q(s,a) - mm(s)) = 0 by bisection.
/// beta=inf degrades to greedy (ties to the lowest action index), beta=0 to
/// uniform, an all-equal row to uniform. Throws numerical_error if the root
/// search fails to bracket or converge within the iteration cap.
PolicyTable mellowmax_policy(const QTable& q, SoftmaxTemp beta);

/// Deterministic argmax policy; ties go to the lowest action index.
PolicyTable greedy_policy(const QTable& q);
int argmax_action(const QTable& q, int s);

/// One application of the policy Bellman operator: r + gamma P (pi q).
QTable bellman_policy(const Mdp& m, const QTable& q, const PolicyTable& pi);

/// One application of the soft Bellman operator: r + gamma P (mellowmax q).
QTable bellman_soft(const Mdp& m, const QTable& q, SoftmaxTemp beta);

/// Fixed point of bellman_policy, iterated from zeros until the sup-norm
/// residual drops below tol. Throws convergence_error past max_iters.
QTable policy_q_value(const Mdp& m, const PolicyTable& pi, double tol = 1e-10,
                      long max_iters = 1000000);

}  // namespace gvi
