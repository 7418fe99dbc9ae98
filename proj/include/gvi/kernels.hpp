#pragma once

#include "gvi/types.hpp"

// Hot loops over dense tables, parallelized with OpenMP across output
// entries. Each output element is computed by a fixed serial recipe, so
// results are bitwise identical to gvi::reference regardless of thread
// count; tests assert that. Inputs are assumed validated by the caller.
namespace gvi::kernels {

// Below this many output elements the OpenMP if-clause keeps loops serial;
// thread startup would otherwise dominate on the small MDPs used in tests.
inline constexpr long kParallelGrain = 4096;

/// out[s] = mellowmax_beta over row s of q (beta=inf: max, beta=0: mean).
void softmax_value(const double* q, int n_states, int n_actions, SoftmaxTemp beta, double* out);

/// out[s] = Boltzmann average of row s at inverse temperature beta (finite > 0).
void boltzmann_value(const double* q, int n_states, int n_actions, double beta, double* out);

/// out[s][a] = exp(beta q) / sum_row exp(beta q), computed shift-stabilized.
void boltzmann_policy(const double* q, int n_states, int n_actions, double beta, double* out);

/// out[s] = sum_a probs[s][a] q[s][a].
void policy_value(const double* q, const double* probs, int n_states, int n_actions, double* out);

/// out[s][a] = r[s][a] + gamma * sum_s' P[s][a][s'] v[s'].
void bellman_from_value(const Mdp& m, const double* v, double* out);

/// out[s][a] = r + gamma * P.soft_v + alpha * (q[s][a] - soft_v[s]);
/// the generalized backup given a precomputed per-state soft value.
void gvi_from_value(const Mdp& m, const double* q, const double* soft_v, double alpha,
                    double* out);

}  // namespace gvi::kernels
