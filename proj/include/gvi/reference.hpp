#pragma once

#include "gvi/types.hpp"

// Plain single-threaded versions of the kernels, written as the obvious
// nested loops. They are the ground truth the OpenMP kernels are checked
// against (bitwise) and the slow side of the kernel benchmark.
namespace gvi::reference {

void softmax_value(const double* q, int n_states, int n_actions, SoftmaxTemp beta, double* out);
void boltzmann_value(const double* q, int n_states, int n_actions, double beta, double* out);
void boltzmann_policy(const double* q, int n_states, int n_actions, double beta, double* out);
void policy_value(const double* q, const double* probs, int n_states, int n_actions, double* out);
void bellman_from_value(const Mdp& m, const double* v, double* out);
void gvi_from_value(const Mdp& m, const double* q, const double* soft_v, double alpha,
                    double* out);

}  // namespace gvi::reference
