#include "gvi/kernels.hpp"

#include <cmath>

namespace gvi::kernels {

void softmax_value(const double* q, int n_states, int n_actions, SoftmaxTemp beta, double* out) {
    const long n = static_cast<long>(n_states);
    if (beta.is_max()) {
#pragma omp parallel for if (n * n_actions >= kParallelGrain)
        for (long s = 0; s < n; ++s) {
            const double* row = q + s * n_actions;
            double m = row[0];
            for (int a = 1; a < n_actions; ++a)
                if (row[a] > m) m = row[a];
            out[s] = m;
        }
        return;
    }
    if (beta.is_mean()) {
#pragma omp parallel for if (n * n_actions >= kParallelGrain)
        for (long s = 0; s < n; ++s) {
            const double* row = q + s * n_actions;
            double sum = 0.0;
            for (int a = 0; a < n_actions; ++a) sum += row[a];
            out[s] = sum / n_actions;
        }
        return;
    }
    const double b = beta.beta;
#pragma omp parallel for if (n * n_actions >= kParallelGrain)
    for (long s = 0; s < n; ++s) {
        const double* row = q + s * n_actions;
        double m = row[0];
        for (int a = 1; a < n_actions; ++a)
            if (row[a] > m) m = row[a];
        double sum = 0.0;
        for (int a = 0; a < n_actions; ++a) sum += std::exp(b * (row[a] - m));
        out[s] = m + std::log(sum / n_actions) / b;
    }
}

void boltzmann_value(const double* q, int n_states, int n_actions, double beta, double* out) {
    const long n = static_cast<long>(n_states);
#pragma omp parallel for if (n * n_actions >= kParallelGrain)
    for (long s = 0; s < n; ++s) {
        const double* row = q + s * n_actions;
        double m = row[0];
        for (int a = 1; a < n_actions; ++a)
            if (row[a] > m) m = row[a];
        double num = 0.0, den = 0.0;
        for (int a = 0; a < n_actions; ++a) {
            double w = std::exp(beta * (row[a] - m));
            den += w;
            num += row[a] * w;
        }
        out[s] = num / den;
    }
}

void boltzmann_policy(const double* q, int n_states, int n_actions, double beta, double* out) {
    const long n = static_cast<long>(n_states);
#pragma omp parallel for if (n * n_actions >= kParallelGrain)
    for (long s = 0; s < n; ++s) {
        const double* row = q + s * n_actions;
        double* orow = out + s * n_actions;
        double m = row[0];
        for (int a = 1; a < n_actions; ++a)
            if (row[a] > m) m = row[a];
        double den = 0.0;
        for (int a = 0; a < n_actions; ++a) {
            orow[a] = std::exp(beta * (row[a] - m));
            den += orow[a];
        }
        for (int a = 0; a < n_actions; ++a) orow[a] /= den;
    }
}

void policy_value(const double* q, const double* probs, int n_states, int n_actions, double* out) {
    const long n = static_cast<long>(n_states);
#pragma omp parallel for if (n * n_actions >= kParallelGrain)
    for (long s = 0; s < n; ++s) {
        const double* qrow = q + s * n_actions;
        const double* prow = probs + s * n_actions;
        double sum = 0.0;
        for (int a = 0; a < n_actions; ++a) sum += prow[a] * qrow[a];
        out[s] = sum;
    }
}

void bellman_from_value(const Mdp& m, const double* v, double* out) {
    const long rows = static_cast<long>(m.n_states) * m.n_actions;
    const int ns = m.n_states;
    const double* P = m.transition.data();
    const double* r = m.reward.data();
    const double g = m.gamma;
#pragma omp parallel for if (rows * ns >= kParallelGrain)
    for (long i = 0; i < rows; ++i) {
        const double* prow = P + i * ns;
        double acc = 0.0;
        for (int s2 = 0; s2 < ns; ++s2) acc += prow[s2] * v[s2];
        out[i] = r[i] + g * acc;
    }
}

void gvi_from_value(const Mdp& m, const double* q, const double* soft_v, double alpha,
                    double* out) {
    const long rows = static_cast<long>(m.n_states) * m.n_actions;
    const int ns = m.n_states;
    const int na = m.n_actions;
    const double* P = m.transition.data();
    const double* r = m.reward.data();
    const double g = m.gamma;
#pragma omp parallel for if (rows * ns >= kParallelGrain)
    for (long i = 0; i < rows; ++i) {
        const double* prow = P + i * ns;
        double acc = 0.0;
        for (int s2 = 0; s2 < ns; ++s2) acc += prow[s2] * soft_v[s2];
        out[i] = r[i] + g * acc + alpha * (q[i] - soft_v[i / na]);
    }
}

}  // namespace gvi::kernels
