#include "gvi/reference.hpp"

#include <cmath>

namespace gvi::reference {

void softmax_value(const double* q, int n_states, int n_actions, SoftmaxTemp beta, double* out) {
    for (int s = 0; s < n_states; ++s) {
        const double* row = q + static_cast<size_t>(s) * n_actions;
        if (beta.is_mean()) {
            double sum = 0.0;
            for (int a = 0; a < n_actions; ++a) sum += row[a];
            out[s] = sum / n_actions;
            continue;
        }
        double m = row[0];
        for (int a = 1; a < n_actions; ++a)
            if (row[a] > m) m = row[a];
        if (beta.is_max()) {
            out[s] = m;
            continue;
        }
        double sum = 0.0;
        for (int a = 0; a < n_actions; ++a) sum += std::exp(beta.beta * (row[a] - m));
        out[s] = m + std::log(sum / n_actions) / beta.beta;
    }
}

void boltzmann_value(const double* q, int n_states, int n_actions, double beta, double* out) {
    for (int s = 0; s < n_states; ++s) {
        const double* row = q + static_cast<size_t>(s) * n_actions;
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
    for (int s = 0; s < n_states; ++s) {
        const double* row = q + static_cast<size_t>(s) * n_actions;
        double* orow = out + static_cast<size_t>(s) * n_actions;
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
    for (int s = 0; s < n_states; ++s) {
        double sum = 0.0;
        for (int a = 0; a < n_actions; ++a)
            sum += probs[static_cast<size_t>(s) * n_actions + a] *
                   q[static_cast<size_t>(s) * n_actions + a];
        out[s] = sum;
    }
}

void bellman_from_value(const Mdp& m, const double* v, double* out) {
    for (int s = 0; s < m.n_states; ++s) {
        for (int a = 0; a < m.n_actions; ++a) {
            double acc = 0.0;
            for (int s2 = 0; s2 < m.n_states; ++s2) acc += m.p(s, a, s2) * v[s2];
            out[static_cast<size_t>(s) * m.n_actions + a] = m.r(s, a) + m.gamma * acc;
        }
    }
}

void gvi_from_value(const Mdp& m, const double* q, const double* soft_v, double alpha,
                    double* out) {
    for (int s = 0; s < m.n_states; ++s) {
        for (int a = 0; a < m.n_actions; ++a) {
            double acc = 0.0;
            for (int s2 = 0; s2 < m.n_states; ++s2) acc += m.p(s, a, s2) * soft_v[s2];
            size_t i = static_cast<size_t>(s) * m.n_actions + a;
            out[i] = m.r(s, a) + m.gamma * acc + alpha * (q[i] - soft_v[s]);
        }
    }
}

}  // namespace gvi::reference
