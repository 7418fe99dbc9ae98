#include "gvi/operators.hpp"

#include <cmath>

#include "gvi/kernels.hpp"

namespace gvi {

namespace {

void require_finite(const QTable& q, const char* who) {
    if (q.n_states <= 0 || q.n_actions <= 0) throw invalid_input(std::string(who) + ": empty table");
    if (!q.all_finite()) throw invalid_input(std::string(who) + ": non-finite entry");
}

void require_boltzmann_beta(SoftmaxTemp beta, const char* who) {
    if (beta.is_mean()) throw invalid_input(std::string(who) + ": beta must be positive");
}

}  // namespace

VTable mellowmax(const QTable& q, SoftmaxTemp beta) {
    require_finite(q, "mellowmax");
    VTable out(q.n_states);
    kernels::softmax_value(q.data.data(), q.n_states, q.n_actions, beta, out.data.data());
    return out;
}

VTable boltzmann_value(const QTable& q, SoftmaxTemp beta) {
    require_finite(q, "boltzmann_value");
    require_boltzmann_beta(beta, "boltzmann_value");
    VTable out(q.n_states);
    if (beta.is_max()) {
        kernels::softmax_value(q.data.data(), q.n_states, q.n_actions, beta, out.data.data());
        return out;
    }
    kernels::boltzmann_value(q.data.data(), q.n_states, q.n_actions, beta.beta, out.data.data());
    return out;
}

PolicyTable boltzmann_policy(const QTable& q, SoftmaxTemp beta) {
    require_finite(q, "boltzmann_policy");
    require_boltzmann_beta(beta, "boltzmann_policy");
    if (beta.is_max()) return greedy_policy(q);
    PolicyTable out(q.n_states, q.n_actions);
    kernels::boltzmann_policy(q.data.data(), q.n_states, q.n_actions, beta.beta,
                              out.probs.data());
    return out;
}

int argmax_action(const QTable& q, int s) {
    const double* row = q.row(s);
    int best = 0;
    for (int a = 1; a < q.n_actions; ++a)
        if (row[a] > row[best]) best = a;
    return best;
}

PolicyTable greedy_policy(const QTable& q) {
    require_finite(q, "greedy_policy");
    PolicyTable out(q.n_states, q.n_actions, 0.0);
    for (int s = 0; s < q.n_states; ++s) out(s, argmax_action(q, s)) = 1.0;
    return out;
}

PolicyTable mellowmax_policy(const QTable& q, SoftmaxTemp beta) {
    require_finite(q, "mellowmax_policy");
    if (beta.is_max()) return greedy_policy(q);
    PolicyTable out = PolicyTable::uniform(q.n_states, q.n_actions);
    if (beta.is_mean()) return out;

    VTable mm = mellowmax(q, beta);
    const int na = q.n_actions;
    constexpr int kMaxSteps = 200;
    for (int s = 0; s < q.n_states; ++s) {
        const double* row = q.row(s);
        double hi_q = row[0], lo_q = row[0];
        for (int a = 1; a < na; ++a) {
            hi_q = std::max(hi_q, row[a]);
            lo_q = std::min(lo_q, row[a]);
        }
        if (hi_q - lo_q < 1e-300) continue;  // flat row: every policy matches, keep uniform

        // f(kappa) = sum_a exp(kappa (q - max)) (q - mm), strictly increasing,
        // negative at 0 (mean < mm for beta > 0), positive for large kappa.
        auto f = [&](double kappa) {
            double acc = 0.0;
            for (int a = 0; a < na; ++a) acc += std::exp(kappa * (row[a] - hi_q)) * (row[a] - mm[s]);
            return acc;
        };
        double lo = 0.0, hi = beta.beta;
        int steps = 0;
        while (f(hi) < 0.0) {
            lo = hi;
            hi *= 2.0;
            if (++steps > kMaxSteps)
                throw numerical_error("mellowmax_policy: failed to bracket the root");
        }
        double kappa = 0.5 * (lo + hi);
        for (; steps < kMaxSteps; ++steps) {
            double fv = f(kappa);
            if (fv == 0.0 || hi - lo <= 1e-15 * std::max(1.0, hi)) break;
            (fv < 0.0 ? lo : hi) = kappa;
            kappa = 0.5 * (lo + hi);
        }
        double den = 0.0;
        double* prow = out.row(s);
        for (int a = 0; a < na; ++a) {
            prow[a] = std::exp(kappa * (row[a] - hi_q));
            den += prow[a];
        }
        for (int a = 0; a < na; ++a) prow[a] /= den;
    }
    return out;
}

QTable bellman_policy(const Mdp& m, const QTable& q, const PolicyTable& pi) {
    require_finite(q, "bellman_policy");
    if (q.n_states != m.n_states || q.n_actions != m.n_actions ||
        pi.n_states != m.n_states || pi.n_actions != m.n_actions)
        throw invalid_input("bellman_policy: shape mismatch");
    VTable v(m.n_states);
    kernels::policy_value(q.data.data(), pi.probs.data(), m.n_states, m.n_actions, v.data.data());
    QTable out(m.n_states, m.n_actions);
    kernels::bellman_from_value(m, v.data.data(), out.data.data());
    return out;
}

QTable bellman_soft(const Mdp& m, const QTable& q, SoftmaxTemp beta) {
    require_finite(q, "bellman_soft");
    if (q.n_states != m.n_states || q.n_actions != m.n_actions)
        throw invalid_input("bellman_soft: shape mismatch");
    VTable v(m.n_states);
    kernels::softmax_value(q.data.data(), m.n_states, m.n_actions, beta, v.data.data());
    QTable out(m.n_states, m.n_actions);
    kernels::bellman_from_value(m, v.data.data(), out.data.data());
    return out;
}

QTable policy_q_value(const Mdp& m, const PolicyTable& pi, double tol, long max_iters) {
    pi.validate();
    QTable q(m.n_states, m.n_actions, 0.0);
    QTable next(m.n_states, m.n_actions);
    VTable v(m.n_states);
    for (long k = 0; k < max_iters; ++k) {
        kernels::policy_value(q.data.data(), pi.probs.data(), m.n_states, m.n_actions,
                              v.data.data());
        kernels::bellman_from_value(m, v.data.data(), next.data.data());
        double res = sup_diff(next, q);
        std::swap(q, next);
        if (res <= tol) return q;
    }
    throw convergence_error("policy_q_value: no convergence within iteration cap");
}

}  // namespace gvi
