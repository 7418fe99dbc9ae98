#include "gvi/regularized.hpp"

#include <cmath>

#include "gvi/kernels.hpp"

namespace gvi {

namespace {

void require_positive_rows(const PolicyTable& ref, const char* who) {
    for (double p : ref.probs)
        if (!(p >= 1e-300))
            throw invalid_input(std::string(who) + ": reference policy must be strictly positive");
}

void require_value_shape(const Mdp& m, const VTable& v, const char* who) {
    if (v.n_states() != m.n_states) throw invalid_input(std::string(who) + ": shape mismatch");
    if (!v.all_finite()) throw invalid_input(std::string(who) + ": non-finite value");
}

// scores x(s,a) = alpha log ref + beta (r + gamma P v); L, its attaining
// policy, and the VI-like sweep are all row reductions of this table.
QTable reg_scores(const Mdp& m, const VTable& v, const PolicyTable& ref, const RegParams& reg) {
    QTable q(m.n_states, m.n_actions);
    kernels::bellman_from_value(m, v.data.data(), q.data.data());
    const double a = reg.alpha(), b = reg.beta();
    for (int s = 0; s < m.n_states; ++s)
        for (int ac = 0; ac < m.n_actions; ++ac)
            q(s, ac) = a * std::log(ref(s, ac)) + b * q(s, ac);
    return q;
}

VTable log_partition(const QTable& scores, double beta) {
    VTable out(scores.n_states);
    for (int s = 0; s < scores.n_states; ++s) {
        const double* row = scores.row(s);
        double mx = row[0];
        for (int a = 1; a < scores.n_actions; ++a)
            if (row[a] > mx) mx = row[a];
        double sum = 0.0;
        for (int a = 0; a < scores.n_actions; ++a) sum += std::exp(row[a] - mx);
        out[s] = (mx + std::log(sum)) / beta;
    }
    return out;
}

PolicyTable row_softmax(const QTable& scores) {
    PolicyTable out(scores.n_states, scores.n_actions);
    for (int s = 0; s < scores.n_states; ++s) {
        const double* row = scores.row(s);
        double* orow = out.row(s);
        double mx = row[0];
        for (int a = 1; a < scores.n_actions; ++a)
            if (row[a] > mx) mx = row[a];
        double den = 0.0;
        for (int a = 0; a < scores.n_actions; ++a) {
            orow[a] = std::exp(row[a] - mx);
            den += orow[a];
        }
        for (int a = 0; a < scores.n_actions; ++a) orow[a] /= den;
    }
    return out;
}

}  // namespace

VTable regularized_value(const Mdp& m, const PolicyTable& pi, const PolicyTable& ref,
                         const RegParams& reg, double tol, long max_iters) {
    pi.validate();
    ref.validate();
    if (pi.n_states != m.n_states || pi.n_actions != m.n_actions || ref.n_states != m.n_states ||
        ref.n_actions != m.n_actions)
        throw invalid_input("regularized_value: shape mismatch");

    // per-state penalty -KL/kl_coeff + H/ent_coeff, constant in v
    VTable penalty(m.n_states, 0.0);
    for (int s = 0; s < m.n_states; ++s) {
        double kl = 0.0, ent = 0.0;
        for (int a = 0; a < m.n_actions; ++a) {
            double p = pi(s, a);
            if (p <= 0.0) continue;
            if (!(ref(s, a) >= 1e-300))
                throw invalid_input("regularized_value: infinite KL, reference has no mass where "
                                    "the policy has mass");
            kl += p * std::log(p / ref(s, a));
            ent -= p * std::log(p);
        }
        penalty[s] = -kl / reg.kl_coeff + ent / reg.ent_coeff;
    }

    VTable v(m.n_states, 0.0), next(m.n_states);
    QTable backup(m.n_states, m.n_actions);
    for (long k = 0; k < max_iters; ++k) {
        kernels::bellman_from_value(m, v.data.data(), backup.data.data());
        kernels::policy_value(backup.data.data(), pi.probs.data(), m.n_states, m.n_actions,
                              next.data.data());
        for (int s = 0; s < m.n_states; ++s) next[s] += penalty[s];
        double res = sup_diff(next, v);
        std::swap(v, next);
        if (res <= tol) return v;
    }
    throw convergence_error("regularized_value: no convergence within iteration cap");
}

VTable l_operator(const Mdp& m, const VTable& v, const PolicyTable& ref, const RegParams& reg) {
    require_value_shape(m, v, "l_operator");
    require_positive_rows(ref, "l_operator");
    return log_partition(reg_scores(m, v, ref, reg), reg.beta());
}

PolicyTable optimal_reg_policy(const Mdp& m, const VTable& v, const PolicyTable& ref,
                               const RegParams& reg) {
    require_value_shape(m, v, "optimal_reg_policy");
    require_positive_rows(ref, "optimal_reg_policy");
    return row_softmax(reg_scores(m, v, ref, reg));
}

std::pair<VTable, PolicyTable> pi_like_solve(const Mdp& m, const RegParams& reg, int outer_iters,
                                             double tol, long max_iters) {
    if (outer_iters < 1) throw invalid_input("pi_like_solve: outer_iters must be positive");
    PolicyTable ref = PolicyTable::uniform(m.n_states, m.n_actions);
    VTable v(m.n_states, 0.0);
    for (int round = 0; round < outer_iters; ++round) {
        long k = 0;
        for (; k < max_iters; ++k) {
            VTable next = l_operator(m, v, ref, reg);
            double res = sup_diff(next, v);
            v = std::move(next);
            if (res <= tol) break;
        }
        if (k == max_iters)
            throw convergence_error("pi_like_solve: inner fixed point did not converge");
        ref = optimal_reg_policy(m, v, ref, reg);
    }
    return {std::move(v), std::move(ref)};
}

std::pair<VTable, PolicyTable> vi_like_step(const Mdp& m, const VTable& v, const PolicyTable& pi,
                                            const RegParams& reg, bool modified) {
    require_value_shape(m, v, "vi_like_step");
    require_positive_rows(pi, "vi_like_step");
    QTable scores = reg_scores(m, v, pi, reg);
    VTable v_next = log_partition(scores, reg.beta());
    PolicyTable pi_next =
        modified ? row_softmax(scores)
                 : row_softmax(reg_scores(m, v_next, pi, reg));
    return {std::move(v_next), std::move(pi_next)};
}

QTable gvi_equivalence(const Mdp& m, const VTable& v, const PolicyTable& pi,
                       const RegParams& reg) {
    require_value_shape(m, v, "gvi_equivalence");
    require_positive_rows(pi, "gvi_equivalence");
    const double a = reg.alpha(), b = reg.beta();
    const double shift = (a - m.gamma) / ((1.0 - m.gamma) * b) *
                         std::log(static_cast<double>(m.n_actions));
    QTable q(m.n_states, m.n_actions);
    kernels::bellman_from_value(m, v.data.data(), q.data.data());
    for (int s = 0; s < m.n_states; ++s)
        for (int ac = 0; ac < m.n_actions; ++ac)
            q(s, ac) += a / b * std::log(pi(s, ac)) + shift;
    return q;
}

}  // namespace gvi
