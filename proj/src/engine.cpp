#include "gvi/engine.hpp"

#include <algorithm>
#include <cmath>

#include "gvi/kernels.hpp"
#include "gvi/operators.hpp"

namespace gvi {

double pow_alpha(double alpha, long k) { return k == 0 ? 1.0 : std::pow(alpha, static_cast<double>(k)); }

double alpha_partial_sum(double alpha, long k) {
    if (alpha == 1.0) return static_cast<double>(k);
    return (1.0 - pow_alpha(alpha, k)) / (1.0 - alpha);
}

QTable gvi_step(const Mdp& m, const QTable& q, const GviParams& p, const QTable* err) {
    if (q.n_states != m.n_states || q.n_actions != m.n_actions)
        throw invalid_input("gvi_step: shape mismatch");
    if (!q.all_finite()) throw invalid_input("gvi_step: non-finite entry");
    VTable soft_v(m.n_states);
    kernels::softmax_value(q.data.data(), m.n_states, m.n_actions, p.beta, soft_v.data.data());
    QTable out(m.n_states, m.n_actions);
    kernels::gvi_from_value(m, q.data.data(), soft_v.data.data(), p.alpha, out.data.data());
    if (err) {
        if (!err->same_shape(q)) throw invalid_input("gvi_step: error table shape mismatch");
        for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += err->data[i];
    }
    return out;
}

std::pair<QTable, GviTrace> gvi_solve(const Mdp& m, const GviParams& p, QTable q0,
                                      const SolveOptions& opts) {
    if (q0.n_states != m.n_states || q0.n_actions != m.n_actions)
        throw invalid_input("gvi_solve: shape mismatch");
    if (!q0.all_finite()) throw invalid_input("gvi_solve: non-finite entry in q0");

    GviTrace trace;
    trace.q0_out_of_bounds = sup_norm(q0) > m.v_max() + 1e-12;
    trace.residuals.reserve(static_cast<size_t>(std::min(opts.max_iters, 1000000L)));

    QTable q = std::move(q0);
    QTable next(m.n_states, m.n_actions);
    VTable soft_v(m.n_states);
    for (long k = 0; k < opts.max_iters; ++k) {
        kernels::softmax_value(q.data.data(), m.n_states, m.n_actions, p.beta, soft_v.data.data());
        kernels::gvi_from_value(m, q.data.data(), soft_v.data.data(), p.alpha, next.data.data());
        double res = sup_diff(next, q);
        std::swap(q, next);
        trace.residuals.push_back(res);
        trace.iterations = k + 1;
        if (opts.snapshot_stride > 0 && (k + 1) % opts.snapshot_stride == 0)
            trace.snapshots.push_back(q);
        if (res <= opts.tol) {
            trace.converged = true;
            break;
        }
        if (!q.all_finite()) throw numerical_error("gvi_solve: iterate left double range");
    }
    return {std::move(q), std::move(trace)};
}

QTable fixed_point_q(const Mdp& m, SoftmaxTemp beta, double tol, long max_iters) {
    QTable q(m.n_states, m.n_actions, 0.0);
    QTable next(m.n_states, m.n_actions);
    VTable soft_v(m.n_states);
    for (long k = 0; k < max_iters; ++k) {
        kernels::softmax_value(q.data.data(), m.n_states, m.n_actions, beta, soft_v.data.data());
        kernels::bellman_from_value(m, soft_v.data.data(), next.data.data());
        double res = sup_diff(next, q);
        std::swap(q, next);
        if (res <= tol) return q;
    }
    throw convergence_error("fixed_point_q: no convergence within iteration cap");
}

QTable theorem1_limit(const Mdp& m, const GviParams& p, double tol, long max_iters) {
    if (p.alpha == 1.0)
        throw invalid_input("theorem1_limit: no finite limit at alpha=1");
    SoftmaxTemp theta = p.theta();
    QTable q_theta = fixed_point_q(m, theta, tol, max_iters);
    VTable mm = mellowmax(q_theta, theta);
    QTable out(m.n_states, m.n_actions);
    double scale = 1.0 / (1.0 - p.alpha);
    for (int s = 0; s < m.n_states; ++s)
        for (int a = 0; a < m.n_actions; ++a) out(s, a) = mm[s] + scale * (q_theta(s, a) - mm[s]);
    return out;
}

namespace {

// Limit of j (q_j - Q*) along the error-free averaged recursion at alpha=1
// (same iterates as q_aux_sequence). The direct iteration inherits this
// constant offset from q0, so the asymptotic form has to carry it. Zero
// when q0 = Q* and when gamma = 0.
QTable alpha1_drift(const Mdp& m, const GviParams& p, const QTable& q0, const QTable& q_star) {
    QTable q = q0;
    QTable psi(m.n_states, m.n_actions);
    QTable drift(m.n_states, m.n_actions, 0.0);
    for (long j = 0; j < 1000000; ++j) {
        double jd = static_cast<double>(j);
        for (size_t i = 0; i < psi.data.size(); ++i) psi.data[i] = jd * q.data[i] + q0.data[i];
        PolicyTable pi = mellowmax_policy(psi, p.beta);
        QTable t_q = bellman_policy(m, q, pi);
        QTable t_q0 = bellman_policy(m, q0, pi);
        for (size_t i = 0; i < q.data.size(); ++i)
            q.data[i] = (jd * t_q.data[i] + t_q0.data[i]) / (jd + 1.0);
        QTable next(m.n_states, m.n_actions);
        for (size_t i = 0; i < next.data.size(); ++i)
            next.data[i] = (jd + 1.0) * (q.data[i] - q_star.data[i]);
        double step = sup_diff(next, drift);
        drift = std::move(next);
        if (j > 0 && step <= 1e-10 * std::max(1.0, sup_norm(drift))) return drift;
    }
    throw convergence_error("theorem1_divergent_form: drift sequence did not settle");
}

}  // namespace

QTable theorem1_divergent_form(const Mdp& m, const GviParams& p, const QTable& q0, long k) {
    if (p.alpha != 1.0) throw invalid_input("theorem1_divergent_form: requires alpha=1");
    if (k < 1) throw invalid_input("theorem1_divergent_form: requires k >= 1");
    if (q0.n_states != m.n_states || q0.n_actions != m.n_actions)
        throw invalid_input("theorem1_divergent_form: shape mismatch");
    QTable q_star = fixed_point_q(m, SoftmaxTemp::max());
    VTable v_star = mellowmax(q_star, SoftmaxTemp::max());
    QTable drift = alpha1_drift(m, p, q0, q_star);
    QTable gap(m.n_states, m.n_actions);   // A* = Q* - V*
    QTable inner(m.n_states, m.n_actions); // (k-1) A* + Q0 + S
    for (int s = 0; s < m.n_states; ++s)
        for (int a = 0; a < m.n_actions; ++a) {
            gap(s, a) = q_star(s, a) - v_star[s];
            inner(s, a) = (k - 1) * gap(s, a) + q0(s, a) + drift(s, a);
        }
    VTable mb = mellowmax(inner, p.beta);
    QTable out(m.n_states, m.n_actions);
    for (int s = 0; s < m.n_states; ++s)
        for (int a = 0; a < m.n_actions; ++a)
            out(s, a) = v_star[s] + q0(s, a) + k * gap(s, a) + drift(s, a) - mb[s];
    return out;
}

double action_gap_threshold(const GviParams& p, double gamma, int n_actions) {
    if (p.beta.is_max() || p.alpha == 1.0) return 0.0;
    return gamma * std::log(static_cast<double>(n_actions)) / (1.0 - gamma) * (1.0 - p.alpha) /
           p.beta.beta;
}

std::vector<QTable> q_aux_sequence(const Mdp& m, const GviParams& p, const QTable& q0,
                                   const std::vector<QTable>& errors, long K) {
    if (q0.n_states != m.n_states || q0.n_actions != m.n_actions)
        throw invalid_input("q_aux_sequence: shape mismatch");
    if (K < 0) throw invalid_input("q_aux_sequence: K must be non-negative");

    std::vector<QTable> qs;
    qs.reserve(static_cast<size_t>(K) + 1);
    qs.push_back(q0);
    QTable f(m.n_states, m.n_actions, 0.0);  // F_k = sum_i alpha^{k-i} err_i
    QTable psi(m.n_states, m.n_actions);
    for (long k = 0; k < K; ++k) {
        double a_k = alpha_partial_sum(p.alpha, k);
        double a_k1 = alpha_partial_sum(p.alpha, k + 1);
        double al_k = pow_alpha(p.alpha, k);
        const QTable& qk = qs.back();
        for (size_t i = 0; i < psi.data.size(); ++i)
            psi.data[i] = a_k * qk.data[i] + al_k * q0.data[i];
        PolicyTable pi = mellowmax_policy(psi, p.beta);
        QTable t_qk = bellman_policy(m, qk, pi);
        QTable t_q0 = bellman_policy(m, q0, pi);
        for (size_t i = 0; i < f.data.size(); ++i) {
            f.data[i] *= p.alpha;
            if (static_cast<size_t>(k) < errors.size()) f.data[i] += errors[k].data[i];
        }
        QTable next(m.n_states, m.n_actions);
        for (size_t i = 0; i < next.data.size(); ++i)
            next.data[i] = (a_k * t_qk.data[i] + al_k * t_q0.data[i] + f.data[i]) / a_k1;
        qs.push_back(std::move(next));
    }
    return qs;
}

}  // namespace gvi
