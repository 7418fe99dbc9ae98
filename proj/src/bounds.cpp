#include "gvi/bounds.hpp"

#include <cmath>

namespace gvi {

std::pair<double, double> bound_constants(const GviParams& p, const MdpMeta& meta, long k) {
    if (k < 0) throw invalid_input("bound_constants: k must be non-negative");
    const double gamma = meta.gamma;
    const double log_a = std::log(static_cast<double>(meta.n_actions));
    const double inv_beta = p.beta.is_max() ? 0.0 : 1.0 / p.beta.beta;

    double c = gamma / (1.0 - gamma) * (1.0 - p.alpha) * inv_beta * log_a;

    double ratio;  // (alpha^{k+1} - gamma^{k+1}) / (alpha - gamma)
    if (std::fabs(p.alpha - gamma) < 1e-12)
        ratio = static_cast<double>(k + 1) * pow_alpha(p.alpha, k);
    else
        ratio = (pow_alpha(p.alpha, k + 1) - std::pow(gamma, static_cast<double>(k + 1))) /
                (p.alpha - gamma);
    double c_k = gamma * ratio * (2.0 * meta.v_max() + p.alpha * inv_beta * log_a);
    return {c, c_k};
}

double error_term(const std::vector<QTable>& errors, const GviParams& p, double gamma, long k) {
    if (k < 0) throw invalid_input("error_term: k must be non-negative");
    if (errors.size() < static_cast<size_t>(k) + 1)
        throw invalid_input("error_term: need errors for steps 0..k");

    // norms[t] = || sum_{j=0..t} alpha^j err_{t-j} ||, built by the running
    // sum G_t = alpha G_{t-1} + err_t.
    QTable g = errors[0];
    std::vector<double> norms;
    norms.reserve(static_cast<size_t>(k) + 1);
    norms.push_back(sup_norm(g));
    for (long t = 1; t <= k; ++t) {
        const QTable& e = errors[static_cast<size_t>(t)];
        if (!e.same_shape(g)) throw invalid_input("error_term: error table shape mismatch");
        for (size_t i = 0; i < g.data.size(); ++i) g.data[i] = p.alpha * g.data[i] + e.data[i];
        norms.push_back(sup_norm(g));
    }
    double total = 0.0, gpow = 1.0;
    for (long i = 0; i <= k; ++i) {
        total += gpow * norms[static_cast<size_t>(k - i)];
        gpow *= gamma;
    }
    return total;
}

BoundReport performance_bound(const GviParams& p, const MdpMeta& meta,
                              const std::vector<QTable>& errors, long k) {
    auto [c, c_k] = bound_constants(p, meta, k);
    double e_k = errors.empty() ? 0.0 : error_term(errors, p, meta.gamma, k);

    double shrink;  // (1-alpha)/(1-alpha^{k+1}), = 1/(k+1) at alpha=1
    if (p.alpha == 1.0)
        shrink = 1.0 / static_cast<double>(k + 1);
    else
        shrink = (1.0 - p.alpha) / (1.0 - pow_alpha(p.alpha, k + 1));

    BoundReport rep;
    rep.k = k;
    rep.c_const = c;
    rep.c_k = c_k;
    rep.e_k = e_k;
    rep.bound = c + 2.0 / (1.0 - meta.gamma) * shrink * (c_k + e_k);
    return rep;
}

double decay_coefficient(double alpha, double gamma, long k) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw invalid_input("decay_coefficient: alpha in [0,1]");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw invalid_input("decay_coefficient: gamma in [0,1)");
    if (k < 0) throw invalid_input("decay_coefficient: k must be non-negative");
    // numerator sum_i alpha^i gamma^{k-i} via N_t = gamma N_{t-1} + alpha^t
    double num = 1.0, apow = 1.0;
    for (long t = 1; t <= k; ++t) {
        apow *= alpha;
        num = gamma * num + apow;
    }
    return num / alpha_partial_sum(alpha, k + 1);
}

std::vector<QTable> extract_residual_errors(const Mdp& m, const GviParams& p,
                                            const std::vector<QTable>& q_history) {
    if (q_history.size() < 2)
        throw invalid_input("extract_residual_errors: need at least two snapshots");
    std::vector<QTable> errors;
    errors.reserve(q_history.size() - 1);
    for (size_t t = 0; t + 1 < q_history.size(); ++t) {
        QTable exact = gvi_step(m, q_history[t], p);
        QTable eps(m.n_states, m.n_actions);
        for (size_t i = 0; i < eps.data.size(); ++i)
            eps.data[i] = q_history[t + 1].data[i] - exact.data[i];
        errors.push_back(std::move(eps));
    }
    return errors;
}

}  // namespace gvi
