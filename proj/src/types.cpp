#include "gvi/types.hpp"

#include <cmath>
#include <cstdio>

namespace gvi {

void PolicyTable::validate(double tol) const {
    for (int s = 0; s < n_states; ++s) {
        double sum = 0.0;
        for (int a = 0; a < n_actions; ++a) {
            double p = (*this)(s, a);
            if (!(p >= 0.0 && p <= 1.0 + tol))
                throw invalid_input("PolicyTable: probability out of [0,1] at state " +
                                    std::to_string(s));
            sum += p;
        }
        if (std::fabs(sum - 1.0) > tol)
            throw invalid_input("PolicyTable: row " + std::to_string(s) +
                                " sums to " + std::to_string(sum));
    }
}

void Mdp::validate() const {
    if (n_states <= 0 || n_actions <= 0) throw invalid_input("Mdp: dimensions must be positive");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw invalid_input("Mdp: gamma must lie in [0,1)");
    if (!(r_max > 0.0) || !std::isfinite(r_max)) throw invalid_input("Mdp: r_max must be positive");
    if (transition.size() != static_cast<size_t>(n_states) * n_actions * n_states ||
        reward.size() != static_cast<size_t>(n_states) * n_actions)
        throw invalid_input("Mdp: table sizes do not match dimensions");
    for (int s = 0; s < n_states; ++s) {
        for (int a = 0; a < n_actions; ++a) {
            double rv = r(s, a);
            if (!std::isfinite(rv) || std::fabs(rv) > r_max + 1e-12)
                throw invalid_input("Mdp: reward out of [-r_max, r_max] at (" +
                                    std::to_string(s) + "," + std::to_string(a) + ")");
            double sum = 0.0;
            for (int s2 = 0; s2 < n_states; ++s2) {
                double pv = p(s, a, s2);
                if (!(pv >= 0.0) || !std::isfinite(pv))
                    throw invalid_input("Mdp: negative or non-finite transition probability");
                sum += pv;
            }
            if (std::fabs(sum - 1.0) > 1e-12)
                throw invalid_input("Mdp: transition row (" + std::to_string(s) + "," +
                                    std::to_string(a) + ") sums to " + std::to_string(sum));
        }
    }
}

double sup_norm(const QTable& q) {
    double m = 0.0;
    for (double v : q.data) m = std::max(m, std::fabs(v));
    return m;
}

double sup_diff(const QTable& a, const QTable& b) {
    if (!a.same_shape(b)) throw invalid_input("sup_diff: shape mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::fabs(a.data[i] - b.data[i]));
    return m;
}

double sup_diff(const VTable& a, const VTable& b) {
    if (a.n_states() != b.n_states()) throw invalid_input("sup_diff: shape mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::fabs(a.data[i] - b.data[i]));
    return m;
}

}  // namespace gvi
