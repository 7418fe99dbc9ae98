#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gvi {

// Error categories; the CLI maps them to exit codes (1/2/3).
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct convergence_error : numerical_error {
    using numerical_error::numerical_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inverse temperature of a soft maximum. beta lies in {0} U (0, inf]:
/// inf selects the exact per-row max, 0 the plain average over actions.
struct SoftmaxTemp {
    double beta;

    explicit SoftmaxTemp(double b) : beta(b) {
        if (std::isnan(b) || b < 0.0)
            throw invalid_input("SoftmaxTemp: beta must be >= 0 or infinity");
    }
    static SoftmaxTemp max() { return SoftmaxTemp(std::numeric_limits<double>::infinity()); }
    static SoftmaxTemp mean() { return SoftmaxTemp(0.0); }

    bool is_max() const { return std::isinf(beta); }
    bool is_mean() const { return beta == 0.0; }
    bool finite_positive() const { return beta > 0.0 && !is_max(); }
};

/// Real-valued function over state-action pairs, dense row-major.
struct QTable {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> data;

    QTable() = default;
    QTable(int s, int a, double fill = 0.0)
        : n_states(s), n_actions(a), data(static_cast<size_t>(s) * a, fill) {
        if (s <= 0 || a <= 0) throw invalid_input("QTable: dimensions must be positive");
    }

    double& operator()(int s, int a) { return data[static_cast<size_t>(s) * n_actions + a]; }
    double operator()(int s, int a) const { return data[static_cast<size_t>(s) * n_actions + a]; }
    double* row(int s) { return data.data() + static_cast<size_t>(s) * n_actions; }
    const double* row(int s) const { return data.data() + static_cast<size_t>(s) * n_actions; }

    bool same_shape(const QTable& o) const {
        return n_states == o.n_states && n_actions == o.n_actions;
    }
    bool all_finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

/// Real-valued function over states.
struct VTable {
    std::vector<double> data;

    VTable() = default;
    explicit VTable(int s, double fill = 0.0) : data(static_cast<size_t>(s), fill) {}

    int n_states() const { return static_cast<int>(data.size()); }
    double& operator[](int s) { return data[static_cast<size_t>(s)]; }
    double operator[](int s) const { return data[static_cast<size_t>(s)]; }

    bool all_finite() const {
        for (double v : data)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

/// Stationary stochastic policy, rows sum to 1.
struct PolicyTable {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> probs;

    PolicyTable() = default;
    PolicyTable(int s, int a, double fill = 0.0)
        : n_states(s), n_actions(a), probs(static_cast<size_t>(s) * a, fill) {
        if (s <= 0 || a <= 0) throw invalid_input("PolicyTable: dimensions must be positive");
    }
    static PolicyTable uniform(int s, int a) { return PolicyTable(s, a, 1.0 / a); }

    double& operator()(int s, int a) { return probs[static_cast<size_t>(s) * n_actions + a]; }
    double operator()(int s, int a) const { return probs[static_cast<size_t>(s) * n_actions + a]; }
    double* row(int s) { return probs.data() + static_cast<size_t>(s) * n_actions; }
    const double* row(int s) const { return probs.data() + static_cast<size_t>(s) * n_actions; }

    /// Throws unless every row sums to 1 within tol and entries lie in [0,1].
    void validate(double tol = 1e-12) const;
};

/// Dense finite MDP: kernel P[s][a][s'], expected rewards r[s][a],
/// discount gamma in [0,1), rewards bounded by r_max.
struct Mdp {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> transition;  // [s][a][s'], each (s,a) row sums to 1
    std::vector<double> reward;      // [s][a]
    double gamma = 0.0;
    double r_max = 0.0;

    Mdp() = default;
    Mdp(int s, int a, double gamma_, double r_max_)
        : n_states(s),
          n_actions(a),
          transition(static_cast<size_t>(s) * a * s, 0.0),
          reward(static_cast<size_t>(s) * a, 0.0),
          gamma(gamma_),
          r_max(r_max_) {}

    double& p(int s, int a, int s2) {
        return transition[(static_cast<size_t>(s) * n_actions + a) * n_states + s2];
    }
    double p(int s, int a, int s2) const {
        return transition[(static_cast<size_t>(s) * n_actions + a) * n_states + s2];
    }
    const double* p_row(int s, int a) const {
        return transition.data() + (static_cast<size_t>(s) * n_actions + a) * n_states;
    }
    double& r(int s, int a) { return reward[static_cast<size_t>(s) * n_actions + a]; }
    double r(int s, int a) const { return reward[static_cast<size_t>(s) * n_actions + a]; }

    double v_max() const { return r_max / (1.0 - gamma); }

    /// Checks row stochasticity (1e-12), reward bounds and gamma range.
    void validate() const;
};

/// The scalar facts about an MDP that the performance bound needs.
struct MdpMeta {
    double gamma;
    double r_max;
    int n_actions;

    double v_max() const { return r_max / (1.0 - gamma); }
};

inline MdpMeta meta_of(const Mdp& m) { return MdpMeta{m.gamma, m.r_max, m.n_actions}; }

double sup_norm(const QTable& q);
double sup_diff(const QTable& a, const QTable& b);
double sup_diff(const VTable& a, const VTable& b);

}  // namespace gvi
