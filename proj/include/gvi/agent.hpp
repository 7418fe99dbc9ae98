#pragma once

#include <cstdint>
#include <vector>

#include "gvi/engine.hpp"
#include "gvi/envs.hpp"
#include "gvi/types.hpp"

namespace gvi {

struct TrainConfig {
    GviParams params;
    double gamma = 0.99;
    long episodes = 2500;
    int steps_per_episode = 0;  // 0: use the environment's canonical length
    double epsilon = 0.3;
    int eval_episodes = 100;
    int eval_steps = 100;
    int eval_stride = 1;        // evaluate every n-th episode; 0: only after the last
    bool discounted_eval = false;
    uint64_t seed = 0;
    long snapshot_stride = 0;

    explicit TrainConfig(GviParams p) : params(p) {}

    void validate() const {
        if (episodes < 1 || eval_episodes < 1 || eval_steps < 1 || steps_per_episode < 0 ||
            eval_stride < 0 || snapshot_stride < 0)
            throw invalid_input("TrainConfig: counts must be positive");
        if (!(epsilon >= 0.0 && epsilon <= 1.0))
            throw invalid_input("TrainConfig: epsilon must lie in [0,1]");
        if (!(gamma >= 0.0 && gamma < 1.0)) throw invalid_input("TrainConfig: gamma in [0,1)");
    }
};

struct TrainResult {
    QTable final_q;
    std::vector<double> eval_curve;       // mean episodic reward at each eval point
    std::vector<long> eval_points;        // episode numbers (1-based) the curve refers to
    std::vector<QTable> q_snapshots;
    std::vector<double> left_ratio_curve; // ToyChain only: greedy-at-C-goes-left per update
    bool diverged = false;                // Q left double range (alpha=1 can get there)
};

/// Batch backup from sampled experience: every visited pair moves to the
/// mean over its samples of r + gamma soft_v(s') + alpha (q(s,a) - soft_v(s)),
/// soft values taken from the pre-update table. Unvisited pairs keep their
/// value.
QTable batch_update(const QTable& q, const GviParams& params, double gamma,
                    const std::vector<Transition>& transitions);

/// Uniform action with probability epsilon, otherwise greedy (lowest-index
/// tie-break).
int epsilon_greedy(const QTable& q, int state, double epsilon, SplitMix64& rng);

/// Greedy rollouts; returns the mean episodic reward (undiscounted sum by
/// default). Starts follow the environment's evaluation rule.
double evaluate(const EnvSpec& env, const QTable& q, int eval_episodes, int eval_steps,
                SplitMix64& rng, bool discounted = false, double gamma = 0.99);

/// The episodic protocol: collect one epsilon-greedy episode, batch-update,
/// evaluate per eval_stride. Deterministic in (env, config).
TrainResult train(const EnvSpec& env, const TrainConfig& config);

}  // namespace gvi
