#include "gvi/agent.hpp"

#include <cmath>

#include "gvi/kernels.hpp"
#include "gvi/operators.hpp"

namespace gvi {

QTable batch_update(const QTable& q, const GviParams& params, double gamma,
                    const std::vector<Transition>& transitions) {
    if (transitions.empty()) throw invalid_input("batch_update: no transitions");
    if (!q.all_finite()) throw invalid_input("batch_update: non-finite entry");

    VTable soft_v(q.n_states);
    kernels::softmax_value(q.data.data(), q.n_states, q.n_actions, params.beta,
                           soft_v.data.data());

    std::vector<double> sums(q.data.size(), 0.0);
    std::vector<int> counts(q.data.size(), 0);
    for (const Transition& t : transitions) {
        if (t.state < 0 || t.state >= q.n_states || t.action < 0 || t.action >= q.n_actions ||
            t.next_state < 0 || t.next_state >= q.n_states)
            throw invalid_input("batch_update: transition index out of range");
        size_t i = static_cast<size_t>(t.state) * q.n_actions + t.action;
        sums[i] += t.reward + gamma * soft_v[t.next_state] +
                   params.alpha * (q.data[i] - soft_v[t.state]);
        counts[i] += 1;
    }
    QTable out = q;
    for (size_t i = 0; i < out.data.size(); ++i)
        if (counts[i] > 0) out.data[i] = sums[i] / counts[i];
    return out;
}

int epsilon_greedy(const QTable& q, int state, double epsilon, SplitMix64& rng) {
    if (state < 0 || state >= q.n_states) throw invalid_input("epsilon_greedy: state out of range");
    if (rng.next_double() < epsilon)
        return static_cast<int>(rng.next_below(static_cast<uint64_t>(q.n_actions)));
    return argmax_action(q, state);
}

double evaluate(const EnvSpec& env, const QTable& q, int eval_episodes, int eval_steps,
                SplitMix64& rng, bool discounted, double gamma) {
    double total = 0.0;
    for (int ep = 0; ep < eval_episodes; ++ep) {
        int s = eval_start(env, rng);
        double ret = 0.0, disc = 1.0;
        for (int t = 0; t < eval_steps; ++t) {
            Transition tr = step(env, s, argmax_action(q, s), rng);
            ret += discounted ? disc * tr.reward : tr.reward;
            disc *= gamma;
            s = tr.next_state;
        }
        total += ret;
    }
    return total / eval_episodes;
}

TrainResult train(const EnvSpec& env, const TrainConfig& config) {
    config.validate();
    const int steps = config.steps_per_episode > 0 ? config.steps_per_episode : env.episode_steps;

    TrainResult res;
    res.final_q = QTable(env.n_states, env.n_actions, 0.0);
    QTable& q = res.final_q;

    SplitMix64 behavior(derive_seed(config.seed, 0));
    std::vector<Transition> episode(static_cast<size_t>(steps));

    for (long ep = 0; ep < config.episodes; ++ep) {
        int s = train_start(env, behavior);
        for (int t = 0; t < steps; ++t) {
            int a = epsilon_greedy(q, s, config.epsilon, behavior);
            episode[static_cast<size_t>(t)] = step(env, s, a, behavior);
            s = episode[static_cast<size_t>(t)].next_state;
        }
        QTable next = batch_update(q, config.params, config.gamma, episode);
        if (!next.all_finite()) {
            res.diverged = true;  // alpha=1 can slide without bound; keep the last finite table
            break;
        }
        q = std::move(next);

        if (env.kind == EnvKind::toy_chain) {
            // Strict preference, so the all-tied initial table does not read
            // as "left" through the lowest-index tie-break.
            const double* row = q.row(2);
            double best_left = row[0], best_right = row[50];
            for (int a = 1; a < 50; ++a) best_left = std::max(best_left, row[a]);
            for (int a = 51; a < 100; ++a) best_right = std::max(best_right, row[a]);
            res.left_ratio_curve.push_back(best_left > best_right ? 1.0 : 0.0);
        }
        if (config.snapshot_stride > 0 && (ep + 1) % config.snapshot_stride == 0)
            res.q_snapshots.push_back(q);
        if (config.eval_stride > 0 && (ep + 1) % config.eval_stride == 0) {
            SplitMix64 eval_rng(derive_seed(config.seed, 1 + static_cast<uint64_t>(ep)));
            res.eval_curve.push_back(evaluate(env, q, config.eval_episodes, config.eval_steps,
                                              eval_rng, config.discounted_eval, config.gamma));
            res.eval_points.push_back(ep + 1);
        }
    }
    if (config.eval_stride == 0) {
        SplitMix64 eval_rng(derive_seed(config.seed, 1 + static_cast<uint64_t>(config.episodes)));
        res.eval_curve.push_back(evaluate(env, q, config.eval_episodes, config.eval_steps,
                                          eval_rng, config.discounted_eval, config.gamma));
        res.eval_points.push_back(config.episodes);
    }
    return res;
}

}  // namespace gvi
