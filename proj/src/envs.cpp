#include "gvi/envs.hpp"

#include <cmath>

namespace gvi {

namespace {

int clip(int x, int lo, int hi) { return x < lo ? lo : (x > hi ? hi : x); }

void check_indices(const EnvSpec& env, int state, int action, const char* who) {
    if (state < 0 || state >= env.n_states)
        throw invalid_input(std::string(who) + ": state index out of range");
    if (action < 0 || action >= env.n_actions)
        throw invalid_input(std::string(who) + ": action index out of range");
}

double long_chain_reward(int next_state) {
    double d = next_state - 25;
    return std::exp(-d * d / 25.0);
}

}  // namespace

EnvSpec chain_walk() {
    EnvSpec e{};
    e.kind = EnvKind::chain_walk;
    e.n_states = 11;
    e.n_actions = 2;
    e.r_max = 3.0;
    e.episode_steps = 100;
    return e;
}

EnvSpec long_chain_walk() {
    EnvSpec e{};
    e.kind = EnvKind::long_chain_walk;
    e.n_states = 51;
    e.n_actions = 11;
    e.r_max = 1.0;
    e.episode_steps = 100;
    return e;
}

EnvSpec toy_chain() {
    EnvSpec e{};
    e.kind = EnvKind::toy_chain;
    e.n_states = 4;
    e.n_actions = 100;
    e.r_max = 0.1;
    e.episode_steps = 5;
    return e;
}

std::optional<EnvSpec> env_from_key(std::string_view key) {
    if (key == "chainwalk") return chain_walk();
    if (key == "longchain") return long_chain_walk();
    if (key == "toy") return toy_chain();
    return std::nullopt;
}

std::string env_key(const EnvSpec& env) {
    switch (env.kind) {
        case EnvKind::chain_walk: return "chainwalk";
        case EnvKind::long_chain_walk: return "longchain";
        case EnvKind::toy_chain: return "toy";
    }
    return "";
}

double arrival_reward(const EnvSpec& env, int next_state) {
    switch (env.kind) {
        case EnvKind::chain_walk:
            if (next_state == 0) return 3.0;
            if (next_state <= 4) return -1.0;
            if (next_state == 5) return 0.0;
            return 1.0;
        case EnvKind::long_chain_walk:
            return long_chain_reward(next_state);
        case EnvKind::toy_chain:
            return 0.0;
    }
    return 0.0;
}

Transition step(const EnvSpec& env, int state, int action, SplitMix64& rng) {
    check_indices(env, state, action, "step");
    switch (env.kind) {
        case EnvKind::chain_walk: {
            int dir = action == 0 ? -1 : 1;
            int next;
            if (state + dir < 0 || state + dir >= env.n_states) {
                next = state;  // aimed off the chain: stay, no reversal roll
            } else if (rng.next_double() < env.move_prob) {
                next = state + dir;
            } else {
                int rev = state - dir;
                next = (rev < 0 || rev >= env.n_states) ? state : rev;
            }
            return {state, action, arrival_reward(env, next), next};
        }
        case EnvKind::long_chain_walk: {
            int jump = action - env.max_jump;
            int n = rng.next_int(-env.noise_half_range, env.noise_half_range);
            int next = clip(state + jump + n, 0, env.n_states - 1);
            return {state, action, long_chain_reward(next), next};
        }
        case EnvKind::toy_chain: {
            if (state == 2) return {state, action, 0.0, action < 50 ? 1 : 3};
            if (state == 1)
                return {state, action, rng.next_gaussian(env.toy_reward_mean, env.toy_reward_stddev),
                        0};
            return {state, action, 0.0, 2};  // A and D feed back into C
        }
    }
    throw invalid_input("step: unknown environment kind");
}

Mdp exact_model(const EnvSpec& env, double gamma) {
    Mdp m(env.n_states, env.n_actions, gamma, env.r_max);
    switch (env.kind) {
        case EnvKind::chain_walk: {
            for (int s = 0; s < env.n_states; ++s) {
                for (int a = 0; a < env.n_actions; ++a) {
                    int dir = a == 0 ? -1 : 1;
                    if (s + dir < 0 || s + dir >= env.n_states) {
                        m.p(s, a, s) += 1.0;
                    } else {
                        m.p(s, a, s + dir) += env.move_prob;
                        int rev = s - dir;
                        int back = (rev < 0 || rev >= env.n_states) ? s : rev;
                        m.p(s, a, back) += 1.0 - env.move_prob;
                    }
                    double r = 0.0;
                    for (int s2 = 0; s2 < env.n_states; ++s2)
                        r += m.p(s, a, s2) * arrival_reward(env, s2);
                    m.r(s, a) = r;
                }
            }
            break;
        }
        case EnvKind::long_chain_walk: {
            int span = 2 * env.noise_half_range + 1;
            for (int s = 0; s < env.n_states; ++s) {
                for (int a = 0; a < env.n_actions; ++a) {
                    int jump = a - env.max_jump;
                    for (int n = -env.noise_half_range; n <= env.noise_half_range; ++n)
                        m.p(s, a, clip(s + jump + n, 0, env.n_states - 1)) += 1.0 / span;
                    double r = 0.0;
                    for (int s2 = 0; s2 < env.n_states; ++s2)
                        r += m.p(s, a, s2) * long_chain_reward(s2);
                    m.r(s, a) = r;
                }
            }
            break;
        }
        case EnvKind::toy_chain: {
            for (int a = 0; a < env.n_actions; ++a) {
                m.p(0, a, 2) = 1.0;
                m.p(1, a, 0) = 1.0;
                m.r(1, a) = env.toy_reward_mean;
                m.p(2, a, a < 50 ? 1 : 3) = 1.0;
                m.p(3, a, 2) = 1.0;
            }
            break;
        }
    }
    m.validate();
    return m;
}

int train_start(const EnvSpec& env, SplitMix64& rng) {
    switch (env.kind) {
        case EnvKind::chain_walk: return 5;
        case EnvKind::long_chain_walk: return static_cast<int>(rng.next_below(env.n_states));
        case EnvKind::toy_chain: return 2;
    }
    return 0;
}

int eval_start(const EnvSpec& env, SplitMix64& rng) {
    if (env.kind == EnvKind::toy_chain) return 2;
    return static_cast<int>(rng.next_below(env.n_states));
}

}  // namespace gvi
