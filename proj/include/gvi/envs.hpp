#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gvi/rng.hpp"
#include "gvi/types.hpp"

namespace gvi {

enum class EnvKind { chain_walk, long_chain_walk, toy_chain };

/// Immutable description of one of the three benchmark environments. Every
/// environment doubles as a seeded simulator (step) and an exact dense model
/// (exact_model); simulation never mutates the spec.
struct EnvSpec {
    EnvKind kind;
    int n_states;
    int n_actions;
    double r_max;            // bound used for V_max; ToyChain uses the reward mean's bound
    int episode_steps;       // canonical training episode length

    // chain_walk
    double move_prob = 0.7;  // intended direction; 1-move_prob reverses

    // long_chain_walk
    int max_jump = 5;        // actions are -max_jump..+max_jump
    int noise_half_range = 3;

    // toy_chain
    double toy_reward_mean = -0.1;
    double toy_reward_stddev = 1.0;
};

/// The sampled effect of one action.
struct Transition {
    int state;
    int action;
    double reward;
    int next_state;
};

/// 11-state chain, 2 actions (0=left, 1=right). Moves succeed with
/// probability 0.7 and reverse otherwise; an action aimed off the chain
/// stays put, as does a reversal that would leave it. Reward on arrival:
/// +3 at state 0, -1 at 1..4, 0 at 5, +1 at 6..10. Optimal play heads left
/// from everywhere. Training starts at state 5.
EnvSpec chain_walk();

/// 51-state chain, 11 actions encoding jumps -5..+5. The landing state is
/// clip(s + jump + n) with n uniform on -3..3; the arrival reward is
/// exp(-(s'-25)^2/25). Training starts uniformly at random.
EnvSpec long_chain_walk();

/// Four states A,B,C,D (0..3), 100 actions. From C (state 2) actions 0..49
/// lead to B, 50..99 to D; A and D always return to C; B always moves to A
/// with reward drawn from Normal(-0.1, 1). Episodes start at C and last 5
/// steps. The exact model holds the reward mean; sampled rewards are
/// unbounded, so r_max describes the model, not the samples.
EnvSpec toy_chain();

/// CLI keys: chainwalk | longchain | toy.
std::optional<EnvSpec> env_from_key(std::string_view key);
std::string env_key(const EnvSpec& env);

/// Samples one transition. Deterministic given the rng state.
Transition step(const EnvSpec& env, int state, int action, SplitMix64& rng);

/// Dense enumeration of the kernel and expected rewards; gamma is an
/// experiment choice, not an environment property.
Mdp exact_model(const EnvSpec& env, double gamma = 0.99);

int train_start(const EnvSpec& env, SplitMix64& rng);
int eval_start(const EnvSpec& env, SplitMix64& rng);

/// Per-state reward collected on arrival (chain environments).
double arrival_reward(const EnvSpec& env, int next_state);

}  // namespace gvi
