#pragma once

#include <string>

#include "gvi/types.hpp"

namespace gvi {

/// JSON layout: {n_states, n_actions, gamma, r_max,
///               reward: [[a0,a1,..] per state],
///               transition: [[[s'..] per action] per state]}.
/// Loading validates the result (row sums, bounds, gamma range).
Mdp load_mdp_json(const std::string& path);
void save_mdp_json(const std::string& path, const Mdp& m);

Mdp mdp_from_json_text(const std::string& text);
std::string mdp_to_json_text(const Mdp& m);

}  // namespace gvi
