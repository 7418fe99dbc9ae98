#include "gvi/mdp_json.hpp"

#include <fstream>

#include <json.hpp>

namespace gvi {

namespace {
using nlohmann::json;

Mdp from_json(const json& j) {
    if (!j.is_object()) throw invalid_input("MDP JSON: expected an object");
    for (const char* key : {"n_states", "n_actions", "gamma", "r_max", "reward", "transition"})
        if (!j.contains(key)) throw invalid_input(std::string("MDP JSON: missing field ") + key);

    Mdp m(j.at("n_states").get<int>(), j.at("n_actions").get<int>(), j.at("gamma").get<double>(),
          j.at("r_max").get<double>());

    const json& rew = j.at("reward");
    const json& tra = j.at("transition");
    if (!rew.is_array() || static_cast<int>(rew.size()) != m.n_states ||
        !tra.is_array() || static_cast<int>(tra.size()) != m.n_states)
        throw invalid_input("MDP JSON: reward/transition outer size must equal n_states");
    for (int s = 0; s < m.n_states; ++s) {
        if (static_cast<int>(rew[s].size()) != m.n_actions ||
            static_cast<int>(tra[s].size()) != m.n_actions)
            throw invalid_input("MDP JSON: per-state size must equal n_actions");
        for (int a = 0; a < m.n_actions; ++a) {
            m.r(s, a) = rew[s][a].get<double>();
            if (static_cast<int>(tra[s][a].size()) != m.n_states)
                throw invalid_input("MDP JSON: transition row size must equal n_states");
            for (int s2 = 0; s2 < m.n_states; ++s2) m.p(s, a, s2) = tra[s][a][s2].get<double>();
        }
    }
    m.validate();
    return m;
}

json to_json(const Mdp& m) {
    json rew = json::array(), tra = json::array();
    for (int s = 0; s < m.n_states; ++s) {
        json rrow = json::array(), trow = json::array();
        for (int a = 0; a < m.n_actions; ++a) {
            rrow.push_back(m.r(s, a));
            json dist = json::array();
            for (int s2 = 0; s2 < m.n_states; ++s2) dist.push_back(m.p(s, a, s2));
            trow.push_back(std::move(dist));
        }
        rew.push_back(std::move(rrow));
        tra.push_back(std::move(trow));
    }
    return json{{"n_states", m.n_states}, {"n_actions", m.n_actions}, {"gamma", m.gamma},
                {"r_max", m.r_max},       {"reward", std::move(rew)},
                {"transition", std::move(tra)}};
}

}  // namespace

Mdp mdp_from_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw invalid_input("MDP JSON: parse error");
    return from_json(j);
}

std::string mdp_to_json_text(const Mdp& m) { return to_json(m).dump(2); }

Mdp load_mdp_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return mdp_from_json_text(text);
}

void save_mdp_json(const std::string& path, const Mdp& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << mdp_to_json_text(m) << '\n';
    if (!out) throw io_error("write failure: " + path);
}

}  // namespace gvi
