// Command-line front end: exact solves, model-free training, bound audits,
// and the figure-reproduction presets. Exit codes: 0 success, 1 invalid
// input, 2 numerical failure, 3 I/O failure.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gvi/agent.hpp"
#include "gvi/bounds.hpp"
#include "gvi/csv.hpp"
#include "gvi/engine.hpp"
#include "gvi/envs.hpp"
#include "gvi/mdp_json.hpp"
#include "gvi/operators.hpp"
#include "gvi/presets.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// CLI11 config reader for JSON files shaped like
/// {"solve": {"alpha": 0.5, "beta": "inf"}}; nesting mirrors subcommands,
/// and command-line flags override file values.
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        json j = json::object();
        for (const CLI::Option* opt : app->get_options({})) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
            const std::string& name = opt->get_lnames()[0];
            if (opt->count() == 1) {
                j[name] = opt->results().at(0);
            } else if (opt->count() > 1) {
                j[name] = opt->results();
            } else if (default_also && !opt->get_default_str().empty()) {
                j[name] = opt->get_default_str();
            }
        }
        for (const CLI::App* sub : app->get_subcommands({}))
            j[sub->get_name()] = json::parse(to_config(sub, default_also, false, ""));
        return j.dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j = json::parse(input, nullptr, false);
        if (j.is_discarded()) throw CLI::FileError("config is not valid JSON");
        return walk(j, "", {});
    }

  private:
    std::vector<CLI::ConfigItem> walk(const json& j, const std::string& name,
                                      std::vector<std::string> parents) const {
        std::vector<CLI::ConfigItem> items;
        if (j.is_object()) {
            if (!name.empty()) parents.push_back(name);
            for (const auto& [key, value] : j.items()) {
                auto sub = walk(value, key, parents);
                items.insert(items.end(), sub.begin(), sub.end());
            }
            return items;
        }
        if (name.empty()) throw CLI::FileError("config top level must be a JSON object");
        CLI::ConfigItem item;
        item.name = name;
        item.parents = std::move(parents);
        if (j.is_boolean()) {
            item.inputs = {j.get<bool>() ? "true" : "false"};
        } else if (j.is_string()) {
            item.inputs = {j.get<std::string>()};
        } else if (j.is_number() || j.is_array()) {
            for (const json& v : (j.is_array() ? j : json::array({j})))
                item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        } else {
            throw CLI::FileError("unsupported JSON value for key " + name);
        }
        items.push_back(std::move(item));
        return items;
    }
};

double parse_beta(const std::string& text) {
    double b = gvi::parse_double(text);
    if (std::isnan(b) || b <= 0.0)
        throw gvi::invalid_input("beta must be positive or 'inf', got " + text);
    return b;
}

struct EnvOrFile {
    std::optional<gvi::EnvSpec> env;   // present for key-based environments
    gvi::Mdp model;
};

EnvOrFile resolve_env(const std::string& spec, double gamma, bool allow_file) {
    if (auto env = gvi::env_from_key(spec)) return {env, gvi::exact_model(*env, gamma)};
    if (allow_file && spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        gvi::Mdp m = gvi::load_mdp_json(spec);
        m.gamma = gamma;  // discount is an experiment choice, not a model property
        m.validate();
        return {std::nullopt, std::move(m)};
    }
    throw gvi::invalid_input("unknown environment '" + spec +
                             "' (expected chainwalk|longchain|toy" +
                             (allow_file ? " or a .json model file)" : ")"));
}

struct SolveArgs {
    std::string env, beta = "inf", out, trace;
    double alpha = 0.0, gamma = 0.99, tol = 1e-10;
    long iters = 100000;
};

int cmd_solve(const SolveArgs& a) {
    EnvOrFile ef = resolve_env(a.env, a.gamma, true);
    gvi::GviParams params(a.alpha, gvi::SoftmaxTemp(parse_beta(a.beta)));
    gvi::SolveOptions opts;
    opts.max_iters = a.iters;
    opts.tol = a.tol;
    auto [q, trace] =
        gvi::gvi_solve(ef.model, params, gvi::QTable(ef.model.n_states, ef.model.n_actions), opts);
    gvi::write_qtable_csv(a.out, q);
    if (!a.trace.empty()) {
        gvi::CsvWriter w(a.trace, {"k", "residual"});
        for (size_t k = 0; k < trace.residuals.size(); ++k)
            w.row({std::to_string(k + 1), gvi::fmt_full(trace.residuals[k])});
        w.close();
    }
    std::cout << (trace.converged ? "converged" : "iteration budget exhausted") << " after "
              << trace.iterations << " iterations, final residual "
              << gvi::fmt_key(trace.residuals.empty() ? 0.0 : trace.residuals.back()) << "\n"
              << "wrote " << a.out << "\n";
    return 0;
}

struct TrainArgs {
    std::string env, beta = "inf", out;
    double alpha = 0.0, gamma = 0.99, epsilon = 0.3;
    long episodes = 2500;
    int steps = 0, eval_episodes = 100, eval_steps = 100, eval_stride = 1;
    uint64_t seed = 1;
    bool discounted = false;
};

int cmd_train(const TrainArgs& a) {
    auto env = gvi::env_from_key(a.env);
    if (!env) throw gvi::invalid_input("unknown environment key '" + a.env + "'");
    gvi::TrainConfig cfg{gvi::GviParams(a.alpha, gvi::SoftmaxTemp(parse_beta(a.beta)))};
    cfg.gamma = a.gamma;
    cfg.episodes = a.episodes;
    cfg.steps_per_episode = a.steps;
    cfg.epsilon = a.epsilon;
    cfg.eval_episodes = a.eval_episodes;
    cfg.eval_steps = a.eval_steps;
    cfg.eval_stride = a.eval_stride;
    cfg.discounted_eval = a.discounted;
    cfg.seed = a.seed;

    gvi::TrainResult res = gvi::train(*env, cfg);

    std::error_code ec;
    fs::create_directories(a.out, ec);
    if (ec) throw gvi::io_error("cannot create output directory: " + a.out);
    {
        gvi::CsvWriter w((fs::path(a.out) / "train_curve.csv").string(), {"episode", "metric"});
        for (size_t i = 0; i < res.eval_curve.size(); ++i)
            w.row({std::to_string(res.eval_points[i]), gvi::fmt_full(res.eval_curve[i])});
        w.close();
    }
    gvi::write_qtable_csv((fs::path(a.out) / "q_final.csv").string(), res.final_q);
    if (!res.left_ratio_curve.empty()) {
        gvi::CsvWriter w((fs::path(a.out) / "left_ratio.csv").string(), {"episode", "metric"});
        for (size_t i = 0; i < res.left_ratio_curve.size(); ++i)
            w.row({std::to_string(i + 1), gvi::fmt_full(res.left_ratio_curve[i])});
        w.close();
    }
    if (res.diverged) std::cout << "note: Q-values left double range; kept last finite table\n";
    std::cout << "wrote " << a.out << "\n";
    return 0;
}

struct BoundArgs {
    std::string env, beta = "inf", errors, out;
    double alpha = 0.0, gamma = 0.99;
    long k = 0;
};

int cmd_bound(const BoundArgs& a) {
    EnvOrFile ef = resolve_env(a.env, a.gamma, true);
    gvi::GviParams params(a.alpha, gvi::SoftmaxTemp(parse_beta(a.beta)));
    std::vector<gvi::QTable> errors = gvi::read_error_csv(a.errors);
    if (errors.size() < static_cast<size_t>(a.k) + 1)
        throw gvi::invalid_input("errors file holds " + std::to_string(errors.size()) +
                                 " tables, need k+1 = " + std::to_string(a.k + 1));
    if (errors[0].n_states != ef.model.n_states || errors[0].n_actions != ef.model.n_actions)
        throw gvi::invalid_input("error table shape does not match the environment");

    gvi::QTable q_star = gvi::fixed_point_q(ef.model, gvi::SoftmaxTemp::max());
    gvi::QTable q(ef.model.n_states, ef.model.n_actions, 0.0);
    gvi::CsvWriter w(a.out, {"k", "C", "C_k", "E_k", "bound", "actual_gap"});
    for (long k = 0; k <= a.k; ++k) {
        q = gvi::gvi_step(ef.model, q, params, &errors[static_cast<size_t>(k)]);
        gvi::BoundReport rep = gvi::performance_bound(params, gvi::meta_of(ef.model), errors, k);
        gvi::PolicyTable pi_k = gvi::mellowmax_policy(q, params.beta);
        rep.actual_gap = gvi::sup_diff(q_star, gvi::policy_q_value(ef.model, pi_k));
        w.row({std::to_string(rep.k), gvi::fmt_full(rep.c_const), gvi::fmt_full(rep.c_k),
               gvi::fmt_full(rep.e_k), gvi::fmt_full(rep.bound), gvi::fmt_full(*rep.actual_gap)});
    }
    w.close();
    std::cout << "wrote " << a.out << "\n";
    return 0;
}

struct PresetArgs {
    std::string name, out;
    int runs = 0;
    uint64_t seed = 1;
    bool svg = false;
};

int cmd_preset(const PresetArgs& a) {
    auto name = gvi::preset_from_key(a.name);
    if (!name) {
        std::string keys;
        for (const auto& k : gvi::preset_keys()) keys += (keys.empty() ? "" : ", ") + k;
        throw gvi::invalid_input("unknown preset '" + a.name + "' (available: " + keys + ")");
    }
    gvi::ExperimentPreset preset = gvi::make_preset(*name, a.runs, a.seed);
    json manifest = gvi::run_preset(preset, a.out, a.svg);
    std::cout << "wrote " << manifest["files"].size() << " files to " << a.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tabular laboratory for the generalized value-iteration family"};
    app.require_subcommand(1);
    app.set_config("--config")->description("JSON config file mirroring the flags");
    app.config_formatter(std::make_shared<JsonConfig>());

    SolveArgs s;
    CLI::App* solve = app.add_subcommand("solve", "Exact backups on a known model");
    solve->add_option("--env", s.env, "chainwalk|longchain|toy or model .json")->required();
    solve->add_option("--alpha", s.alpha, "advantage coefficient in [0,1]")->required();
    solve->add_option("--beta", s.beta, "inverse temperature, positive or 'inf'");
    solve->add_option("--gamma", s.gamma, "discount factor");
    solve->add_option("--iters", s.iters, "iteration cap");
    solve->add_option("--tol", s.tol, "sup-norm residual for convergence");
    solve->add_option("--out", s.out, "Q-table CSV path")->required();
    solve->add_option("--trace", s.trace, "optional per-iteration residual CSV");

    TrainArgs t;
    CLI::App* train = app.add_subcommand("train", "Model-free episodic training");
    train->add_option("--env", t.env, "chainwalk|longchain|toy")->required();
    train->add_option("--alpha", t.alpha, "advantage coefficient in [0,1]")->required();
    train->add_option("--beta", t.beta, "inverse temperature, positive or 'inf'");
    train->add_option("--gamma", t.gamma, "discount factor");
    train->add_option("--episodes", t.episodes, "training episodes");
    train->add_option("--steps", t.steps, "steps per episode (0: environment default)");
    train->add_option("--epsilon", t.epsilon, "exploration rate");
    train->add_option("--seed", t.seed, "run seed");
    train->add_option("--eval-episodes", t.eval_episodes, "rollouts per evaluation");
    train->add_option("--eval-steps", t.eval_steps, "steps per evaluation rollout");
    train->add_option("--eval-stride", t.eval_stride, "evaluate every n-th episode (0: last only)");
    train->add_flag("--discounted", t.discounted, "discount evaluation returns");
    train->add_option("--out", t.out, "output directory")->required();

    BoundArgs b;
    CLI::App* bound = app.add_subcommand("bound", "Performance-bound audit from an error history");
    bound->add_option("--env", b.env, "chainwalk|longchain|toy or model .json")->required();
    bound->add_option("--alpha", b.alpha, "advantage coefficient in [0,1]")->required();
    bound->add_option("--beta", b.beta, "inverse temperature, positive or 'inf'");
    bound->add_option("--gamma", b.gamma, "discount factor");
    bound->add_option("--errors", b.errors, "CSV k,state,action,value of injected errors")
        ->required();
    bound->add_option("--k", b.k, "last iteration to audit")->required();
    bound->add_option("--out", b.out, "bound CSV path")->required();

    PresetArgs p;
    CLI::App* preset = app.add_subcommand("preset", "Run a figure-reproduction experiment");
    preset->add_option("name", p.name, "preset key")->required();
    preset->add_option("--runs", p.runs, "seed count override (0: preset default)");
    preset->add_option("--seed", p.seed, "base seed");
    preset->add_option("--out", p.out, "output directory")->required();
    preset->add_flag("--svg", p.svg, "also render SVG plots");

    try {
        app.parse(argc, argv);
        if (solve->parsed()) return cmd_solve(s);
        if (train->parsed()) return cmd_train(t);
        if (bound->parsed()) return cmd_bound(b);
        if (preset->parsed()) return cmd_preset(p);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const gvi::invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const gvi::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const gvi::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
