#include "gvi/presets.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>

#include "gvi/agent.hpp"
#include "gvi/bounds.hpp"
#include "gvi/csv.hpp"
#include "gvi/engine.hpp"
#include "gvi/metrics.hpp"
#include "gvi/operators.hpp"
#include "gvi/svg.hpp"

namespace gvi {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

SoftmaxTemp to_temp(double beta) { return SoftmaxTemp(beta); }

GviParams cell_params(const GridCell& c) { return GviParams(c.alpha, to_temp(c.beta)); }

/// Records every file it hands out so a failed run can clean up after itself.
class OutputTracker {
  public:
    explicit OutputTracker(std::string dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw io_error("cannot create output directory: " + dir_);
    }
    std::string file(const std::string& rel) {
        fs::path p = fs::path(dir_) / rel;
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
        if (ec) throw io_error("cannot create directory: " + p.parent_path().string());
        rel_files_.push_back(rel);
        return p.string();
    }
    std::vector<std::string> sorted_files() const {
        auto fs_copy = rel_files_;
        std::sort(fs_copy.begin(), fs_copy.end());
        return fs_copy;
    }
    void remove_outputs() noexcept {
        for (const auto& rel : rel_files_) {
            std::error_code ec;
            fs::remove(fs::path(dir_) / rel, ec);
        }
    }
    const std::string& dir() const { return dir_; }

  private:
    std::string dir_;
    std::vector<std::string> rel_files_;
};

/// Runs one job per (cell, run) pair under OpenMP; results land in
/// preassigned slots so scheduling cannot affect output bytes.
template <typename Job>
void fan_out(long total, Job&& job) {
    std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; ++i) {
        try {
            job(i);
        } catch (...) {
#pragma omp critical
            if (!eptr) eptr = std::current_exception();
        }
    }
    if (eptr) std::rethrow_exception(eptr);
}

TrainConfig training_config(const ExperimentPreset& p, const GridCell& cell, uint64_t seed) {
    TrainConfig cfg{cell_params(cell)};
    cfg.gamma = p.gamma;
    cfg.episodes = p.episodes;
    cfg.steps_per_episode = p.steps_per_episode;
    cfg.epsilon = p.epsilon;
    cfg.eval_episodes = p.eval_episodes;
    cfg.eval_steps = p.eval_steps;
    cfg.eval_stride = p.eval_stride;
    cfg.seed = seed;
    return cfg;
}

void write_curve_aggregate(const std::string& path, const std::string& xname,
                           const std::vector<long>& xs,
                           const std::vector<std::vector<double>>& per_run) {
    auto med = aggregate(per_run, AggStat::median);
    auto lo = aggregate(per_run, AggStat::p05);
    auto hi = aggregate(per_run, AggStat::p95);
    CsvWriter w(path, {xname, "median", "p05", "p95"});
    for (size_t i = 0; i < xs.size(); ++i)
        w.row({std::to_string(xs[i]), fmt_full(med[i]), fmt_full(lo[i]), fmt_full(hi[i])});
    w.close();
}

double random_policy_value(const EnvSpec& env, int episodes, int steps, SplitMix64& rng) {
    double total = 0.0;
    for (int ep = 0; ep < episodes; ++ep) {
        int s = eval_start(env, rng);
        double ret = 0.0;
        for (int t = 0; t < steps; ++t) {
            Transition tr = step(env, s, static_cast<int>(rng.next_below(env.n_actions)), rng);
            ret += tr.reward;
            s = tr.next_state;
        }
        total += ret;
    }
    return total / episodes;
}

json base_manifest(const ExperimentPreset& p) {
    json grid = json::array();
    for (const auto& c : p.grid)
        grid.push_back({{"label", c.label}, {"alpha", c.alpha}, {"beta", fmt_key(c.beta)}});
    json m{{"preset", p.key},          {"base_seed", p.base_seed}, {"runs", p.runs},
           {"gamma", p.gamma},         {"grid", std::move(grid)}};
    if (p.name != PresetName::decay_fig2) m["env"] = env_key(p.env);
    if (p.episodes > 0) {
        m["episodes"] = p.episodes;
        m["epsilon"] = p.epsilon;
        m["eval_episodes"] = p.eval_episodes;
        m["eval_steps"] = p.eval_steps;
        m["eval_stride"] = p.eval_stride;
    }
    if (p.iters > 0) m["iters"] = p.iters;
    if (p.max_k > 0) m["max_k"] = p.max_k;
    return m;
}

// ---- individual presets ----------------------------------------------

void run_decay(const ExperimentPreset& p, OutputTracker& out, bool svg) {
    CsvWriter w(out.file("decay.csv"), {"alpha", "k", "d_k"});
    std::vector<Series> series;
    for (const auto& cell : p.grid) {
        Series s{("alpha=" + fmt_key(cell.alpha)), {}, {}};
        for (long k = 0; k <= p.max_k; ++k) {
            double d = decay_coefficient(cell.alpha, p.gamma, k);
            w.row({fmt_key(cell.alpha), std::to_string(k), fmt_full(d)});
            s.x.push_back(static_cast<double>(k));
            s.y.push_back(d);
        }
        series.push_back(std::move(s));
    }
    w.close();
    if (svg)
        write_line_svg(out.file("decay.svg"), series,
                       {"Error-decay coefficient", "k", "D_k"});
}

void run_gap(const ExperimentPreset& p, OutputTracker& out, bool svg) {
    Mdp model = exact_model(p.env, p.gamma);
    CsvWriter w(out.file("gap.csv"), {"alpha", "state", "numeric_gap", "analytic_gap"});
    std::vector<Series> series;
    for (const auto& cell : p.grid) {
        GviParams params = cell_params(cell);
        SolveOptions opts;
        opts.max_iters = p.iters;
        opts.tol = 0.0;
        auto [q, trace] = gvi_solve(model, params, QTable(model.n_states, model.n_actions), opts);
        VTable numeric = action_gap_curve(q);
        VTable analytic = action_gap_curve(theorem1_limit(model, params));
        Series sn{"alpha=" + fmt_key(cell.alpha), {}, {}};
        for (int s = 0; s < model.n_states; ++s) {
            w.row({fmt_key(cell.alpha), std::to_string(s), fmt_full(numeric[s]),
                   fmt_full(analytic[s])});
            sn.x.push_back(s);
            sn.y.push_back(numeric[s]);
        }
        series.push_back(std::move(sn));
    }
    w.close();
    if (svg)
        write_line_svg(out.file("gap.svg"), series,
                       {"Action gap after exact iteration", "state", "Q(s,L) - Q(s,R)"});
}

void run_diverge(const ExperimentPreset& p, OutputTracker& out, bool svg) {
    Mdp model = exact_model(p.env, p.gamma);
    CsvWriter w(out.file("diverge.csv"), {"alpha", "state", "action", "numeric", "analytic"});
    std::vector<Series> series;
    for (const auto& cell : p.grid) {
        GviParams params = cell_params(cell);
        SolveOptions opts;
        opts.max_iters = p.iters;
        opts.tol = 0.0;
        auto [q, trace] = gvi_solve(model, params, QTable(model.n_states, model.n_actions), opts);
        QTable analytic = params.alpha == 1.0
                              ? theorem1_divergent_form(model, params,
                                                        QTable(model.n_states, model.n_actions),
                                                        p.iters)
                              : theorem1_limit(model, params);
        for (int a = 0; a < model.n_actions; ++a) {
            Series sn{"alpha=" + fmt_key(cell.alpha) + (a == 0 ? " L" : " R"), {}, {}};
            for (int s = 0; s < model.n_states; ++s) {
                w.row({fmt_key(cell.alpha), std::to_string(s), std::to_string(a),
                       fmt_full(q(s, a)), fmt_full(analytic(s, a))});
                sn.x.push_back(s);
                sn.y.push_back(q(s, a));
            }
            series.push_back(std::move(sn));
        }
    }
    w.close();
    if (svg)
        write_line_svg(out.file("diverge.svg"), series,
                       {"Q-values after " + std::to_string(p.iters) + " iterations", "state",
                        "Q(s,a)"});
}

void run_toy(const ExperimentPreset& p, OutputTracker& out, bool svg) {
    const long cells = static_cast<long>(p.grid.size());
    std::vector<std::vector<double>> curves(static_cast<size_t>(cells * p.runs));
    fan_out(cells * p.runs, [&](long i) {
        long ci = i / p.runs, ri = i % p.runs;
        TrainConfig cfg = training_config(p, p.grid[static_cast<size_t>(ci)],
                                          p.base_seed + static_cast<uint64_t>(ri));
        cfg.eval_stride = 0;
        cfg.eval_episodes = 1;
        cfg.eval_steps = 1;  // the metric is the greedy-at-C flag, not rollouts
        curves[static_cast<size_t>(i)] = train(p.env, cfg).left_ratio_curve;
    });

    std::vector<long> xs(static_cast<size_t>(p.episodes));
    for (long e = 0; e < p.episodes; ++e) xs[static_cast<size_t>(e)] = e + 1;

    std::vector<Series> mean_series;
    for (long ci = 0; ci < cells; ++ci) {
        const GridCell& cell = p.grid[static_cast<size_t>(ci)];
        std::vector<std::vector<double>> per_run(
            curves.begin() + ci * p.runs, curves.begin() + (ci + 1) * p.runs);
        for (long ri = 0; ri < p.runs; ++ri) {
            uint64_t seed = p.base_seed + static_cast<uint64_t>(ri);
            CsvWriter w(out.file("runs/" + cell.label + "/run_" + std::to_string(seed) + ".csv"),
                        {"episode", "metric"});
            for (size_t e = 0; e < per_run[static_cast<size_t>(ri)].size(); ++e)
                w.row({std::to_string(e + 1), fmt_full(per_run[static_cast<size_t>(ri)][e])});
            w.close();
        }
        write_curve_aggregate(out.file("toy_" + cell.label + ".csv"), "episode", xs, per_run);

        auto mean = aggregate(per_run, AggStat::mean);
        CsvWriter wm(out.file("toy_" + cell.label + "_mean.csv"), {"episode", "mean"});
        Series sm{cell.label, {}, {}};
        for (size_t e = 0; e < mean.size(); ++e) {
            wm.row({std::to_string(e + 1), fmt_full(mean[e])});
            sm.x.push_back(static_cast<double>(e + 1));
            sm.y.push_back(mean[e]);
        }
        wm.close();
        mean_series.push_back(std::move(sm));
    }
    if (svg)
        write_line_svg(out.file("toy.svg"), mean_series,
                       {"Mean ratio of going left from C", "updates", "left ratio"});
}

void run_perf(const ExperimentPreset& p, OutputTracker& out, bool svg) {
    const long cells = static_cast<long>(p.grid.size());
    std::vector<TrainResult> results(static_cast<size_t>(cells * p.runs));
    fan_out(cells * p.runs, [&](long i) {
        long ci = i / p.runs, ri = i % p.runs;
        results[static_cast<size_t>(i)] =
            train(p.env, training_config(p, p.grid[static_cast<size_t>(ci)],
                                         p.base_seed + static_cast<uint64_t>(ri)));
    });

    std::vector<Series> med_series;
    for (long ci = 0; ci < cells; ++ci) {
        const GridCell& cell = p.grid[static_cast<size_t>(ci)];
        std::vector<std::vector<double>> per_run;
        const std::vector<long>& xs = results[static_cast<size_t>(ci * p.runs)].eval_points;
        for (long ri = 0; ri < p.runs; ++ri) {
            const TrainResult& r = results[static_cast<size_t>(ci * p.runs + ri)];
            uint64_t seed = p.base_seed + static_cast<uint64_t>(ri);
            CsvWriter w(out.file("runs/" + cell.label + "/run_" + std::to_string(seed) + ".csv"),
                        {"episode", "metric"});
            for (size_t e = 0; e < r.eval_curve.size(); ++e)
                w.row({std::to_string(r.eval_points[e]), fmt_full(r.eval_curve[e])});
            w.close();
            per_run.push_back(r.eval_curve);
        }
        write_curve_aggregate(out.file("perf_" + cell.label + ".csv"), "episode", xs, per_run);
        auto med = aggregate(per_run, AggStat::median);
        Series sm{cell.label, {}, {}};
        for (size_t e = 0; e < med.size(); ++e) {
            sm.x.push_back(static_cast<double>(xs[e]));
            sm.y.push_back(med[e]);
        }
        med_series.push_back(std::move(sm));
    }

    // optimal / random reference rollouts with the same seed set
    Mdp model = exact_model(p.env, p.gamma);
    QTable q_star = fixed_point_q(model, SoftmaxTemp::max());
    std::vector<double> opt_vals, rand_vals;
    for (int ri = 0; ri < p.runs; ++ri) {
        SplitMix64 rng_o(derive_seed(p.base_seed + static_cast<uint64_t>(ri), 900001));
        SplitMix64 rng_r(derive_seed(p.base_seed + static_cast<uint64_t>(ri), 900002));
        opt_vals.push_back(evaluate(p.env, q_star, p.eval_episodes, p.eval_steps, rng_o));
        rand_vals.push_back(random_policy_value(p.env, p.eval_episodes, p.eval_steps, rng_r));
    }
    CsvWriter wr(out.file("perf_reference.csv"), {"policy", "median", "p05", "p95"});
    for (auto& [name, vals] :
         std::vector<std::pair<std::string, std::vector<double>*>>{{"optimal", &opt_vals},
                                                                   {"random", &rand_vals}})
        wr.row({name, fmt_full(quantile(*vals, 0.5)), fmt_full(quantile(*vals, 0.05)),
                fmt_full(quantile(*vals, 0.95))});
    wr.close();

    if (svg)
        write_line_svg(out.file("perf.svg"), med_series,
                       {"Median evaluation reward", "episode", "mean episodic reward"});
}

void run_gapcurve(const ExperimentPreset& p, OutputTracker& out, bool svg) {
    const long cells = static_cast<long>(p.grid.size());
    long stride = p.gap_iters.front();
    for (long it : p.gap_iters)
        if (it % stride != 0 || it > p.episodes)
            throw invalid_input("gapcurve preset: snapshot list must be multiples of the first "
                                "entry within the episode budget");

    std::vector<TrainResult> results(static_cast<size_t>(cells * p.runs));
    fan_out(cells * p.runs, [&](long i) {
        long ci = i / p.runs, ri = i % p.runs;
        TrainConfig cfg = training_config(p, p.grid[static_cast<size_t>(ci)],
                                          p.base_seed + static_cast<uint64_t>(ri));
        cfg.eval_stride = 0;
        cfg.eval_episodes = 1;
        cfg.eval_steps = 1;
        cfg.snapshot_stride = stride;
        results[static_cast<size_t>(i)] = train(p.env, cfg);
    });

    std::vector<Series> series;
    for (long ci = 0; ci < cells; ++ci) {
        const GridCell& cell = p.grid[static_cast<size_t>(ci)];
        CsvWriter wraw(out.file("gapcurve_runs_" + cell.label + ".csv"),
                       {"seed", "iterations", "state", "gap"});
        CsvWriter wagg(out.file("gapcurve_" + cell.label + ".csv"),
                       {"iterations", "state", "median", "p05", "p95"});
        for (long it : p.gap_iters) {
            size_t snap_idx = static_cast<size_t>(it / stride) - 1;
            std::vector<std::vector<double>> gaps;  // run -> per-state gap
            for (long ri = 0; ri < p.runs; ++ri) {
                const TrainResult& r = results[static_cast<size_t>(ci * p.runs + ri)];
                if (snap_idx >= r.q_snapshots.size())
                    throw numerical_error("gapcurve preset: training ended before snapshot");
                VTable g = action_gap_curve(r.q_snapshots[snap_idx]);
                gaps.push_back(g.data);
                for (int s = 0; s < p.env.n_states; ++s)
                    wraw.row({std::to_string(p.base_seed + static_cast<uint64_t>(ri)),
                              std::to_string(it), std::to_string(s), fmt_full(g[s])});
            }
            auto med = aggregate(gaps, AggStat::median);
            auto lo = aggregate(gaps, AggStat::p05);
            auto hi = aggregate(gaps, AggStat::p95);
            Series sm{cell.label + " k=" + std::to_string(it), {}, {}};
            for (int s = 0; s < p.env.n_states; ++s) {
                wagg.row({std::to_string(it), std::to_string(s), fmt_full(med[s]),
                          fmt_full(lo[s]), fmt_full(hi[s])});
                sm.x.push_back(s);
                sm.y.push_back(med[s]);
            }
            series.push_back(std::move(sm));
        }
        wraw.close();
        wagg.close();
    }
    if (svg)
        write_line_svg(out.file("gapcurve.svg"), series,
                       {"Median action gap during training", "state", "Q(s,L) - Q(s,R)"});
}

void write_grid_aggregate(const std::string& path, const ExperimentPreset& p,
                          const std::vector<std::vector<double>>& per_cell_values,
                          std::vector<double>* mean_out) {
    CsvWriter w(path, {"alpha", "beta", "mean", "median", "p05", "p95"});
    for (size_t ci = 0; ci < p.grid.size(); ++ci) {
        std::vector<std::vector<double>> rows;
        for (double v : per_cell_values[ci]) rows.push_back({v});
        double mean = aggregate(rows, AggStat::mean)[0];
        if (mean_out) mean_out->push_back(mean);
        w.row({fmt_key(p.grid[ci].alpha), fmt_key(p.grid[ci].beta), fmt_full(mean),
               fmt_full(aggregate(rows, AggStat::median)[0]),
               fmt_full(aggregate(rows, AggStat::p05)[0]),
               fmt_full(aggregate(rows, AggStat::p95)[0])});
    }
    w.close();
}

void heat_svg(const std::string& path, const ExperimentPreset& p,
              const std::vector<double>& cell_means, const std::string& title) {
    // grid is beta-major per alpha row: recover the axis lists
    std::vector<std::string> alphas, betas;
    for (const auto& c : p.grid) {
        std::string a = fmt_key(c.alpha), b = fmt_key(c.beta);
        if (alphas.empty() || alphas.back() != a) alphas.push_back(a);
        if (std::find(betas.begin(), betas.end(), b) == betas.end()) betas.push_back(b);
    }
    write_heatmap_svg(path, static_cast<int>(alphas.size()), static_cast<int>(betas.size()),
                      cell_means, alphas, betas, {title, "beta", "alpha"});
}

void run_er(const ExperimentPreset& p, OutputTracker& out, bool svg) {
    Mdp model = exact_model(p.env, p.gamma);
    const long cells = static_cast<long>(p.grid.size());

    // one exact run per cell: the ground truth after the same number of updates
    std::vector<QTable> truth(static_cast<size_t>(cells));
    fan_out(cells, [&](long ci) {
        SolveOptions opts;
        opts.max_iters = p.episodes;
        opts.tol = 0.0;
        truth[static_cast<size_t>(ci)] =
            gvi_solve(model, cell_params(p.grid[static_cast<size_t>(ci)]),
                      QTable(model.n_states, model.n_actions), opts)
                .first;
    });

    std::vector<double> ers(static_cast<size_t>(cells * p.runs));
    fan_out(cells * p.runs, [&](long i) {
        long ci = i / p.runs, ri = i % p.runs;
        TrainConfig cfg = training_config(p, p.grid[static_cast<size_t>(ci)],
                                          p.base_seed + static_cast<uint64_t>(ri));
        TrainResult r = train(p.env, cfg);
        ers[static_cast<size_t>(i)] = error_ratio(r.final_q, truth[static_cast<size_t>(ci)]);
    });

    CsvWriter w(out.file("er_runs.csv"), {"alpha", "beta", "seed", "er"});
    std::vector<std::vector<double>> per_cell(static_cast<size_t>(cells));
    for (long ci = 0; ci < cells; ++ci)
        for (long ri = 0; ri < p.runs; ++ri) {
            double er = ers[static_cast<size_t>(ci * p.runs + ri)];
            w.row({fmt_key(p.grid[static_cast<size_t>(ci)].alpha),
                   fmt_key(p.grid[static_cast<size_t>(ci)].beta),
                   std::to_string(p.base_seed + static_cast<uint64_t>(ri)), fmt_full(er)});
            per_cell[static_cast<size_t>(ci)].push_back(er);
        }
    w.close();

    std::vector<double> means;
    write_grid_aggregate(out.file("er_agg.csv"), p, per_cell, &means);
    if (svg) heat_svg(out.file("er.svg"), p, means, "Mean error ratio at the last update");
}

void run_heatmap(const ExperimentPreset& p, OutputTracker& out, bool svg) {
    const long cells = static_cast<long>(p.grid.size());
    std::vector<double> finals(static_cast<size_t>(cells * p.runs));
    fan_out(cells * p.runs, [&](long i) {
        long ci = i / p.runs, ri = i % p.runs;
        TrainResult r = train(p.env, training_config(p, p.grid[static_cast<size_t>(ci)],
                                                     p.base_seed + static_cast<uint64_t>(ri)));
        finals[static_cast<size_t>(i)] = r.eval_curve.back();
    });

    CsvWriter w(out.file("heatmap_runs.csv"), {"alpha", "beta", "seed", "final_eval"});
    std::vector<std::vector<double>> per_cell(static_cast<size_t>(cells));
    for (long ci = 0; ci < cells; ++ci)
        for (long ri = 0; ri < p.runs; ++ri) {
            double v = finals[static_cast<size_t>(ci * p.runs + ri)];
            w.row({fmt_key(p.grid[static_cast<size_t>(ci)].alpha),
                   fmt_key(p.grid[static_cast<size_t>(ci)].beta),
                   std::to_string(p.base_seed + static_cast<uint64_t>(ri)), fmt_full(v)});
            per_cell[static_cast<size_t>(ci)].push_back(v);
        }
    w.close();

    std::vector<double> means;
    write_grid_aggregate(out.file("heatmap_agg.csv"), p, per_cell, &means);
    if (svg) heat_svg(out.file("heatmap.svg"), p, means, "Mean final evaluation reward");
}

}  // namespace

std::optional<PresetName> preset_from_key(std::string_view key) {
    if (key == "toy_fig1") return PresetName::toy_fig1;
    if (key == "decay_fig2") return PresetName::decay_fig2;
    if (key == "gap_fig3") return PresetName::gap_fig3;
    if (key == "diverge_fig4") return PresetName::diverge_fig4;
    if (key == "perf_fig5") return PresetName::perf_fig5;
    if (key == "gapcurve_fig6q") return PresetName::gapcurve_fig6q;
    if (key == "er_fig6") return PresetName::er_fig6;
    if (key == "heatmap_fig7") return PresetName::heatmap_fig7;
    return std::nullopt;
}

std::vector<std::string> preset_keys() {
    return {"toy_fig1",  "decay_fig2",     "gap_fig3", "diverge_fig4",
            "perf_fig5", "gapcurve_fig6q", "er_fig6",  "heatmap_fig7"};
}

ExperimentPreset make_preset(PresetName name, int runs_override, uint64_t base_seed) {
    const double inf = std::numeric_limits<double>::infinity();
    ExperimentPreset p;
    p.name = name;
    p.base_seed = base_seed;
    switch (name) {
        case PresetName::toy_fig1:
            p.key = "toy_fig1";
            p.env = toy_chain();
            p.grid = {{"avi", 0.0, inf},         {"aal", 0.8, inf}, {"softmax_avi", 0.0, 10.0},
                      {"adpp", 1.0, 10.0},       {"agvi", 0.8, 10.0}};
            p.runs = 1000;
            p.episodes = 300;
            p.epsilon = 0.1;
            p.eval_stride = 0;
            break;
        case PresetName::decay_fig2:
            p.key = "decay_fig2";
            p.grid = {{"alpha_0", 0.0, inf},
                      {"alpha_0.9", 0.9, inf},
                      {"alpha_0.99", 0.99, inf},
                      {"alpha_1", 1.0, inf}};
            p.runs = 1;
            p.max_k = 500;
            break;
        case PresetName::gap_fig3:
            p.key = "gap_fig3";
            p.env = chain_walk();
            p.grid = {{"a0", 0.0, 10.0},
                      {"a0.2", 0.2, 10.0},
                      {"a0.4", 0.4, 10.0},
                      {"a0.6", 0.6, 10.0},
                      {"a0.8", 0.8, 10.0}};
            p.runs = 1;
            p.iters = 100000;
            break;
        case PresetName::diverge_fig4:
            p.key = "diverge_fig4";
            p.env = chain_walk();
            p.grid = {{"a0.8", 0.8, 10.0}, {"a1", 1.0, 10.0}};
            p.runs = 1;
            p.iters = 100000;
            break;
        case PresetName::perf_fig5:
            p.key = "perf_fig5";
            p.env = chain_walk();
            p.grid = {{"avi", 0.0, inf},
                      {"agvi_0.4", 0.4, 10.0},
                      {"agvi_0.8", 0.8, 10.0},
                      {"adpp", 1.0, 10.0}};
            p.runs = 20;
            p.episodes = 2500;
            break;
        case PresetName::gapcurve_fig6q:
            p.key = "gapcurve_fig6q";
            p.env = chain_walk();
            p.grid = {{"a0.8", 0.8, 10.0}, {"a1", 1.0, 10.0}};
            p.runs = 20;
            p.episodes = 2500;
            p.eval_stride = 0;
            p.gap_iters = {100, 500, 1000, 2500};
            break;
        case PresetName::er_fig6:
        case PresetName::heatmap_fig7: {
            p.key = name == PresetName::er_fig6 ? "er_fig6" : "heatmap_fig7";
            p.env = long_chain_walk();
            for (double a : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0})
                for (double b : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, inf})
                    p.grid.push_back({"a" + fmt_key(a) + "_b" + fmt_key(b), a, b});
            p.runs = 20;
            p.episodes = 5000;
            p.eval_stride = 0;
            break;
        }
    }
    if (runs_override > 0) p.runs = runs_override;
    if (p.grid.empty()) throw invalid_input("make_preset: empty grid");
    return p;
}

json run_preset(const ExperimentPreset& preset, const std::string& out_dir, bool svg) {
    if (preset.grid.empty()) throw invalid_input("run_preset: empty grid");
    if (preset.runs < 1) throw invalid_input("run_preset: need at least one run");
    OutputTracker out(out_dir);
    try {
        switch (preset.name) {
            case PresetName::toy_fig1: run_toy(preset, out, svg); break;
            case PresetName::decay_fig2: run_decay(preset, out, svg); break;
            case PresetName::gap_fig3: run_gap(preset, out, svg); break;
            case PresetName::diverge_fig4: run_diverge(preset, out, svg); break;
            case PresetName::perf_fig5: run_perf(preset, out, svg); break;
            case PresetName::gapcurve_fig6q: run_gapcurve(preset, out, svg); break;
            case PresetName::er_fig6: run_er(preset, out, svg); break;
            case PresetName::heatmap_fig7: run_heatmap(preset, out, svg); break;
        }
    } catch (...) {
        out.remove_outputs();
        throw;
    }
    json manifest = base_manifest(preset);
    manifest["files"] = out.sorted_files();
    std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
    if (!mf) throw io_error("cannot write manifest.json in " + out_dir);
    mf << manifest.dump(2) << '\n';
    if (!mf) throw io_error("write failure: manifest.json");
    return manifest;
}

}  // namespace gvi
