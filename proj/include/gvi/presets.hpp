#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gvi/envs.hpp"
#include "gvi/types.hpp"

namespace gvi {

enum class PresetName {
    toy_fig1,      // maximization-bias left-ratio curves on the 4-state toy chain
    decay_fig2,    // error-decay coefficient D_k across alpha
    gap_fig3,      // exact action gaps vs the predicted limit, ChainWalk
    diverge_fig4,  // alpha=1 Q-value divergence vs the predicted trajectory
    perf_fig5,     // model-free ChainWalk evaluation curves across alpha
    gapcurve_fig6q,// model-free action-gap propagation at alpha in {0.8, 1}
    er_fig6,       // over-estimation (error ratio) across the (alpha, beta) grid
    heatmap_fig7,  // final performance across the (alpha, beta) grid
};

struct GridCell {
    std::string label;
    double alpha;
    double beta;  // +inf allowed
};

struct ExperimentPreset {
    PresetName name;
    std::string key;
    EnvSpec env;           // ignored by decay_fig2
    std::vector<GridCell> grid;
    int runs;
    uint64_t base_seed;
    double gamma = 0.99;

    // episodic protocol (model-free presets)
    long episodes = 0;
    int steps_per_episode = 0;
    double epsilon = 0.3;
    int eval_episodes = 100;
    int eval_steps = 100;
    int eval_stride = 1;

    // exact-solve protocol
    long iters = 0;
    long max_k = 0;                 // decay preset
    std::vector<long> gap_iters;    // gapcurve snapshots
};

std::optional<PresetName> preset_from_key(std::string_view key);
std::vector<std::string> preset_keys();

/// Declared default configuration; runs_override > 0 replaces the seed
/// count. Per-run seeds are base_seed + run_index, shared across grid cells.
ExperimentPreset make_preset(PresetName name, int runs_override = 0, uint64_t base_seed = 1);

/// Executes the preset, writes per-run and aggregate CSVs plus
/// manifest.json under out_dir, optionally SVG plots. Returns the manifest.
/// Byte-identical outputs for identical (preset, base_seed). On failure the
/// files written so far are removed.
nlohmann::json run_preset(const ExperimentPreset& preset, const std::string& out_dir,
                          bool svg = false);

}  // namespace gvi
