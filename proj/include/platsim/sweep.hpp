#pragma once

#include <optional>
#include <string>
#include <vector>

#include "platsim/config.hpp"
#include "platsim/engine.hpp"
#include "platsim/metrics.hpp"

namespace platsim {

/// The factorial run set: architectures x policies x seeds over a shared
/// base configuration.
struct SweepSpec {
    Preset preset = Preset::Paper;
    std::vector<Architecture> architectures{Architecture::Complete, Architecture::Network,
                                            Architecture::Tree, Architecture::Layered};
    std::vector<FeedPolicy> policies{FeedPolicy::Lifo, FeedPolicy::Hot};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    ConfigFile file;            // config-file layer
    ConfigOverrides overrides;  // CLI layer, wins over the file
    std::string out_dir;        // empty: no files written
    int jobs = 0;               // worker width; 0 = library default
    bool write_run_files = true;
};

SimulationConfig condition_config(const SweepSpec& spec, Architecture arch, FeedPolicy policy,
                                  std::uint64_t seed);

struct RunOutput {
    std::uint64_t seed = 0;
    std::vector<MessageOutcome> outcomes;
    std::optional<double> quality; // exposure-weighted, this run
    std::string graph_summary;
    double wall_seconds = 0.0;
    std::string error; // nonempty when the run failed
};

struct ConditionResult {
    Architecture arch = Architecture::Complete;
    FeedPolicy policy = FeedPolicy::Lifo;
    std::vector<RunOutput> runs;            // one per seed, seed order
    std::vector<MessageOutcome> pooled;     // all runs concatenated
    std::optional<ConditionSummary> summary; // absent if every run failed
    std::vector<double> per_seed_quality;
};

struct SweepResult {
    std::vector<ConditionResult> conditions;
    std::vector<std::string> failures; // "arch/policy seed N: what"
    double wall_seconds = 0.0;

    const ConditionResult* find(Architecture arch, FeedPolicy policy) const;
};

/// Runs every condition. Runs are independent and dispatched to an
/// OpenMP pool of `jobs` workers; aggregation happens after all joins,
/// so results do not depend on the parallelism width. A failing run is
/// isolated and reported in `failures`.
SweepResult run_sweep(const SweepSpec& spec);

/// Breadth/depth table over all conditions: per metric, breadth and
/// both depth means.
std::string render_breadth_depth_table(const SweepResult& result);

/// Hot / LIFO unconditional-mean ratio per architecture and metric.
std::string render_ratio_table(const SweepResult& result);

/// Per-seed exposure-weighted quality rows: platform,algorithm,seed,quality.
std::string render_seed_quality_csv(const SweepResult& result);

/// Exposed-message scatter rows for one condition:
/// seed,msg_id,alpha,exposure (exposure > 0 only).
std::string render_exposure_scatter_csv(const ConditionResult& condition);

/// Machine-readable per-condition objects (JSON array).
std::string render_conditions_json(const SweepResult& result);

/// Writes per-run message CSVs plus all sweep-level reports under
/// spec.out_dir.
void write_sweep_outputs(const SweepSpec& spec, const SweepResult& result);

} // namespace platsim
