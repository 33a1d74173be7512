// Command-line front end: single runs, factorial sweeps, CSV validation
// and edge-list sampling.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>

#include "platsim/config.hpp"
#include "platsim/format.hpp"
#include "platsim/io.hpp"
#include "platsim/sweep.hpp"

namespace {

using namespace platsim;

struct CommonFlags {
    std::string preset = "paper";
    std::string config_path;
    ConfigOverrides flags;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "Scale preset: paper or desk")
            ->check(CLI::IsMember({"paper", "desk"}));
        cmd->add_option("--config", config_path, "key = value config file");
        auto opt = [&](const char* name, auto& slot, const char* help) {
            return cmd->add_option_function<std::decay_t<decltype(*slot)>>(
                name, [&slot](const auto& v) { slot = v; }, help);
        };
        opt("--users", flags.n_users, "user count");
        opt("--pages", flags.n_pages, "page count (layered)");
        opt("--n-groups", flags.n_groups, "group count (tree, layered)");
        opt("--steps", flags.steps, "simulation steps");
        opt("--p-post", flags.p_post, "post probability");
        opt("--p-share", flags.p_share, "reshare probability");
        opt("--capacity", flags.capacity, "queue capacity");
        opt("--max-affiliations", flags.max_affiliations, "per-user group/page cap");
        opt("--triangular-mode", flags.triangular_mode, "mode of the trait triangular distribution");
        opt("--rwr-restart-p", flags.rwr_restart_p, "random-walk restart probability");
        opt("--graph-file", flags.graph_file, "SNAP edge list as graph source");
        opt("--flip-edges", flags.flip_edges, "treat file edges as follower->followee");
        opt("--target-edges", flags.target_edges, "network: trim sampled edges to this count");
        opt("--membership-edges", flags.membership_edges, "tree: membership edge count");
        opt("--edge-budget", flags.edge_budget, "layered: total edge budget");
        opt("--synth-source-n", flags.synth_source_n, "synthetic source graph node count");
        opt("--synth-attach", flags.synth_attach, "synthetic graph attachment degree");
        opt("--parallel-delivery", flags.parallel_delivery, "parallel delivery fan-out (default on)");
        opt("--count-page-engagement", flags.count_page_engagement,
            "count page likes/reshares in engagement sets (default on)");
    }

    SimulationConfig resolve(Architecture arch, FeedPolicy policy, std::uint64_t seed) const {
        SimulationConfig cfg = preset_config(preset_from_string(preset), arch);
        if (!config_path.empty()) load_config_file(config_path).resolved(arch).apply(cfg);
        flags.apply(cfg);
        cfg.policy = policy;
        cfg.seed = seed;
        return cfg;
    }
};

int cmd_run(const CommonFlags& common, const std::string& arch_s, const std::string& alg_s,
            std::uint64_t seed, const std::string& out_dir, bool event_log) {
    SimulationConfig cfg =
        common.resolve(architecture_from_string(arch_s), feed_policy_from_string(alg_s), seed);
    cfg.log_events = event_log;
    cfg.validate();

    RunResult r = run(cfg);
    std::cout << r.graph_summary;
    const ConditionSummary summary = summarize(r.outcomes);
    std::cout << render_condition_summary(arch_s, alg_s, summary);
    std::cout << "messages produced: " << r.outcomes.size() << "\n";
    std::cout << "wall seconds: " << fmt9(r.wall_seconds) << "\n";

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    const std::string tag = arch_s + "_" + alg_s + "_seed" + std::to_string(seed);
    write_file((dir / ("messages_" + tag + ".csv")).string(),
               render_messages_csv(seed, cfg.architecture, cfg.policy, r.outcomes));
    std::string text = render_condition_summary(arch_s, alg_s, summary) + "\n" +
                       render_validity_report(validate_outcomes(r.outcomes));
    write_file((dir / ("summary_" + tag + ".txt")).string(), text);
    if (event_log)
        write_file((dir / ("events_" + tag + ".tsv")).string(), render_event_log(r.events));
    return 0;
}

int cmd_sweep(const CommonFlags& common, std::vector<std::string> archs,
              std::vector<std::string> algs, std::vector<std::uint64_t> seeds,
              const std::string& out_dir, int jobs, bool skip_run_files) {
    SweepSpec spec;
    spec.preset = preset_from_string(common.preset);
    if (!common.config_path.empty()) spec.file = load_config_file(common.config_path);
    spec.overrides = common.flags;
    spec.architectures.clear();
    for (const auto& a : archs) spec.architectures.push_back(architecture_from_string(a));
    spec.policies.clear();
    for (const auto& a : algs) spec.policies.push_back(feed_policy_from_string(a));
    if (!seeds.empty()) spec.seeds = std::move(seeds);
    spec.out_dir = out_dir;
    spec.jobs = jobs;
    spec.write_run_files = !skip_run_files;

    for (Architecture arch : spec.architectures)
        for (FeedPolicy pol : spec.policies)
            condition_config(spec, arch, pol, spec.seeds.front()).validate();

    SweepResult result = run_sweep(spec);
    write_sweep_outputs(spec, result);

    std::cout << render_breadth_depth_table(result) << "\n";
    std::cout << render_ratio_table(result) << "\n";
    if (spec.seeds.size() >= 2) {
        for (const auto& cond : result.conditions) {
            if (cond.per_seed_quality.size() < 2) continue;
            const Dispersion d = seed_quality_dispersion(cond.per_seed_quality);
            std::cout << "seed quality " << to_string(cond.arch) << "/" << to_string(cond.policy)
                      << ": min " << fmt9(d.min) << " max " << fmt9(d.max) << " range "
                      << fmt9(d.range) << "\n";
        }
    } else {
        std::cout << "single seed: cross-seed dispersion outputs omitted\n";
    }
    std::cout << "sweep wall seconds: " << fmt9(result.wall_seconds) << "\n";
    for (const auto& f : result.failures) std::cerr << "run failed: " << f << "\n";
    return result.failures.empty() ? 0 : 1;
}

int cmd_validate(const std::string& csv_path) {
    const auto rows = read_messages_csv(csv_path);
    std::vector<MessageOutcome> outcomes;
    outcomes.reserve(rows.size());
    for (const auto& r : rows) outcomes.push_back(r.outcome);
    const ValidityReport report = validate_outcomes(outcomes);
    std::cout << render_validity_report(report);
    return 0;
}

int cmd_sample_graph(const std::string& input, std::uint32_t target_n, double restart_p,
                     std::uint64_t seed, const std::string& output) {
    LoadStats stats;
    const EdgeSet base = load_edge_list(input, &stats);
    if (base.n_nodes == 0)
        std::cerr << "warning: " << input << " contains no edges\n";
    RandomSource src(seed, Stream::GraphBuild);
    RwrResult rwr = rwr_sample(base, target_n, restart_p, src);

    std::vector<std::uint32_t> degree(rwr.subgraph.n_nodes, 0);
    for (const auto& [a, b] : rwr.subgraph.edges) {
        ++degree[a];
        ++degree[b];
    }
    const std::uint32_t max_degree =
        degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());

    // component count of the undirected sample
    std::vector<std::uint32_t> parent(rwr.subgraph.n_nodes);
    std::iota(parent.begin(), parent.end(), 0u);
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [a, b] : rwr.subgraph.edges) {
        const auto ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
    }
    std::uint32_t components = 0;
    for (std::uint32_t i = 0; i < rwr.subgraph.n_nodes; ++i)
        if (find(i) == i) ++components;

    std::ostringstream os;
    os << "# sampled edge list: nodes=" << rwr.subgraph.n_nodes
       << " edges=" << rwr.subgraph.edges.size() << "\n";
    for (const auto& [a, b] : rwr.subgraph.edges) os << a << ' ' << b << "\n";
    write_file(output, os.str());

    std::cout << "nodes: " << rwr.subgraph.n_nodes << "\n";
    std::cout << "edges: " << rwr.subgraph.edges.size() << "\n";
    std::cout << "max degree: " << max_degree << "\n";
    std::cout << "components: " << components << "\n";
    std::cout << "seedings: " << rwr.seedings << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agent-based simulator of information diffusion across platform architectures"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "Execute one simulation run");
    CommonFlags run_common;
    run_common.attach(run_cmd);
    std::string run_arch, run_alg = "lifo", run_out = "out";
    std::uint64_t run_seed = 1;
    bool run_events = false;
    run_cmd->add_option("--arch", run_arch, "complete | network | tree | layered")->required();
    run_cmd->add_option("--alg", run_alg, "lifo | hot");
    run_cmd->add_option("--seed", run_seed, "64-bit run seed");
    run_cmd->add_option("--out", run_out, "output directory");
    run_cmd->add_flag("--event-log", run_events, "dump the event log (TSV)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Run the factorial architecture x algorithm sweep");
    CommonFlags sweep_common;
    sweep_common.attach(sweep_cmd);
    std::vector<std::string> sweep_archs{"complete", "network", "tree", "layered"};
    std::vector<std::string> sweep_algs{"lifo", "hot"};
    std::vector<std::uint64_t> sweep_seeds;
    std::string sweep_out = "out";
    int sweep_jobs = 0;
    bool sweep_no_run_files = false;
    sweep_cmd->add_option("--archs", sweep_archs, "architectures to include");
    sweep_cmd->add_option("--algs", sweep_algs, "feed policies to include");
    sweep_cmd->add_option("--seeds", sweep_seeds, "seed list (default 1..10)");
    sweep_cmd->add_option("--out", sweep_out, "output directory");
    sweep_cmd->add_option("--jobs", sweep_jobs, "parallel run workers (0 = all cores)");
    sweep_cmd->add_flag("--no-run-files", sweep_no_run_files, "skip per-run messages CSVs");

    // validate
    auto* val_cmd = app.add_subcommand("validate", "Check a messages CSV for construct validity");
    std::string val_path;
    val_cmd->add_option("csv", val_path, "messages CSV path")->required();

    // sample-graph
    auto* sg_cmd = app.add_subcommand("sample-graph", "Random-walk sample of an edge list");
    std::string sg_in, sg_out = "sampled_edges.txt";
    std::uint32_t sg_target = 1000;
    double sg_restart = 0.15;
    std::uint64_t sg_seed = 1;
    sg_cmd->add_option("--input", sg_in, "input edge list")->required();
    sg_cmd->add_option("--target-n", sg_target, "target node count")->required();
    sg_cmd->add_option("--restart-p", sg_restart, "restart probability");
    sg_cmd->add_option("--seed", sg_seed, "sampling seed");
    sg_cmd->add_option("--out", sg_out, "output edge list path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed())
            return cmd_run(run_common, run_arch, run_alg, run_seed, run_out, run_events);
        if (sweep_cmd->parsed())
            return cmd_sweep(sweep_common, sweep_archs, sweep_algs, sweep_seeds, sweep_out,
                             sweep_jobs, sweep_no_run_files);
        if (val_cmd->parsed()) return cmd_validate(val_path);
        if (sg_cmd->parsed())
            return cmd_sample_graph(sg_in, sg_target, sg_restart, sg_seed, sg_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
