#include "platsim/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "platsim/format.hpp"
#include "platsim/io.hpp"

namespace platsim {

SimulationConfig condition_config(const SweepSpec& spec, Architecture arch, FeedPolicy policy,
                                  std::uint64_t seed) {
    SimulationConfig cfg = preset_config(spec.preset, arch);
    ConfigOverrides layered = spec.file.resolved(arch);
    layered.merge(spec.overrides);
    layered.apply(cfg);
    cfg.policy = policy;
    cfg.seed = seed;
    cfg.log_events = false;
    return cfg;
}

const ConditionResult* SweepResult::find(Architecture arch, FeedPolicy policy) const {
    for (const auto& c : conditions)
        if (c.arch == arch && c.policy == policy) return &c;
    return nullptr;
}

SweepResult run_sweep(const SweepSpec& spec) {
    const auto t0 = std::chrono::steady_clock::now();

    struct Job {
        std::size_t condition = 0;
        std::size_t slot = 0;
        SimulationConfig cfg;
    };

    SweepResult result;
    std::vector<Job> jobs;
    for (Architecture arch : spec.architectures) {
        for (FeedPolicy policy : spec.policies) {
            ConditionResult cond;
            cond.arch = arch;
            cond.policy = policy;
            cond.runs.resize(spec.seeds.size());
            const std::size_t ci = result.conditions.size();
            for (std::size_t si = 0; si < spec.seeds.size(); ++si) {
                cond.runs[si].seed = spec.seeds[si];
                jobs.push_back({ci, si, condition_config(spec, arch, policy, spec.seeds[si])});
            }
            result.conditions.push_back(std::move(cond));
        }
    }

#ifdef _OPENMP
    const int width = spec.jobs > 0 ? spec.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(width)
#endif
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(jobs.size()); ++j) {
        const Job& job = jobs[static_cast<std::size_t>(j)];
        RunOutput& slot = result.conditions[job.condition].runs[job.slot];
        try {
            RunResult r = run(job.cfg);
            slot.outcomes = std::move(r.outcomes);
            slot.quality = exposure_weighted_quality(slot.outcomes);
            slot.graph_summary = std::move(r.graph_summary);
            slot.wall_seconds = r.wall_seconds;
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
    }

    for (auto& cond : result.conditions) {
        for (const auto& run_out : cond.runs) {
            if (!run_out.error.empty()) {
                result.failures.push_back(std::string(to_string(cond.arch)) + "/" +
                                          to_string(cond.policy) + " seed " +
                                          std::to_string(run_out.seed) + ": " + run_out.error);
                continue;
            }
            cond.pooled.insert(cond.pooled.end(), run_out.outcomes.begin(),
                               run_out.outcomes.end());
            if (run_out.quality) cond.per_seed_quality.push_back(*run_out.quality);
        }
        if (!cond.pooled.empty()) cond.summary = summarize(cond.pooled);
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

namespace {

std::string opt_fmt(const std::optional<double>& v, int width) {
    char buf[48];
    if (v)
        std::snprintf(buf, sizeof(buf), "%*.6g", width, *v);
    else
        std::snprintf(buf, sizeof(buf), "%*s", width, "-");
    return buf;
}

} // namespace

std::string render_breadth_depth_table(const SweepResult& result) {
    std::ostringstream os;
    os << "platform  alg   metric    breadth      depth_mean   depth_geom   unconditional\n";
    for (const auto& cond : result.conditions) {
        if (!cond.summary) continue;
        for (int m = 0; m < 4; ++m) {
            const auto& ms = cond.summary->by_metric[m];
            char line[200];
            std::snprintf(line, sizeof(line), "%-8s  %-4s  %-8s %11.6g %s %s %s\n",
                          to_string(cond.arch), to_string(cond.policy),
                          to_string(static_cast<Metric>(m)), ms.breadth,
                          opt_fmt(ms.depth_arith, 12).c_str(), opt_fmt(ms.depth_geom, 12).c_str(),
                          opt_fmt(ms.unconditional, 12).c_str());
            os << line;
        }
    }
    return os.str();
}

std::string render_ratio_table(const SweepResult& result) {
    std::ostringstream os;
    os << "hot / lifo ratio of unconditional means\n";
    os << "platform  reach        exposure     reshares     likes\n";
    for (Architecture arch : {Architecture::Tree, Architecture::Layered, Architecture::Network,
                              Architecture::Complete}) {
        const auto* lifo = result.find(arch, FeedPolicy::Lifo);
        const auto* hot = result.find(arch, FeedPolicy::Hot);
        if (!lifo || !hot || !lifo->summary || !hot->summary) continue;
        os << to_string(arch);
        for (std::size_t pad = std::string(to_string(arch)).size(); pad < 10; ++pad) os << ' ';
        for (int m = 0; m < 4; ++m) {
            std::optional<double> ratio;
            try {
                ratio = hot_lifo_ratio(*hot->summary, *lifo->summary,
                                       static_cast<Metric>(m));
            } catch (const std::invalid_argument&) {
            }
            os << opt_fmt(ratio, 12) << ' ';
        }
        os << "\n";
    }
    return os.str();
}

std::string render_seed_quality_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "platform,algorithm,seed,exposure_weighted_quality\n";
    for (const auto& cond : result.conditions) {
        for (const auto& run_out : cond.runs) {
            if (!run_out.error.empty()) continue;
            os << to_string(cond.arch) << ',' << to_string(cond.policy) << ',' << run_out.seed
               << ',' << (run_out.quality ? fmt9(*run_out.quality) : std::string("-")) << "\n";
        }
    }
    return os.str();
}

std::string render_exposure_scatter_csv(const ConditionResult& cond) {
    std::ostringstream os;
    os << "seed,msg_id,alpha,exposure\n";
    for (const auto& run_out : cond.runs) {
        if (!run_out.error.empty()) continue;
        for (const auto& o : run_out.outcomes)
            if (o.exposure > 0)
                os << run_out.seed << ',' << o.id << ',' << fmt9(o.quality) << ',' << o.exposure
                   << "\n";
    }
    return os.str();
}

std::string render_conditions_json(const SweepResult& result) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& cond : result.conditions) {
        nlohmann::json c;
        c["platform"] = to_string(cond.arch);
        c["algorithm"] = to_string(cond.policy);
        nlohmann::json seeds = nlohmann::json::array();
        for (const auto& run_out : cond.runs)
            if (run_out.error.empty()) seeds.push_back(run_out.seed);
        c["seeds"] = std::move(seeds);
        if (cond.summary) {
            c["n_messages"] = cond.summary->n_messages;
            nlohmann::json metrics;
            for (int m = 0; m < 4; ++m) {
                const auto& ms = cond.summary->by_metric[m];
                nlohmann::json one;
                one["breadth"] = ms.breadth;
                if (ms.depth_arith) one["depth_arith"] = *ms.depth_arith;
                if (ms.depth_geom) one["depth_geom"] = *ms.depth_geom;
                if (ms.unconditional) one["unconditional_mean"] = *ms.unconditional;
                metrics[to_string(static_cast<Metric>(m))] = std::move(one);
            }
            c["metrics"] = std::move(metrics);
            if (cond.summary->exposure_weighted_quality)
                c["exposure_weighted_quality"] = *cond.summary->exposure_weighted_quality;
        }
        c["per_seed_quality"] = cond.per_seed_quality;
        arr.push_back(std::move(c));
    }
    return arr.dump(2) + "\n";
}

void write_sweep_outputs(const SweepSpec& spec, const SweepResult& result) {
    namespace fs = std::filesystem;
    if (spec.out_dir.empty()) return;
    fs::create_directories(spec.out_dir);
    const fs::path dir(spec.out_dir);

    for (const auto& cond : result.conditions) {
        const std::string tag =
            std::string(to_string(cond.arch)) + "_" + to_string(cond.policy);
        if (spec.write_run_files) {
            for (const auto& run_out : cond.runs) {
                if (!run_out.error.empty()) continue;
                const auto name = "messages_" + tag + "_seed" + std::to_string(run_out.seed) + ".csv";
                write_file((dir / name).string(),
                           render_messages_csv(run_out.seed, cond.arch, cond.policy,
                                               run_out.outcomes));
            }
        }
        if (cond.summary) {
            std::string text = render_condition_summary(to_string(cond.arch),
                                                        to_string(cond.policy), *cond.summary);
            text += "\n" + render_validity_report(validate_outcomes(cond.pooled));
            write_file((dir / ("summary_" + tag + ".txt")).string(), text);
        }
        write_file((dir / ("exposure_scatter_" + tag + ".csv")).string(),
                   render_exposure_scatter_csv(cond));
    }

    write_file((dir / "breadth_depth.txt").string(), render_breadth_depth_table(result));
    write_file((dir / "ratios.txt").string(), render_ratio_table(result));
    write_file((dir / "seed_quality.csv").string(), render_seed_quality_csv(result));
    write_file((dir / "conditions.json").string(), render_conditions_json(result));
    if (!result.failures.empty()) {
        std::string txt;
        for (const auto& f : result.failures) txt += f + "\n";
        write_file((dir / "failures.txt").string(), txt);
    }
}

} // namespace platsim
