#pragma once

#include <map>
#include <optional>
#include <string>

#include "platsim/engine.hpp"

namespace platsim {

enum class Preset { Paper, Desk };

Preset preset_from_string(const std::string& s);

/// Fully resolved defaults for one architecture under a preset. Paper
/// preset mirrors the calibration scale (10,000 actors, 10,000 steps);
/// desk preset is the CI scale (1,000 actors, 1,000 steps).
SimulationConfig preset_config(Preset preset, Architecture arch);

/// Sparse settings layer: values read from a config file or CLI flags,
/// applied on top of a preset. File values apply first, flags last.
struct ConfigOverrides {
    std::optional<std::uint32_t> n_users, n_pages, n_groups, steps, capacity, max_affiliations;
    std::optional<std::uint32_t> synth_source_n, synth_attach;
    std::optional<double> p_post, p_share, triangular_mode, rwr_restart_p;
    std::optional<double> share_friendships, share_page_page, share_user_page, share_user_group,
        share_page_group;
    std::optional<std::uint64_t> target_edges, membership_edges, edge_budget;
    std::optional<std::string> graph_file;
    std::optional<bool> flip_edges, parallel_delivery, count_page_engagement;

    void apply(SimulationConfig& cfg) const;
    /// Merges other on top of this (other wins where set).
    void merge(const ConfigOverrides& other);
};

/// Flat key = value config file with an optional [architecture] section
/// per architecture; section values apply only when that architecture is
/// selected. '#' and ';' start comments. Unknown keys are an error.
struct ConfigFile {
    ConfigOverrides global;
    std::map<Architecture, ConfigOverrides> per_arch;

    ConfigOverrides resolved(Architecture arch) const;
};

ConfigFile load_config_file(const std::string& path);

} // namespace platsim
