#include "platsim/config.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace platsim {

Preset preset_from_string(const std::string& s) {
    if (s == "paper") return Preset::Paper;
    if (s == "desk") return Preset::Desk;
    throw std::invalid_argument("unknown preset: " + s);
}

SimulationConfig preset_config(Preset preset, Architecture arch) {
    SimulationConfig cfg;
    cfg.architecture = arch;
    if (preset == Preset::Paper) {
        cfg.steps = 10000;
        cfg.synth_source_n = 20000;
        cfg.synth_attach = 114;
        switch (arch) {
        case Architecture::Complete:
            cfg.n_users = 10000;
            break;
        case Architecture::Network:
            cfg.n_users = 10000;
            cfg.target_edges = 2281390;
            break;
        case Architecture::Tree:
            cfg.n_users = 10000;
            cfg.n_groups = 100;
            cfg.membership_edges = 2000;
            break;
        case Architecture::Layered:
            cfg.n_users = 9000;
            cfg.n_pages = 1000;
            cfg.n_groups = 100;
            cfg.edge_budget = 1839636;
            break;
        }
    } else {
        cfg.steps = 1000;
        cfg.synth_source_n = 2000;
        cfg.synth_attach = 12;
        switch (arch) {
        case Architecture::Complete:
            cfg.n_users = 1000;
            break;
        case Architecture::Network:
            cfg.n_users = 1000;
            cfg.target_edges = 0;
            break;
        case Architecture::Tree:
            cfg.n_users = 1000;
            cfg.n_groups = 20;
            cfg.membership_edges = 200;
            break;
        case Architecture::Layered:
            cfg.n_users = 900;
            cfg.n_pages = 100;
            cfg.n_groups = 20;
            cfg.edge_budget = 40000;
            break;
        }
    }
    return cfg;
}

void ConfigOverrides::apply(SimulationConfig& cfg) const {
    if (n_users) cfg.n_users = *n_users;
    if (n_pages) cfg.n_pages = *n_pages;
    if (n_groups) cfg.n_groups = *n_groups;
    if (steps) cfg.steps = *steps;
    if (capacity) cfg.capacity = *capacity;
    if (max_affiliations) cfg.max_affiliations = *max_affiliations;
    if (synth_source_n) cfg.synth_source_n = *synth_source_n;
    if (synth_attach) cfg.synth_attach = *synth_attach;
    if (p_post) cfg.p_post = *p_post;
    if (p_share) cfg.p_share = *p_share;
    if (triangular_mode) cfg.triangular_mode = *triangular_mode;
    if (rwr_restart_p) cfg.rwr_restart_p = *rwr_restart_p;
    if (share_friendships) cfg.shares.friendships = *share_friendships;
    if (share_page_page) cfg.shares.page_page = *share_page_page;
    if (share_user_page) cfg.shares.user_page = *share_user_page;
    if (share_user_group) cfg.shares.user_group = *share_user_group;
    if (share_page_group) cfg.shares.page_group = *share_page_group;
    if (target_edges) cfg.target_edges = *target_edges;
    if (membership_edges) cfg.membership_edges = *membership_edges;
    if (edge_budget) cfg.edge_budget = *edge_budget;
    if (graph_file) cfg.graph_file = *graph_file;
    if (flip_edges) cfg.flip_edges = *flip_edges;
    if (parallel_delivery) cfg.parallel_delivery = *parallel_delivery;
    if (count_page_engagement) cfg.count_page_engagement = *count_page_engagement;
}

void ConfigOverrides::merge(const ConfigOverrides& o) {
    auto take = [](auto& mine, const auto& theirs) {
        if (theirs) mine = theirs;
    };
    take(n_users, o.n_users);
    take(n_pages, o.n_pages);
    take(n_groups, o.n_groups);
    take(steps, o.steps);
    take(capacity, o.capacity);
    take(max_affiliations, o.max_affiliations);
    take(synth_source_n, o.synth_source_n);
    take(synth_attach, o.synth_attach);
    take(p_post, o.p_post);
    take(p_share, o.p_share);
    take(triangular_mode, o.triangular_mode);
    take(rwr_restart_p, o.rwr_restart_p);
    take(share_friendships, o.share_friendships);
    take(share_page_page, o.share_page_page);
    take(share_user_page, o.share_user_page);
    take(share_user_group, o.share_user_group);
    take(share_page_group, o.share_page_group);
    take(target_edges, o.target_edges);
    take(membership_edges, o.membership_edges);
    take(edge_budget, o.edge_budget);
    take(graph_file, o.graph_file);
    take(flip_edges, o.flip_edges);
    take(parallel_delivery, o.parallel_delivery);
    take(count_page_engagement, o.count_page_engagement);
}

ConfigOverrides ConfigFile::resolved(Architecture arch) const {
    ConfigOverrides out = global;
    const auto it = per_arch.find(arch);
    if (it != per_arch.end()) out.merge(it->second);
    return out;
}

namespace {

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::runtime_error("config key \"" + key + "\": expected boolean, got \"" + v + "\"");
}

void set_key(ConfigOverrides& o, const std::string& key, const std::string& value) {
    auto u32 = [&] { return static_cast<std::uint32_t>(std::stoul(value)); };
    auto u64 = [&] { return static_cast<std::uint64_t>(std::stoull(value)); };
    auto real = [&] { return std::stod(value); };
    if (key == "n_users") o.n_users = u32();
    else if (key == "n_pages") o.n_pages = u32();
    else if (key == "n_groups") o.n_groups = u32();
    else if (key == "steps") o.steps = u32();
    else if (key == "capacity") o.capacity = u32();
    else if (key == "max_affiliations") o.max_affiliations = u32();
    else if (key == "synth_source_n") o.synth_source_n = u32();
    else if (key == "synth_attach") o.synth_attach = u32();
    else if (key == "p_post") o.p_post = real();
    else if (key == "p_share") o.p_share = real();
    else if (key == "triangular_mode") o.triangular_mode = real();
    else if (key == "rwr_restart_p") o.rwr_restart_p = real();
    else if (key == "share_friendships") o.share_friendships = real();
    else if (key == "share_page_page") o.share_page_page = real();
    else if (key == "share_user_page") o.share_user_page = real();
    else if (key == "share_user_group") o.share_user_group = real();
    else if (key == "share_page_group") o.share_page_group = real();
    else if (key == "target_edges") o.target_edges = u64();
    else if (key == "membership_edges") o.membership_edges = u64();
    else if (key == "edge_budget") o.edge_budget = u64();
    else if (key == "graph_file") o.graph_file = value;
    else if (key == "flip_edges") o.flip_edges = parse_bool(value, key);
    else if (key == "parallel_delivery") o.parallel_delivery = parse_bool(value, key);
    else if (key == "count_page_engagement") o.count_page_engagement = parse_bool(value, key);
    else throw std::runtime_error("unknown config key: " + key);
}

std::string strip(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

ConfigFile load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ConfigFile file;
    ConfigOverrides* current = &file.global;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = strip(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": unterminated section header");
            const auto arch = architecture_from_string(strip(line.substr(1, line.size() - 2)));
            current = &file.per_arch[arch];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected key = value");
        try {
            set_key(*current, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return file;
}

} // namespace platsim
