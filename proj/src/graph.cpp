#include "platsim/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace platsim {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

void sort_dedup(std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

} // namespace

const char* to_string(Architecture arch) {
    switch (arch) {
    case Architecture::Complete: return "complete";
    case Architecture::Network: return "network";
    case Architecture::Tree: return "tree";
    case Architecture::Layered: return "layered";
    }
    return "?";
}

Architecture architecture_from_string(const std::string& s) {
    if (s == "complete") return Architecture::Complete;
    if (s == "network") return Architecture::Network;
    if (s == "tree") return Architecture::Tree;
    if (s == "layered") return Architecture::Layered;
    throw std::invalid_argument("unknown architecture: " + s);
}

EdgeSet load_edge_list(const std::string& path, LoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);

    LoadStats local;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ++local.lines;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::uint64_t a = 0, b = 0;
        if (!(ls >> a >> b)) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed edge line: \"" + line + "\"");
        }
        std::string extra;
        if (ls >> extra) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected two integers, got extra token \"" + extra + "\"");
        }
        if (a == b) {
            ++local.self_loops;
            continue;
        }
        raw.emplace_back(a, b);
    }

    // Dense remap in ascending original-id order.
    std::vector<std::uint64_t> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& [a, b] : raw) {
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto dense = [&](std::uint64_t id) {
        return static_cast<std::uint32_t>(
            std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };

    EdgeSet out;
    out.n_nodes = static_cast<std::uint32_t>(ids.size());
    out.edges.reserve(raw.size());
    for (const auto& [a, b] : raw) out.edges.emplace_back(dense(a), dense(b));
    const std::size_t before = out.edges.size();
    sort_dedup(out.edges);
    local.duplicates = before - out.edges.size();
    if (stats) *stats = local;
    return out;
}

RwrResult rwr_sample(const EdgeSet& edges, std::uint32_t target_n, double restart_p,
                     RandomSource& src) {
    const std::uint32_t n = edges.n_nodes;
    if (n == 0) throw std::invalid_argument("rwr_sample: empty graph");
    if (target_n > n)
        throw std::invalid_argument("rwr_sample: target_n " + std::to_string(target_n) +
                                    " exceeds node count " + std::to_string(n));
    if (target_n == 0) throw std::invalid_argument("rwr_sample: target_n must be positive");

    // Undirected adjacency.
    std::vector<std::uint32_t> deg(n, 0);
    for (const auto& [a, b] : edges.edges) {
        ++deg[a];
        ++deg[b];
    }
    std::vector<std::uint64_t> off(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i) off[i + 1] = off[i] + deg[i];
    std::vector<std::uint32_t> adj(off[n]);
    std::vector<std::uint64_t> cursor(off.begin(), off.end() - 1);
    for (const auto& [a, b] : edges.edges) {
        adj[cursor[a]++] = b;
        adj[cursor[b]++] = a;
    }

    // Union-find over the undirected view gives an exact exhaustion test
    // for the start node's component.
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [a, b] : edges.edges) {
        const auto ra = find(a), rb = find(b);
        if (ra != rb) parent[ra] = rb;
    }
    std::vector<std::uint32_t> comp_unvisited(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) ++comp_unvisited[find(i)];

    std::vector<bool> visited(n, false);
    std::uint32_t visited_count = 0;
    RwrResult result;

    auto visit = [&](std::uint32_t v) {
        if (!visited[v]) {
            visited[v] = true;
            ++visited_count;
            --comp_unvisited[find(v)];
        }
    };

    std::uint32_t start = static_cast<std::uint32_t>(src.pick(n));
    std::uint32_t current = start;
    result.seedings = 1;
    visit(start);

    while (visited_count < target_n) {
        if (comp_unvisited[find(start)] == 0) {
            // Component exhausted: re-seed uniformly among unvisited nodes.
            std::vector<std::uint32_t> unvisited;
            unvisited.reserve(n - visited_count);
            for (std::uint32_t i = 0; i < n; ++i)
                if (!visited[i]) unvisited.push_back(i);
            start = unvisited[src.pick(unvisited.size())];
            current = start;
            ++result.seedings;
            visit(start);
            continue;
        }
        if (src.bernoulli(restart_p)) {
            current = start;
            continue;
        }
        const auto nb = off[current + 1] - off[current];
        if (nb == 0) continue; // isolated start; exhaustion check re-seeds
        current = adj[off[current] + src.pick(static_cast<std::size_t>(nb))];
        visit(current);
    }

    // Induced subgraph, ids remapped in ascending original order.
    std::vector<std::uint32_t> nodes;
    nodes.reserve(target_n);
    for (std::uint32_t i = 0; i < n; ++i)
        if (visited[i]) nodes.push_back(i);
    std::vector<std::uint32_t> remap(n, UINT32_MAX);
    for (std::uint32_t i = 0; i < nodes.size(); ++i) remap[nodes[i]] = i;

    result.subgraph.n_nodes = static_cast<std::uint32_t>(nodes.size());
    for (const auto& [a, b] : edges.edges)
        if (remap[a] != UINT32_MAX && remap[b] != UINT32_MAX)
            result.subgraph.edges.emplace_back(remap[a], remap[b]);
    return result;
}

EdgeSet synth_scale_free(std::uint32_t n, std::uint32_t attach_m, RandomSource& src) {
    if (attach_m < 1 || n <= attach_m)
        throw std::invalid_argument("synth_scale_free: require n > attach_m >= 1");

    EdgeSet out;
    out.n_nodes = n;
    std::vector<std::uint32_t> endpoints; // each edge contributes both ends
    endpoints.reserve(2ull * (attach_m * static_cast<std::uint64_t>(n)));

    for (std::uint32_t i = 0; i < attach_m; ++i) {
        for (std::uint32_t j = i + 1; j < attach_m; ++j) {
            out.edges.emplace_back(i, j);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    }

    std::vector<std::uint32_t> targets;
    for (std::uint32_t node = attach_m; node < n; ++node) {
        targets.clear();
        while (targets.size() < attach_m) {
            std::uint32_t t;
            if (endpoints.empty()) {
                t = static_cast<std::uint32_t>(src.pick(node));
            } else {
                t = endpoints[src.pick(endpoints.size())];
            }
            if (std::find(targets.begin(), targets.end(), t) == targets.end())
                targets.push_back(t);
        }
        for (std::uint32_t t : targets) {
            out.edges.emplace_back(t, node); // old -> new: hubs deliver to followers
            endpoints.push_back(t);
            endpoints.push_back(node);
        }
    }
    sort_dedup(out.edges);
    return out;
}

EdgeSet trim_edges(EdgeSet edges, std::uint64_t target_edges, RandomSource& src) {
    if (edges.edges.size() <= target_edges) return edges;
    auto& e = edges.edges;
    for (std::uint64_t i = 0; i < target_edges; ++i) {
        const std::uint64_t j = i + src.pick(e.size() - i);
        std::swap(e[i], e[j]);
    }
    e.resize(target_edges);
    sort_dedup(e);
    return edges;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>>
sample_distinct_pairs(std::uint32_t a_count, std::uint32_t b_count, std::uint64_t count,
                      std::uint32_t cap, RandomSource& src) {
    const std::uint64_t per_a = std::min<std::uint64_t>(cap, b_count);
    const std::uint64_t feasible = per_a * a_count;
    if (count > feasible)
        throw std::invalid_argument("sample_distinct_pairs: " + std::to_string(count) +
                                    " pairs infeasible (max " + std::to_string(feasible) + ")");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    if (count == 0 || a_count == 0 || b_count == 0) return out;
    out.reserve(count);

    std::vector<std::vector<std::uint32_t>> chosen(a_count); // sorted per a
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_limit = 50 * count + 1000;
    while (out.size() < count && attempts < attempt_limit) {
        ++attempts;
        const auto a = static_cast<std::uint32_t>(src.pick(a_count));
        auto& v = chosen[a];
        if (v.size() >= per_a) continue;
        const auto b = static_cast<std::uint32_t>(src.pick(b_count));
        auto it = std::lower_bound(v.begin(), v.end(), b);
        if (it != v.end() && *it == b) continue;
        v.insert(it, b);
        out.emplace_back(a, b);
    }

    if (out.size() < count) {
        // Near capacity rejection stalls; finish from a shuffled list of
        // free (a, slot) capacity slots, drawing b from each a's unused set.
        std::vector<std::uint32_t> slots;
        for (std::uint32_t a = 0; a < a_count; ++a)
            for (std::uint64_t s = chosen[a].size(); s < per_a; ++s) slots.push_back(a);
        for (std::size_t i = 0; i + 1 < slots.size(); ++i)
            std::swap(slots[i], slots[i + src.pick(slots.size() - i)]);
        for (std::uint32_t a : slots) {
            if (out.size() == count) break;
            auto& v = chosen[a];
            // complement of v in [0, b_count)
            std::vector<std::uint32_t> free_b;
            free_b.reserve(b_count - v.size());
            std::size_t k = 0;
            for (std::uint32_t b = 0; b < b_count; ++b) {
                if (k < v.size() && v[k] == b) {
                    ++k;
                    continue;
                }
                free_b.push_back(b);
            }
            const auto b = free_b[src.pick(free_b.size())];
            v.insert(std::lower_bound(v.begin(), v.end(), b), b);
            out.emplace_back(a, b);
        }
    }
    return out;
}

void PlatformGraph::Csr::build(std::uint32_t n,
                               std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    offsets.assign(n + 1, 0);
    for (const auto& [a, b] : pairs) {
        (void)b;
        ++offsets[a + 1];
    }
    for (std::uint32_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    targets.resize(pairs.size());
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [a, b] : pairs) targets[cursor[a]++] = b;
}

std::span<const AgentId> PlatformGraph::user_delivery(AgentId u) const {
    return user_delivery_.row(u);
}
std::span<const GroupId> PlatformGraph::user_groups(AgentId u) const {
    return user_groups_.row(u);
}
std::span<const std::uint32_t> PlatformGraph::user_pages(AgentId u) const {
    return user_pages_.row(u);
}
std::span<const std::uint32_t> PlatformGraph::page_followers(std::uint32_t p) const {
    return page_followers_.row(p);
}
std::span<const GroupId> PlatformGraph::page_admin_groups(std::uint32_t p) const {
    return page_admin_groups_.row(p);
}

std::uint64_t PlatformGraph::reported_edge_count() const {
    if (implicit_complete())
        return static_cast<std::uint64_t>(n_users_) * (n_users_ - 1);
    return counts_.total();
}

std::string PlatformGraph::summary() const {
    std::ostringstream os;
    os << "architecture: " << to_string(arch_) << "\n";
    os << "nodes: users=" << n_users_ << " pages=" << n_pages_ << " groups=" << n_groups_ << "\n";
    os << "edges: user_user=" << (implicit_complete() ? reported_edge_count() : counts_.user_user)
       << (implicit_complete() ? " (implicit)" : "") << " page_page=" << counts_.page_page
       << " user_page=" << counts_.user_page << " user_group=" << counts_.user_group
       << " page_group=" << counts_.page_group << "\n";
    os << "edges total: " << reported_edge_count() << "\n";
    return os.str();
}

PlatformGraph PlatformGraph::build_complete(std::uint32_t n_users) {
    if (n_users < 2) throw std::invalid_argument("build_complete: need at least 2 users");
    PlatformGraph g;
    g.arch_ = Architecture::Complete;
    g.n_users_ = n_users;
    return g;
}

PlatformGraph PlatformGraph::build_network(std::uint32_t n_users, const EdgeSet& edges) {
    for (const auto& [a, b] : edges.edges)
        if (a >= n_users || b >= n_users)
            throw std::invalid_argument("build_network: edge references node id >= n_users");
    PlatformGraph g;
    g.arch_ = Architecture::Network;
    g.n_users_ = n_users;
    auto pairs = edges.edges;
    pairs.erase(std::remove_if(pairs.begin(), pairs.end(),
                               [](const auto& e) { return e.first == e.second; }),
                pairs.end());
    g.user_delivery_.build(n_users, std::move(pairs));
    g.counts_.user_user = g.user_delivery_.targets.size();
    return g;
}

PlatformGraph PlatformGraph::build_tree(std::uint32_t n_users, std::uint32_t n_groups,
                                        std::uint64_t membership_edges,
                                        std::uint32_t max_affiliations, RandomSource& src) {
    if (n_groups == 0) throw std::invalid_argument("build_tree: need at least one group");
    PlatformGraph g;
    g.arch_ = Architecture::Tree;
    g.n_users_ = n_users;
    g.n_groups_ = n_groups;
    auto memberships =
        sample_distinct_pairs(n_users, n_groups, membership_edges, max_affiliations, src);
    g.user_groups_.build(n_users, std::move(memberships));
    g.counts_.user_group = membership_edges;
    return g;
}

PlatformGraph PlatformGraph::build_layered(std::uint32_t n_users, std::uint32_t n_pages,
                                           std::uint32_t n_groups, const EdgeSet& user_edges,
                                           const EdgeSet& page_edges, std::uint64_t edge_budget,
                                           const LayeredShares& shares,
                                           std::uint32_t max_affiliations, RandomSource& src) {
    auto clip = [](std::uint64_t want, std::uint64_t cap) { return std::min(want, cap); };
    auto share_of = [&](double s) {
        return static_cast<std::uint64_t>(s * static_cast<double>(edge_budget) + 0.5);
    };

    const std::uint64_t cap_pp =
        n_pages > 1 ? static_cast<std::uint64_t>(n_pages) * (n_pages - 1) : 0;
    const std::uint64_t cap_up =
        static_cast<std::uint64_t>(n_users) * std::min<std::uint64_t>(max_affiliations, n_pages);
    const std::uint64_t cap_ug =
        static_cast<std::uint64_t>(n_users) * std::min<std::uint64_t>(max_affiliations, n_groups);
    const std::uint64_t cap_pg = static_cast<std::uint64_t>(n_pages) * n_groups;

    std::uint64_t t_pp = clip(share_of(shares.page_page), cap_pp);
    std::uint64_t t_up = clip(share_of(shares.user_page), cap_up);
    std::uint64_t t_ug = clip(share_of(shares.user_group), cap_ug);
    std::uint64_t t_pg = clip(share_of(shares.page_group), cap_pg);
    const std::uint64_t fixed = t_pp + t_up + t_ug + t_pg;
    if (fixed > edge_budget)
        throw std::invalid_argument("build_layered: relation shares exceed edge budget");
    const std::uint64_t t_friend = edge_budget - fixed;
    const std::uint64_t cap_friend =
        n_users > 1 ? static_cast<std::uint64_t>(n_users) * (n_users - 1) / 2 : 0;
    if (t_friend > cap_friend)
        throw std::invalid_argument("build_layered: friendship budget " +
                                    std::to_string(t_friend) + " exceeds distinct pair count " +
                                    std::to_string(cap_friend));

    // Friendships: undirected dedup of the sampled user graph, trimmed or
    // padded with uniform random new pairs to hit the target exactly.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> friends;
    std::unordered_set<std::uint64_t> friend_keys;
    for (const auto& [a, b] : user_edges.edges) {
        if (a == b || a >= n_users || b >= n_users) continue;
        const auto lo = std::min(a, b), hi = std::max(a, b);
        if (friend_keys.insert(pair_key(lo, hi)).second) friends.emplace_back(lo, hi);
    }
    if (friends.size() > t_friend) {
        for (std::uint64_t i = 0; i < t_friend; ++i) {
            const std::uint64_t j = i + src.pick(friends.size() - i);
            std::swap(friends[i], friends[j]);
        }
        friends.resize(t_friend);
    } else {
        std::uint64_t guard = 0;
        while (friends.size() < t_friend) {
            if (++guard > 200 * t_friend + 10000)
                throw std::runtime_error("build_layered: friendship padding stalled");
            const auto a = static_cast<std::uint32_t>(src.pick(n_users));
            const auto b = static_cast<std::uint32_t>(src.pick(n_users));
            if (a == b) continue;
            const auto lo = std::min(a, b), hi = std::max(a, b);
            if (friend_keys.insert(pair_key(lo, hi)).second) friends.emplace_back(lo, hi);
        }
    }

    // Page-page follows: directed dedup of the sampled page graph,
    // trimmed or padded the same way.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> follows;
    std::unordered_set<std::uint64_t> follow_keys;
    for (const auto& [a, b] : page_edges.edges) {
        if (a == b || a >= n_pages || b >= n_pages) continue;
        if (follow_keys.insert(pair_key(a, b)).second) follows.emplace_back(a, b);
    }
    if (follows.size() > t_pp) {
        for (std::uint64_t i = 0; i < t_pp; ++i) {
            const std::uint64_t j = i + src.pick(follows.size() - i);
            std::swap(follows[i], follows[j]);
        }
        follows.resize(t_pp);
    } else {
        std::uint64_t guard = 0;
        while (follows.size() < t_pp) {
            if (++guard > 200 * t_pp + 10000)
                throw std::runtime_error("build_layered: page follow padding stalled");
            const auto a = static_cast<std::uint32_t>(src.pick(n_pages));
            const auto b = static_cast<std::uint32_t>(src.pick(n_pages));
            if (a == b) continue;
            if (follow_keys.insert(pair_key(a, b)).second) follows.emplace_back(a, b);
        }
    }

    auto user_page = sample_distinct_pairs(n_users, n_pages, t_up, max_affiliations, src);
    auto user_group = sample_distinct_pairs(n_users, n_groups, t_ug, max_affiliations, src);
    auto page_group =
        sample_distinct_pairs(n_pages, n_groups, t_pg, n_groups == 0 ? 0 : n_groups, src);

    PlatformGraph g;
    g.arch_ = Architecture::Layered;
    g.n_users_ = n_users;
    g.n_pages_ = n_pages;
    g.n_groups_ = n_groups;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> both;
    both.reserve(friends.size() * 2);
    for (const auto& [a, b] : friends) {
        both.emplace_back(a, b);
        both.emplace_back(b, a);
    }
    g.user_delivery_.build(n_users, std::move(both));
    g.counts_.user_user = friends.size();

    // page_followers maps a page to the pages following it: follow (a, b)
    // means a follows b, so b delivers to a.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> follower_pairs;
    follower_pairs.reserve(follows.size());
    for (const auto& [a, b] : follows) follower_pairs.emplace_back(b, a);
    g.page_followers_.build(n_pages, std::move(follower_pairs));
    g.counts_.page_page = follows.size();

    g.user_pages_.build(n_users, std::move(user_page));
    g.counts_.user_page = t_up;
    g.user_groups_.build(n_users, std::move(user_group));
    g.counts_.user_group = t_ug;
    g.page_admin_groups_.build(n_pages, std::move(page_group));
    g.counts_.page_group = t_pg;
    return g;
}

} // namespace platsim
