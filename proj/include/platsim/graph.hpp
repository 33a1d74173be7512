#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "platsim/domain.hpp"
#include "platsim/rng.hpp"

namespace platsim {

enum class Architecture { Complete, Network, Tree, Layered };

const char* to_string(Architecture arch);
Architecture architecture_from_string(const std::string& s);

enum class NodeKind { User, Page, Group };

/// Directed edge multiset with duplicates removed and node ids dense in
/// [0, n_nodes). The container for everything that flows between the
/// loader, the samplers and the builders.
struct EdgeSet {
    std::uint32_t n_nodes = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

struct LoadStats {
    std::uint64_t lines = 0;
    std::uint64_t duplicates = 0;
    std::uint64_t self_loops = 0;
};

/// Reads a SNAP-style edge list: one "src dst" integer pair per line,
/// '#' starts a comment line. Ids are remapped to [0, n) in ascending
/// original-id order; duplicate edges and self-loops are dropped.
/// Throws std::runtime_error naming the line on malformed input.
EdgeSet load_edge_list(const std::string& path, LoadStats* stats = nullptr);

struct RwrResult {
    EdgeSet subgraph;       // induced on visited nodes, original directions
    std::uint32_t seedings = 0; // walk (re)placements, including the initial one
};

/// Random-walk sampling with restarts over the undirected view of
/// `edges`. Each step returns to the walk's start node with probability
/// restart_p; the walk ends once target_n distinct nodes are visited.
/// When the start's component is exhausted the walk is re-seeded on a
/// uniformly chosen unvisited node. Sampled node ids are remapped to
/// [0, target_n) in ascending original order. The undirected view of the
/// result has at most `seedings` components.
RwrResult rwr_sample(const EdgeSet& edges, std::uint32_t target_n, double restart_p,
                     RandomSource& src);

/// Preferential-attachment graph: a complete clique on the first
/// attach_m nodes, then each arrival attaches to attach_m distinct
/// existing nodes picked proportionally to degree. Edges are oriented
/// old -> new, so high-degree nodes deliver to many followers.
/// Edge count = attach_m * (n - attach_m) + attach_m * (attach_m - 1) / 2.
EdgeSet synth_scale_free(std::uint32_t n, std::uint32_t attach_m, RandomSource& src);

/// Uniform random subset of target_edges edges (node set unchanged).
/// No-op when the set is already at or below the target.
EdgeSet trim_edges(EdgeSet edges, std::uint64_t target_edges, RandomSource& src);

/// Budget split for the layered architecture's five relation types,
/// as fractions of the total edge budget. Targets for capped relations
/// are clipped to feasibility and the slack is folded into friendships.
struct LayeredShares {
    double friendships = 0.700;
    double page_page = 0.100;
    double user_page = 0.150;
    double user_group = 0.045;
    double page_group = 0.005;
};

struct RelationCounts {
    std::uint64_t user_user = 0;  // delivery pairs; layered counts each friendship once
    std::uint64_t page_page = 0;
    std::uint64_t user_page = 0;
    std::uint64_t user_group = 0;
    std::uint64_t page_group = 0;

    std::uint64_t total() const {
        return user_user + page_page + user_page + user_group + page_group;
    }
};

/// Typed multi-relation platform graph. Users and pages share one actor
/// id space (users first, pages after); groups are indexed separately
/// and never activate. The complete topology is held implicitly: no
/// adjacency is materialized and delivery neighbors of u are all users
/// except u.
class PlatformGraph {
public:
    Architecture architecture() const { return arch_; }
    bool implicit_complete() const { return arch_ == Architecture::Complete; }

    std::uint32_t n_users() const { return n_users_; }
    std::uint32_t n_pages() const { return n_pages_; }
    std::uint32_t n_groups() const { return n_groups_; }
    std::uint32_t n_actors() const { return n_users_ + n_pages_; }

    bool is_page(AgentId actor) const { return actor >= n_users_; }
    std::uint32_t page_index(AgentId actor) const { return actor - n_users_; }

    /// Delivery targets of user u (empty for Complete: implicit all-but-u).
    std::span<const AgentId> user_delivery(AgentId u) const;
    /// Groups user u is a member of (sorted).
    std::span<const GroupId> user_groups(AgentId u) const;
    /// Pages user u follows, as page indices (sorted).
    std::span<const std::uint32_t> user_pages(AgentId u) const;
    /// Pages following page p, as page indices (sorted).
    std::span<const std::uint32_t> page_followers(std::uint32_t p) const;
    /// Groups page p administers (sorted).
    std::span<const GroupId> page_admin_groups(std::uint32_t p) const;

    const RelationCounts& relation_counts() const { return counts_; }
    /// Reported delivery edge count; n*(n-1) for the implicit complete graph.
    std::uint64_t reported_edge_count() const;

    /// Plain-text block: node counts per kind, edge counts per relation.
    std::string summary() const;

    static PlatformGraph build_complete(std::uint32_t n_users);
    static PlatformGraph build_network(std::uint32_t n_users, const EdgeSet& edges);
    static PlatformGraph build_tree(std::uint32_t n_users, std::uint32_t n_groups,
                                    std::uint64_t membership_edges, std::uint32_t max_affiliations,
                                    RandomSource& src);
    static PlatformGraph build_layered(std::uint32_t n_users, std::uint32_t n_pages,
                                       std::uint32_t n_groups, const EdgeSet& user_edges,
                                       const EdgeSet& page_edges, std::uint64_t edge_budget,
                                       const LayeredShares& shares, std::uint32_t max_affiliations,
                                       RandomSource& src);

private:
    struct Csr {
        std::vector<std::uint64_t> offsets;
        std::vector<std::uint32_t> targets;

        void build(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs);
        std::span<const std::uint32_t> row(std::uint32_t i) const {
            if (offsets.empty()) return {};
            return {targets.data() + offsets[i], targets.data() + offsets[i + 1]};
        }
    };

    Architecture arch_ = Architecture::Complete;
    std::uint32_t n_users_ = 0;
    std::uint32_t n_pages_ = 0;
    std::uint32_t n_groups_ = 0;
    Csr user_delivery_;
    Csr user_groups_;
    Csr user_pages_;
    Csr page_followers_;
    Csr page_admin_groups_;
    RelationCounts counts_;
};

/// Uniform distinct (a, b) pairs with at most `cap` pairs per a.
/// Rejection sampling with a deterministic slot-based completion when
/// draws stall near capacity. Throws when count is infeasible.
std::vector<std::pair<std::uint32_t, std::uint32_t>>
sample_distinct_pairs(std::uint32_t a_count, std::uint32_t b_count, std::uint64_t count,
                      std::uint32_t cap, RandomSource& src);

} // namespace platsim
