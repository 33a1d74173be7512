#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "platsim/domain.hpp"
#include "platsim/feed.hpp"
#include "platsim/graph.hpp"
#include "platsim/metrics.hpp"
#include "platsim/rng.hpp"

namespace platsim {

struct SimulationConfig {
    Architecture architecture = Architecture::Complete;
    FeedPolicy policy = FeedPolicy::Lifo;
    std::uint32_t n_users = 10000;
    std::uint32_t n_pages = 0;
    std::uint32_t n_groups = 0;
    std::uint32_t steps = 10000;
    double p_post = 0.45;
    double p_share = 0.25;
    std::uint32_t capacity = 10;
    std::uint32_t max_affiliations = 10;
    double triangular_mode = 0.5;
    std::uint64_t seed = 1;

    // Graph source. A SNAP edge list when given; otherwise a synthetic
    // preferential-attachment stand-in with synth_source_n nodes.
    std::string graph_file;
    bool flip_edges = false; // interpret file edges follower->followee instead
    std::uint32_t synth_source_n = 20000;
    std::uint32_t synth_attach = 114;
    double rwr_restart_p = 0.15;
    std::uint64_t target_edges = 0;      // network: trim sampled edges down to this, 0 = keep
    std::uint64_t membership_edges = 2000; // tree
    std::uint64_t edge_budget = 1839636;   // layered
    LayeredShares shares;

    bool log_events = false;
    bool parallel_delivery = true;
    bool count_page_engagement = true; // pages' reshares/likes enter engagement sets

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

enum class EventKind : std::uint8_t { Posted, Reshared, Liked, Delivered, Reviewed };

const char* to_string(EventKind kind);

/// One event-log record. `actor` is the acting agent; for Delivered,
/// `recipient` is the feed owner the insert targeted (an actor, or a
/// group when recipient_is_group).
struct EventRecord {
    std::uint32_t step = 0;
    EventKind kind = EventKind::Posted;
    AgentId actor = 0;
    std::uint32_t recipient = 0;
    bool recipient_is_group = false;
    MessageId msg = 0;
    InsertResult outcome = InsertResult::AcceptedNoEvict;
};

/// Per-message unique-agent set over the actor id space. Lazily sized.
class ActorSet {
public:
    /// Marks actor a; returns true when newly added.
    bool add(AgentId a, std::uint32_t n_actors) {
        if (words_.empty()) words_.assign((n_actors + 63) / 64, 0);
        std::uint64_t& w = words_[a >> 6];
        const std::uint64_t bit = 1ull << (a & 63);
        if (w & bit) return false;
        w |= bit;
        ++count_;
        return true;
    }
    bool contains(AgentId a) const {
        if (words_.empty()) return false;
        return (words_[a >> 6] >> (a & 63)) & 1;
    }
    std::uint32_t count() const { return count_; }

private:
    std::vector<std::uint64_t> words_;
    std::uint32_t count_ = 0;
};

struct MessageAccounting {
    ActorSet reach;
    ActorSet exposure;
    ActorSet resharers;
    ActorSet likers;
};

/// Full mutable state of one run. Owned and stepped by exactly one
/// thread; concurrency happens only inside the delivery fan-out, which
/// touches disjoint per-recipient feeds.
struct WorldState {
    SimulationConfig cfg;
    PlatformGraph graph;
    std::vector<AgentTraits> traits;            // per actor, users then pages
    std::vector<BoundedFeed> input_feeds;       // per actor
    std::vector<std::vector<MessageId>> output_logs; // per user: unbounded profile
    std::vector<BoundedFeed> page_outputs;      // per page: bounded, pulled by followers
    std::vector<BoundedFeed> group_queues;      // per group
    std::vector<Message> messages;
    std::vector<MessageAccounting> accounting;  // parallel to messages
    std::uint32_t step_index = 0;
    RandomSource engine_rng;
    RandomSource message_rng;
    std::vector<EventRecord> events;            // populated when cfg.log_events

    std::vector<InsertResult> delivery_scratch; // reused per fan-out

    WorldState(SimulationConfig c, PlatformGraph g);
};

/// Builds the platform graph and agent population for a validated
/// config. Stream use is fixed: the graph stream drives construction,
/// the agent stream assigns traits in ascending actor id order.
WorldState make_world(const SimulationConfig& cfg);

/// Executes one activation. Within a step the order is fixed: pull,
/// post-or-reshare, deliver (user recipients in ascending id, then the
/// group push), like. Random draws occur in documented order: activation
/// pick, post bernoulli, share bernoulli (when not posting), candidate
/// pick (when candidates exist), group pick (when delivering with
/// memberships).
void step(WorldState& world);

struct RunResult {
    SimulationConfig cfg;
    std::string graph_summary;
    std::uint64_t reported_edges = 0;
    std::vector<Message> messages;
    std::vector<MessageOutcome> outcomes;
    std::vector<EventRecord> events;
    double wall_seconds = 0.0;
};

/// Builds a world and executes cfg.steps activations.
RunResult run(const SimulationConfig& cfg);

/// Extracts per-message outcome counters from a finished world. Trait
/// values are canonicalized to the 9-significant-digit CSV precision so
/// summaries recomputed from dumped files match in-memory ones exactly.
std::vector<MessageOutcome> extract_outcomes(const WorldState& world);

} // namespace platsim
