#include "platsim/engine.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "platsim/format.hpp"

namespace platsim {

const char* to_string(EventKind kind) {
    switch (kind) {
    case EventKind::Posted: return "posted";
    case EventKind::Reshared: return "reshared";
    case EventKind::Liked: return "liked";
    case EventKind::Delivered: return "delivered";
    case EventKind::Reviewed: return "reviewed";
    }
    return "?";
}

void SimulationConfig::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (p_post < 0.0 || p_post > 1.0) fail("p_post must be in [0, 1]");
    if (p_share < 0.0 || p_share > 1.0) fail("p_share must be in [0, 1]");
    if (capacity == 0) fail("capacity must be positive");
    if (triangular_mode < 0.0 || triangular_mode > 1.0) fail("triangular_mode must be in [0, 1]");
    if (rwr_restart_p < 0.0 || rwr_restart_p > 1.0) fail("rwr_restart_p must be in [0, 1]");
    switch (architecture) {
    case Architecture::Complete:
        if (n_users < 2) fail("complete: n_users must be at least 2");
        if (n_pages != 0) fail("complete: n_pages must be 0");
        if (n_groups != 0) fail("complete: n_groups must be 0");
        break;
    case Architecture::Network:
        if (n_users < 1) fail("network: n_users must be positive");
        if (n_pages != 0) fail("network: n_pages must be 0");
        if (n_groups != 0) fail("network: n_groups must be 0");
        break;
    case Architecture::Tree:
        if (n_users < 1) fail("tree: n_users must be positive");
        if (n_groups == 0) fail("tree: n_groups must be positive");
        if (n_pages != 0) fail("tree: n_pages must be 0");
        if (membership_edges >
            static_cast<std::uint64_t>(n_users) * std::min(max_affiliations, n_groups))
            fail("tree: membership_edges infeasible under max_affiliations");
        break;
    case Architecture::Layered:
        if (n_users < 1) fail("layered: n_users must be positive");
        break;
    }
}

namespace {

/// Architecture-specific graph construction; all randomness comes from
/// the dedicated graph stream in a fixed order (source synthesis, user
/// sample, page sample, relation draws).
PlatformGraph build_graph(const SimulationConfig& cfg, RandomSource& gsrc) {
    auto source_edges = [&]() -> EdgeSet {
        if (!cfg.graph_file.empty()) {
            EdgeSet e = load_edge_list(cfg.graph_file);
            if (cfg.flip_edges)
                for (auto& [a, b] : e.edges) std::swap(a, b);
            std::sort(e.edges.begin(), e.edges.end());
            return e;
        }
        return synth_scale_free(cfg.synth_source_n, cfg.synth_attach, gsrc);
    };

    switch (cfg.architecture) {
    case Architecture::Complete:
        return PlatformGraph::build_complete(cfg.n_users);
    case Architecture::Network: {
        EdgeSet base = source_edges();
        EdgeSet sampled = rwr_sample(base, cfg.n_users, cfg.rwr_restart_p, gsrc).subgraph;
        if (cfg.target_edges > 0) sampled = trim_edges(std::move(sampled), cfg.target_edges, gsrc);
        return PlatformGraph::build_network(cfg.n_users, sampled);
    }
    case Architecture::Tree:
        return PlatformGraph::build_tree(cfg.n_users, cfg.n_groups, cfg.membership_edges,
                                         cfg.max_affiliations, gsrc);
    case Architecture::Layered: {
        EdgeSet base = source_edges();
        EdgeSet users = rwr_sample(base, cfg.n_users, cfg.rwr_restart_p, gsrc).subgraph;
        EdgeSet pages;
        if (cfg.n_pages > 0)
            pages = rwr_sample(base, cfg.n_pages, cfg.rwr_restart_p, gsrc).subgraph;
        return PlatformGraph::build_layered(cfg.n_users, cfg.n_pages, cfg.n_groups, users, pages,
                                            cfg.edge_budget, cfg.shares, cfg.max_affiliations,
                                            gsrc);
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace

WorldState::WorldState(SimulationConfig c, PlatformGraph g)
    : cfg(std::move(c)),
      graph(std::move(g)),
      engine_rng(cfg.seed, Stream::Engine),
      message_rng(cfg.seed, Stream::MessageTraits) {
    const std::uint32_t n_actors = graph.n_actors();
    traits.reserve(n_actors);
    RandomSource trait_rng(cfg.seed, Stream::AgentTraits);
    for (std::uint32_t a = 0; a < n_actors; ++a)
        traits.push_back(sample_agent_traits(trait_rng, cfg.triangular_mode));
    input_feeds.assign(n_actors, BoundedFeed(cfg.capacity));
    output_logs.assign(graph.n_users(), {});
    page_outputs.assign(graph.n_pages(), BoundedFeed(cfg.capacity));
    group_queues.assign(graph.n_groups(), BoundedFeed(cfg.capacity));
    delivery_scratch.assign(n_actors, InsertResult::DuplicateNoop);
}

WorldState make_world(const SimulationConfig& cfg) {
    cfg.validate();
    RandomSource gsrc(cfg.seed, Stream::GraphBuild);
    return WorldState(cfg, build_graph(cfg, gsrc));
}

namespace {

constexpr std::size_t kParallelFanoutThreshold = 4096;

struct StepContext {
    WorldState& w;
    AgentId actor;
    bool actor_is_page;

    std::uint32_t reshare_count(MessageId m) const { return w.messages[m].reshare_count; }

    void log(EventKind kind, MessageId msg, std::uint32_t recipient, bool group,
             InsertResult outcome) {
        if (!w.cfg.log_events) return;
        w.events.push_back({w.step_index, kind, actor, recipient, group, msg, outcome});
    }

    /// Inserts into the recipient actor's input feed with reach
    /// accounting and event emission. Never called for the message's
    /// author or the sender.
    void deliver_to_actor(MessageId msg, AgentId recipient) {
        const auto outcome = w.input_feeds[recipient].insert(
            msg, w.cfg.policy, [&](MessageId m) { return reshare_count(m); });
        if (outcome.accepted())
            w.accounting[msg].reach.add(recipient, w.graph.n_actors());
        log(EventKind::Delivered, msg, recipient, false, outcome.result);
    }

    void deliver_to_group(MessageId msg, GroupId gid) {
        const auto outcome = w.group_queues[gid].insert(
            msg, w.cfg.policy, [&](MessageId m) { return reshare_count(m); });
        log(EventKind::Delivered, msg, gid, true, outcome.result);
    }

    /// Data-parallel fan-out of one message into many user feeds. Each
    /// iteration touches only its recipient's feed and reads reshare
    /// counts that are constant for the duration of the fan-out, so the
    /// parallel and serial paths produce identical state. Accounting and
    /// event emission happen in a serial ascending pass afterwards.
    void fan_out_users(MessageId msg, std::span<const AgentId> recipients_or_all) {
        const AgentId author = w.messages[msg].author;
        const bool implicit = w.graph.implicit_complete();
        const std::size_t n = implicit ? w.graph.n_users() : recipients_or_all.size();
        if (n == 0) return;
        auto recipient_at = [&](std::size_t i) {
            return implicit ? static_cast<AgentId>(i) : recipients_or_all[i];
        };
        auto skip = [&](AgentId r) { return r == actor || r == author; };

        const FeedPolicy policy = w.cfg.policy;
        const Message* msgs = w.messages.data();
        BoundedFeed* feeds = w.input_feeds.data();
        InsertResult* out = w.delivery_scratch.data();
        const bool parallel = w.cfg.parallel_delivery && n >= kParallelFanoutThreshold;

#pragma omp parallel for schedule(static) if (parallel)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            const AgentId r = recipient_at(static_cast<std::size_t>(i));
            if (skip(r)) {
                out[i] = InsertResult::DuplicateNoop;
                continue;
            }
            out[i] = feeds[r]
                         .insert(msg, policy,
                                 [msgs](MessageId m) { return msgs[m].reshare_count; })
                         .result;
        }

        auto& acct = w.accounting[msg];
        for (std::size_t i = 0; i < n; ++i) {
            const AgentId r = recipient_at(i);
            if (skip(r)) continue;
            if (out[i] == InsertResult::AcceptedNoEvict ||
                out[i] == InsertResult::AcceptedEvicting)
                acct.reach.add(r, w.graph.n_actors());
            log(EventKind::Delivered, msg, r, false, out[i]);
        }
    }

    /// Scans the actor's input feed in arrival order: exposure
    /// accounting plus Reviewed events. Returns the scanned ids.
    std::vector<MessageId> scan_feed() {
        const auto& entries = w.input_feeds[actor].entries();
        std::vector<const BoundedFeed::Entry*> order;
        order.reserve(entries.size());
        for (const auto& e : entries) order.push_back(&e);
        std::sort(order.begin(), order.end(),
                  [](const auto* a, const auto* b) { return a->arrival < b->arrival; });
        std::vector<MessageId> ids;
        ids.reserve(order.size());
        for (const auto* e : order) {
            ids.push_back(e->msg);
            w.accounting[e->msg].exposure.add(actor, w.graph.n_actors());
            log(EventKind::Reviewed, e->msg, actor, false, InsertResult::DuplicateNoop);
        }
        return ids;
    }

    /// Copies a queue's content (arrival order) into the actor's input
    /// feed; own-authored messages are skipped so a feed never holds its
    /// owner's messages.
    void pull_from(const BoundedFeed& source) {
        std::vector<const BoundedFeed::Entry*> order;
        order.reserve(source.entries().size());
        for (const auto& e : source.entries()) order.push_back(&e);
        std::sort(order.begin(), order.end(),
                  [](const auto* a, const auto* b) { return a->arrival < b->arrival; });
        for (const auto* e : order) {
            if (w.messages[e->msg].author == actor) continue;
            const auto outcome = w.input_feeds[actor].insert(
                e->msg, w.cfg.policy, [&](MessageId m) { return reshare_count(m); });
            if (outcome.accepted())
                w.accounting[e->msg].reach.add(actor, w.graph.n_actors());
            log(EventKind::Delivered, e->msg, actor, false, outcome.result);
        }
    }

    void append_to_output(MessageId msg) {
        if (actor_is_page) {
            w.page_outputs[w.graph.page_index(actor)].insert(
                msg, w.cfg.policy, [&](MessageId m) { return reshare_count(m); });
        } else {
            w.output_logs[actor].push_back(msg);
        }
    }
};

} // namespace

void step(WorldState& w) {
    if (w.step_index >= w.cfg.steps) throw std::logic_error("step past configured horizon");
    const auto& g = w.graph;

    StepContext ctx{w, static_cast<AgentId>(w.engine_rng.pick(g.n_actors())), false};
    ctx.actor_is_page = g.is_page(ctx.actor);

    // 1) Pull. Users pull from member groups, then (layered) from the
    //    output queues of followed pages; pages pull from the groups
    //    they administer.
    if (ctx.actor_is_page) {
        for (GroupId gid : g.page_admin_groups(g.page_index(ctx.actor)))
            ctx.pull_from(w.group_queues[gid]);
    } else {
        for (GroupId gid : g.user_groups(ctx.actor)) ctx.pull_from(w.group_queues[gid]);
        for (std::uint32_t p : g.user_pages(ctx.actor)) ctx.pull_from(w.page_outputs[p]);
    }

    // 2) Post, else maybe reshare.
    std::optional<MessageId> produced;
    if (w.engine_rng.bernoulli(w.cfg.p_post)) {
        const MessageId id = w.messages.size();
        w.messages.push_back({id, ctx.actor, w.step_index,
                              sample_message_traits(w.message_rng, w.cfg.triangular_mode), 0, 0});
        w.accounting.emplace_back();
        ctx.append_to_output(id);
        ctx.log(EventKind::Posted, id, ctx.actor, false, InsertResult::AcceptedNoEvict);
        produced = id;
    } else if (w.engine_rng.bernoulli(w.cfg.p_share)) {
        const auto scanned = ctx.scan_feed();
        std::vector<MessageId> candidates;
        candidates.reserve(scanned.size());
        const AgentTraits& at = w.traits[ctx.actor];
        for (MessageId m : scanned)
            if (eligible_for_reshare(w.messages[m].traits, at)) candidates.push_back(m);
        if (!candidates.empty()) {
            const MessageId chosen = candidates[w.engine_rng.pick(candidates.size())];
            w.input_feeds[ctx.actor].remove(chosen);
            ++w.messages[chosen].reshare_count;
            if (w.cfg.count_page_engagement || !ctx.actor_is_page)
                w.accounting[chosen].resharers.add(ctx.actor, g.n_actors());
            ctx.append_to_output(chosen);
            ctx.log(EventKind::Reshared, chosen, ctx.actor, false, InsertResult::AcceptedNoEvict);
            produced = chosen;
        }
    }

    // 3) Deliver.
    if (produced) {
        const MessageId m = *produced;
        if (ctx.actor_is_page) {
            const std::uint32_t p = g.page_index(ctx.actor);
            for (std::uint32_t follower : g.page_followers(p))
                ctx.deliver_to_actor(m, static_cast<AgentId>(g.n_users() + follower));
            for (GroupId gid : g.page_admin_groups(p)) ctx.deliver_to_group(m, gid);
        } else {
            if (g.implicit_complete()) {
                ctx.fan_out_users(m, {});
            } else {
                ctx.fan_out_users(m, g.user_delivery(ctx.actor));
            }
            const auto groups = g.user_groups(ctx.actor);
            if (!groups.empty())
                ctx.deliver_to_group(m, groups[w.engine_rng.pick(groups.size())]);
        }
    }

    // 4) Like the highest-scoring message in the feed; ties go to the
    //    newest arrival. The ranking is itself a review of the feed.
    if (!w.input_feeds[ctx.actor].empty()) {
        const auto scanned = ctx.scan_feed();
        const AgentTraits& at = w.traits[ctx.actor];
        MessageId best = scanned.front();
        double best_score = like_score(at.quality_pref, w.messages[best].traits.motivating,
                                       w.messages[best].traits.illuminating);
        for (std::size_t i = 1; i < scanned.size(); ++i) {
            const auto& t = w.messages[scanned[i]].traits;
            const double s = like_score(at.quality_pref, t.motivating, t.illuminating);
            if (s >= best_score) {
                best_score = s;
                best = scanned[i];
            }
        }
        ++w.messages[best].like_count;
        if (w.cfg.count_page_engagement || !ctx.actor_is_page)
            w.accounting[best].likers.add(ctx.actor, g.n_actors());
        ctx.log(EventKind::Liked, best, ctx.actor, false, InsertResult::AcceptedNoEvict);
    }

    ++w.step_index;
}

std::vector<MessageOutcome> extract_outcomes(const WorldState& w) {
    std::vector<MessageOutcome> out;
    out.reserve(w.messages.size());
    for (std::size_t i = 0; i < w.messages.size(); ++i) {
        const Message& m = w.messages[i];
        const MessageAccounting& a = w.accounting[i];
        out.push_back({m.id, m.created_step, canonical9(m.traits.motivating),
                       canonical9(m.traits.illuminating), canonical9(m.traits.quality),
                       a.reach.count(), a.exposure.count(), a.resharers.count(),
                       a.likers.count()});
    }
    return out;
}

RunResult run(const SimulationConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    WorldState world = make_world(cfg);
    for (std::uint32_t t = 0; t < cfg.steps; ++t) step(world);

    RunResult result;
    result.cfg = cfg;
    result.graph_summary = world.graph.summary();
    result.reported_edges = world.graph.reported_edge_count();
    result.outcomes = extract_outcomes(world);
    result.messages = std::move(world.messages);
    result.events = std::move(world.events);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

} // namespace platsim
