#pragma once

#include <cmath>
#include <cstdint>

#include "platsim/rng.hpp"

namespace platsim {

using AgentId = std::uint32_t;
using MessageId = std::uint64_t;
using GroupId = std::uint32_t;

/// Immutable per-agent behavioral traits. reshare_threshold is derived
/// from the other two sensitivities and cached at creation:
///   reshare_threshold = sqrt((1 - reward_sensitivity)^2 + (1 - meaning_seeking)^2)
struct AgentTraits {
    double quality_pref = 0.0;       // in [-1, 1]
    double reward_sensitivity = 0.0; // in [0, 1]
    double meaning_seeking = 0.0;    // in [0, 1]
    double reshare_threshold = 0.0;  // in [0, sqrt(2)]
};

/// Immutable content traits of one message.
struct MessageTraits {
    double motivating = 0.0;  // k, in [0, 1]: attention-grabbing appeal
    double illuminating = 0.0; // beta, in [0, 1]: gist meaningfulness
    double quality = 0.0;      // alpha, in [-1, 1]: informativeness
};

/// One produced message. Ids are assigned in production order and are
/// dense within a run. Counters only ever grow.
struct Message {
    MessageId id = 0;
    AgentId author = 0;
    std::uint32_t created_step = 0;
    MessageTraits traits;
    std::uint32_t reshare_count = 0;
    std::uint32_t like_count = 0;
};

inline double reshare_threshold_of(double reward_sensitivity, double meaning_seeking) {
    const double a = 1.0 - reward_sensitivity;
    const double b = 1.0 - meaning_seeking;
    return std::sqrt(a * a + b * b);
}

/// Draw order is part of the determinism contract: quality_pref, then
/// reward_sensitivity, then meaning_seeking.
inline AgentTraits sample_agent_traits(RandomSource& src, double triangular_mode) {
    AgentTraits t;
    t.quality_pref = src.uniform(-1.0, 1.0);
    t.reward_sensitivity = src.triangular(0.0, triangular_mode, 1.0);
    t.meaning_seeking = src.triangular(0.0, triangular_mode, 1.0);
    t.reshare_threshold = reshare_threshold_of(t.reward_sensitivity, t.meaning_seeking);
    return t;
}

/// Draw order: motivating, then illuminating, then quality.
inline MessageTraits sample_message_traits(RandomSource& src, double triangular_mode) {
    MessageTraits t;
    t.motivating = src.triangular(0.0, triangular_mode, 1.0);
    t.illuminating = src.triangular(0.0, triangular_mode, 1.0);
    t.quality = src.uniform(-1.0, 1.0);
    return t;
}

/// Combined strength of a message, the Euclidean norm of (k, beta).
inline double message_magnitude(double motivating, double illuminating) {
    return std::sqrt(motivating * motivating + illuminating * illuminating);
}

/// Ranking score for the like step: (1 - phi) * k + phi * beta.
/// Used purely to order a feed; it can leave [0, 1] when phi < 0 and is
/// never clamped, since clamping would change argmax ties.
inline double like_score(double quality_pref, double motivating, double illuminating) {
    return (1.0 - quality_pref) * motivating + quality_pref * illuminating;
}

/// Reshare candidate filter: quality strictly above the agent's bar,
/// magnitude at or above the agent's threshold.
inline bool eligible_for_reshare(const MessageTraits& msg, const AgentTraits& agent) {
    return msg.quality > agent.quality_pref &&
           message_magnitude(msg.motivating, msg.illuminating) >= agent.reshare_threshold;
}

} // namespace platsim
