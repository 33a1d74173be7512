#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "platsim/domain.hpp"

namespace platsim {

/// Final per-message counters. All four counts are unique agents; the
/// invariants exposure <= reach, resharers <= exposure, likers <= exposure
/// hold for every message an engine run produces.
struct MessageOutcome {
    MessageId id = 0;
    std::uint32_t created_step = 0;
    double motivating = 0.0;
    double illuminating = 0.0;
    double quality = 0.0;
    std::uint32_t reach = 0;
    std::uint32_t exposure = 0;
    std::uint32_t resharers = 0;
    std::uint32_t likers = 0;

    std::uint32_t metric(int m) const; // 0 reach, 1 exposure, 2 resharers, 3 likers
};

enum class Metric { Reach = 0, Exposure = 1, Reshares = 2, Likes = 3 };

const char* to_string(Metric m);

/// Breadth/depth decomposition of one metric over a message collection.
/// Depths are undefined (absent) when no message has a nonzero value.
struct MetricSummary {
    double breadth = 0.0;                  // share of messages with metric > 0
    std::optional<double> depth_arith;     // mean over nonzero
    std::optional<double> depth_geom;      // exp(mean log) over nonzero
    std::optional<double> unconditional;   // breadth * depth_arith
};

struct ConditionSummary {
    std::size_t n_messages = 0;
    MetricSummary by_metric[4];
    std::optional<double> exposure_weighted_quality;

    const MetricSummary& metric(Metric m) const {
        return by_metric[static_cast<int>(m)];
    }
};

/// Aggregates outcomes into breadth/depth/quality form. Throws on an
/// empty collection.
ConditionSummary summarize(std::span<const MessageOutcome> outcomes);

/// Mean quality over all agent-message exposure pairs:
/// sum(alpha_m * exposure_m) / sum(exposure_m). Absent when nothing was
/// ever exposed.
std::optional<double> exposure_weighted_quality(std::span<const MessageOutcome> outcomes);

/// Hot / LIFO ratio of the unconditional mean for one metric. Throws
/// when either side is undefined or the LIFO mean is zero.
double hot_lifo_ratio(const ConditionSummary& hot, const ConditionSummary& lifo, Metric m);

struct Dispersion {
    double min = 0.0;
    double max = 0.0;
    double range = 0.0;
};

/// Elementwise min/max/range of per-seed values. Requires >= 2 entries.
Dispersion seed_quality_dispersion(std::span<const double> per_seed);

/// Construct-validity counters and zero-inflation rates for one message
/// collection (one run or a pooled condition).
struct ValidityReport {
    std::uint64_t n_rows = 0;
    std::uint64_t reshares_without_reach = 0;
    std::uint64_t exposure_without_reshare = 0;
    std::uint64_t likes_over_exposure = 0;
    std::uint64_t exposure_over_reach = 0;
    double pct_zero_reach = 0.0;
    double pct_zero_exposure = 0.0;
    double pct_zero_reshares = 0.0;
    double pct_zero_likes = 0.0;

    bool clean() const {
        return reshares_without_reach == 0 && likes_over_exposure == 0 &&
               exposure_over_reach == 0;
    }
};

ValidityReport validate_outcomes(std::span<const MessageOutcome> outcomes);

std::string render_validity_report(const ValidityReport& report);

} // namespace platsim
