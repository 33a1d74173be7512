#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "platsim/engine.hpp"
#include "platsim/metrics.hpp"

namespace platsim {

/// One parsed row of the messages table; run identity plus the outcome.
struct MessageRow {
    std::uint64_t seed = 0;
    std::string platform;
    std::string algorithm;
    MessageOutcome outcome;
};

inline const char* messages_csv_header() {
    return "seed,platform,algorithm,msg_id,created_step,k,beta,alpha,reach,exposure,reshares,likes";
}

/// Messages table serialization. Reals use fixed 9-significant-digit
/// formatting so identical runs produce byte-identical files.
std::string render_messages_csv(std::uint64_t seed, Architecture arch, FeedPolicy policy,
                                std::span<const MessageOutcome> outcomes);

void write_file(const std::string& path, const std::string& content);

/// Parses a messages CSV. Schema violations throw std::runtime_error
/// naming the offending column.
std::vector<MessageRow> read_messages_csv(const std::string& path);

/// Event log as tab-separated lines: step, kind, agent, msg, outcome.
/// The agent column holds the recipient for delivered records (groups
/// prefixed "g") and the acting agent otherwise; outcome is "-" for
/// non-delivery records.
std::string render_event_log(std::span<const EventRecord> events);

/// Aligned per-condition summary block.
std::string render_condition_summary(const std::string& platform, const std::string& algorithm,
                                     const ConditionSummary& summary);

} // namespace platsim
