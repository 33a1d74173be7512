#include "platsim/feed.hpp"

#include <stdexcept>
#include <string>

namespace platsim {

const char* to_string(FeedPolicy policy) {
    return policy == FeedPolicy::Lifo ? "lifo" : "hot";
}

const char* to_string(InsertResult result) {
    switch (result) {
    case InsertResult::AcceptedNoEvict: return "accept";
    case InsertResult::AcceptedEvicting: return "accept_evict";
    case InsertResult::RejectedFull: return "reject_full";
    case InsertResult::DuplicateNoop: return "duplicate";
    }
    return "?";
}

FeedPolicy feed_policy_from_string(const std::string& s) {
    if (s == "lifo") return FeedPolicy::Lifo;
    if (s == "hot") return FeedPolicy::Hot;
    throw std::invalid_argument("unknown feed policy: " + s);
}

} // namespace platsim
