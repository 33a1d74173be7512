#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "platsim/domain.hpp"

namespace platsim {

enum class FeedPolicy { Lifo, Hot };

enum class InsertResult : std::uint8_t {
    AcceptedNoEvict,
    AcceptedEvicting,
    RejectedFull,
    DuplicateNoop,
};

struct InsertOutcome {
    InsertResult result = InsertResult::AcceptedNoEvict;
    MessageId evicted = 0; // valid only when result == AcceptedEvicting

    bool accepted() const {
        return result == InsertResult::AcceptedNoEvict ||
               result == InsertResult::AcceptedEvicting;
    }
};

/// Capacity-limited attention queue. Entries carry a per-feed arrival
/// index (monotone with insertion order); the policy decides who goes
/// when the feed is full:
///
///   Lifo: evict the oldest entry, always admit.
///   Hot:  admit only if the incoming message's current reshare count is
///         strictly above the coldest entry's (ties on coldness broken
///         toward the older entry); otherwise reject.
///
/// Reshare counts are read live through the `counts` callable at
/// comparison time, never snapshotted at insertion.
class BoundedFeed {
public:
    struct Entry {
        MessageId msg = 0;
        std::uint64_t arrival = 0;
    };

    explicit BoundedFeed(std::size_t capacity = 10) : capacity_(capacity) {}

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const { return entries_; }

    bool contains(MessageId msg) const {
        for (const Entry& e : entries_)
            if (e.msg == msg) return true;
        return false;
    }

    template <typename CountFn>
    InsertOutcome insert(MessageId msg, FeedPolicy policy, CountFn&& counts) {
        if (contains(msg)) return {InsertResult::DuplicateNoop, 0};
        if (entries_.size() < capacity_) {
            entries_.push_back({msg, next_arrival_++});
            return {InsertResult::AcceptedNoEvict, 0};
        }
        if (capacity_ == 0) return {InsertResult::RejectedFull, 0};

        std::size_t victim = 0;
        if (policy == FeedPolicy::Lifo) {
            for (std::size_t i = 1; i < entries_.size(); ++i)
                if (entries_[i].arrival < entries_[victim].arrival) victim = i;
        } else {
            auto colder = [&](std::size_t a, std::size_t b) {
                const auto ca = counts(entries_[a].msg);
                const auto cb = counts(entries_[b].msg);
                if (ca != cb) return ca < cb;
                return entries_[a].arrival < entries_[b].arrival;
            };
            for (std::size_t i = 1; i < entries_.size(); ++i)
                if (colder(i, victim)) victim = i;
            if (!(counts(msg) > counts(entries_[victim].msg)))
                return {InsertResult::RejectedFull, 0};
        }
        const MessageId evicted = entries_[victim].msg;
        entries_[victim] = {msg, next_arrival_++};
        return {InsertResult::AcceptedEvicting, evicted};
    }

    bool remove(MessageId msg) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i].msg == msg) {
                entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(i));
                return true;
            }
        }
        return false;
    }

    /// Full feed in presentation order. Lifo: newest first. Hot: hottest
    /// first, ties newest first. Does not affect engine behavior (scans
    /// and likes are order-free); exposed for inspection and tooling.
    template <typename CountFn>
    std::vector<MessageId> review_order(FeedPolicy policy, CountFn&& counts) const {
        std::vector<const Entry*> order;
        order.reserve(entries_.size());
        for (const Entry& e : entries_) order.push_back(&e);
        if (policy == FeedPolicy::Lifo) {
            std::sort(order.begin(), order.end(),
                      [](const Entry* a, const Entry* b) { return a->arrival > b->arrival; });
        } else {
            std::sort(order.begin(), order.end(), [&](const Entry* a, const Entry* b) {
                const auto ca = counts(a->msg);
                const auto cb = counts(b->msg);
                if (ca != cb) return ca > cb;
                return a->arrival > b->arrival;
            });
        }
        std::vector<MessageId> out;
        out.reserve(order.size());
        for (const Entry* e : order) out.push_back(e->msg);
        return out;
    }

private:
    std::size_t capacity_;
    std::uint64_t next_arrival_ = 0;
    std::vector<Entry> entries_;
};

const char* to_string(FeedPolicy policy);
const char* to_string(InsertResult result);
FeedPolicy feed_policy_from_string(const std::string& s);

} // namespace platsim
