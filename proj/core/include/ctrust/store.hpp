#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctrust/trust.hpp"
#include "ctrust/types.hpp"

namespace ctrust {

/// True once more than `ttl` ticks have passed since `last_updated`.
/// A record exactly `ttl` ticks old is still fresh.
constexpr bool expired(Tick last_updated, Tick t_cur, Tick ttl) noexcept {
    return t_cur > last_updated && t_cur - last_updated > ttl;
}

inline bool expired(const TrustRecord& record, Tick t_cur, Tick ttl) noexcept {
    return expired(record.last_updated, t_cur, ttl);
}

struct HistoryQuery {
    std::vector<InteractionRecord> records; // unexpired, matching, oldest first
    bool adequate = false;
};

/// Everything one entity remembers: trust records, interaction history and
/// recommender profiles. Owned by exactly one agent.
class StoreView {
public:
    using RecordKey = std::pair<EntityId, ServiceTypeId>; // (provider, service type)

    StoreView() = default;
    explicit StoreView(EntityId owner) : owner_id_(std::move(owner)) {}

    const EntityId& owner_id() const noexcept { return owner_id_; }

    // Trust records ---------------------------------------------------------

    /// Inserts or replaces the record for (provider_id, service_type) and
    /// stamps it with `now`.
    void upsert_trust_record(TrustRecord record, Tick now);

    const TrustRecord* find_trust_record(const EntityId& provider,
                                         const ServiceTypeId& service_type) const;

    /// All records about `provider`, any service type.
    std::vector<TrustRecord> records_about(const EntityId& provider) const;

    /// Best record for `service_type` whose TRV is at least `min_trv`.
    /// Ties go to the smallest provider id.
    std::optional<TrustRecord> find_recommendable(const ServiceTypeId& service_type,
                                                  double min_trv) const;

    bool erase_trust_record(const EntityId& provider, const ServiceTypeId& service_type);

    const std::map<RecordKey, TrustRecord>& trust_records() const noexcept {
        return trust_records_;
    }

    // Interaction history ---------------------------------------------------

    /// Appends to the log. Throws Error(InvalidInput) when the record is older
    /// than the last logged interaction.
    void append_interaction(InteractionRecord record);

    /// Unexpired interactions with `provider` for `service_type` and whether
    /// there are at least `min_records` of them.
    HistoryQuery query_history(const EntityId& provider, const ServiceTypeId& service_type,
                               Tick t_cur, Tick ttl, int min_records) const;

    /// Most recent interaction with `provider` for `service_type`, expired or not.
    const InteractionRecord* last_interaction(const EntityId& provider,
                                              const ServiceTypeId& service_type) const;

    std::span<const InteractionRecord> interactions() const noexcept { return interactions_; }

    // Recommenders ----------------------------------------------------------

    RecommenderProfile* find_recommender(const EntityId& id);
    const RecommenderProfile* find_recommender(const EntityId& id) const;

    /// Profile for `id`, created with the mean-TRV initial trust taken from
    /// the owner's trust records about `id` on first use.
    RecommenderProfile& recommender(const EntityId& id);

    void put_recommender(RecommenderProfile profile);

    const std::map<EntityId, RecommenderProfile>& recommenders() const noexcept {
        return recommenders_;
    }

    // Snapshots -------------------------------------------------------------

    std::string to_json() const;
    static StoreView from_json(const std::string& text);

    bool operator==(const StoreView&) const = default;

private:
    EntityId owner_id_;
    std::map<RecordKey, TrustRecord> trust_records_;
    std::vector<InteractionRecord> interactions_;
    std::map<EntityId, RecommenderProfile> recommenders_;
};

/// Trust maintenance sweep: every expired trust record is recomputed from the
/// unexpired interaction history, or dropped when no fresh interaction backs
/// it. Interaction history is never touched. Returns the number of records
/// refreshed or dropped.
std::size_t refresh_expired_records(StoreView& view, Tick t_cur, const TrustParams& params);

} // namespace ctrust
