#pragma once

// Service-requester side: domain partitioning, request dispatch with broadcast
// fallback, candidate evaluation (fuzzy quality + trust), selection,
// invocation and settlement of the transaction.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctrust/context.hpp"
#include "ctrust/fuzzy.hpp"
#include "ctrust/service.hpp"
#include "ctrust/store.hpp"
#include "ctrust/trust.hpp"

namespace ctrust {

struct Delivery {
    std::vector<double> promised;  // what the provider committed to
    std::vector<double> delivered; // what actually arrived
    ContextDescriptor context;     // provider context at delivery time
};

/// Message transport seen from the requester. The simulator implements it;
/// tests substitute fakes.
class Network {
public:
    virtual ~Network() = default;

    /// Forward `request` to `to`; returns its offer, if it answers at all.
    virtual std::optional<ProviderOffer> request(const EntityId& from, const EntityId& to,
                                                 const ServiceRequest& request) = 0;

    /// Ask `to` for its trust record about `subject`.
    virtual std::optional<ProviderOffer> solicit(const EntityId& from, const EntityId& to,
                                                 const EntityId& subject,
                                                 const ServiceRequest& request) = 0;

    /// Send the request to the selected provider and receive the service.
    virtual std::optional<Delivery> invoke(const EntityId& from, const EntityId& to,
                                           const ServiceRequest& request) = 0;

    /// Context of `subject` as observed by `observer`.
    virtual ContextDescriptor observe(const EntityId& observer, const EntityId& subject) = 0;
};

/// Domains relevant to `request`: those tied to its service type or to none.
std::vector<EntityId> domain_targets(const EntityId& self, const ServiceRequest& request,
                                     std::span<const Domain> domains);

/// Sends `request` to every member of the relevant domains, once each, in
/// identifier order, and collects the answers.
std::vector<ProviderOffer> dispatch(const EntityId& self, const ServiceRequest& request,
                                    std::span<const Domain> domains, Network& network);

/// Sends `request` to every member of every domain.
std::vector<ProviderOffer> broadcast_fallback(const EntityId& self, const ServiceRequest& request,
                                              std::span<const Domain> all_domains,
                                              Network& network);

// One recommendation as received during an episode.
struct ReceivedRecommendation {
    EntityId recommender_id;
    TrustValue trv;          // as reported
    std::vector<double> rv;  // values the recommender expects
    bool solicited = false;  // asked for explicitly rather than offered
};

struct CandidateEvaluation {
    EntityId provider_id;
    bool offered = false;  // answered with its own real values
    std::vector<double> rv;
    std::vector<ReceivedRecommendation> recommendations;
    std::vector<EntityId> excluded_recommenders; // judged dishonest
    TrustMethod method = TrustMethod::Indirect;
    bool adequate = false;
    int history_count = 0;
    std::optional<TrustValue> dt;
    std::optional<TrustValue> it;
    TrustValue trv;
    FuzzyMembership sp;
    double v = 0.0;
};

struct Selection {
    std::vector<CandidateEvaluation> candidates; // sorted by provider id
    EntityId selected;

    const CandidateEvaluation& chosen() const;
};

struct RecommenderUpdate {
    EntityId recommender_id;
    TrustValue rt_old;
    TrustValue rt_new;
    double delta = 0.0;
    double uf = 0.0;
};

struct Settlement {
    InteractionRecord interaction;
    TrustRecord record; // the provider's refreshed trust record
    std::optional<TrustValue> dt;
    std::optional<TrustValue> it;
    std::vector<RecommenderUpdate> recommender_updates;
};

enum class EpisodeOutcome { ProvideSettled, RecommendSettled, Failed };

std::string_view to_string(EpisodeOutcome outcome) noexcept;

struct EpisodeResult {
    EpisodeOutcome outcome = EpisodeOutcome::Failed;
    bool broadcast = false;
    std::vector<ProviderOffer> offers;
    std::optional<Selection> selection;
    std::optional<Settlement> settlement;
    std::string failure_reason;
};

struct RequesterConfig {
    TrustParams params;
    std::map<ServiceTypeId, ServiceType> services;
};

class RequesterAgent {
public:
    RequesterAgent(EntityId id, RequesterConfig config);

    const EntityId& id() const noexcept { return id_; }
    const RequesterConfig& config() const noexcept { return config_; }

    /// Dispatch to the request's domains, broadcasting to every domain when
    /// nobody answers.
    std::vector<ProviderOffer> collect_offers(const ServiceRequest& request,
                                              std::span<const Domain> domains,
                                              std::span<const Domain> all_domains,
                                              Network& network, bool* broadcast = nullptr) const;

    /// Scores every candidate (offered or recommended) and selects the target.
    /// Records every received recommendation in the recommender profiles.
    /// Throws Error(EpisodeFailed) when there is no candidate.
    Selection choose(const ServiceRequest& request, std::span<const ProviderOffer> offers,
                     Tick tick, StoreView& store, Network& network) const;

    /// Trust in `provider` from history and the given recommendations, with
    /// recommender weights taken from `store`.
    CandidateEvaluation evaluate_trust(const ServiceRequest& request, const EntityId& provider,
                                       std::vector<ReceivedRecommendation> recommendations,
                                       Tick tick, StoreView& store, Network& network) const;

    /// Logs the transaction, updates every vouching recommender and refreshes
    /// the provider's trust record.
    Settlement settle_transaction(const ServiceRequest& request, const Delivery& delivery,
                                  const CandidateEvaluation& chosen, Tick tick,
                                  StoreView& store, Network& network) const;

    /// The whole episode: collect, choose, invoke, settle.
    EpisodeResult run_episode(const ServiceRequest& request, Tick tick, StoreView& store,
                              Network& network, std::span<const Domain> domains,
                              std::span<const Domain> all_domains) const;

private:
    const ServiceType& service(const ServiceTypeId& id) const;
    std::optional<TrustValue> weighted_indirect(const ServiceType& service,
                                                const CandidateEvaluation& cand,
                                                StoreView& store, Network& network,
                                                std::vector<EntityId>* excluded) const;

    EntityId id_;
    RequesterConfig config_;
};

} // namespace ctrust
