#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ctrust/types.hpp"

namespace ctrust {

enum class Comparison { Less, LessEqual, Greater, GreaterEqual };

std::optional<Comparison> parse_comparison(std::string_view text);
std::string_view to_string(Comparison c) noexcept;

// `context <op> bound`, e.g. distance <= 1.0. A descriptor lacking the
// context never satisfies the condition.
struct ContextCondition {
    std::string context;
    Comparison op = Comparison::LessEqual;
    double bound = 0.0;

    bool holds(const ContextDescriptor& ctx) const;
};

// Conjunction of conditions. An empty predicate holds for every entity.
struct ContextPredicate {
    std::vector<ContextCondition> conditions;

    bool holds(const ContextDescriptor& ctx) const;
};

struct Domain {
    std::string name;
    ServiceTypeId service_type; // empty: not tied to one service type
    ContextPredicate predicate;
    std::set<EntityId> members;
};

struct EntityContext {
    EntityId id;
    ContextDescriptor context; // as observed by whoever partitions
};

struct DomainSpec {
    std::string name;
    ServiceTypeId service_type;
    ContextPredicate predicate;
};

/// One domain per spec holding exactly the entities that satisfy its
/// predicate. An entity may belong to several domains.
std::vector<Domain> partition_domains(std::span<const EntityContext> entities,
                                      std::span<const DomainSpec> specs);

/// Entities that fall in none of `domains`; together with them they cover
/// the whole environment.
Domain residual_domain(std::span<const EntityContext> entities, std::span<const Domain> domains);

/// `subject`'s descriptor as seen from `observer`. When both carry planar
/// coordinates (`x`, `y`), `distance` is replaced by their Euclidean distance.
ContextDescriptor observe_context(const ContextDescriptor& observer,
                                  const ContextDescriptor& subject);

// Rule-based recommender context assessment: when the recommender's observed
// context matches, its effective trust is multiplied by `factor` in (0, 1].
struct RecommenderContextRule {
    ContextPredicate when;
    double factor = 0.5;
};

/// Product of the factors of all matching rules (1 when none matches).
double context_penalty(std::span<const RecommenderContextRule> rules,
                       const ContextDescriptor& recommender_context);

/// Default rules for a service type: one rule per critical condition that
/// fires when the recommender violates it, halving its weight.
std::vector<RecommenderContextRule> default_context_rules(const ContextPredicate& critical,
                                                          double factor = 0.5);

} // namespace ctrust
