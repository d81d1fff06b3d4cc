#include "ctrust/context.hpp"

#include <cmath>

namespace ctrust {

std::optional<Comparison> parse_comparison(std::string_view text) {
    if (text == "<") return Comparison::Less;
    if (text == "<=") return Comparison::LessEqual;
    if (text == ">") return Comparison::Greater;
    if (text == ">=") return Comparison::GreaterEqual;
    return std::nullopt;
}

std::string_view to_string(Comparison c) noexcept {
    switch (c) {
    case Comparison::Less: return "<";
    case Comparison::LessEqual: return "<=";
    case Comparison::Greater: return ">";
    case Comparison::GreaterEqual: return ">=";
    }
    return "?";
}

namespace {

Comparison negate(Comparison c) {
    switch (c) {
    case Comparison::Less: return Comparison::GreaterEqual;
    case Comparison::LessEqual: return Comparison::Greater;
    case Comparison::Greater: return Comparison::LessEqual;
    case Comparison::GreaterEqual: return Comparison::Less;
    }
    return c;
}

} // namespace

bool ContextCondition::holds(const ContextDescriptor& ctx) const {
    auto it = ctx.find(context);
    if (it == ctx.end()) return false;
    const double v = it->second;
    switch (op) {
    case Comparison::Less: return v < bound;
    case Comparison::LessEqual: return v <= bound;
    case Comparison::Greater: return v > bound;
    case Comparison::GreaterEqual: return v >= bound;
    }
    return false;
}

bool ContextPredicate::holds(const ContextDescriptor& ctx) const {
    for (const auto& c : conditions) {
        if (!c.holds(ctx)) return false;
    }
    return true;
}

std::vector<Domain> partition_domains(std::span<const EntityContext> entities,
                                      std::span<const DomainSpec> specs) {
    std::vector<Domain> out;
    out.reserve(specs.size());
    for (const auto& spec : specs) {
        Domain d{spec.name, spec.service_type, spec.predicate, {}};
        for (const auto& e : entities) {
            if (spec.predicate.holds(e.context)) d.members.insert(e.id);
        }
        out.push_back(std::move(d));
    }
    return out;
}

Domain residual_domain(std::span<const EntityContext> entities, std::span<const Domain> domains) {
    Domain rest{"residual", {}, {}, {}};
    for (const auto& e : entities) {
        bool covered = false;
        for (const auto& d : domains) {
            if (d.members.count(e.id)) {
                covered = true;
                break;
            }
        }
        if (!covered) rest.members.insert(e.id);
    }
    return rest;
}

ContextDescriptor observe_context(const ContextDescriptor& observer,
                                  const ContextDescriptor& subject) {
    ContextDescriptor seen = subject;
    auto ox = observer.find("x"), oy = observer.find("y");
    auto sx = subject.find("x"), sy = subject.find("y");
    if (ox != observer.end() && oy != observer.end() && sx != subject.end() &&
        sy != subject.end()) {
        seen["distance"] = std::hypot(sx->second - ox->second, sy->second - oy->second);
    }
    return seen;
}

double context_penalty(std::span<const RecommenderContextRule> rules,
                       const ContextDescriptor& recommender_context) {
    double factor = 1.0;
    for (const auto& r : rules) {
        if (r.when.holds(recommender_context)) factor *= r.factor;
    }
    return factor;
}

std::vector<RecommenderContextRule> default_context_rules(const ContextPredicate& critical,
                                                          double factor) {
    std::vector<RecommenderContextRule> rules;
    for (const auto& c : critical.conditions) {
        ContextCondition violated{c.context, negate(c.op), c.bound};
        rules.push_back(RecommenderContextRule{ContextPredicate{{violated}}, factor});
    }
    return rules;
}

} // namespace ctrust
