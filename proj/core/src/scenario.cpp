#include "ctrust/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ctrust::sim {

using nlohmann::json;

std::string_view to_string(Role role) noexcept {
    switch (role) {
    case Role::Requester: return "requester";
    case Role::Provider: return "provider";
    case Role::Both: return "both";
    }
    return "unknown";
}

const ServiceType* ScenarioConfig::find_service(const ServiceTypeId& id) const {
    for (const auto& s : service_types) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

const EntityConfig* ScenarioConfig::find_entity(const EntityId& id) const {
    for (const auto& e : entities) {
        if (e.id == id) return &e;
    }
    return nullptr;
}

namespace {

// Parsing ------------------------------------------------------------------

ContextCondition parse_condition(const json& j) {
    ContextCondition c;
    c.context = j.at("context").get<std::string>();
    const auto op = j.value("op", std::string("<="));
    auto parsed = parse_comparison(op);
    if (!parsed) fail(ErrorCode::Parse, "unknown comparison '" + op + "'");
    c.op = *parsed;
    c.bound = j.at("bound").get<double>();
    return c;
}

ContextPredicate parse_predicate(const json& j) {
    ContextPredicate p;
    for (const auto& c : j) p.conditions.push_back(parse_condition(c));
    return p;
}

ServiceType parse_service(const json& j) {
    ServiceType s;
    s.id = j.at("id").get<std::string>();
    for (const auto& a : j.at("attributes")) {
        AttributeSpec spec;
        if (a.is_string()) {
            spec.name = a.get<std::string>();
        } else {
            spec.name = a.at("name").get<std::string>();
            spec.min = a.value("min", 0.0);
            spec.max = a.value("max", 1.0);
        }
        s.attributes.push_back(std::move(spec));
    }
    if (j.contains("weights")) {
        s.weights = j.at("weights").get<std::vector<double>>();
    } else if (!s.attributes.empty()) {
        s.weights.assign(s.attributes.size(), 1.0 / static_cast<double>(s.attributes.size()));
    }
    if (j.contains("critical_contexts")) s.critical = parse_predicate(j.at("critical_contexts"));
    if (j.contains("recommender_rules")) {
        for (const auto& r : j.at("recommender_rules")) {
            RecommenderContextRule rule;
            rule.when = parse_predicate(r.at("when"));
            rule.factor = r.value("factor", 0.5);
            s.recommender_rules.push_back(std::move(rule));
        }
    } else {
        s.recommender_rules = default_context_rules(s.critical, j.value("context_penalty", 0.5));
    }
    return s;
}

BehaviorModel parse_behavior(const json& j, std::vector<std::string>& issues,
                             const std::string& owner) {
    const auto kind = j.value("kind", std::string("honest"));
    if (kind == "honest") return Honest{j.value("jitter", 0.0)};
    if (kind == "degrading") return Degrading{j.value("start", Tick{0}), j.value("slope", 0.0)};
    if (kind == "malicious") return Malicious{j.value("fraction", 0.5)};
    if (kind == "dishonest_recommender") return DishonestRecommender{j.value("bias", 1.0)};
    issues.push_back("entity '" + owner + "': unknown behavior kind '" + kind + "'");
    return Honest{};
}

PrivacyLevel parse_level(const json& j, std::vector<std::string>& issues,
                         const std::string& owner) {
    const auto text = j.get<std::string>();
    if (auto level = parse_privacy_level(text)) return *level;
    issues.push_back("entity '" + owner + "': unknown privacy level '" + text + "'");
    return PrivacyLevel::Public;
}

PrivacyPolicy parse_policy(const json& j, std::vector<std::string>& issues,
                           const std::string& owner) {
    PrivacyPolicy p;
    if (j.contains("deny")) {
        for (const auto& id : j.at("deny")) p.deny.insert(id.get<std::string>());
    }
    if (j.contains("allow_only")) {
        std::set<EntityId> allowed;
        for (const auto& id : j.at("allow_only")) allowed.insert(id.get<std::string>());
        p.allow_only = std::move(allowed);
    }
    if (j.contains("default_clearance")) {
        p.default_clearance = parse_level(j.at("default_clearance"), issues, owner);
    }
    if (j.contains("clearance")) {
        for (const auto& [id, level] : j.at("clearance").items()) {
            p.clearance[id] = parse_level(level, issues, owner);
        }
    }
    if (j.contains("attr_levels")) {
        for (const auto& [name, level] : j.at("attr_levels").items()) {
            p.attr_privacy_levels[name] = parse_level(level, issues, owner);
        }
    }
    if (j.contains("context_levels")) {
        for (const auto& [name, level] : j.at("context_levels").items()) {
            p.context_privacy_levels[name] = parse_level(level, issues, owner);
        }
    }
    return p;
}

double normalized(const ServiceType& svc, const std::string& attr, double raw,
                  std::vector<std::string>& issues, const std::string& where) {
    for (const auto& a : svc.attributes) {
        if (a.name != attr) continue;
        if (raw < std::min(a.min, a.max) || raw > std::max(a.min, a.max)) {
            std::ostringstream msg;
            msg << where << ": value " << raw << " of attribute '" << attr
                << "' outside its bounds [" << a.min << ", " << a.max << "]";
            issues.push_back(msg.str());
        }
        return a.normalize(raw);
    }
    issues.push_back(where + ": service type '" + svc.id + "' has no attribute '" + attr + "'");
    return 0.0;
}

ServiceRequest parse_request(const ScenarioConfig& cfg, const json& j,
                             std::vector<std::string>& issues, const std::string& where) {
    ServiceRequest req;
    req.service_type = j.at("service_type").get<std::string>();
    const auto* svc = cfg.find_service(req.service_type);
    if (!svc) {
        issues.push_back(where + ": unknown service type '" + req.service_type + "'");
        return req;
    }
    const json thresholds = j.value("thresholds", json::object());
    for (const auto& [name, value] : thresholds.items()) {
        bool known = false;
        for (const auto& a : svc->attributes) known = known || a.name == name;
        if (!known) {
            issues.push_back(where + ": service type '" + svc->id + "' has no attribute '" +
                             name + "'");
        }
    }
    for (const auto& a : svc->attributes) {
        if (!thresholds.contains(a.name)) {
            issues.push_back(where + ": missing threshold for attribute '" + a.name + "'");
            continue;
        }
        req.attrs.push_back(AttributeThreshold{
            a.name, normalized(*svc, a.name, thresholds.at(a.name).get<double>(), issues, where)});
    }
    return req;
}

EntityConfig parse_entity(const ScenarioConfig& cfg, const json& j,
                          std::vector<std::string>& issues) {
    EntityConfig e;
    e.id = j.at("id").get<std::string>();
    const auto role = j.value("role", std::string("both"));
    if (role == "requester") e.role = Role::Requester;
    else if (role == "provider") e.role = Role::Provider;
    else if (role == "both") e.role = Role::Both;
    else issues.push_back("entity '" + e.id + "': unknown role '" + role + "'");

    if (j.contains("context")) e.context = j.at("context").get<ContextDescriptor>();
    if (j.contains("behavior")) e.behavior = parse_behavior(j.at("behavior"), issues, e.id);
    if (j.contains("policy")) e.policy = parse_policy(j.at("policy"), issues, e.id);

    if (j.contains("capabilities")) {
        for (const auto& c : j.at("capabilities")) {
            Capability cap;
            cap.service_type = c.at("service_type").get<std::string>();
            const auto* svc = cfg.find_service(cap.service_type);
            if (!svc) {
                issues.push_back("entity '" + e.id + "': capability for unknown service type '" +
                                 cap.service_type + "'");
                continue;
            }
            for (const auto& [name, value] : c.at("values").items()) {
                cap.values[name] = normalized(*svc, name, value.get<double>(), issues,
                                              "entity '" + e.id + "'");
            }
            e.capabilities.push_back(std::move(cap));
        }
    }

    if (j.contains("trust_records")) {
        for (const auto& r : j.at("trust_records")) {
            TrustRecord rec;
            rec.provider_id = r.at("provider_id").get<std::string>();
            rec.service_type = r.at("service_type").get<std::string>();
            const double trv = r.at("trv").get<double>();
            if (!(trv >= -1.0 && trv <= 1.0)) {
                issues.push_back("entity '" + e.id + "': seeded trust value outside [-1, 1]");
                continue;
            }
            rec.trv = TrustValue(trv);
            if (const auto* svc = cfg.find_service(rec.service_type)) {
                rec.service_attrs = svc->attribute_names();
            } else {
                issues.push_back("entity '" + e.id + "': trust record for unknown service type '" +
                                 rec.service_type + "'");
            }
            e.trust_records.push_back(std::move(rec));
        }
    }

    // Names the policy leaves unclassified are public.
    for (const auto& cap : e.capabilities) {
        if (const auto* svc = cfg.find_service(cap.service_type)) {
            for (const auto& a : svc->attributes) {
                e.policy.attr_privacy_levels.try_emplace(a.name, PrivacyLevel::Public);
            }
            for (const auto& c : svc->critical.conditions) {
                e.policy.context_privacy_levels.try_emplace(c.context, PrivacyLevel::Public);
            }
        }
    }
    return e;
}

void parse_params(const json& j, ScenarioConfig& cfg) {
    auto& p = cfg.params;
    p.decay_base = j.value("decay_base", p.decay_base);
    p.alpha = j.value("alpha", p.alpha);
    p.beta = j.value("beta", p.beta);
    p.error_apt = j.value("error_apt", p.error_apt);
    p.adequacy_min_records = j.value("adequacy_min_records", p.adequacy_min_records);
    p.record_ttl = j.value("record_ttl", p.record_ttl);
    if (j.contains("dishonesty_band")) {
        const auto band = j.at("dishonesty_band").get<std::vector<double>>();
        if (band.size() != 2) fail(ErrorCode::Parse, "params.dishonesty_band needs [lo, hi]");
        p.dishonesty_lo = band[0];
        p.dishonesty_hi = band[1];
    }
    p.dishonesty_min_count = j.value("dishonesty_min_count", p.dishonesty_min_count);
    p.detect_dishonest = j.value("detect_dishonest", p.detect_dishonest);
    cfg.min_trv = j.value("min_trv", cfg.min_trv);
}

bool csv_safe(const std::string& id) {
    return !id.empty() && id.find_first_of(",\"\r\n") == std::string::npos;
}

} // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
    try {
        const json doc = json::parse(json_text);
        ScenarioConfig cfg;
        cfg.name = doc.value("name", cfg.name);
        cfg.seed = doc.value("seed", std::uint64_t{0});
        cfg.ticks = doc.at("ticks").get<Tick>();
        if (doc.contains("params")) parse_params(doc.at("params"), cfg);

        for (const auto& s : doc.at("service_types")) cfg.service_types.push_back(parse_service(s));
        for (const auto& e : doc.at("entities")) {
            cfg.entities.push_back(parse_entity(cfg, e, cfg.load_issues));
        }

        if (doc.contains("episodes")) {
            std::size_t index = 0;
            for (const auto& ep : doc.at("episodes")) {
                EpisodeConfig e;
                e.tick = ep.at("tick").get<Tick>();
                e.requester = ep.at("requester").get<std::string>();
                e.request = parse_request(cfg, ep, cfg.load_issues,
                                          "episode " + std::to_string(index++));
                cfg.episodes.push_back(std::move(e));
            }
        }
        if (doc.contains("episode_series")) {
            std::size_t index = 0;
            for (const auto& series : doc.at("episode_series")) {
                const auto where = "episode series " + std::to_string(index++);
                const auto requester = series.at("requester").get<std::string>();
                const auto request = parse_request(cfg, series, cfg.load_issues, where);
                const auto start = series.value("start", Tick{0});
                const auto every = series.value("every", Tick{1});
                const auto count = series.value("count", Tick{1});
                if (every == 0) {
                    cfg.load_issues.push_back(where + ": 'every' must be positive");
                    continue;
                }
                for (Tick k = 0; k < count; ++k) {
                    cfg.episodes.push_back(EpisodeConfig{start + k * every, requester, request});
                }
            }
        }
        if (doc.contains("context_updates")) {
            for (const auto& u : doc.at("context_updates")) {
                cfg.context_updates.push_back(ContextUpdate{u.at("tick").get<Tick>(),
                                                            u.at("entity").get<std::string>(),
                                                            u.at("context").get<ContextDescriptor>()});
            }
        }
        return cfg;
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("scenario: ") + e.what());
    }
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot read scenario file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::vector<std::string> ScenarioConfig::violations() const {
    std::vector<std::string> out = load_issues;
    auto add = [&out](std::string s) { out.push_back(std::move(s)); };

    for (auto& v : params.violations()) add("params: " + v);
    if (!(min_trv >= -1.0 && min_trv <= 1.0)) add("params: min_trv must lie in [-1, 1]");

    std::set<ServiceTypeId> service_ids;
    for (const auto& s : service_types) {
        const auto where = "service type '" + s.id + "'";
        if (s.id.empty()) add("service type with empty id");
        if (!service_ids.insert(s.id).second) add("duplicate service type id '" + s.id + "'");
        if (s.attributes.empty()) add(where + ": at least one attribute required");
        std::set<std::string> names;
        for (const auto& a : s.attributes) {
            if (!names.insert(a.name).second) add(where + ": duplicate attribute '" + a.name + "'");
            if (!(a.min < a.max)) add(where + ": attribute '" + a.name + "' needs min < max");
        }
        if (s.weights.size() != s.attributes.size()) {
            add(where + ": needs exactly one weight per attribute");
        }
        double sum = 0.0;
        bool negative = false;
        for (double w : s.weights) {
            sum += w;
            negative = negative || !(w >= 0.0);
        }
        if (negative) add(where + ": weights must be non-negative");
        if (std::abs(sum - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg << where << ": weights must satisfy Σ w_j = 1 (got " << sum << ")";
            add(msg.str());
        }
        for (const auto& r : s.recommender_rules) {
            if (!(r.factor > 0.0 && r.factor <= 1.0)) {
                add(where + ": recommender rule factor must lie in (0, 1]");
            }
        }
    }

    std::set<EntityId> entity_ids;
    for (const auto& e : entities) {
        const auto where = "entity '" + e.id + "'";
        if (!csv_safe(e.id)) add("entity id '" + e.id + "' must be non-empty without , \" or newlines");
        if (!entity_ids.insert(e.id).second) add("duplicate entity id '" + e.id + "'");

        if (const auto* h = std::get_if<Honest>(&e.behavior); h && !(h->jitter >= 0.0)) {
            add(where + ": honest jitter must be non-negative");
        }
        if (const auto* d = std::get_if<Degrading>(&e.behavior); d && !(d->slope >= 0.0)) {
            add(where + ": degrading slope must be non-negative");
        }
        if (const auto* m = std::get_if<Malicious>(&e.behavior);
            m && !(m->fraction >= 0.0 && m->fraction <= 1.0)) {
            add(where + ": malicious fraction must lie in [0, 1]");
        }
        if (const auto* d = std::get_if<DishonestRecommender>(&e.behavior);
            d && !(d->bias >= -1.0 && d->bias <= 1.0)) {
            add(where + ": recommender bias must lie in [-1, 1]");
        }

        std::set<ServiceTypeId> offered;
        for (const auto& c : e.capabilities) {
            if (!offered.insert(c.service_type).second) {
                add(where + ": more than one capability for service type '" + c.service_type + "'");
            }
            if (const auto* svc = find_service(c.service_type)) {
                for (const auto& name : e.policy.unassigned(*svc)) {
                    add(where + ": no privacy level for '" + name + "'");
                }
            }
        }
        if (!e.capabilities.empty() && !e.serves()) {
            add(where + ": a pure requester cannot hold capabilities");
        }
        std::set<std::pair<EntityId, ServiceTypeId>> seeded;
        for (const auto& r : e.trust_records) {
            if (!seeded.insert({r.provider_id, r.service_type}).second) {
                add(where + ": duplicate seeded trust record for '" + r.provider_id + "'");
            }
            if (!find_entity(r.provider_id)) {
                add(where + ": seeded trust record about unknown entity '" + r.provider_id + "'");
            } else if (r.provider_id == e.id) {
                add(where + ": seeded trust record about itself");
            }
        }
    }

    for (std::size_t i = 0; i < episodes.size(); ++i) {
        const auto& ep = episodes[i];
        const auto where = "episode " + std::to_string(i);
        if (ep.tick >= ticks) {
            add(where + ": tick " + std::to_string(ep.tick) + " not below ticks (" +
                std::to_string(ticks) + ")");
        }
        const auto* who = find_entity(ep.requester);
        if (!who) add(where + ": unknown requester '" + ep.requester + "'");
        else if (!who->requests()) add(where + ": '" + ep.requester + "' is not a requester");
        if (!find_service(ep.request.service_type)) continue;
        if (ep.request.attrs.empty()) add(where + ": request has no attributes");
    }

    for (const auto& u : context_updates) {
        if (!find_entity(u.entity)) add("context update for unknown entity '" + u.entity + "'");
        if (u.tick >= ticks) add("context update at tick " + std::to_string(u.tick) + " not below ticks");
    }
    return out;
}

void ScenarioConfig::validate() const {
    auto v = violations();
    if (v.empty()) return;
    std::string msg = "invalid scenario '" + name + "':";
    for (const auto& s : v) msg += "\n  " + s;
    fail(ErrorCode::InvalidConfig, msg);
}

namespace {

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorCode::InvalidInput, "override " + key + ": '" + text + "' is not a number");
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(ErrorCode::InvalidInput, "override " + key + ": '" + text + "' is not an unsigned integer");
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    fail(ErrorCode::InvalidInput, "override " + key + ": '" + text + "' is not a boolean");
}

} // namespace

void apply_override(ScenarioConfig& config, const std::string& key, const std::string& value) {
    auto& p = config.params;
    if (key == "decay_base") p.decay_base = parse_double(key, value);
    else if (key == "alpha") p.alpha = parse_double(key, value);
    else if (key == "beta") p.beta = parse_double(key, value);
    else if (key == "error_apt") p.error_apt = parse_double(key, value);
    else if (key == "adequacy_min_records")
        p.adequacy_min_records = static_cast<int>(parse_unsigned(key, value));
    else if (key == "record_ttl") p.record_ttl = parse_unsigned(key, value);
    else if (key == "dishonesty_lo") p.dishonesty_lo = parse_double(key, value);
    else if (key == "dishonesty_hi") p.dishonesty_hi = parse_double(key, value);
    else if (key == "dishonesty_min_count")
        p.dishonesty_min_count = static_cast<int>(parse_unsigned(key, value));
    else if (key == "detect_dishonest") p.detect_dishonest = parse_bool(key, value);
    else if (key == "min_trv") config.min_trv = parse_double(key, value);
    else if (key == "seed") config.seed = parse_unsigned(key, value);
    else if (key == "ticks") config.ticks = parse_unsigned(key, value);
    else fail(ErrorCode::InvalidInput, "unknown override key '" + key + "'");
}

} // namespace ctrust::sim
