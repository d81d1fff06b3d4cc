#include "ctrust/store.hpp"

#include <algorithm>

#include <json.hpp>

namespace ctrust {

using nlohmann::json;

void StoreView::upsert_trust_record(TrustRecord record, Tick now) {
    record.last_updated = now;
    RecordKey key{record.provider_id, record.service_type};
    trust_records_.insert_or_assign(std::move(key), std::move(record));
}

const TrustRecord* StoreView::find_trust_record(const EntityId& provider,
                                                const ServiceTypeId& service_type) const {
    auto it = trust_records_.find(RecordKey{provider, service_type});
    return it == trust_records_.end() ? nullptr : &it->second;
}

std::vector<TrustRecord> StoreView::records_about(const EntityId& provider) const {
    std::vector<TrustRecord> out;
    for (auto it = trust_records_.lower_bound(RecordKey{provider, {}});
         it != trust_records_.end() && it->first.first == provider; ++it) {
        out.push_back(it->second);
    }
    return out;
}

std::optional<TrustRecord> StoreView::find_recommendable(const ServiceTypeId& service_type,
                                                         double min_trv) const {
    const TrustRecord* best = nullptr;
    // Map order is by provider id, so a strict comparison keeps the smallest
    // id among equal TRVs.
    for (const auto& [key, rec] : trust_records_) {
        if (key.second != service_type || rec.trv.value() < min_trv) continue;
        if (!best || rec.trv > best->trv) best = &rec;
    }
    if (!best) return std::nullopt;
    return *best;
}

bool StoreView::erase_trust_record(const EntityId& provider, const ServiceTypeId& service_type) {
    return trust_records_.erase(RecordKey{provider, service_type}) > 0;
}

void StoreView::append_interaction(InteractionRecord record) {
    if (!interactions_.empty() && record.t_occ < interactions_.back().t_occ) {
        fail(ErrorCode::InvalidInput,
             "append_interaction: tick " + std::to_string(record.t_occ) +
                 " precedes last logged tick " + std::to_string(interactions_.back().t_occ));
    }
    if (!(record.satisfaction >= -1.0 && record.satisfaction <= 1.0)) {
        fail(ErrorCode::InvalidInput, "append_interaction: satisfaction outside [-1, 1]");
    }
    interactions_.push_back(std::move(record));
}

HistoryQuery StoreView::query_history(const EntityId& provider,
                                      const ServiceTypeId& service_type, Tick t_cur,
                                      Tick ttl, int min_records) const {
    HistoryQuery q;
    for (const auto& r : interactions_) {
        if (r.provider_id != provider || r.service_type != service_type) continue;
        if (r.t_occ > t_cur || expired(r.t_occ, t_cur, ttl)) continue;
        q.records.push_back(r);
    }
    q.adequate = min_records > 0 && q.records.size() >= static_cast<std::size_t>(min_records);
    return q;
}

const InteractionRecord* StoreView::last_interaction(const EntityId& provider,
                                                     const ServiceTypeId& service_type) const {
    for (auto it = interactions_.rbegin(); it != interactions_.rend(); ++it) {
        if (it->provider_id == provider && it->service_type == service_type) return &*it;
    }
    return nullptr;
}

RecommenderProfile* StoreView::find_recommender(const EntityId& id) {
    auto it = recommenders_.find(id);
    return it == recommenders_.end() ? nullptr : &it->second;
}

const RecommenderProfile* StoreView::find_recommender(const EntityId& id) const {
    auto it = recommenders_.find(id);
    return it == recommenders_.end() ? nullptr : &it->second;
}

RecommenderProfile& StoreView::recommender(const EntityId& id) {
    auto it = recommenders_.find(id);
    if (it != recommenders_.end()) return it->second;
    RecommenderProfile profile;
    profile.recommender_id = id;
    profile.rt = init_recommender_trust(records_about(id));
    return recommenders_.emplace(id, std::move(profile)).first->second;
}

void StoreView::put_recommender(RecommenderProfile profile) {
    auto id = profile.recommender_id;
    recommenders_.insert_or_assign(std::move(id), std::move(profile));
}

// Snapshots -----------------------------------------------------------------

namespace {

json record_to_json(const TrustRecord& r) {
    return json{{"service_type", r.service_type},
                {"service_attrs", r.service_attrs},
                {"trv", r.trv.value()},
                {"last_updated", r.last_updated},
                {"provider_id", r.provider_id}};
}

json interaction_to_json(const InteractionRecord& r) {
    return json{{"provider_id", r.provider_id},
                {"service_type", r.service_type},
                {"service_attrs", r.service_attrs},
                {"context_attrs", r.context_attrs},
                {"satisfaction", r.satisfaction},
                {"t_occ", r.t_occ}};
}

json recommender_to_json(const RecommenderProfile& p) {
    json history = json::array();
    for (const auto& s : p.accuracy_history) {
        history.push_back(json{{"delta", s.delta}, {"tick", s.tick}});
    }
    json recs = json::array();
    for (auto v : p.recommendations) recs.push_back(v.value());
    return json{{"recommender_id", p.recommender_id},
                {"rt", p.rt.value()},
                {"accuracy_history", std::move(history)},
                {"recommendations", std::move(recs)}};
}

} // namespace

std::string StoreView::to_json() const {
    json doc;
    doc["owner_id"] = owner_id_;
    doc["trust_records"] = json::array();
    for (const auto& [key, rec] : trust_records_) doc["trust_records"].push_back(record_to_json(rec));
    doc["interactions"] = json::array();
    for (const auto& r : interactions_) doc["interactions"].push_back(interaction_to_json(r));
    doc["recommenders"] = json::array();
    for (const auto& [id, p] : recommenders_) doc["recommenders"].push_back(recommender_to_json(p));
    return doc.dump(2);
}

StoreView StoreView::from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        StoreView view(doc.at("owner_id").get<std::string>());

        for (const auto& j : doc.at("trust_records")) {
            TrustRecord r;
            r.service_type = j.at("service_type").get<std::string>();
            r.service_attrs = j.at("service_attrs").get<std::vector<std::string>>();
            r.trv = TrustValue(j.at("trv").get<double>());
            r.provider_id = j.at("provider_id").get<std::string>();
            if (view.find_trust_record(r.provider_id, r.service_type)) {
                fail(ErrorCode::Parse, "snapshot: duplicate trust record for provider '" +
                                           r.provider_id + "' and service type '" +
                                           r.service_type + "'");
            }
            view.upsert_trust_record(std::move(r), j.at("last_updated").get<Tick>());
        }

        for (const auto& j : doc.at("interactions")) {
            InteractionRecord r;
            r.provider_id = j.at("provider_id").get<std::string>();
            r.service_type = j.at("service_type").get<std::string>();
            r.service_attrs = j.at("service_attrs").get<std::vector<double>>();
            r.context_attrs = j.at("context_attrs").get<ContextDescriptor>();
            r.satisfaction = j.at("satisfaction").get<double>();
            r.t_occ = j.at("t_occ").get<Tick>();
            view.append_interaction(std::move(r));
        }

        for (const auto& j : doc.at("recommenders")) {
            RecommenderProfile p;
            p.recommender_id = j.at("recommender_id").get<std::string>();
            p.rt = TrustValue(j.at("rt").get<double>());
            for (const auto& s : j.at("accuracy_history")) {
                AccuracySample sample{s.at("delta").get<double>(), s.at("tick").get<Tick>()};
                if (!(sample.delta >= 0.0 && sample.delta <= 1.0)) {
                    fail(ErrorCode::Parse, "snapshot: accuracy delta outside [0, 1]");
                }
                p.accuracy_history.push_back(sample);
            }
            if (j.contains("recommendations")) {
                for (const auto& v : j.at("recommendations")) {
                    p.recommendations.emplace_back(v.get<double>());
                }
            }
            view.put_recommender(std::move(p));
        }
        return view;
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("snapshot: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) throw;
        fail(ErrorCode::Parse, std::string("snapshot: ") + e.what());
    }
}

// Maintenance ---------------------------------------------------------------

std::size_t refresh_expired_records(StoreView& view, Tick t_cur, const TrustParams& params) {
    std::vector<TrustRecord> stale;
    for (const auto& [key, rec] : view.trust_records()) {
        if (expired(rec, t_cur, params.record_ttl)) stale.push_back(rec);
    }
    for (auto& rec : stale) {
        auto q = view.query_history(rec.provider_id, rec.service_type, t_cur, params.record_ttl,
                                    params.adequacy_min_records);
        if (q.records.empty()) {
            view.erase_trust_record(rec.provider_id, rec.service_type);
            continue;
        }
        rec.trv = direct_trust(q.records, t_cur, params);
        view.upsert_trust_record(std::move(rec), t_cur);
    }
    return stale.size();
}

} // namespace ctrust
