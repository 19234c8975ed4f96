/*
 * Copyright (C) 2026 The Permdrift Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "permdrift/io/jsonl.hpp"

#include <fstream>

#include "permdrift/errors.hpp"
#include "permdrift/util/text.hpp"

namespace permdrift {

namespace {

ProtectionLevel protection_level_from_string(const std::string& s) {
    if (s == "normal") return ProtectionLevel::normal;
    if (s == "dangerous") return ProtectionLevel::dangerous;
    if (s == "signature") return ProtectionLevel::signature;
    return ProtectionLevel::other;
}

ComponentKind component_kind_from_string(const std::string& s) {
    if (s == "provider") return ComponentKind::provider;
    if (s == "service") return ComponentKind::service;
    if (s == "receiver") return ComponentKind::receiver;
    return ComponentKind::activity;
}

template <typename T>
Json sorted_array(const std::set<T>& values) {
    Json arr = Json::array();
    for (const auto& v : values) arr.push_back(v);
    return arr;
}

} // namespace

Json to_json(const ApkFacts& facts) {
    Json j;
    j["sha256"] = facts.sha256;
    j["package_name"] = facts.package_name;
    j["version_code"] = facts.version_code;
    j["cert_digest"] = facts.cert_digest ? Json(*facts.cert_digest) : Json(nullptr);
    j["requested_permissions"] = sorted_array(facts.requested_permissions);
    Json defs = Json::array();
    for (const auto& def : facts.permission_defs) {
        Json d;
        d["name"] = def.name;
        d["protection_level"] = to_string(def.protection_level);
        d["explicit_level"] = def.explicit_level;
        defs.push_back(std::move(d));
    }
    j["permission_defs"] = std::move(defs);
    Json components = Json::array();
    for (const auto& component : facts.components) {
        Json c;
        c["kind"] = to_string(component.kind);
        c["class_name"] = component.class_name;
        c["exported"] = component.exported;
        c["guard_permission"] =
            component.guard_permission ? Json(*component.guard_permission) : Json(nullptr);
        c["authorities"] = component.authorities;
        components.push_back(std::move(c));
    }
    j["components"] = std::move(components);
    j["dex_year"] = facts.dex_year ? Json(*facts.dex_year) : Json(nullptr);
    j["markets"] = sorted_array(facts.markets);
    j["vt_detections"] = facts.vt_detections;
    return j;
}

ApkFacts apk_facts_from_json(const Json& j) {
    ApkFacts facts;
    facts.sha256 = j.value("sha256", "");
    facts.package_name = j.at("package_name").get<std::string>();
    facts.version_code = j.value("version_code", 0LL);
    if (j.contains("cert_digest") && !j["cert_digest"].is_null()) {
        facts.cert_digest = j["cert_digest"].get<std::string>();
    }
    for (const auto& p : j.value("requested_permissions", Json::array())) {
        facts.requested_permissions.insert(p.get<std::string>());
    }
    for (const auto& d : j.value("permission_defs", Json::array())) {
        PermissionDef def;
        def.name = d.at("name").get<std::string>();
        def.protection_level = protection_level_from_string(d.value("protection_level", "normal"));
        def.explicit_level = d.value("explicit_level", false);
        facts.permission_defs.push_back(std::move(def));
    }
    for (const auto& c : j.value("components", Json::array())) {
        ComponentDecl decl;
        decl.kind = component_kind_from_string(c.value("kind", "activity"));
        decl.class_name = c.value("class_name", "");
        decl.exported = c.value("exported", false);
        if (c.contains("guard_permission") && !c["guard_permission"].is_null()) {
            decl.guard_permission = c["guard_permission"].get<std::string>();
        }
        for (const auto& a : c.value("authorities", Json::array())) {
            decl.authorities.push_back(a.get<std::string>());
        }
        facts.components.push_back(std::move(decl));
    }
    if (j.contains("dex_year") && !j["dex_year"].is_null()) {
        facts.dex_year = j["dex_year"].get<int>();
    }
    for (const auto& m : j.value("markets", Json::array())) {
        facts.markets.insert(m.get<std::string>());
    }
    facts.vt_detections = j.value("vt_detections", 0);
    return facts;
}

Json to_json(const ExpansionEvent& event) {
    Json j;
    j["package_name"] = event.package_name;
    j["from_version"] = event.from_version;
    j["to_version"] = event.to_version;
    j["group"] = event.group;
    j["added_permission"] = event.added_permission;
    j["prior_members"] = sorted_array(event.prior_members);
    j["year"] = event.year;
    j["cross_market"] = event.cross_market;
    return j;
}

ExpansionEvent expansion_event_from_json(const Json& j) {
    ExpansionEvent event;
    event.package_name = j.at("package_name").get<std::string>();
    event.from_version = j.at("from_version").get<long long>();
    event.to_version = j.at("to_version").get<long long>();
    event.group = j.at("group").get<std::string>();
    event.added_permission = j.at("added_permission").get<std::string>();
    for (const auto& m : j.value("prior_members", Json::array())) {
        event.prior_members.insert(m.get<std::string>());
    }
    event.year = j.value("year", 0);
    event.cross_market = j.value("cross_market", false);
    return event;
}

Json to_json(const ExpansionSummary& summary) {
    Json j;
    j["packages_total"] = summary.packages_total;
    j["chains"] = summary.chains;
    j["single_version_dropped"] = summary.single_version_dropped;
    j["expanding_apps"] = summary.expanding_apps;
    j["total_events"] = summary.total_events;
    j["mean_events_per_expanding_app"] = summary.mean_events_per_expanding_app;
    Json groups = Json::array();
    for (const auto& row : summary.per_group) {
        Json g;
        g["group"] = row.group;
        g["expanding_apps"] = row.expanding_apps;
        g["events"] = row.events;
        g["pct_of_total"] = row.pct_of_total;
        groups.push_back(std::move(g));
    }
    j["per_group"] = std::move(groups);
    Json years = Json::array();
    for (const auto& row : summary.per_year) {
        Json y;
        y["year"] = row.year;
        y["expanding_apps"] = row.expanding_apps;
        y["mean_events_per_expanding_app"] = row.mean_events_per_expanding_app;
        years.push_back(std::move(y));
    }
    j["per_year"] = std::move(years);
    Json strata;
    strata["play_only"] = summary.market_strata.play_only;
    strata["non_play_only"] = summary.market_strata.non_play_only;
    strata["cross_market"] = summary.market_strata.cross_market;
    j["market_strata"] = std::move(strata);
    return j;
}

Json to_json(const CallSite& site) {
    Json j;
    j["declaring_class"] = site.declaring_class;
    j["method_name"] = site.method_name;
    j["op_kind"] = to_string(site.op_kind);
    j["resolved_authority"] =
        site.resolved_authority ? Json(*site.resolved_authority) : Json(nullptr);
    j["attribution"] = to_string(site.attribution);
    return j;
}

CallSite call_site_from_json(const Json& j) {
    CallSite site;
    site.declaring_class = j.at("declaring_class").get<std::string>();
    site.method_name = j.value("method_name", "");
    std::string op = j.value("op_kind", "query");
    site.op_kind = resolver_op_from_name(op).value_or(ResolverOp::query);
    if (j.contains("resolved_authority") && !j["resolved_authority"].is_null()) {
        site.resolved_authority = j["resolved_authority"].get<std::string>();
    }
    std::string attribution = j.value("attribution", "unclassified");
    if (attribution == "app_core") {
        site.attribution = Attribution::app_core;
    } else if (attribution == "third_party") {
        site.attribution = Attribution::third_party;
    } else {
        site.attribution = Attribution::unclassified;
    }
    return site;
}

Json to_json(const ProviderSensitivity& sensitivity) {
    Json j;
    j["provider_class"] = sensitivity.provider_class;
    j["column_constants"] = sorted_array(sensitivity.column_constants);
    j["store_kind"] = to_string(sensitivity.store_kind);
    return j;
}

Json to_json(const CrossDevPair& pair) {
    Json j;
    j["permission_name"] = pair.permission_name;
    Json exploitable;
    exploitable["package"] = pair.exploitable.package;
    exploitable["cert_digest"] = pair.exploitable.cert_digest;
    exploitable["authority"] = pair.exploitable.authority;
    exploitable["sensitivity"] = to_json(pair.exploitable.sensitivity);
    j["exploitable"] = std::move(exploitable);
    Json exploiting;
    exploiting["package"] = pair.exploiting.package;
    exploiting["cert_digest"] = pair.exploiting.cert_digest;
    Json sites = Json::array();
    for (const auto& site : pair.exploiting.call_sites) sites.push_back(to_json(site));
    exploiting["call_sites"] = std::move(sites);
    j["exploiting"] = std::move(exploiting);
    j["category"] = pair.category ? Json(to_string(*pair.category)) : Json("uncategorized");
    j["type"] = pair.type ? Json(*pair.type == PairType::A ? "A" : "B") : Json(nullptr);
    j["aosp_gate"] = pair.aosp_gate ? Json(*pair.aosp_gate) : Json(nullptr);
    return j;
}

Json to_json(const SweepEntry& entry) {
    Json j;
    j["threshold"] = entry.threshold;
    j["a"] = entry.table.a;
    j["b"] = entry.table.b;
    j["c"] = entry.table.c;
    j["d"] = entry.table.d;
    if (entry.stats) {
        j["or"] = entry.stats->odds_ratio;
        j["chi2"] = entry.stats->chi_squared;
        j["p"] = entry.stats->p_value;
        j["mh_or"] = entry.stats->mh_odds_ratio;
        j["mh_ci"] = Json::array({entry.stats->mh_ci_low, entry.stats->mh_ci_high});
        j["degenerate"] = false;
    } else {
        j["degenerate"] = true;
        j["degenerate_reason"] = entry.degenerate_reason;
    }
    return j;
}

Json to_json(const DeviceState& state) {
    Json j;
    j["year"] = state.year;
    Json installed = Json::array();
    for (const auto& [package, app] : state.installed) {
        Json a;
        a["package"] = package;
        a["version_code"] = app.version_code;
        a["requested_permissions"] = sorted_array(app.requested_permissions);
        installed.push_back(std::move(a));
    }
    j["installed"] = std::move(installed);
    Json grants = Json::array();
    for (const auto& [key, granted] : state.grants) {
        Json g;
        g["package"] = key.first;
        g["permission"] = key.second;
        g["granted"] = granted;
        grants.push_back(std::move(g));
    }
    j["grants"] = std::move(grants);
    Json log = Json::array();
    for (const auto& event : state.prompt_log) {
        Json e;
        e["package"] = event.package;
        e["permission"] = event.permission;
        e["outcome"] = to_string(event.outcome);
        e["group"] = event.group ? Json(*event.group) : Json(nullptr);
        log.push_back(std::move(e));
    }
    j["prompt_log"] = std::move(log);
    return j;
}

Json to_json(const NotificationRecord& record) {
    Json j;
    j["package"] = record.package;
    j["permission"] = record.permission;
    j["group"] = record.group;
    j["human_label"] = record.human_label;
    j["settings_link_hint"] = record.settings_link_hint;
    j["timestamp"] = record.timestamp;
    return j;
}

Json to_json(const ReplaySummary& summary) {
    Json j;
    j["notification_count"] = summary.notification_count;
    j["distinct_packages"] = summary.distinct_packages;
    j["span_days"] = summary.span_days;
    j["mean_gap_days"] = summary.mean_gap_days ? Json(*summary.mean_gap_days) : Json(nullptr);
    return j;
}

PackageEvent package_event_from_json(const Json& j) {
    PackageEvent event;
    event.timestamp = j.at("timestamp").get<std::string>();
    std::string kind = j.at("event").get<std::string>();
    if (kind == "added") {
        event.kind = PackageEvent::Kind::added;
    } else if (kind == "replaced") {
        event.kind = PackageEvent::Kind::replaced;
    } else {
        throw Error("unknown monitor event kind: " + kind);
    }
    event.package = j.at("package").get<std::string>();
    event.version_code = j.value("version_code", 0LL);
    for (const auto& p : j.value("permissions", Json::array())) {
        event.permissions.insert(p.get<std::string>());
    }
    for (const auto& g : j.value("granted_groups", Json::array())) {
        event.granted_groups.insert(g.get<std::string>());
    }
    return event;
}

std::vector<Json> read_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInput("cannot open " + path);
    std::vector<Json> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        lines.push_back(Json::parse(line));
    }
    return lines;
}

void write_jsonl(const std::string& path, const std::vector<Json>& lines) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    for (const auto& j : lines) out << j.dump() << "\n";
}

} // namespace permdrift
