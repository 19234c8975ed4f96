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

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "permdrift/apk/manifest.hpp"
#include "permdrift/groups/catalog.hpp"

namespace permdrift {

inline constexpr std::string_view kPlayMarket = "play.google.com";

struct VersionChain {
    std::string package_name;
    std::vector<ApkFacts> versions; // ascending per the ordering rule
};

// One silent within-group addition between two adjacent versions.
struct ExpansionEvent {
    std::string package_name;
    long long from_version = 0;
    long long to_version = 0;
    std::string group;
    std::string added_permission;
    std::set<std::string> prior_members; // group members already requested
    int year = 0;                        // later version's dex year
    bool cross_market = false;

    bool operator==(const ExpansionEvent&) const = default;
    auto operator<=>(const ExpansionEvent&) const = default;
};

struct FlowEntry {
    std::string group;
    std::string from_permission;
    std::string to_permission;
    long long count = 0;

    bool operator==(const FlowEntry&) const = default;
};

struct ChainBuildResult {
    std::vector<VersionChain> chains;
    size_t packages_total = 0;
    size_t single_version_dropped = 0;
    size_t records_without_metadata = 0;
};

// Versions ordered by version_code, ties broken by dex_year then sha256.
// Packages with fewer than two usable versions are dropped and counted;
// records with no metadata row are skipped and counted.
ChainBuildResult build_chains(std::vector<ApkFacts> records);

// Adjacent-pair diff: an event per permission added in the later version
// whose group (at the later version's year) already had a member in the
// earlier version's requested set.
std::vector<ExpansionEvent> detect_expansions(const VersionChain& chain,
                                              const GroupCatalog& catalog);

// One increment per (prior member, added permission) pair, per event.
// Sorted by group, then count descending, then flow names.
std::vector<FlowEntry> flow_table(const std::vector<ExpansionEvent>& events);

struct GroupVolumeRow {
    std::string group;
    size_t expanding_apps = 0;
    size_t events = 0;
    double pct_of_total = 0.0;
};

struct YearTrendRow {
    int year = 0;
    size_t expanding_apps = 0;
    double mean_events_per_expanding_app = 0.0;
};

struct MarketStrata {
    size_t play_only = 0;
    size_t non_play_only = 0;
    size_t cross_market = 0;
};

struct ExpansionSummary {
    size_t packages_total = 0;
    size_t chains = 0;
    size_t single_version_dropped = 0;
    size_t expanding_apps = 0;
    size_t total_events = 0;
    double mean_events_per_expanding_app = 0.0;
    std::vector<GroupVolumeRow> per_group; // descending by events
    std::vector<YearTrendRow> per_year;    // ascending by year
    MarketStrata market_strata;            // over expanding apps
};

ExpansionSummary aggregate(const std::vector<ExpansionEvent>& events,
                           const ChainBuildResult& chains);

} // namespace permdrift
