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

#include "permdrift/expansion/expansion.hpp"

#include <algorithm>

namespace permdrift {

namespace {

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return false;
        if (*ia < *ib) {
            ++ia;
        } else {
            ++ib;
        }
    }
    return true;
}

} // namespace

ChainBuildResult build_chains(std::vector<ApkFacts> records) {
    ChainBuildResult result;
    std::map<std::string, std::vector<ApkFacts>> by_package;
    for (auto& record : records) {
        if (!record.dex_year) {
            ++result.records_without_metadata;
            continue;
        }
        by_package[record.package_name].push_back(std::move(record));
    }
    result.packages_total = by_package.size();

    for (auto& [package, versions] : by_package) {
        if (versions.size() < 2) {
            ++result.single_version_dropped;
            continue;
        }
        std::sort(versions.begin(), versions.end(),
                  [](const ApkFacts& a, const ApkFacts& b) {
                      if (a.version_code != b.version_code) {
                          return a.version_code < b.version_code;
                      }
                      if (*a.dex_year != *b.dex_year) return *a.dex_year < *b.dex_year;
                      return a.sha256 < b.sha256;
                  });
        result.chains.push_back({package, std::move(versions)});
    }
    return result;
}

std::vector<ExpansionEvent> detect_expansions(const VersionChain& chain,
                                              const GroupCatalog& catalog) {
    std::vector<ExpansionEvent> events;
    for (size_t i = 0; i + 1 < chain.versions.size(); ++i) {
        const ApkFacts& earlier = chain.versions[i];
        const ApkFacts& later = chain.versions[i + 1];
        int year = later.dex_year.value_or(0);
        bool cross_market = disjoint(earlier.markets, later.markets);

        for (const auto& added : later.requested_permissions) {
            if (earlier.requested_permissions.count(added)) continue;
            auto group = catalog.group_of(added, year);
            if (!group) continue;

            std::set<std::string> prior;
            for (const auto& existing : earlier.requested_permissions) {
                auto existing_group = catalog.group_of(existing, year);
                if (existing_group && *existing_group == *group) prior.insert(existing);
            }
            if (prior.empty()) continue;

            events.push_back({chain.package_name, earlier.version_code, later.version_code,
                              *group, added, std::move(prior), year, cross_market});
        }
    }
    return events;
}

std::vector<FlowEntry> flow_table(const std::vector<ExpansionEvent>& events) {
    std::map<std::tuple<std::string, std::string, std::string>, long long> counts;
    for (const auto& event : events) {
        for (const auto& member : event.prior_members) {
            ++counts[{event.group, member, event.added_permission}];
        }
    }
    std::vector<FlowEntry> table;
    table.reserve(counts.size());
    for (const auto& [key, count] : counts) {
        table.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
    }
    std::sort(table.begin(), table.end(), [](const FlowEntry& a, const FlowEntry& b) {
        if (a.group != b.group) return a.group < b.group;
        if (a.count != b.count) return a.count > b.count;
        if (a.from_permission != b.from_permission) return a.from_permission < b.from_permission;
        return a.to_permission < b.to_permission;
    });
    return table;
}

ExpansionSummary aggregate(const std::vector<ExpansionEvent>& events,
                           const ChainBuildResult& chains) {
    ExpansionSummary summary;
    summary.packages_total = chains.packages_total;
    summary.chains = chains.chains.size();
    summary.single_version_dropped = chains.single_version_dropped;
    summary.total_events = events.size();

    std::set<std::string> expanding;
    std::map<std::string, std::set<std::string>> group_apps;
    std::map<std::string, size_t> group_events;
    std::map<int, std::set<std::string>> year_apps;
    std::map<int, size_t> year_events;
    std::set<std::string> cross_market_apps;

    for (const auto& event : events) {
        expanding.insert(event.package_name);
        group_apps[event.group].insert(event.package_name);
        ++group_events[event.group];
        year_apps[event.year].insert(event.package_name);
        ++year_events[event.year];
        if (event.cross_market) cross_market_apps.insert(event.package_name);
    }

    summary.expanding_apps = expanding.size();
    summary.mean_events_per_expanding_app =
        expanding.empty() ? 0.0
                          : static_cast<double>(events.size()) / static_cast<double>(expanding.size());

    for (const auto& [group, apps] : group_apps) {
        GroupVolumeRow row;
        row.group = group;
        row.expanding_apps = apps.size();
        row.events = group_events[group];
        row.pct_of_total = events.empty()
                               ? 0.0
                               : 100.0 * static_cast<double>(row.events) /
                                     static_cast<double>(events.size());
        summary.per_group.push_back(std::move(row));
    }
    std::sort(summary.per_group.begin(), summary.per_group.end(),
              [](const GroupVolumeRow& a, const GroupVolumeRow& b) {
                  if (a.events != b.events) return a.events > b.events;
                  return a.group < b.group;
              });

    for (const auto& [year, apps] : year_apps) {
        YearTrendRow row;
        row.year = year;
        row.expanding_apps = apps.size();
        row.mean_events_per_expanding_app =
            static_cast<double>(year_events[year]) / static_cast<double>(apps.size());
        summary.per_year.push_back(row);
    }

    // Market provenance over expanding apps: any cross-market event marks
    // the app cross-market; otherwise Play-only when every observed market
    // is the Play store.
    for (const auto& chain : chains.chains) {
        if (!expanding.count(chain.package_name)) continue;
        if (cross_market_apps.count(chain.package_name)) {
            ++summary.market_strata.cross_market;
            continue;
        }
        bool play_only = true;
        for (const auto& version : chain.versions) {
            for (const auto& market : version.markets) {
                if (market != kPlayMarket) {
                    play_only = false;
                    break;
                }
            }
            if (version.markets.empty()) play_only = false;
            if (!play_only) break;
        }
        if (play_only) {
            ++summary.market_strata.play_only;
        } else {
            ++summary.market_strata.non_play_only;
        }
    }

    return summary;
}

} // namespace permdrift
