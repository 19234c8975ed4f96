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

#include "permdrift/report/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <span>
#include <sstream>

#include "permdrift/errors.hpp"
#include "permdrift/util/text.hpp"

namespace permdrift {

namespace {

constexpr std::string_view kMainFlowGroups[] = {"CONTACTS", "SMS", "PHONE", "CALL_LOG"};
constexpr std::string_view kOtherFlowGroups[] = {"STORAGE", "LOCATION", "NEARBY_DEVICES",
                                                 "CALENDAR", "SENSORS"};

std::string fixed(double value, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

// Minimal aligned-column writer.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str() const {
        std::vector<size_t> widths(header_.size());
        for (size_t c = 0; c < header_.size(); ++c) widths[c] = header_[c].size();
        for (const auto& row : rows_) {
            for (size_t c = 0; c < row.size() && c < widths.size(); ++c) {
                widths[c] = std::max(widths[c], row[c].size());
            }
        }
        std::ostringstream out;
        auto emit = [&](const std::vector<std::string>& row) {
            for (size_t c = 0; c < widths.size(); ++c) {
                std::string cell = c < row.size() ? row[c] : "";
                out << cell << std::string(widths[c] - cell.size(), ' ');
                out << (c + 1 < widths.size() ? "  " : "");
            }
            out << "\n";
        };
        emit(header_);
        size_t total = 0;
        for (size_t w : widths) total += w;
        out << std::string(total + 2 * (widths.size() - 1), '-') << "\n";
        for (const auto& row : rows_) emit(row);
        return out.str();
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void flow_panel(std::ostringstream& out, const std::vector<FlowEntry>& flows,
                std::span<const std::string_view> groups, const PermissionLabels& labels,
                size_t top_k, const char* title) {
    out << title << "\n";
    TextTable table({"Group", "Flow", "Count"});
    for (std::string_view group : groups) {
        size_t taken = 0;
        for (const auto& flow : flows) {
            if (flow.group != group) continue;
            if (taken++ >= top_k) break;
            table.add_row({flow.group,
                           labels.label(flow.from_permission) + " -> " +
                               labels.label(flow.to_permission),
                           std::to_string(flow.count)});
        }
    }
    out << table.str() << "\n";
}

} // namespace

std::string render_flow_tables(const std::vector<FlowEntry>& flows,
                               const PermissionLabels& labels, size_t top_k) {
    std::ostringstream out;
    flow_panel(out, flows, kMainFlowGroups, labels, top_k,
               "Top permission-group expansion flows (main groups)");
    flow_panel(out, flows, kOtherFlowGroups, labels, top_k,
               "Top permission-group expansion flows (remaining groups)");
    return out.str();
}

std::string render_flow_csv(const std::vector<FlowEntry>& flows) {
    std::ostringstream out;
    out << "group,from_permission,to_permission,count\n";
    for (const auto& flow : flows) {
        out << flow.group << "," << flow.from_permission << "," << flow.to_permission << ","
            << flow.count << "\n";
    }
    return out.str();
}

std::string render_group_volume(const ExpansionSummary& summary) {
    std::ostringstream out;
    out << "Permission-group expansion volume over " << summary.chains
        << " multi-version apps\n";
    TextTable table({"Permission Group", "Expanding Apps", "Expansions", "% of Total"});
    for (const auto& row : summary.per_group) {
        table.add_row({row.group, std::to_string(row.expanding_apps),
                       std::to_string(row.events), fixed(row.pct_of_total, 1)});
    }
    table.add_row({"Total", std::to_string(summary.expanding_apps),
                   std::to_string(summary.total_events),
                   summary.total_events ? "100.0" : "0.0"});
    out << table.str();
    out << "\nMean expansions per expanding app: "
        << fixed(summary.mean_events_per_expanding_app, 2) << "\n";
    out << "Market strata of expanding apps: play_only="
        << summary.market_strata.play_only
        << " non_play_only=" << summary.market_strata.non_play_only
        << " cross_market=" << summary.market_strata.cross_market << "\n";
    return out.str();
}

std::string render_group_volume_csv(const ExpansionSummary& summary) {
    std::ostringstream out;
    out << "group,expanding_apps,expansions,pct_of_total\n";
    for (const auto& row : summary.per_group) {
        out << row.group << "," << row.expanding_apps << "," << row.events << ","
            << fixed(row.pct_of_total, 1) << "\n";
    }
    return out.str();
}

std::string render_yearly_trend_csv(const ExpansionSummary& summary) {
    std::ostringstream out;
    out << "year,expanding_apps,mean_expansions_per_expanding_app\n";
    for (const auto& row : summary.per_year) {
        out << row.year << "," << row.expanding_apps << ","
            << fixed(row.mean_events_per_expanding_app, 2) << "\n";
    }
    return out.str();
}

std::string render_sweep_csv(const std::vector<SweepEntry>& entries) {
    std::ostringstream out;
    out << "threshold,a,b,c,d,odds_ratio,chi_squared,p_value,mh_or,mh_ci_low,mh_ci_high,"
           "degenerate\n";
    for (const auto& entry : entries) {
        out << entry.threshold << "," << entry.table.a << "," << entry.table.b << ","
            << entry.table.c << "," << entry.table.d << ",";
        if (entry.stats) {
            out << fixed(entry.stats->odds_ratio, 4) << "," << fixed(entry.stats->chi_squared, 2)
                << "," << fixed(entry.stats->p_value, 6) << ","
                << fixed(entry.stats->mh_odds_ratio, 4) << "," << fixed(entry.stats->mh_ci_low, 4)
                << "," << fixed(entry.stats->mh_ci_high, 4) << ",0\n";
        } else {
            out << ",,,,,,1\n";
        }
    }
    return out.str();
}

std::string render_stats_text(const std::vector<SweepEntry>& entries, int primary_threshold) {
    std::ostringstream out;
    out << "Malware association across VirusTotal thresholds\n";
    TextTable table({"t", "OR", "chi^2", "p", "MH OR", "95% CI", ""});
    for (const auto& entry : entries) {
        std::string mark = entry.threshold == primary_threshold ? "primary" : "";
        if (entry.stats) {
            table.add_row({std::to_string(entry.threshold), fixed(entry.stats->odds_ratio, 2),
                           fixed(entry.stats->chi_squared, 1),
                           entry.stats->p_value < 0.001 ? "<0.001"
                                                        : fixed(entry.stats->p_value, 3),
                           fixed(entry.stats->mh_odds_ratio, 2),
                           "[" + fixed(entry.stats->mh_ci_low, 2) + ", " +
                               fixed(entry.stats->mh_ci_high, 2) + "]",
                           mark});
        } else {
            table.add_row({std::to_string(entry.threshold), "-", "-", "-", "-",
                           "degenerate: " + entry.degenerate_reason, mark});
        }
    }
    out << table.str();
    return out.str();
}

std::string render_stratified(const std::vector<ContingencyTable>& strata,
                              const StratificationConfig& config) {
    std::ostringstream out;
    out << "Quartile-stratified odds ratios (max declared permission count)\n";
    TextTable table({"Max Permission Quartile", "Apps (n)", "OR"});
    for (size_t i = 0; i < strata.size(); ++i) {
        std::string or_text;
        try {
            or_text = fixed(odds_ratio(strata[i]), 2);
        } catch (const DegenerateTable&) {
            or_text = "undefined";
        }
        table.add_row({config.stratum_label(i), std::to_string(strata[i].total()), or_text});
    }
    long long total = 0;
    for (const auto& t : strata) total += t.total();
    std::string pooled_text;
    try {
        auto mh = mantel_haenszel(strata);
        pooled_text = fixed(mh.odds_ratio, 2) + " [" + fixed(mh.ci_low, 2) + ", " +
                      fixed(mh.ci_high, 2) + "]";
    } catch (const DegenerateStratum&) {
        pooled_text = "undefined";
    }
    table.add_row({"Pooled Mantel-Haenszel", std::to_string(total), pooled_text});
    out << table.str();
    return out.str();
}

std::string render_stratified_csv(const std::vector<ContingencyTable>& strata,
                                  const StratificationConfig& config) {
    std::ostringstream out;
    out << "quartile,a,b,c,d,n,odds_ratio\n";
    for (size_t i = 0; i < strata.size(); ++i) {
        const auto& t = strata[i];
        out << "\"" << config.stratum_label(i) << "\"," << t.a << "," << t.b << "," << t.c
            << "," << t.d << "," << t.total() << ",";
        try {
            out << fixed(odds_ratio(t), 4);
        } catch (const DegenerateTable&) {
        }
        out << "\n";
    }
    return out.str();
}

std::string render_custom_panels(const CustomClassification& classification) {
    std::ostringstream out;
    size_t total = classification.records.size();
    out << "Custom permissions: protection-level split\n";
    TextTable levels({"Protection level", "Count", "%"});
    for (const char* level : {"signature", "normal", "dangerous", "other"}) {
        auto it = classification.level_histogram.find(level);
        size_t count = it == classification.level_histogram.end() ? 0 : it->second;
        levels.add_row({level, std::to_string(count),
                        total ? fixed(100.0 * static_cast<double>(count) /
                                          static_cast<double>(total),
                                      1)
                              : "0.0"});
    }
    levels.add_row({"Total", std::to_string(total), total ? "100.0" : "0.0"});
    out << levels.str() << "\n";

    size_t normal_total = 0;
    for (const auto& [kind, count] : classification.normal_component_breakdown) {
        (void)kind;
        normal_total += count;
    }
    out << "Normal subset by guarded component type\n";
    TextTable kinds({"Component (normal)", "Count", "%"});
    for (const char* kind : {"provider", "activity", "service", "receiver", "unattached"}) {
        auto it = classification.normal_component_breakdown.find(kind);
        size_t count = it == classification.normal_component_breakdown.end() ? 0 : it->second;
        kinds.add_row({kind, std::to_string(count),
                       normal_total ? fixed(100.0 * static_cast<double>(count) /
                                                static_cast<double>(normal_total),
                                            1)
                                    : "0.0"});
    }
    kinds.add_row({"Total", std::to_string(normal_total), normal_total ? "100.0" : "0.0"});
    out << kinds.str();
    return out.str();
}

std::string render_custom_csv(const CustomClassification& classification) {
    std::ostringstream out;
    out << "panel,key,count\n";
    for (const char* level : {"signature", "normal", "dangerous", "other"}) {
        auto it = classification.level_histogram.find(level);
        out << "level," << level << ","
            << (it == classification.level_histogram.end() ? 0 : it->second) << "\n";
    }
    for (const char* kind : {"provider", "activity", "service", "receiver", "unattached"}) {
        auto it = classification.normal_component_breakdown.find(kind);
        out << "normal_component," << kind << ","
            << (it == classification.normal_component_breakdown.end() ? 0 : it->second) << "\n";
    }
    return out.str();
}

std::string render_category_table(const std::vector<CrossDevPair>& pairs) {
    std::map<std::string, std::pair<std::string, size_t>> rows; // category -> (type/gate, n)
    size_t uncategorized = 0;
    for (const auto& pair : pairs) {
        if (!pair.category) {
            ++uncategorized;
            continue;
        }
        auto& row = rows[to_string(*pair.category)];
        row.first = pair.type && *pair.type == PairType::A
                        ? "A," + pair.aosp_gate.value_or("")
                        : "B,";
        ++row.second;
    }

    std::ostringstream out;
    out << "Primary data category per linked pair\n";
    TextTable table({"Type", "Data Category", "Pairs", "AOSP Gate (Type A only)"});
    // Type A categories first, then Type B, mirroring the result shape.
    const char* ordered[] = {"contacts",   "auth_credentials", "user_identity",
                             "location",   "messages",         "file_paths",
                             "medical",    "financial",        "settings"};
    for (const char* category : ordered) {
        auto it = rows.find(category);
        if (it == rows.end()) continue;
        auto type_and_gate = split(it->second.first, ',');
        table.add_row({type_and_gate[0], category, std::to_string(it->second.second),
                       type_and_gate.size() > 1 && !type_and_gate[1].empty() ? type_and_gate[1]
                                                                             : "---"});
    }
    if (uncategorized > 0) {
        table.add_row({"-", "uncategorized", std::to_string(uncategorized), "---"});
    }
    table.add_row({"", "Total", std::to_string(pairs.size()), ""});
    out << table.str();
    return out.str();
}

std::string render_category_csv(const std::vector<CrossDevPair>& pairs) {
    std::ostringstream out;
    out << "type,category,pairs,aosp_gate\n";
    std::map<std::string, std::tuple<std::string, size_t, std::string>> rows;
    size_t uncategorized = 0;
    for (const auto& pair : pairs) {
        if (!pair.category) {
            ++uncategorized;
            continue;
        }
        auto& [type, count, gate] = rows[to_string(*pair.category)];
        type = pair.type && *pair.type == PairType::A ? "A" : "B";
        gate = pair.aosp_gate.value_or("");
        ++count;
    }
    for (const auto& [category, row] : rows) {
        out << std::get<0>(row) << "," << category << "," << std::get<1>(row) << ","
            << std::get<2>(row) << "\n";
    }
    if (uncategorized) out << ",uncategorized," << uncategorized << ",\n";
    return out.str();
}

std::string render_notifications(const std::vector<NotificationRecord>& records) {
    std::ostringstream out;
    for (const auto& record : records) {
        out << record.timestamp << " " << record.package
            << ": This app has gained a new permission: " << record.human_label
            << ". Review in Settings. (" << record.settings_link_hint << ")\n";
    }
    return out.str();
}

std::string render_monitor_summary(const ReplaySummary& summary) {
    std::ostringstream out;
    out << "Monitor replay summary\n";
    out << "  notifications:     " << summary.notification_count << "\n";
    out << "  notified packages: " << summary.distinct_packages << "\n";
    out << "  span (days):       " << fixed(summary.span_days, 1) << "\n";
    out << "  mean gap (days):   "
        << (summary.mean_gap_days ? fixed(*summary.mean_gap_days, 2) : "undefined") << "\n";
    return out.str();
}

} // namespace permdrift
