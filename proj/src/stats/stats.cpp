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

#include "permdrift/stats/stats.hpp"

#include <algorithm>
#include <cmath>

#include "permdrift/errors.hpp"

namespace permdrift {

namespace {

constexpr double kZ95 = 1.959963984540054;

} // namespace

double odds_ratio(const ContingencyTable& t) {
    if (t.b <= 0 || t.c <= 0) {
        throw DegenerateTable("odds ratio undefined: b*c is zero");
    }
    return (static_cast<double>(t.a) * static_cast<double>(t.d)) /
           (static_cast<double>(t.b) * static_cast<double>(t.c));
}

ChiSquared chi_squared(const ContingencyTable& t) {
    double r1 = static_cast<double>(t.a + t.b);
    double r2 = static_cast<double>(t.c + t.d);
    double c1 = static_cast<double>(t.a + t.c);
    double c2 = static_cast<double>(t.b + t.d);
    if (r1 <= 0 || r2 <= 0 || c1 <= 0 || c2 <= 0) {
        throw DegenerateTable("chi-squared undefined: zero marginal");
    }
    double n = r1 + r2;
    double delta = static_cast<double>(t.a) * static_cast<double>(t.d) -
                   static_cast<double>(t.b) * static_cast<double>(t.c);
    ChiSquared out;
    out.statistic = n * delta * delta / (r1 * r2 * c1 * c2);
    // Survival function for one degree of freedom.
    out.p_value = std::erfc(std::sqrt(out.statistic / 2.0));
    return out;
}

MantelHaenszelResult mantel_haenszel(std::span<const ContingencyTable> strata) {
    if (strata.empty()) throw DegenerateStratum("no strata");

    double R = 0.0, S = 0.0;
    double sum_pr = 0.0, sum_ps_qr = 0.0, sum_qs = 0.0;
    for (const auto& t : strata) {
        double n = static_cast<double>(t.total());
        if (n <= 0) continue;
        double a = static_cast<double>(t.a), b = static_cast<double>(t.b);
        double c = static_cast<double>(t.c), d = static_cast<double>(t.d);
        double rk = a * d / n;
        double sk = b * c / n;
        double pk = (a + d) / n;
        double qk = (b + c) / n;
        R += rk;
        S += sk;
        sum_pr += pk * rk;
        sum_ps_qr += pk * sk + qk * rk;
        sum_qs += qk * sk;
    }
    if (S <= 0.0 || R <= 0.0) {
        throw DegenerateStratum("pooled odds ratio undefined");
    }

    MantelHaenszelResult out;
    out.odds_ratio = R / S;
    double variance = sum_pr / (2.0 * R * R) + sum_ps_qr / (2.0 * R * S) +
                      sum_qs / (2.0 * S * S);
    double se = std::sqrt(variance);
    out.ci_low = std::exp(std::log(out.odds_ratio) - kZ95 * se);
    out.ci_high = std::exp(std::log(out.odds_ratio) + kZ95 * se);
    return out;
}

void validate(const VtLabelConfig& config) {
    if (config.threshold < 1) throw Error("threshold must be >= 1");
    for (int t : config.sweep) {
        if (t < 2 || t > 39) {
            throw Error("sweep threshold " + std::to_string(t) + " outside [2, 39]");
        }
    }
}

std::vector<AppLabel> label_apps(const ChainBuildResult& chains,
                                 const std::vector<ExpansionEvent>& events) {
    std::set<std::string> expanding;
    for (const auto& event : events) expanding.insert(event.package_name);

    std::vector<AppLabel> labels;
    labels.reserve(chains.chains.size());
    for (const auto& chain : chains.chains) {
        AppLabel label;
        label.package = chain.package_name;
        for (const auto& version : chain.versions) {
            label.max_detections = std::max(label.max_detections, version.vt_detections);
            label.max_permissions =
                std::max(label.max_permissions, version.requested_permissions.size());
        }
        label.expanding = expanding.count(chain.package_name) > 0;
        labels.push_back(std::move(label));
    }
    return labels;
}

ContingencyTable make_table(std::span<const AppLabel> labels, int threshold) {
    ContingencyTable t;
    for (const auto& label : labels) {
        bool flagged = label.max_detections >= threshold;
        if (label.expanding) {
            (flagged ? t.a : t.b)++;
        } else {
            (flagged ? t.c : t.d)++;
        }
    }
    return t;
}

size_t StratificationConfig::stratum_of(size_t permission_count) const {
    for (size_t i = 0; i < upper_bounds.size(); ++i) {
        if (permission_count <= upper_bounds[i]) return i;
    }
    return upper_bounds.size();
}

std::string StratificationConfig::stratum_label(size_t index) const {
    size_t low = index == 0 ? 1 : upper_bounds[index - 1] + 1;
    if (index >= upper_bounds.size()) {
        return "Q" + std::to_string(index + 1) + " (" + std::to_string(low) + "+)";
    }
    return "Q" + std::to_string(index + 1) + " (" + std::to_string(low) + "-" +
           std::to_string(upper_bounds[index]) + ")";
}

std::vector<ContingencyTable> stratify(std::span<const AppLabel> labels, int threshold,
                                       const StratificationConfig& config) {
    std::vector<ContingencyTable> strata(config.strata_count());
    for (const auto& label : labels) {
        ContingencyTable& t = strata[config.stratum_of(label.max_permissions)];
        bool flagged = label.max_detections >= threshold;
        if (label.expanding) {
            (flagged ? t.a : t.b)++;
        } else {
            (flagged ? t.c : t.d)++;
        }
    }
    return strata;
}

std::vector<SweepEntry> threshold_sweep(std::span<const AppLabel> labels,
                                        std::vector<int> sweep,
                                        const StratificationConfig& strat) {
    std::sort(sweep.begin(), sweep.end());
    sweep.erase(std::unique(sweep.begin(), sweep.end()), sweep.end());

    std::vector<SweepEntry> entries;
    entries.reserve(sweep.size());
    for (int threshold : sweep) {
        SweepEntry entry;
        entry.threshold = threshold;
        entry.table = make_table(labels, threshold);
        try {
            StatsResult stats;
            stats.odds_ratio = odds_ratio(entry.table);
            auto chi = chi_squared(entry.table);
            stats.chi_squared = chi.statistic;
            stats.p_value = chi.p_value;
            auto strata = stratify(labels, threshold, strat);
            auto mh = mantel_haenszel(strata);
            stats.mh_odds_ratio = mh.odds_ratio;
            stats.mh_ci_low = mh.ci_low;
            stats.mh_ci_high = mh.ci_high;
            entry.stats = stats;
        } catch (const Error& e) {
            entry.degenerate_reason = e.what();
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

} // namespace permdrift
