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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permdrift/expansion/expansion.hpp"

namespace permdrift {

// 2x2 counts: rows expanding / non-expanding, columns flagged / benign.
struct ContingencyTable {
    long long a = 0; // flagged and expanding
    long long b = 0; // benign and expanding
    long long c = 0; // flagged and non-expanding
    long long d = 0; // benign and non-expanding

    long long total() const { return a + b + c + d; }
};

// (a*d)/(b*c). Throws DegenerateTable when b*c == 0; undefined is
// reported, never infinity.
double odds_ratio(const ContingencyTable& table);

struct ChiSquared {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Pearson statistic on one degree of freedom, no continuity correction.
// Throws DegenerateTable when any marginal is zero.
ChiSquared chi_squared(const ContingencyTable& table);

struct MantelHaenszelResult {
    double odds_ratio = 0.0;
    double ci_low = 0.0; // 95%, Robins-Breslow-Greenland variance
    double ci_high = 0.0;
};

// Pooled OR = sum(a_k d_k / n_k) / sum(b_k c_k / n_k). Throws
// DegenerateStratum when no stratum contributes to either sum.
MantelHaenszelResult mantel_haenszel(std::span<const ContingencyTable> strata);

struct VtLabelConfig {
    int threshold = 20;
    std::vector<int> sweep = {2, 5, 10, 20, 39};
};

// Throws Error when threshold < 1 or a sweep value leaves [2, 39].
void validate(const VtLabelConfig& config);

// Per-app labeling inputs: highest detection count across versions, the
// widest requested-permission set, and whether the app ever expanded.
struct AppLabel {
    std::string package;
    int max_detections = 0;
    size_t max_permissions = 0;
    bool expanding = false;
};

std::vector<AppLabel> label_apps(const ChainBuildResult& chains,
                                 const std::vector<ExpansionEvent>& events);

ContingencyTable make_table(std::span<const AppLabel> labels, int threshold);

// Quartile boundaries over the maximum declared permission count. The
// defaults split at 1-8 / 9-12 / 13-23 / 24+.
struct StratificationConfig {
    std::vector<size_t> upper_bounds = {8, 12, 23};

    size_t stratum_of(size_t permission_count) const;
    size_t strata_count() const { return upper_bounds.size() + 1; }
    std::string stratum_label(size_t index) const;
};

std::vector<ContingencyTable> stratify(std::span<const AppLabel> labels, int threshold,
                                       const StratificationConfig& config);

struct StatsResult {
    double odds_ratio = 0.0;
    double chi_squared = 0.0;
    double p_value = 1.0;
    double mh_odds_ratio = 0.0;
    double mh_ci_low = 0.0;
    double mh_ci_high = 0.0;
};

struct SweepEntry {
    int threshold = 0;
    ContingencyTable table;
    std::optional<StatsResult> stats;  // empty when degenerate
    std::string degenerate_reason;     // set when stats is empty
};

// Full statistics at each threshold, ascending; per-threshold degeneracy
// is marked and the sweep continues.
std::vector<SweepEntry> threshold_sweep(std::span<const AppLabel> labels,
                                        std::vector<int> sweep,
                                        const StratificationConfig& strat);

} // namespace permdrift
