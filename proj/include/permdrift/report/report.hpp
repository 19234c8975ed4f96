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

#include <string>
#include <vector>

#include "permdrift/expansion/expansion.hpp"
#include "permdrift/links/links.hpp"
#include "permdrift/sim/monitor.hpp"
#include "permdrift/stats/stats.hpp"

namespace permdrift {

// Aligned-text and CSV emitters for the result tables. Deterministic:
// identical inputs produce identical bytes.

std::string render_flow_tables(const std::vector<FlowEntry>& flows,
                               const PermissionLabels& labels, size_t top_k = 6);
std::string render_flow_csv(const std::vector<FlowEntry>& flows);

std::string render_group_volume(const ExpansionSummary& summary);
std::string render_group_volume_csv(const ExpansionSummary& summary);

std::string render_yearly_trend_csv(const ExpansionSummary& summary);

std::string render_sweep_csv(const std::vector<SweepEntry>& entries);
std::string render_stats_text(const std::vector<SweepEntry>& entries, int primary_threshold);

std::string render_stratified(const std::vector<ContingencyTable>& strata,
                              const StratificationConfig& config);
std::string render_stratified_csv(const std::vector<ContingencyTable>& strata,
                                  const StratificationConfig& config);

std::string render_custom_panels(const CustomClassification& classification);
std::string render_custom_csv(const CustomClassification& classification);

std::string render_category_table(const std::vector<CrossDevPair>& pairs);
std::string render_category_csv(const std::vector<CrossDevPair>& pairs);

std::string render_monitor_summary(const ReplaySummary& summary);

// One user-facing line per update-time notification.
std::string render_notifications(const std::vector<NotificationRecord>& records);

} // namespace permdrift
