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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "permdrift/groups/catalog.hpp"

namespace permdrift {

// permission -> display string, e.g. READ_MEDIA_IMAGES -> "Read Images".
class PermissionLabels {
public:
    PermissionLabels() = default;
    explicit PermissionLabels(std::map<std::string, std::string> labels);

    static PermissionLabels load(const std::string& path);
    static PermissionLabels parse(std::string_view text);

    // Falls back to title-casing the bare permission name.
    std::string label(const std::string& permission) const;

private:
    std::map<std::string, std::string> labels_;
};

PermissionLabels builtin_permission_labels();

struct NotificationRecord {
    std::string package;
    std::string permission;
    std::string group;
    std::string human_label;
    std::string settings_link_hint;
    std::string timestamp;

    bool operator==(const NotificationRecord&) const = default;
};

struct PackageEvent {
    enum class Kind { added, replaced };
    std::string timestamp; // ISO-8601 UTC
    Kind kind = Kind::added;
    std::string package;
    long long version_code = 0;
    std::set<std::string> permissions;
    std::set<std::string> granted_groups; // grant view supplied by the host
};

struct MonitorState {
    std::map<std::string, std::pair<long long, std::set<std::string>>> snapshots;
    std::set<std::pair<std::string, long long>> seen; // (package, version) dedup
    std::vector<NotificationRecord> notifications;
    std::vector<std::string> diagnostics; // replaced-without-snapshot cases
};

struct ReplaySummary {
    size_t notification_count = 0;
    size_t distinct_packages = 0;
    double span_days = 0.0;
    std::optional<double> mean_gap_days; // span / count; empty when undefined
};

// Update-time transparency logic: cache a per-package permission
// snapshot, and on replacement notify for each new permission landing in
// an already granted group that already had a member. First sightings
// and replayed (package, version) events emit nothing.
class UpdateMonitor {
public:
    UpdateMonitor(const GroupCatalog& catalog, PermissionLabels labels);

    std::vector<NotificationRecord> on_package_event(MonitorState& state,
                                                     const PackageEvent& event) const;

    // Events must be time-ordered; throws OutOfOrder otherwise.
    ReplaySummary replay_log(MonitorState& state,
                             const std::vector<PackageEvent>& events) const;

private:
    const GroupCatalog& catalog_;
    PermissionLabels labels_;
};

// Expected notifications per week for a device profile.
double estimate_burden(double app_count, double additions_per_app_per_year);

} // namespace permdrift
