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

#include "permdrift/sim/monitor.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "permdrift/errors.hpp"
#include "permdrift/util/text.hpp"

namespace permdrift {

namespace {

constexpr std::string_view kBuiltinLabels = R"(# permission	label
READ_MEDIA_IMAGES	Read Images
READ_MEDIA_VIDEO	Read Video
READ_MEDIA_AUDIO	Read Audio
READ_EXTERNAL_STORAGE	Read Storage
WRITE_EXTERNAL_STORAGE	Write Storage
ACCESS_MEDIA_LOCATION	Media Location
ACCESS_FINE_LOCATION	Precise Location
ACCESS_COARSE_LOCATION	Approximate Location
ACCESS_BACKGROUND_LOCATION	Background Location
READ_CONTACTS	Read Contacts
WRITE_CONTACTS	Write Contacts
GET_ACCOUNTS	Device Accounts
READ_PHONE_STATE	Read Phone State
READ_PHONE_NUMBERS	Read Phone Numbers
CALL_PHONE	Place Calls
ANSWER_PHONE_CALLS	Answer Calls
READ_CALL_LOG	Read Call Log
WRITE_CALL_LOG	Write Call Log
PROCESS_OUTGOING_CALLS	Process Outgoing Calls
SEND_SMS	Send SMS
READ_SMS	Read SMS
RECEIVE_SMS	Receive SMS
RECEIVE_MMS	Receive MMS
RECEIVE_WAP_PUSH	Receive WAP Push
READ_CALENDAR	Read Calendar
WRITE_CALENDAR	Write Calendar
BLUETOOTH_SCAN	Scan Nearby Devices
BLUETOOTH_CONNECT	Connect Nearby Devices
BLUETOOTH_ADVERTISE	Advertise To Nearby Devices
NEARBY_WIFI_DEVICES	Nearby Wi-Fi Devices
UWB_RANGING	Ultra-Wideband Ranging
BODY_SENSORS	Body Sensors
BODY_SENSORS_BACKGROUND	Background Body Sensors
)";

std::string bare_permission(const std::string& permission) {
    auto dot = permission.rfind('.');
    return dot == std::string::npos ? permission : permission.substr(dot + 1);
}

} // namespace

PermissionLabels::PermissionLabels(std::map<std::string, std::string> labels)
    : labels_(std::move(labels)) {}

PermissionLabels PermissionLabels::parse(std::string_view text) {
    std::map<std::string, std::string> labels;
    for (const auto& raw_line : split(text, '\n')) {
        std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split(raw_line, '\t');
        if (fields.size() < 2) continue;
        labels[std::string(trim(fields[0]))] = std::string(trim(fields[1]));
    }
    return PermissionLabels(std::move(labels));
}

PermissionLabels PermissionLabels::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInput("cannot open label map: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

PermissionLabels builtin_permission_labels() {
    return PermissionLabels::parse(kBuiltinLabels);
}

std::string PermissionLabels::label(const std::string& permission) const {
    std::string bare = bare_permission(permission);
    if (auto it = labels_.find(bare); it != labels_.end()) return it->second;
    if (auto it = labels_.find(permission); it != labels_.end()) return it->second;
    // READ_MEDIA_IMAGES -> "Read Media Images"
    std::string out;
    bool start = true;
    for (char c : bare) {
        if (c == '_') {
            out.push_back(' ');
            start = true;
        } else if (start) {
            out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
            start = false;
        } else {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return out;
}

UpdateMonitor::UpdateMonitor(const GroupCatalog& catalog, PermissionLabels labels)
    : catalog_(catalog), labels_(std::move(labels)) {}

std::vector<NotificationRecord> UpdateMonitor::on_package_event(
    MonitorState& state, const PackageEvent& event) const {
    std::vector<NotificationRecord> emitted;

    auto key = std::make_pair(event.package, event.version_code);
    if (state.seen.count(key)) return emitted; // replay

    auto snapshot_it = state.snapshots.find(event.package);
    bool first_sight = snapshot_it == state.snapshots.end();

    if (event.kind == PackageEvent::Kind::replaced && first_sight) {
        state.diagnostics.push_back("replaced without prior snapshot: " + event.package +
                                    " (treated as added)");
    }

    if (event.kind == PackageEvent::Kind::replaced && !first_sight) {
        const auto& [old_version, old_permissions] = snapshot_it->second;
        (void)old_version;
        int year = iso_year(event.timestamp).value_or(2025);

        for (const auto& permission : event.permissions) {
            if (old_permissions.count(permission)) continue;
            auto group = catalog_.group_of(permission, year);
            if (!group) continue;
            if (!event.granted_groups.count(*group)) continue;
            // First-time group introduction: nothing of this group in the
            // previous snapshot means no silent widening happened.
            bool group_was_present = false;
            for (const auto& old_permission : old_permissions) {
                auto old_group = catalog_.group_of(old_permission, year);
                if (old_group && *old_group == *group) {
                    group_was_present = true;
                    break;
                }
            }
            if (!group_was_present) continue;

            NotificationRecord record;
            record.package = event.package;
            record.permission = permission;
            record.group = *group;
            record.human_label = labels_.label(permission);
            record.settings_link_hint = "settings://apps/" + event.package + "/permissions";
            record.timestamp = event.timestamp;
            emitted.push_back(record);
        }
    }

    state.snapshots[event.package] = {event.version_code, event.permissions};
    state.seen.insert(key);
    for (const auto& record : emitted) state.notifications.push_back(record);
    return emitted;
}

ReplaySummary UpdateMonitor::replay_log(MonitorState& state,
                                        const std::vector<PackageEvent>& events) const {
    ReplaySummary summary;
    if (events.empty()) return summary;

    long long first_ts = 0;
    long long last_ts = 0;
    long long prev_ts = 0;
    std::set<std::string> packages;

    for (size_t i = 0; i < events.size(); ++i) {
        auto ts = parse_iso_timestamp(events[i].timestamp);
        if (!ts) throw OutOfOrder("unparseable timestamp: " + events[i].timestamp);
        if (i == 0) {
            first_ts = *ts;
        } else if (*ts < prev_ts) {
            throw OutOfOrder("event log timestamps are not monotone at " + events[i].timestamp);
        }
        prev_ts = *ts;
        last_ts = *ts;

        for (const auto& record : on_package_event(state, events[i])) {
            ++summary.notification_count;
            packages.insert(record.package);
        }
    }

    summary.distinct_packages = packages.size();
    summary.span_days = static_cast<double>(last_ts - first_ts) / 86400.0;
    if (summary.notification_count > 0 && summary.span_days > 0) {
        summary.mean_gap_days =
            summary.span_days / static_cast<double>(summary.notification_count);
    }
    return summary;
}

double estimate_burden(double app_count, double additions_per_app_per_year) {
    if (app_count <= 0 || additions_per_app_per_year <= 0) return 0.0;
    return app_count * additions_per_app_per_year / 52.0;
}

} // namespace permdrift
