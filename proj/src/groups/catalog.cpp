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

#include "permdrift/groups/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "permdrift/errors.hpp"
#include "permdrift/util/text.hpp"

namespace permdrift {

namespace {

constexpr std::string_view kAospPrefix = "android.permission.";

std::string_view bare_name(std::string_view permission) {
    if (permission.starts_with(kAospPrefix)) return permission.substr(kAospPrefix.size());
    return permission;
}

// Default mapping. Transition years follow the platform releases that
// changed group composition: the 2018 CALL_LOG split, NEARBY_DEVICES in
// 2021 (wifi variant 2022), granular media joining STORAGE in 2022, and
// background body sensors in 2022.
constexpr std::string_view kBuiltinCatalog = R"(# permission	group	year_added	year_removed
READ_EXTERNAL_STORAGE	STORAGE	2012
WRITE_EXTERNAL_STORAGE	STORAGE	2008
ACCESS_MEDIA_LOCATION	STORAGE	2019
READ_MEDIA_IMAGES	STORAGE	2022
READ_MEDIA_VIDEO	STORAGE	2022
READ_MEDIA_AUDIO	STORAGE	2022
ACCESS_FINE_LOCATION	LOCATION	2008
ACCESS_COARSE_LOCATION	LOCATION	2008
ACCESS_BACKGROUND_LOCATION	LOCATION	2019
READ_PHONE_STATE	PHONE	2008
CALL_PHONE	PHONE	2008
READ_PHONE_NUMBERS	PHONE	2017
ANSWER_PHONE_CALLS	PHONE	2017
ADD_VOICEMAIL	PHONE	2013
USE_SIP	PHONE	2010
ACCEPT_HANDOVER	PHONE	2018
READ_CALL_LOG	PHONE	2012	2018
WRITE_CALL_LOG	PHONE	2012	2018
PROCESS_OUTGOING_CALLS	PHONE	2008	2018
READ_CALL_LOG	CALL_LOG	2018
WRITE_CALL_LOG	CALL_LOG	2018
PROCESS_OUTGOING_CALLS	CALL_LOG	2018
READ_CONTACTS	CONTACTS	2008
WRITE_CONTACTS	CONTACTS	2008
GET_ACCOUNTS	CONTACTS	2008
SEND_SMS	SMS	2008
RECEIVE_SMS	SMS	2008
READ_SMS	SMS	2008
RECEIVE_WAP_PUSH	SMS	2008
RECEIVE_MMS	SMS	2008
READ_CELL_BROADCASTS	SMS	2012
READ_CALENDAR	CALENDAR	2008
WRITE_CALENDAR	CALENDAR	2008
BLUETOOTH_SCAN	NEARBY_DEVICES	2021
BLUETOOTH_CONNECT	NEARBY_DEVICES	2021
BLUETOOTH_ADVERTISE	NEARBY_DEVICES	2021
UWB_RANGING	NEARBY_DEVICES	2021
NEARBY_WIFI_DEVICES	NEARBY_DEVICES	2022
BODY_SENSORS	SENSORS	2015
BODY_SENSORS_BACKGROUND	SENSORS	2022
)";

} // namespace

bool is_known_group(std::string_view group) {
    return std::find(kGroupRoster.begin(), kGroupRoster.end(), group) != kGroupRoster.end();
}

GroupCatalog::GroupCatalog(std::vector<Entry> entries) : entries_(std::move(entries)) {
    validate();
    for (size_t i = 0; i < entries_.size(); ++i) {
        by_permission_[entries_[i].permission].push_back(i);
    }
}

GroupCatalog GroupCatalog::parse(std::string_view text) {
    std::vector<Entry> entries;
    std::vector<std::string> problems;
    size_t line_no = 0;
    for (const auto& raw_line : split(text, '\n')) {
        ++line_no;
        std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split(raw_line, '\t');
        if (fields.size() < 3) {
            problems.push_back("line " + std::to_string(line_no) + ": expected 3+ columns");
            continue;
        }
        Entry e;
        e.permission = std::string(trim(fields[0]));
        e.group = std::string(trim(fields[1]));
        auto added = parse_int(fields[2]);
        if (e.permission.empty() || e.group.empty() || !added) {
            problems.push_back("line " + std::to_string(line_no) + ": bad row");
            continue;
        }
        e.year_added = static_cast<int>(*added);
        if (fields.size() > 3 && !trim(fields[3]).empty()) {
            auto removed = parse_int(fields[3]);
            if (!removed) {
                problems.push_back("line " + std::to_string(line_no) + ": bad year_removed");
                continue;
            }
            e.year_removed = static_cast<int>(*removed);
        }
        entries.push_back(std::move(e));
    }
    if (!problems.empty()) {
        std::string joined;
        for (const auto& p : problems) joined += (joined.empty() ? "" : "; ") + p;
        throw CatalogInvalid("catalog parse failed: " + joined);
    }
    return GroupCatalog(std::move(entries));
}

GroupCatalog GroupCatalog::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CatalogInvalid("cannot open catalog file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void GroupCatalog::validate() const {
    std::vector<std::string> problems;
    for (const auto& e : entries_) {
        if (!is_known_group(e.group)) {
            problems.push_back(e.permission + ": unknown group " + e.group);
        }
        if (e.year_removed && *e.year_removed <= e.year_added) {
            problems.push_back(e.permission + ": year_removed <= year_added");
        }
    }
    // A permission may not belong to two groups in the same year.
    for (size_t i = 0; i < entries_.size(); ++i) {
        for (size_t j = i + 1; j < entries_.size(); ++j) {
            const auto& a = entries_[i];
            const auto& b = entries_[j];
            if (a.permission != b.permission) continue;
            int a_end = a.year_removed.value_or(9999);
            int b_end = b.year_removed.value_or(9999);
            if (a.year_added < b_end && b.year_added < a_end) {
                problems.push_back(a.permission + ": overlapping group intervals");
            }
        }
    }
    if (!problems.empty()) {
        std::string joined;
        for (const auto& p : problems) joined += (joined.empty() ? "" : "; ") + p;
        throw CatalogInvalid("catalog invalid: " + joined);
    }
}

std::optional<std::string> GroupCatalog::group_of(std::string_view permission, int year) const {
    auto it = by_permission_.find(std::string(bare_name(permission)));
    if (it == by_permission_.end()) return std::nullopt;
    for (size_t idx : it->second) {
        const Entry& e = entries_[idx];
        if (year >= e.year_added && (!e.year_removed || year < *e.year_removed)) {
            return e.group;
        }
    }
    return std::nullopt;
}

std::vector<std::string> GroupCatalog::members(std::string_view group, int year) const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
        if (e.group != group) continue;
        if (year >= e.year_added && (!e.year_removed || year < *e.year_removed)) {
            out.push_back(e.permission);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GroupCatalog builtin_group_catalog() {
    return GroupCatalog::parse(kBuiltinCatalog);
}

} // namespace permdrift
