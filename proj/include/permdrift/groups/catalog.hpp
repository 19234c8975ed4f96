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

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace permdrift {

// The nine dangerous permission groups whose membership can expand.
inline constexpr std::array<std::string_view, 9> kGroupRoster = {
    "STORAGE", "LOCATION", "PHONE",    "CONTACTS",      "SMS",
    "CALENDAR", "CALL_LOG", "SENSORS", "NEARBY_DEVICES"};

bool is_known_group(std::string_view group);

// Time-varying permission-to-group mapping. Group composition changed
// across platform releases (CALL_LOG split out of PHONE in 2018, the
// NEARBY_DEVICES group arrived in 2021, granular media joined STORAGE in
// 2022), so membership is keyed by calendar year.
class GroupCatalog {
public:
    struct Entry {
        std::string permission; // bare AOSP name, e.g. READ_CONTACTS
        std::string group;
        int year_added = 0;
        std::optional<int> year_removed; // exclusive; empty = still active
    };

    GroupCatalog() = default;
    explicit GroupCatalog(std::vector<Entry> entries);

    // Parse the TSV catalog file: permission, group, year_added,
    // year_removed (blank = active), '#' comments. Throws CatalogInvalid
    // listing every violated row.
    static GroupCatalog load(const std::string& path);
    static GroupCatalog parse(std::string_view text);

    // Group active for the permission in the given year. Accepts bare or
    // android.permission.-qualified names; empty for ungrouped ones.
    std::optional<std::string> group_of(std::string_view permission, int year) const;

    // All members of a group in a given year.
    std::vector<std::string> members(std::string_view group, int year) const;

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    void validate() const;

    std::vector<Entry> entries_;
    std::map<std::string, std::vector<size_t>, std::less<>> by_permission_;
};

// The catalog shipped under data/; callers may override via file.
GroupCatalog builtin_group_catalog();

} // namespace permdrift
