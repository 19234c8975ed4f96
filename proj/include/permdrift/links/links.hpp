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

#include "permdrift/apk/manifest.hpp"
#include "permdrift/dex/callsites.hpp"
#include "permdrift/dex/providers.hpp"

namespace permdrift {

// Canonical AOSP permission names per release year; declarations outside
// this list are custom. TSV: name, year_added, year_removed.
class AospPermissionList {
public:
    struct Entry {
        std::string name;
        int year_added = 0;
        std::optional<int> year_removed;
    };

    AospPermissionList() = default;
    explicit AospPermissionList(std::vector<Entry> entries);

    static AospPermissionList load(const std::string& path);
    static AospPermissionList parse(std::string_view text);

    bool contains(std::string_view name, int year) const;

private:
    std::map<std::string, std::vector<Entry>, std::less<>> by_name_;
};

AospPermissionList builtin_aosp_permissions();

struct CustomPermissionRecord {
    std::string name;
    ProtectionLevel protection_level = ProtectionLevel::normal;
    bool explicit_level = false;
    std::string defining_package;
    std::optional<std::string> cert_digest;
    // Exported components guarded by this permission in the defining app.
    std::vector<ComponentDecl> guarded_components;

    bool attached() const { return !guarded_components.empty(); }
};

struct CustomClassification {
    std::vector<CustomPermissionRecord> records; // one per (package, name)
    std::map<std::string, size_t> level_histogram; // normal/dangerous/signature/other
    // Normal subset by guarded component kind, one bucket per permission:
    // provider > activity > service > receiver > unattached.
    std::map<std::string, size_t> normal_component_breakdown;
};

CustomClassification classify_custom(const std::vector<ApkFacts>& records,
                                     const AospPermissionList& aosp);

struct EligibleProvider {
    std::string permission_name;
    std::string defining_package;
    std::optional<std::string> cert_digest;
    ComponentDecl provider; // exported, guarded by a normal custom permission
};

std::vector<EligibleProvider> eligible_providers(const CustomClassification& classification);

enum class Category {
    medical,
    financial,
    auth_credentials,
    messages,
    contacts,
    location,
    user_identity,
    file_paths,
    settings,
};

const char* to_string(Category category);

// Column-substring to category map; priority is the Category order above.
class KeywordMap {
public:
    KeywordMap() = default;
    explicit KeywordMap(std::vector<std::pair<std::string, Category>> keywords);

    static KeywordMap load(const std::string& path);
    static KeywordMap parse(std::string_view text);

    // Highest-priority category matched by any column constant.
    std::optional<Category> categorize(const std::set<std::string>& columns) const;

private:
    std::vector<std::pair<std::string, Category>> keywords_; // upper-cased
};

KeywordMap builtin_keyword_map();

enum class PairType { A, B };

struct CrossDevPair {
    std::string permission_name;
    struct Exploitable {
        std::string package;
        std::string cert_digest;
        std::string authority;
        ProviderSensitivity sensitivity;
    } exploitable;
    struct Exploiting {
        std::string package;
        std::string cert_digest;
        std::vector<CallSite> call_sites; // resolved against this authority
    } exploiting;
    std::optional<Category> category; // empty = uncategorized (reported)
    std::optional<PairType> type;
    std::optional<std::string> aosp_gate; // Type A only
};

// Static linking conditions: (i) defining app exposes the guarded
// provider, (ii) requester declares the permission and has a call site
// resolving to a declared authority, (iii) certificates differ (both
// present). One pair per (permission, definer, requester, authority).
std::vector<CrossDevPair> link_pairs(
    const std::vector<EligibleProvider>& eligible,
    const std::vector<ApkFacts>& requesters,
    const std::map<std::string, std::vector<CallSite>>& call_sites_by_package);

// Primary category, pair type, and the AOSP gate for Type A categories.
void categorize_pair(CrossDevPair& pair, const ProviderSensitivity& sensitivity,
                     const KeywordMap& keywords);

struct RoleCounts {
    size_t exploitable_only = 0;
    size_t exploiting_only = 0;
    size_t both_roles = 0;
};

RoleCounts role_counts(const std::vector<CrossDevPair>& pairs);

} // namespace permdrift
