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
#include "permdrift/groups/catalog.hpp"

namespace permdrift {

struct PromptEvent {
    enum class Outcome { shown_granted, shown_denied, auto_granted };
    std::string package;
    std::string permission;
    Outcome outcome = Outcome::shown_granted;
    // The group whose earlier grant justified a silent approval.
    std::optional<std::string> group;
};

const char* to_string(PromptEvent::Outcome outcome);

struct InstalledApp {
    long long version_code = 0;
    std::set<std::string> requested_permissions;
    std::vector<PermissionDef> permission_defs;
};

struct DeviceState {
    std::map<std::string, InstalledApp> installed;
    std::map<std::pair<std::string, std::string>, bool> grants; // (package, permission)
    std::vector<PromptEvent> prompt_log;                        // append-only
    int year = 2025;
};

// Deterministic install/update grant semantics: normal permissions
// (AOSP normal and custom normal) auto-grant silently; dangerous ones
// wait for user_grant; updates silently complete any group that already
// holds a granted member. Revocation exists only at group granularity.
class GrantSimulator {
public:
    GrantSimulator(const GroupCatalog& catalog, int year = 2025);

    void install(const ApkFacts& app);
    void user_grant(const std::string& package, const std::string& permission);
    void update(const ApkFacts& app);
    void revoke_group(const std::string& package, const std::string& group);

    bool is_granted(const std::string& package, const std::string& permission) const;
    const DeviceState& state() const { return state_; }

private:
    enum class Level { normal, dangerous, signature, other };
    Level classify(const std::string& permission) const;
    std::optional<std::string> granted_group_member(const InstalledApp& app,
                                                    const std::string& package,
                                                    const std::string& group) const;

    const GroupCatalog& catalog_;
    DeviceState state_;
    std::vector<std::string> install_order_;
};

// Scenario file: one JSON event per line, install/user_grant/update/
// revoke_group, app facts inline. Returns the final state.
struct ScenarioResult {
    DeviceState state;
};

ScenarioResult run_scenario(std::string_view jsonl_text, const GroupCatalog& catalog,
                            int year = 2025);

} // namespace permdrift
