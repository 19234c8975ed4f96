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

#include "permdrift/sim/grant.hpp"

#include <algorithm>

#include "permdrift/errors.hpp"

namespace permdrift {

const char* to_string(PromptEvent::Outcome outcome) {
    switch (outcome) {
    case PromptEvent::Outcome::shown_granted: return "shown_granted";
    case PromptEvent::Outcome::shown_denied: return "shown_denied";
    case PromptEvent::Outcome::auto_granted: return "auto_granted";
    }
    return "shown_granted";
}

GrantSimulator::GrantSimulator(const GroupCatalog& catalog, int year) : catalog_(catalog) {
    state_.year = year;
}

GrantSimulator::Level GrantSimulator::classify(const std::string& permission) const {
    // Custom definitions win (first definer, install order), then the
    // dangerous-group catalog; anything else behaves as normal.
    for (const auto& package : install_order_) {
        auto it = state_.installed.find(package);
        if (it == state_.installed.end()) continue;
        for (const auto& def : it->second.permission_defs) {
            if (def.name != permission) continue;
            switch (def.protection_level) {
            case ProtectionLevel::normal: return Level::normal;
            case ProtectionLevel::dangerous: return Level::dangerous;
            case ProtectionLevel::signature: return Level::signature;
            case ProtectionLevel::other: return Level::other;
            }
        }
    }
    if (catalog_.group_of(permission, state_.year)) return Level::dangerous;
    return Level::normal;
}

std::optional<std::string> GrantSimulator::granted_group_member(
    const InstalledApp& app, const std::string& package, const std::string& group) const {
    for (const auto& permission : app.requested_permissions) {
        auto g = catalog_.group_of(permission, state_.year);
        if (!g || *g != group) continue;
        auto it = state_.grants.find({package, permission});
        if (it != state_.grants.end() && it->second) return permission;
    }
    return std::nullopt;
}

void GrantSimulator::install(const ApkFacts& app) {
    if (state_.installed.count(app.package_name)) {
        throw AlreadyInstalled(app.package_name + " is already installed");
    }
    InstalledApp installed;
    installed.version_code = app.version_code;
    installed.requested_permissions = app.requested_permissions;
    installed.permission_defs = app.permission_defs;
    state_.installed[app.package_name] = installed;
    install_order_.push_back(app.package_name);

    for (const auto& permission : app.requested_permissions) {
        bool granted = classify(permission) == Level::normal;
        state_.grants[{app.package_name, permission}] = granted;
    }
}

void GrantSimulator::user_grant(const std::string& package, const std::string& permission) {
    auto it = state_.installed.find(package);
    if (it == state_.installed.end() || !it->second.requested_permissions.count(permission)) {
        throw NotRequested(package + " does not request " + permission);
    }
    if (classify(permission) != Level::dangerous) {
        throw NotDangerous(permission + " is not a dangerous permission");
    }
    state_.grants[{package, permission}] = true;
    state_.prompt_log.push_back(
        {package, permission, PromptEvent::Outcome::shown_granted, std::nullopt});
}

void GrantSimulator::update(const ApkFacts& app) {
    auto it = state_.installed.find(app.package_name);
    if (it == state_.installed.end() || it->second.version_code >= app.version_code) {
        throw DowngradeRejected(app.package_name + ": update requires a higher versionCode");
    }
    InstalledApp& installed = it->second;

    // Newly requested permissions, evaluated against pre-update grants.
    std::vector<std::string> added;
    for (const auto& permission : app.requested_permissions) {
        if (!installed.requested_permissions.count(permission)) added.push_back(permission);
    }
    std::sort(added.begin(), added.end());

    for (const auto& permission : added) {
        Level level = classify(permission);
        if (level == Level::normal) {
            state_.grants[{app.package_name, permission}] = true;
            continue;
        }
        if (level != Level::dangerous) {
            state_.grants[{app.package_name, permission}] = false;
            continue;
        }
        auto group = catalog_.group_of(permission, state_.year);
        bool auto_grant = false;
        if (group) {
            auto_grant = granted_group_member(installed, app.package_name, *group).has_value();
        }
        state_.grants[{app.package_name, permission}] = auto_grant;
        if (auto_grant) {
            state_.prompt_log.push_back(
                {app.package_name, permission, PromptEvent::Outcome::auto_granted, group});
        }
    }

    // Permissions no longer requested lose their grant entries.
    for (const auto& permission : installed.requested_permissions) {
        if (!app.requested_permissions.count(permission)) {
            state_.grants.erase({app.package_name, permission});
        }
    }

    installed.version_code = app.version_code;
    installed.requested_permissions = app.requested_permissions;
    installed.permission_defs = app.permission_defs;
}

void GrantSimulator::revoke_group(const std::string& package, const std::string& group) {
    auto it = state_.installed.find(package);
    if (it == state_.installed.end()) return; // revoking on nothing is a no-op
    for (const auto& permission : it->second.requested_permissions) {
        auto g = catalog_.group_of(permission, state_.year);
        if (g && *g == group) {
            auto grant = state_.grants.find({package, permission});
            if (grant != state_.grants.end()) grant->second = false;
        }
    }
}

bool GrantSimulator::is_granted(const std::string& package,
                                const std::string& permission) const {
    auto it = state_.grants.find({package, permission});
    return it != state_.grants.end() && it->second;
}

} // namespace permdrift
