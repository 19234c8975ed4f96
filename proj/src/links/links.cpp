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

#include "permdrift/links/links.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "permdrift/errors.hpp"
#include "permdrift/util/text.hpp"

namespace permdrift {

namespace {

// The most recent release year the shipped data files describe.
constexpr int kLatestYear = 2025;

// Common AOSP permissions with introduction years. Not exhaustive; the
// data file is the override point for anything missing here.
constexpr std::string_view kBuiltinAosp = R"(# name	year_added	year_removed
android.permission.INTERNET	2008
android.permission.ACCESS_NETWORK_STATE	2008
android.permission.ACCESS_WIFI_STATE	2008
android.permission.CHANGE_WIFI_STATE	2008
android.permission.CHANGE_NETWORK_STATE	2008
android.permission.BLUETOOTH	2008
android.permission.BLUETOOTH_ADMIN	2008
android.permission.BLUETOOTH_SCAN	2021
android.permission.BLUETOOTH_CONNECT	2021
android.permission.BLUETOOTH_ADVERTISE	2021
android.permission.NEARBY_WIFI_DEVICES	2022
android.permission.UWB_RANGING	2021
android.permission.CAMERA	2008
android.permission.RECORD_AUDIO	2008
android.permission.VIBRATE	2008
android.permission.WAKE_LOCK	2008
android.permission.RECEIVE_BOOT_COMPLETED	2008
android.permission.FOREGROUND_SERVICE	2018
android.permission.POST_NOTIFICATIONS	2022
android.permission.SYSTEM_ALERT_WINDOW	2008
android.permission.WRITE_SETTINGS	2008
android.permission.NFC	2010
android.permission.FLASHLIGHT	2008
android.permission.GET_TASKS	2008
android.permission.KILL_BACKGROUND_PROCESSES	2009
android.permission.SET_WALLPAPER	2008
android.permission.EXPAND_STATUS_BAR	2008
android.permission.DISABLE_KEYGUARD	2008
android.permission.MODIFY_AUDIO_SETTINGS	2008
android.permission.READ_SYNC_SETTINGS	2008
android.permission.WRITE_SYNC_SETTINGS	2008
android.permission.READ_SYNC_STATS	2008
android.permission.BROADCAST_STICKY	2008
android.permission.GET_PACKAGE_SIZE	2008
android.permission.SET_TIME_ZONE	2008
android.permission.TRANSMIT_IR	2014
android.permission.USE_FINGERPRINT	2015
android.permission.USE_BIOMETRIC	2018
android.permission.REQUEST_INSTALL_PACKAGES	2016
android.permission.REQUEST_DELETE_PACKAGES	2017
android.permission.QUERY_ALL_PACKAGES	2020
android.permission.SCHEDULE_EXACT_ALARM	2021
android.permission.USE_EXACT_ALARM	2022
android.permission.READ_BASIC_PHONE_STATE	2022
android.permission.HIGH_SAMPLING_RATE_SENSORS	2021
android.permission.PACKAGE_USAGE_STATS	2014
android.permission.MANAGE_EXTERNAL_STORAGE	2020
android.permission.WRITE_SECURE_SETTINGS	2008
android.permission.READ_LOGS	2008
android.permission.BATTERY_STATS	2008
android.permission.CHANGE_CONFIGURATION	2008
android.permission.MOUNT_UNMOUNT_FILESYSTEMS	2008
android.permission.INSTALL_PACKAGES	2008
android.permission.DELETE_PACKAGES	2008
android.permission.READ_EXTERNAL_STORAGE	2012
android.permission.WRITE_EXTERNAL_STORAGE	2008
android.permission.ACCESS_MEDIA_LOCATION	2019
android.permission.READ_MEDIA_IMAGES	2022
android.permission.READ_MEDIA_VIDEO	2022
android.permission.READ_MEDIA_AUDIO	2022
android.permission.READ_MEDIA_VISUAL_USER_SELECTED	2023
android.permission.ACCESS_FINE_LOCATION	2008
android.permission.ACCESS_COARSE_LOCATION	2008
android.permission.ACCESS_BACKGROUND_LOCATION	2019
android.permission.READ_PHONE_STATE	2008
android.permission.CALL_PHONE	2008
android.permission.READ_PHONE_NUMBERS	2017
android.permission.ANSWER_PHONE_CALLS	2017
android.permission.ADD_VOICEMAIL	2013
android.permission.USE_SIP	2010
android.permission.ACCEPT_HANDOVER	2018
android.permission.READ_CALL_LOG	2012
android.permission.WRITE_CALL_LOG	2012
android.permission.PROCESS_OUTGOING_CALLS	2008
android.permission.READ_CONTACTS	2008
android.permission.WRITE_CONTACTS	2008
android.permission.GET_ACCOUNTS	2008
android.permission.SEND_SMS	2008
android.permission.RECEIVE_SMS	2008
android.permission.READ_SMS	2008
android.permission.RECEIVE_WAP_PUSH	2008
android.permission.RECEIVE_MMS	2008
android.permission.READ_CELL_BROADCASTS	2012
android.permission.READ_CALENDAR	2008
android.permission.WRITE_CALENDAR	2008
android.permission.BODY_SENSORS	2015
android.permission.BODY_SENSORS_BACKGROUND	2022
android.permission.ACTIVITY_RECOGNITION	2019
com.android.launcher.permission.INSTALL_SHORTCUT	2008
com.android.launcher.permission.UNINSTALL_SHORTCUT	2008
com.android.alarm.permission.SET_ALARM	2009
com.android.voicemail.permission.ADD_VOICEMAIL	2013
android.permission.DOWNLOAD_WITHOUT_NOTIFICATION	2010
android.permission.AUTHENTICATE_ACCOUNTS	2008	2015
android.permission.MANAGE_ACCOUNTS	2008	2015
android.permission.USE_CREDENTIALS	2008	2015
android.permission.READ_PROFILE	2011	2015
android.permission.WRITE_PROFILE	2011	2015
android.permission.READ_USER_DICTIONARY	2008
android.permission.WRITE_USER_DICTIONARY	2008
android.permission.SUBSCRIBED_FEEDS_READ	2008
android.permission.SUBSCRIBED_FEEDS_WRITE	2008
android.permission.PERSISTENT_ACTIVITY	2008	2015
android.permission.RESTART_PACKAGES	2008	2015
)";

constexpr std::string_view kBuiltinKeywords = R"(# column-substring	category
MEDICAL	medical
HEALTH	medical
PATIENT	medical
DIAGNOS	medical
PRESCRIPTION	medical
HEART_RATE	medical
BLOOD	medical
GLUCOSE	medical
PAYMENT	financial
TRANSACTION	financial
CARD_NUMBER	financial
IBAN	financial
BALANCE	financial
INVOICE	financial
CURRENCY	financial
WALLET	financial
TOKEN	auth_credentials
PASSWORD	auth_credentials
PASSWD	auth_credentials
SECRET	auth_credentials
CREDENTIAL	auth_credentials
SESSION_ID	auth_credentials
SESSION_KEY	auth_credentials
API_KEY	auth_credentials
OAUTH	auth_credentials
AUTH	auth_credentials
ACCOUNT_NAME	auth_credentials
ACCOUNT_TYPE	auth_credentials
SMS_BODY	messages
MESSAGE	messages
MSG_BODY	messages
THREAD_ID	messages
SMS	messages
MMS	messages
CONTACT	contacts
PHONE_NUMBER	contacts
DISPLAY_NAME	contacts
GIVEN_NAME	contacts
FAMILY_NAME	contacts
EMAIL	contacts
LATITUDE	location
LONGITUDE	location
ALTITUDE	location
GEO_	location
GPS	location
LOCATION	location
IMEI	user_identity
IMSI	user_identity
DEVICE_ID	user_identity
ANDROID_ID	user_identity
SERIAL	user_identity
SUBSCRIBER	user_identity
SIM_ID	user_identity
ICCID	user_identity
FILE_PATH	file_paths
FILEPATH	file_paths
FILE_NAME	file_paths
FILENAME	file_paths
DIRECTORY	file_paths
STORAGE_PATH	file_paths
_PATH	file_paths
SETTING	settings
CONFIG	settings
PREF	settings
FLAG	settings
OPTION	settings
)";

std::optional<Category> category_from_name(std::string_view name) {
    if (name == "medical") return Category::medical;
    if (name == "financial") return Category::financial;
    if (name == "auth_credentials") return Category::auth_credentials;
    if (name == "messages") return Category::messages;
    if (name == "contacts") return Category::contacts;
    if (name == "location") return Category::location;
    if (name == "user_identity") return Category::user_identity;
    if (name == "file_paths") return Category::file_paths;
    if (name == "settings") return Category::settings;
    return std::nullopt;
}

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInput(std::string("cannot open ") + what + ": " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

AospPermissionList::AospPermissionList(std::vector<Entry> entries) {
    for (auto& e : entries) by_name_[e.name].push_back(e);
}

AospPermissionList AospPermissionList::parse(std::string_view text) {
    std::vector<Entry> entries;
    for (const auto& raw_line : split(text, '\n')) {
        std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split(raw_line, '\t');
        if (fields.size() < 2) continue;
        Entry e;
        e.name = std::string(trim(fields[0]));
        auto added = parse_int(fields[1]);
        if (e.name.empty() || !added) continue;
        e.year_added = static_cast<int>(*added);
        if (fields.size() > 2 && !trim(fields[2]).empty()) {
            if (auto removed = parse_int(fields[2])) e.year_removed = static_cast<int>(*removed);
        }
        entries.push_back(std::move(e));
    }
    return AospPermissionList(std::move(entries));
}

AospPermissionList AospPermissionList::load(const std::string& path) {
    return parse(read_file(path, "AOSP permission list"));
}

bool AospPermissionList::contains(std::string_view name, int year) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return false;
    for (const auto& e : it->second) {
        if (year >= e.year_added && (!e.year_removed || year < *e.year_removed)) return true;
    }
    return false;
}

AospPermissionList builtin_aosp_permissions() {
    return AospPermissionList::parse(kBuiltinAosp);
}

CustomClassification classify_custom(const std::vector<ApkFacts>& records,
                                     const AospPermissionList& aosp) {
    // Latest version of a package wins for (package, permission) records.
    std::map<std::pair<std::string, std::string>, const ApkFacts*> latest;
    for (const auto& facts : records) {
        for (const auto& def : facts.permission_defs) {
            int year = facts.dex_year.value_or(kLatestYear);
            if (aosp.contains(def.name, year)) continue;
            auto key = std::make_pair(facts.package_name, def.name);
            auto it = latest.find(key);
            if (it == latest.end() ||
                facts.version_code > it->second->version_code ||
                (facts.version_code == it->second->version_code &&
                 facts.sha256 > it->second->sha256)) {
                latest[key] = &facts;
            }
        }
    }

    CustomClassification out;
    for (const auto& [key, facts] : latest) {
        const auto& [package, name] = key;
        const PermissionDef* def = nullptr;
        for (const auto& d : facts->permission_defs) {
            if (d.name == name) {
                def = &d;
                break;
            }
        }
        if (!def) continue;

        CustomPermissionRecord record;
        record.name = name;
        record.protection_level = def->protection_level;
        record.explicit_level = def->explicit_level;
        record.defining_package = package;
        record.cert_digest = facts->cert_digest;
        for (const auto& component : facts->components) {
            if (component.exported && component.guard_permission == name) {
                record.guarded_components.push_back(component);
            }
        }

        ++out.level_histogram[to_string(record.protection_level)];
        if (record.protection_level == ProtectionLevel::normal) {
            bool has_kind[4] = {false, false, false, false};
            for (const auto& c : record.guarded_components) {
                has_kind[static_cast<int>(c.kind)] = true;
            }
            if (has_kind[static_cast<int>(ComponentKind::provider)]) {
                ++out.normal_component_breakdown["provider"];
            } else if (has_kind[static_cast<int>(ComponentKind::activity)]) {
                ++out.normal_component_breakdown["activity"];
            } else if (has_kind[static_cast<int>(ComponentKind::service)]) {
                ++out.normal_component_breakdown["service"];
            } else if (has_kind[static_cast<int>(ComponentKind::receiver)]) {
                ++out.normal_component_breakdown["receiver"];
            } else {
                ++out.normal_component_breakdown["unattached"];
            }
        }
        out.records.push_back(std::move(record));
    }
    return out;
}

std::vector<EligibleProvider> eligible_providers(const CustomClassification& classification) {
    std::vector<EligibleProvider> out;
    for (const auto& record : classification.records) {
        if (record.protection_level != ProtectionLevel::normal) continue;
        for (const auto& component : record.guarded_components) {
            if (component.kind != ComponentKind::provider || !component.exported) continue;
            out.push_back({record.name, record.defining_package, record.cert_digest, component});
        }
    }
    std::sort(out.begin(), out.end(), [](const EligibleProvider& a, const EligibleProvider& b) {
        if (a.permission_name != b.permission_name) return a.permission_name < b.permission_name;
        if (a.defining_package != b.defining_package) return a.defining_package < b.defining_package;
        return a.provider.class_name < b.provider.class_name;
    });
    return out;
}

const char* to_string(Category category) {
    switch (category) {
    case Category::medical: return "medical";
    case Category::financial: return "financial";
    case Category::auth_credentials: return "auth_credentials";
    case Category::messages: return "messages";
    case Category::contacts: return "contacts";
    case Category::location: return "location";
    case Category::user_identity: return "user_identity";
    case Category::file_paths: return "file_paths";
    case Category::settings: return "settings";
    }
    return "settings";
}

KeywordMap::KeywordMap(std::vector<std::pair<std::string, Category>> keywords)
    : keywords_(std::move(keywords)) {
    for (auto& [keyword, category] : keywords_) keyword = to_upper(keyword);
}

KeywordMap KeywordMap::parse(std::string_view text) {
    std::vector<std::pair<std::string, Category>> keywords;
    for (const auto& raw_line : split(text, '\n')) {
        std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split(raw_line, '\t');
        if (fields.size() < 2) continue;
        auto category = category_from_name(trim(fields[1]));
        if (!category) continue;
        keywords.emplace_back(std::string(trim(fields[0])), *category);
    }
    return KeywordMap(std::move(keywords));
}

KeywordMap KeywordMap::load(const std::string& path) {
    return parse(read_file(path, "keyword map"));
}

KeywordMap builtin_keyword_map() {
    return KeywordMap::parse(kBuiltinKeywords);
}

std::optional<Category> KeywordMap::categorize(const std::set<std::string>& columns) const {
    std::optional<Category> best;
    for (const auto& column : columns) {
        std::string upper = to_upper(column);
        for (const auto& [keyword, category] : keywords_) {
            if (upper.find(keyword) == std::string::npos) continue;
            if (!best || static_cast<int>(category) < static_cast<int>(*best)) {
                best = category;
            }
        }
    }
    return best;
}

std::vector<CrossDevPair> link_pairs(
    const std::vector<EligibleProvider>& eligible,
    const std::vector<ApkFacts>& requesters,
    const std::map<std::string, std::vector<CallSite>>& call_sites_by_package) {
    // Requesters keyed by declared permission, deduplicated by package.
    std::map<std::string, std::map<std::string, const ApkFacts*>> by_permission;
    for (const auto& facts : requesters) {
        for (const auto& permission : facts.requested_permissions) {
            auto& slot = by_permission[permission][facts.package_name];
            if (!slot || facts.version_code > slot->version_code ||
                (facts.version_code == slot->version_code && facts.sha256 > slot->sha256)) {
                slot = &facts;
            }
        }
    }

    std::set<std::tuple<std::string, std::string, std::string, std::string>> emitted;
    std::vector<CrossDevPair> pairs;

    for (const auto& provider : eligible) {
        if (!provider.cert_digest) continue; // unsigned definer: no developer identity
        auto requesters_it = by_permission.find(provider.permission_name);
        if (requesters_it == by_permission.end()) continue;

        for (const auto& [requester_package, requester] : requesters_it->second) {
            if (!requester->cert_digest) continue;
            if (*requester->cert_digest == *provider.cert_digest) continue;

            auto sites_it = call_sites_by_package.find(requester_package);
            if (sites_it == call_sites_by_package.end()) continue;

            for (const auto& authority : provider.provider.authorities) {
                std::vector<CallSite> matching;
                for (const auto& site : sites_it->second) {
                    if (site.resolved_authority && *site.resolved_authority == authority) {
                        matching.push_back(site);
                    }
                }
                if (matching.empty()) continue;

                auto key = std::make_tuple(provider.permission_name, provider.defining_package,
                                           requester_package, authority);
                if (!emitted.insert(key).second) continue;

                CrossDevPair pair;
                pair.permission_name = provider.permission_name;
                pair.exploitable.package = provider.defining_package;
                pair.exploitable.cert_digest = *provider.cert_digest;
                pair.exploitable.authority = authority;
                pair.exploitable.sensitivity.provider_class = provider.provider.class_name;
                pair.exploiting.package = requester_package;
                pair.exploiting.cert_digest = *requester->cert_digest;
                pair.exploiting.call_sites = std::move(matching);
                pairs.push_back(std::move(pair));
            }
        }
    }
    return pairs;
}

void categorize_pair(CrossDevPair& pair, const ProviderSensitivity& sensitivity,
                     const KeywordMap& keywords) {
    pair.exploitable.sensitivity = sensitivity;
    pair.category = keywords.categorize(sensitivity.column_constants);
    pair.type.reset();
    pair.aosp_gate.reset();
    if (!pair.category) return;
    switch (*pair.category) {
    case Category::contacts:
        pair.type = PairType::A;
        pair.aosp_gate = "android.permission.READ_CONTACTS";
        break;
    case Category::auth_credentials:
        pair.type = PairType::A;
        pair.aosp_gate = "android.permission.GET_ACCOUNTS";
        break;
    case Category::user_identity:
        pair.type = PairType::A;
        pair.aosp_gate = "android.permission.READ_PHONE_STATE";
        break;
    case Category::location:
        pair.type = PairType::A;
        pair.aosp_gate = "android.permission.ACCESS_FINE_LOCATION";
        break;
    case Category::messages:
        pair.type = PairType::A;
        pair.aosp_gate = "android.permission.READ_SMS";
        break;
    case Category::file_paths:
    case Category::medical:
    case Category::financial:
    case Category::settings:
        pair.type = PairType::B;
        break;
    }
}

RoleCounts role_counts(const std::vector<CrossDevPair>& pairs) {
    std::set<std::string> exploitable;
    std::set<std::string> exploiting;
    for (const auto& pair : pairs) {
        exploitable.insert(pair.exploitable.package);
        exploiting.insert(pair.exploiting.package);
    }
    RoleCounts counts;
    for (const auto& package : exploitable) {
        if (exploiting.count(package)) {
            ++counts.both_roles;
        } else {
            ++counts.exploitable_only;
        }
    }
    for (const auto& package : exploiting) {
        if (!exploitable.count(package)) ++counts.exploiting_only;
    }
    return counts;
}

} // namespace permdrift
