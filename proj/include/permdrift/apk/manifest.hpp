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

#include "permdrift/apk/axml.hpp"
#include "permdrift/util/bytes.hpp"

namespace permdrift {

enum class ProtectionLevel { normal, dangerous, signature, other };

const char* to_string(ProtectionLevel level);
ProtectionLevel parse_protection_level(std::string_view text);

struct PermissionDef {
    std::string name;
    ProtectionLevel protection_level = ProtectionLevel::normal;
    // False when the manifest omitted android:protectionLevel, in which
    // case the platform default (normal) applies.
    bool explicit_level = false;

    bool operator==(const PermissionDef&) const = default;
};

enum class ComponentKind { provider, activity, service, receiver };

const char* to_string(ComponentKind kind);

struct ComponentDecl {
    ComponentKind kind = ComponentKind::activity;
    std::string class_name;
    bool exported = false;
    std::optional<std::string> guard_permission;
    std::vector<std::string> authorities; // providers only

    bool operator==(const ComponentDecl&) const = default;
};

// Corpus metadata joined against each APK by file digest.
struct MetaRow {
    int dex_year = 0;
    std::set<std::string> markets;
    int vt_detections = 0;
};

struct ApkFacts {
    std::string sha256;
    std::string package_name;
    long long version_code = 0;
    std::optional<std::string> cert_digest;
    std::set<std::string> requested_permissions;
    std::vector<PermissionDef> permission_defs;
    std::vector<ComponentDecl> components;
    // Metadata; dex_year is empty for APKs with no corpus metadata row,
    // and downstream stages skip such records.
    std::optional<int> dex_year;
    std::set<std::string> markets;
    int vt_detections = 0;

    // maxSdkVersion values seen on <uses-permission> entries. Recorded for
    // inspection; the entries still count as requested.
    std::map<std::string, int> requested_max_sdk;

    bool operator==(const ApkFacts&) const = default;
};

// Interpret a parsed manifest tree. Throws MalformedManifest when the
// root is not <manifest> or the package attribute is empty.
ApkFacts facts_from_manifest(const XmlNode& root);

// Full APK path: container, manifest (binary or plaintext), certificate
// digest, identity digest, metadata merge. Throws MalformedContainer /
// MalformedManifest; both abort this APK only.
ApkFacts parse_apk(ByteView apk_bytes, const std::optional<MetaRow>& meta);

} // namespace permdrift
