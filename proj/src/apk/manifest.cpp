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

#include "permdrift/apk/manifest.hpp"

#include "permdrift/apk/cert.hpp"
#include "permdrift/apk/zip.hpp"
#include "permdrift/errors.hpp"
#include "permdrift/util/sha256.hpp"
#include "permdrift/util/text.hpp"

namespace permdrift {

const char* to_string(ProtectionLevel level) {
    switch (level) {
    case ProtectionLevel::normal: return "normal";
    case ProtectionLevel::dangerous: return "dangerous";
    case ProtectionLevel::signature: return "signature";
    case ProtectionLevel::other: return "other";
    }
    return "other";
}

ProtectionLevel parse_protection_level(std::string_view text) {
    std::string value(trim(text));
    if (value.empty()) return ProtectionLevel::normal;

    // Binary manifests store the level numerically; the base level lives
    // in the low nibble and flags (privileged, development, ...) above it.
    long long numeric = -1;
    if (value.starts_with("0x") || value.starts_with("0X")) {
        numeric = std::strtoll(value.c_str() + 2, nullptr, 16);
    } else if (auto n = parse_int(value)) {
        numeric = *n;
    }
    if (numeric >= 0) {
        switch (numeric & 0xf) {
        case 0: return ProtectionLevel::normal;
        case 1: return ProtectionLevel::dangerous;
        case 2: return ProtectionLevel::signature;
        default: return ProtectionLevel::other;
        }
    }

    std::string base = split(value, '|')[0];
    if (base == "normal") return ProtectionLevel::normal;
    if (base == "dangerous") return ProtectionLevel::dangerous;
    if (base == "signature") return ProtectionLevel::signature;
    return ProtectionLevel::other;
}

const char* to_string(ComponentKind kind) {
    switch (kind) {
    case ComponentKind::provider: return "provider";
    case ComponentKind::activity: return "activity";
    case ComponentKind::service: return "service";
    case ComponentKind::receiver: return "receiver";
    }
    return "activity";
}

namespace {

bool parse_bool(std::string_view text) {
    return text == "true" || text == "1" || text == "-1";
}

// Component names may be written relative to the package.
std::string resolve_class_name(const std::string& package, const std::string& name) {
    if (name.empty()) return name;
    if (name.front() == '.') return package + name;
    if (name.find('.') == std::string::npos) return package + "." + name;
    return name;
}

std::optional<ComponentKind> component_kind(const std::string& tag) {
    if (tag == "provider") return ComponentKind::provider;
    if (tag == "activity") return ComponentKind::activity;
    if (tag == "service") return ComponentKind::service;
    if (tag == "receiver") return ComponentKind::receiver;
    return std::nullopt;
}

} // namespace

ApkFacts facts_from_manifest(const XmlNode& root) {
    if (root.tag != "manifest") throw MalformedManifest("root element is not <manifest>");

    ApkFacts facts;
    auto package = root.attr("package");
    if (!package || package->empty()) throw MalformedManifest("manifest has no package name");
    facts.package_name = *package;

    if (auto version = root.attr("android:versionCode")) {
        auto code = parse_int(*version);
        if (!code || *code < 0) throw MalformedManifest("invalid versionCode");
        facts.version_code = *code;
    }

    for (const auto& child : root.children) {
        if (child.tag == "uses-permission" || child.tag == "uses-permission-sdk-23") {
            auto name = child.attr("android:name");
            if (!name || name->empty()) continue;
            facts.requested_permissions.insert(*name);
            if (auto max_sdk = child.attr("android:maxSdkVersion")) {
                if (auto n = parse_int(*max_sdk)) {
                    facts.requested_max_sdk[*name] = static_cast<int>(*n);
                }
            }
        } else if (child.tag == "permission") {
            auto name = child.attr("android:name");
            if (!name || name->empty()) continue;
            PermissionDef def;
            def.name = *name;
            if (auto level = child.attr("android:protectionLevel")) {
                def.explicit_level = true;
                def.protection_level = parse_protection_level(*level);
            } else {
                def.explicit_level = false;
                def.protection_level = ProtectionLevel::normal;
            }
            facts.permission_defs.push_back(std::move(def));
        }
    }

    if (const XmlNode* app = root.child("application")) {
        for (const auto& child : app->children) {
            auto kind = component_kind(child.tag);
            if (!kind) continue;
            auto name = child.attr("android:name");
            if (!name || name->empty()) continue;
            ComponentDecl decl;
            decl.kind = *kind;
            decl.class_name = resolve_class_name(facts.package_name, *name);
            if (auto exported = child.attr("android:exported")) {
                decl.exported = parse_bool(*exported);
            }
            if (auto guard = child.attr("android:permission")) {
                if (!guard->empty()) decl.guard_permission = *guard;
            }
            if (*kind == ComponentKind::provider) {
                if (auto authorities = child.attr("android:authorities")) {
                    for (auto& authority : split(*authorities, ';')) {
                        std::string a(trim(authority));
                        if (!a.empty()) decl.authorities.push_back(std::move(a));
                    }
                }
            }
            facts.components.push_back(std::move(decl));
        }
    }

    return facts;
}

ApkFacts parse_apk(ByteView apk_bytes, const std::optional<MetaRow>& meta) {
    ZipReader zip(apk_bytes);
    auto manifest_bytes = zip.read("AndroidManifest.xml");
    if (!manifest_bytes) throw MalformedContainer("no AndroidManifest.xml entry");

    XmlNode root;
    if (is_axml(*manifest_bytes)) {
        root = decode_axml(*manifest_bytes);
    } else {
        root = parse_xml_text(std::string_view(
            reinterpret_cast<const char*>(manifest_bytes->data()), manifest_bytes->size()));
    }

    ApkFacts facts = facts_from_manifest(root);
    facts.sha256 = sha256_hex(apk_bytes);
    facts.cert_digest = cert_digest(apk_bytes, zip);
    if (meta) {
        facts.dex_year = meta->dex_year;
        facts.markets = meta->markets;
        facts.vt_detections = meta->vt_detections;
    }
    return facts;
}

} // namespace permdrift
