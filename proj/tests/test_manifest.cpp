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

#include <doctest.h>

#include "permdrift/apk/cert.hpp"
#include "permdrift/apk/manifest.hpp"
#include "permdrift/apk/zip.hpp"
#include "permdrift/errors.hpp"
#include "permdrift/util/sha256.hpp"
#include "support/apk_builder.hpp"

using namespace permdrift;
using namespace permdrift::testsupport;

namespace {

ApkFacts parse(const ApkSpec& spec, std::optional<MetaRow> meta = std::nullopt) {
    Bytes apk = build_apk(spec);
    return parse_apk(ByteView(apk), meta);
}

} // namespace

TEST_CASE("uses-permission entries populate the requested set") {
    ApkSpec spec;
    spec.manifest_text =
        R"(<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="com.t.app" android:versionCode="5">
             <uses-permission android:name="android.permission.READ_CONTACTS"/>
           </manifest>)";
    ApkFacts facts = parse(spec);
    CHECK(facts.package_name == "com.t.app");
    CHECK(facts.version_code == 5);
    CHECK(facts.requested_permissions ==
          std::set<std::string>{"android.permission.READ_CONTACTS"});
}

TEST_CASE("an empty manifest yields empty collections") {
    ApkSpec spec;
    spec.manifest_text = "<manifest package=\"com.t.empty\"/>";
    ApkFacts facts = parse(spec);
    CHECK(facts.requested_permissions.empty());
    CHECK(facts.permission_defs.empty());
    CHECK(facts.components.empty());
    CHECK(facts.version_code == 0);
}

TEST_CASE("omitted protectionLevel defaults to normal with explicit_level false") {
    ApkSpec spec;
    spec.manifest_text =
        R"(<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="com.x">
             <permission android:name="com.x.P"/>
             <application android:name=".App">
               <provider android:name=".Data" android:exported="true" android:permission="com.x.P" android:authorities="com.x.data"/>
             </application>
           </manifest>)";
    ApkFacts facts = parse(spec);
    REQUIRE(facts.permission_defs.size() == 1);
    CHECK(facts.permission_defs[0].name == "com.x.P");
    CHECK(facts.permission_defs[0].protection_level == ProtectionLevel::normal);
    CHECK_FALSE(facts.permission_defs[0].explicit_level);
    REQUIRE(facts.components.size() == 1);
    const auto& provider = facts.components[0];
    CHECK(provider.kind == ComponentKind::provider);
    CHECK(provider.class_name == "com.x.Data");
    CHECK(provider.exported);
    CHECK(provider.guard_permission == "com.x.P");
    CHECK(provider.authorities == std::vector<std::string>{"com.x.data"});
}

TEST_CASE("duplicate uses-permission entries deduplicate; maxSdkVersion recorded") {
    ApkSpec spec;
    spec.manifest_text =
        R"(<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="com.d">
             <uses-permission android:name="android.permission.READ_SMS"/>
             <uses-permission android:name="android.permission.READ_SMS"/>
             <uses-permission android:name="android.permission.WRITE_EXTERNAL_STORAGE" android:maxSdkVersion="28"/>
           </manifest>)";
    ApkFacts facts = parse(spec);
    CHECK(facts.requested_permissions.size() == 2);
    CHECK(facts.requested_permissions.count("android.permission.WRITE_EXTERNAL_STORAGE") == 1);
    CHECK(facts.requested_max_sdk.at("android.permission.WRITE_EXTERNAL_STORAGE") == 28);
}

TEST_CASE("plaintext and binary manifests are both accepted") {
    ApkSpec plaintext;
    plaintext.manifest_text = "<manifest package=\"com.both\"/>";
    plaintext.binary_manifest = false;
    ApkSpec binary = plaintext;
    binary.binary_manifest = true;
    CHECK(parse(plaintext).package_name == "com.both");
    CHECK(parse(binary).package_name == "com.both");
}

TEST_CASE("metadata merges into the record; absence keeps fields empty") {
    ApkSpec spec;
    spec.manifest_text = "<manifest package=\"com.meta\"/>";
    MetaRow row;
    row.dex_year = 2021;
    row.markets = {"play.google.com", "appchina"};
    row.vt_detections = 12;
    ApkFacts with = parse(spec, row);
    CHECK(with.dex_year == 2021);
    CHECK(with.markets.size() == 2);
    CHECK(with.vt_detections == 12);

    ApkFacts without = parse(spec);
    CHECK_FALSE(without.dex_year.has_value());
    CHECK(without.markets.empty());
    CHECK(without.vt_detections == 0);
}

TEST_CASE("parsing is deterministic for identical inputs") {
    ApkSpec spec;
    spec.manifest_text =
        R"(<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="com.det" android:versionCode="9">
             <uses-permission android:name="android.permission.INTERNET"/>
           </manifest>)";
    spec.sign_key = "k1";
    Bytes apk = build_apk(spec);
    ApkFacts a = parse_apk(ByteView(apk), std::nullopt);
    ApkFacts b = parse_apk(ByteView(apk), std::nullopt);
    CHECK(a == b);
    CHECK(a.sha256 == sha256_hex(ByteView(apk)));
}

TEST_CASE("malformed containers abort only that APK") {
    Bytes not_zip(64, 0x00);
    CHECK_THROWS_AS(parse_apk(ByteView(not_zip), std::nullopt), MalformedContainer);

    ZipWriter no_manifest;
    no_manifest.add("res/data", std::string("x"));
    Bytes apk = no_manifest.finish();
    CHECK_THROWS_AS(parse_apk(ByteView(apk), std::nullopt), MalformedContainer);

    ZipWriter bad_manifest;
    bad_manifest.add("AndroidManifest.xml", std::string("<manifest package=\"a\">"));
    Bytes apk2 = bad_manifest.finish();
    CHECK_THROWS_AS(parse_apk(ByteView(apk2), std::nullopt), MalformedManifest);
}

TEST_CASE("cert digest: unsigned, v2 block, META-INF fallback") {
    ApkSpec unsigned_spec;
    unsigned_spec.manifest_text = "<manifest package=\"com.unsigned\"/>";
    CHECK_FALSE(parse(unsigned_spec).cert_digest.has_value());

    // The expected digest comes from hashing the known certificate bytes
    // directly, not from the signing-block parser.
    Bytes cert = test_certificate("key-A");
    std::string expected = sha256_hex(ByteView(cert));

    ApkSpec v2 = unsigned_spec;
    v2.sign_key = "key-A";
    ApkFacts v2_facts = parse(v2);
    REQUIRE(v2_facts.cert_digest.has_value());
    CHECK(*v2_facts.cert_digest == expected);

    ApkSpec v1 = unsigned_spec;
    v1.sign_key = "key-A";
    v1.v1_signature_only = true;
    ApkFacts v1_facts = parse(v1);
    REQUIRE(v1_facts.cert_digest.has_value());
    CHECK(*v1_facts.cert_digest == expected);
}

TEST_CASE("two fixtures signed with the same key digest equally") {
    ApkSpec a;
    a.manifest_text = "<manifest package=\"com.a\"/>";
    a.sign_key = "shared";
    ApkSpec b;
    b.manifest_text = "<manifest package=\"com.b\"/>";
    b.sign_key = "shared";
    CHECK(parse(a).cert_digest == parse(b).cert_digest);

    ApkSpec c = b;
    c.sign_key = "different";
    CHECK(parse(a).cert_digest != parse(c).cert_digest);
}
