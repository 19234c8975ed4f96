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

#include "support/fixtures.hpp"

#include <cstdio>
#include <random>

#include "support/dex_builder.hpp"

namespace permdrift::testsupport {

namespace {

// Method references shared by the bytecode fixtures.
const MethodSpec kQuery{"Landroid/content/ContentResolver;",
                        "query",
                        "Landroid/database/Cursor;",
                        {"Landroid/net/Uri;", "[Ljava/lang/String;", "Ljava/lang/String;",
                         "[Ljava/lang/String;", "Ljava/lang/String;"}};
const MethodSpec kInsert{"Landroid/content/ContentResolver;",
                         "insert",
                         "Landroid/net/Uri;",
                         {"Landroid/net/Uri;", "Landroid/content/ContentValues;"}};
const MethodSpec kUpdate{"Landroid/content/ContentResolver;",
                         "update",
                         "I",
                         {"Landroid/net/Uri;", "Landroid/content/ContentValues;",
                          "Ljava/lang/String;", "[Ljava/lang/String;"}};
const MethodSpec kDelete{"Landroid/content/ContentResolver;",
                         "delete",
                         "I",
                         {"Landroid/net/Uri;", "Ljava/lang/String;", "[Ljava/lang/String;"}};
const MethodSpec kCallUri{"Landroid/content/ContentResolver;",
                          "call",
                          "Landroid/os/Bundle;",
                          {"Landroid/net/Uri;", "Ljava/lang/String;", "Ljava/lang/String;",
                           "Landroid/os/Bundle;"}};
const MethodSpec kCallAuthority{"Landroid/content/ContentResolver;",
                                "call",
                                "Landroid/os/Bundle;",
                                {"Ljava/lang/String;", "Ljava/lang/String;",
                                 "Ljava/lang/String;", "Landroid/os/Bundle;"}};
const MethodSpec kUriParse{"Landroid/net/Uri;",
                           "parse",
                           "Landroid/net/Uri;",
                           {"Ljava/lang/String;"}};
const MethodSpec kConcat{"Ljava/lang/String;",
                         "concat",
                         "Ljava/lang/String;",
                         {"Ljava/lang/String;"}};
const MethodSpec kSbInit{"Ljava/lang/StringBuilder;", "<init>", "V", {}};
const MethodSpec kSbInitString{
    "Ljava/lang/StringBuilder;", "<init>", "V", {"Ljava/lang/String;"}};
const MethodSpec kSbAppend{"Ljava/lang/StringBuilder;",
                           "append",
                           "Ljava/lang/StringBuilder;",
                           {"Ljava/lang/String;"}};
const MethodSpec kSbToString{"Ljava/lang/StringBuilder;", "toString", "Ljava/lang/String;", {}};
const MethodSpec kHelper{"Lfix/Helper;", "fetch", "Ljava/lang/String;", {}};

MethodSpec fixture_method(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "Lfix/Case%02d;", index);
    return {buf, "run", "V", {}};
}

Bytes one_method_dex(int index, int ins, const CodeBuilder& code) {
    DexBuilder dex;
    dex.add_method(fixture_method(index), true, ins, code);
    return dex.build();
}

ApkFacts make_facts(const std::string& package, long long version,
                    std::set<std::string> permissions, int year,
                    std::set<std::string> markets, int detections) {
    ApkFacts f;
    f.package_name = package;
    f.version_code = version;
    f.requested_permissions = std::move(permissions);
    f.dex_year = year;
    f.markets = std::move(markets);
    f.vt_detections = detections;
    char digest[72];
    std::snprintf(digest, sizeof(digest), "%064llx",
                  static_cast<unsigned long long>(std::hash<std::string>{}(
                      package + "#" + std::to_string(version))));
    f.sha256 = digest;
    return f;
}

} // namespace

std::vector<std::pair<std::string, std::string>> manifest_fixtures() {
    return {
        {"contacts_reader", R"(<?xml version="1.0" encoding="utf-8"?>
<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="com.fix.contacts" android:versionCode="7">
    <uses-permission android:name="android.permission.READ_CONTACTS"/>
    <uses-permission android:name="android.permission.INTERNET"/>
    <application android:name=".App">
        <activity android:name=".MainActivity" android:exported="true"/>
    </application>
</manifest>
)"},
        {"empty", R"(<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="com.fix.empty"/>
)"},
        {"custom_provider", R"(<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="com.fix.custom" android:versionCode="3">
    <permission android:name="com.fix.custom.ACCESS"/>
    <provider android:name=".DataProvider" android:exported="true" android:permission="com.fix.custom.ACCESS" android:authorities="com.fix.custom.data"/>
    <application android:name=".App">
        <provider android:name=".RealProvider" android:exported="true" android:permission="com.fix.custom.ACCESS" android:authorities="com.fix.custom.data;com.fix.custom.alt"/>
        <service android:name=".Sync" android:exported="false"/>
    </application>
</manifest>
)"},
        {"levels", R"(<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="com.fix.levels" android:versionCode="21">
    <permission android:name="com.fix.levels.SIG" android:protectionLevel="signature"/>
    <permission android:name="com.fix.levels.DANGER" android:protectionLevel="dangerous"/>
    <permission android:name="com.fix.levels.NORM" android:protectionLevel="normal"/>
    <permission android:name="com.fix.levels.DEFAULT"/>
    <uses-permission android:name="android.permission.READ_SMS"/>
    <uses-permission android:name="android.permission.READ_SMS"/>
    <uses-permission android:name="android.permission.WRITE_EXTERNAL_STORAGE" android:maxSdkVersion="28"/>
    <application android:name=".App">
        <receiver android:name=".Boot" android:exported="true" android:permission="com.fix.levels.SIG"/>
        <activity android:name="ShortName" android:exported="false"/>
    </application>
</manifest>
)"},
        {"media_update", R"(<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="com.fix.media" android:versionCode="42">
    <uses-permission android:name="android.permission.READ_MEDIA_IMAGES"/>
    <uses-permission android:name="android.permission.READ_MEDIA_VIDEO"/>
    <uses-permission android:name="android.permission.READ_EXTERNAL_STORAGE"/>
    <application android:name=".App"/>
</manifest>
)"},
    };
}

std::vector<PropagationFixture> propagation_fixtures() {
    std::vector<PropagationFixture> out;

    { // 1: direct constant through Uri.parse into a range-form query
        CodeBuilder c;
        c.registers(8)
            .const_string(1, "content://com.alpha.data/items")
            .invoke_static(kUriParse, {1})
            .move_result_object(1)
            .const4(2, 0)
            .const4(3, 0)
            .const4(4, 0)
            .const4(5, 0)
            .invoke_virtual_range(kQuery, 0, 6)
            .return_void();
        out.push_back({"direct_query", one_method_dex(1, 0, c),
                       {{ResolverOp::query, "com.alpha.data"}}});
    }
    { // 2: direct constant, insert
        CodeBuilder c;
        c.registers(4)
            .const_string(1, "content://com.alpha.data")
            .invoke_static(kUriParse, {1})
            .move_result_object(1)
            .const4(2, 0)
            .invoke_virtual(kInsert, {0, 1, 2})
            .return_void();
        out.push_back({"direct_insert", one_method_dex(2, 0, c),
                       {{ResolverOp::insert, "com.alpha.data"}}});
    }
    { // 3: two-part String.concat, update
        CodeBuilder c;
        c.registers(6)
            .const_string(1, "content://com.bravo")
            .const_string(2, ".data")
            .invoke_virtual(kConcat, {1, 2})
            .move_result_object(1)
            .invoke_static(kUriParse, {1})
            .move_result_object(1)
            .const4(2, 0)
            .const4(3, 0)
            .const4(4, 0)
            .invoke_virtual(kUpdate, {0, 1, 2, 3, 4})
            .return_void();
        out.push_back({"concat_update", one_method_dex(3, 0, c),
                       {{ResolverOp::update, "com.bravo.data"}}});
    }
    { // 4: chained concat, delete
        CodeBuilder c;
        c.registers(6)
            .const_string(1, "content://")
            .const_string(2, "com.charlie")
            .invoke_virtual(kConcat, {1, 2})
            .move_result_object(1)
            .const_string(2, ".data")
            .invoke_virtual(kConcat, {1, 2})
            .move_result_object(1)
            .invoke_static(kUriParse, {1})
            .move_result_object(1)
            .const4(2, 0)
            .const4(3, 0)
            .invoke_virtual(kDelete, {0, 1, 2, 3})
            .return_void();
        out.push_back({"double_concat_delete", one_method_dex(4, 0, c),
                       {{ResolverOp::del, "com.charlie.data"}}});
    }
    { // 5: StringBuilder append chain
        CodeBuilder c;
        c.registers(8)
            .new_instance(1, "Ljava/lang/StringBuilder;")
            .invoke_direct(kSbInit, {1})
            .const_string(2, "content://")
            .invoke_virtual(kSbAppend, {1, 2})
            .move_result_object(1)
            .const_string(2, "com.delta")
            .invoke_virtual(kSbAppend, {1, 2})
            .move_result_object(1)
            .const_string(2, ".data")
            .invoke_virtual(kSbAppend, {1, 2})
            .move_result_object(1)
            .invoke_virtual(kSbToString, {1})
            .move_result_object(1)
            .invoke_static(kUriParse, {1})
            .move_result_object(1)
            .const4(2, 0)
            .const4(3, 0)
            .const4(4, 0)
            .const4(5, 0)
            .invoke_virtual_range(kQuery, 0, 6)
            .return_void();
        out.push_back({"builder_chain_query", one_method_dex(5, 0, c),
                       {{ResolverOp::query, "com.delta.data"}}});
    }
    { // 6: StringBuilder seeded by its constructor, Uri call overload
        CodeBuilder c;
        c.registers(6)
            .new_instance(1, "Ljava/lang/StringBuilder;")
            .const_string(2, "content://com.echo")
            .invoke_direct(kSbInitString, {1, 2})
            .const_string(2, ".data")
            .invoke_virtual(kSbAppend, {1, 2})
            .move_result_object(1)
            .invoke_virtual(kSbToString, {1})
            .move_result_object(1)
            .invoke_static(kUriParse, {1})
            .move_result_object(1)
            .const_string(2, "method")
            .const4(3, 0)
            .const4(4, 0)
            .invoke_virtual(kCallUri, {0, 1, 2, 3, 4})
            .return_void();
        out.push_back({"builder_init_call", one_method_dex(6, 0, c),
                       {{ResolverOp::call, "com.echo.data"}}});
    }
    { // 7: different constants on the two branches: unresolved
        CodeBuilder c;
        c.registers(8)
            .if_eqz(7, "else")
            .const_string(1, "content://com.golf.one")
            .goto_label("join")
            .label("else")
            .const_string(1, "content://com.golf.two")
            .label("join")
            .invoke_static(kUriParse, {1})
            .move_result_object(1)
            .const4(2, 0)
            .const4(3, 0)
            .const4(4, 0)
            .const4(5, 0)
            .invoke_virtual_range(kQuery, 0, 6)
            .return_void();
        out.push_back({"branch_conflict", one_method_dex(7, 1, c),
                       {{ResolverOp::query, std::nullopt}}});
    }
    { // 8: both branches agree: still a provable constant
        CodeBuilder c;
        c.registers(8)
            .if_eqz(7, "else")
            .const_string(1, "content://com.hotel.data")
            .goto_label("join")
            .label("else")
            .const_string(1, "content://com.hotel.data")
            .label("join")
            .invoke_static(kUriParse, {1})
            .move_result_object(1)
            .const4(2, 0)
            .invoke_virtual(kInsert, {0, 1, 2})
            .return_void();
        out.push_back({"branch_agree_insert", one_method_dex(8, 1, c),
                       {{ResolverOp::insert, "com.hotel.data"}}});
    }
    { // 9: authority arrives as a parameter: dynamic, unresolved
        CodeBuilder c;
        c.registers(8)
            .invoke_static(kUriParse, {7})
            .move_result_object(1)
            .const4(2, 0)
            .const4(3, 0)
            .const4(4, 0)
            .const4(5, 0)
            .invoke_virtual_range(kQuery, 0, 6)
            .return_void();
        out.push_back({"dynamic_param", one_method_dex(9, 1, c),
                       {{ResolverOp::query, std::nullopt}}});
    }
    { // 10: authority from an opaque helper call: unresolved
        CodeBuilder c;
        c.registers(4)
            .invoke_static(kHelper, {})
            .move_result_object(1)
            .invoke_static(kUriParse, {1})
            .move_result_object(1)
            .const4(2, 0)
            .invoke_virtual(kInsert, {0, 1, 2})
            .return_void();
        out.push_back({"dynamic_helper", one_method_dex(10, 0, c),
                       {{ResolverOp::insert, std::nullopt}}});
    }
    { // 11: strings but no resolver operation at all
        CodeBuilder c;
        c.registers(4)
            .const_string(1, "content://com.india.data")
            .invoke_static(kUriParse, {1})
            .move_result_object(1)
            .return_void();
        out.push_back({"no_call", one_method_dex(11, 0, c), {}});
    }
    { // 12: authority-string call overload, constant
        CodeBuilder c;
        c.registers(6)
            .const_string(1, "com.juliet.data")
            .const_string(2, "method")
            .const4(3, 0)
            .const4(4, 0)
            .invoke_virtual(kCallAuthority, {0, 1, 2, 3, 4})
            .return_void();
        out.push_back({"call_authority_overload", one_method_dex(12, 0, c),
                       {{ResolverOp::call, "com.juliet.data"}}});
    }

    return out;
}

namespace {

const MethodSpec kProviderQuery{"Lcom/prov/DataProvider;",
                                "query",
                                "Landroid/database/Cursor;",
                                {"Landroid/net/Uri;", "[Ljava/lang/String;",
                                 "Ljava/lang/String;", "[Ljava/lang/String;",
                                 "Ljava/lang/String;"}};
const MethodSpec kDbQuery{"Landroid/database/sqlite/SQLiteDatabase;",
                          "rawQuery",
                          "Landroid/database/Cursor;",
                          {"Ljava/lang/String;", "[Ljava/lang/String;"}};
const MethodSpec kStreamInit{"Ljava/io/FileInputStream;", "<init>", "V", {"Ljava/lang/String;"}};

} // namespace

Bytes provider_dex_sqlite() {
    CodeBuilder c;
    c.registers(10)
        .const_string(0, "PHONE_NUMBER")
        .const_string(1, "USER_EMAIL")
        .const_string(2, "select PHONE_NUMBER, USER_EMAIL from people")
        .const4(3, 0)
        .invoke_virtual(kDbQuery, {4, 2, 3})
        .move_result_object(0)
        .return_object(0);
    DexBuilder dex;
    dex.add_method(kProviderQuery, true, 6, c);
    return dex.build();
}

Bytes provider_dex_null() {
    CodeBuilder c;
    c.registers(8).const4(0, 0).return_object(0);
    DexBuilder dex;
    dex.add_method(kProviderQuery, true, 6, c);
    return dex.build();
}

Bytes provider_dex_file() {
    CodeBuilder c;
    c.registers(10)
        .const_string(0, "FILE_PATH")
        .new_instance(1, "Ljava/io/FileInputStream;")
        .invoke_direct(kStreamInit, {1, 0})
        .const4(0, 0)
        .const_string(0, "FILE_PATH")
        .return_object(0);
    DexBuilder dex;
    dex.add_method(kProviderQuery, true, 6, c);
    return dex.build();
}

// ---- corpora ---------------------------------------------------------------

std::vector<ApkFacts> expansion_corpus(size_t packages, unsigned seed) {
    std::mt19937 rng(seed);
    const std::vector<std::string> grouped = {
        "android.permission.READ_EXTERNAL_STORAGE",
        "android.permission.WRITE_EXTERNAL_STORAGE",
        "android.permission.READ_MEDIA_IMAGES",
        "android.permission.READ_MEDIA_VIDEO",
        "android.permission.ACCESS_FINE_LOCATION",
        "android.permission.ACCESS_COARSE_LOCATION",
        "android.permission.ACCESS_BACKGROUND_LOCATION",
        "android.permission.READ_PHONE_STATE",
        "android.permission.CALL_PHONE",
        "android.permission.READ_CALL_LOG",
        "android.permission.WRITE_CALL_LOG",
        "android.permission.READ_CONTACTS",
        "android.permission.WRITE_CONTACTS",
        "android.permission.GET_ACCOUNTS",
        "android.permission.READ_SMS",
        "android.permission.SEND_SMS",
        "android.permission.RECEIVE_SMS",
        "android.permission.READ_CALENDAR",
        "android.permission.WRITE_CALENDAR",
        "android.permission.BLUETOOTH_SCAN",
        "android.permission.BLUETOOTH_CONNECT",
        "android.permission.BODY_SENSORS",
        "android.permission.BODY_SENSORS_BACKGROUND",
    };
    const std::vector<std::string> ungrouped = {
        "android.permission.INTERNET",
        "android.permission.ACCESS_NETWORK_STATE",
        "android.permission.VIBRATE",
        "android.permission.WAKE_LOCK",
        "com.example.custom.PERM",
    };

    std::vector<ApkFacts> corpus;
    for (size_t p = 0; p < packages + packages / 10; ++p) {
        char name[48];
        std::snprintf(name, sizeof(name), "app.c4.p%03zu", p);
        // The requested count of 2..6-version packages, then some
        // single-version ones that chain building must drop.
        size_t versions = p < packages ? 2 + rng() % 5 : 1;

        std::set<std::string> current;
        size_t initial = 1 + rng() % 5;
        for (size_t i = 0; i < initial; ++i) {
            const auto& pool = rng() % 3 == 0 ? ungrouped : grouped;
            current.insert(pool[rng() % pool.size()]);
        }

        long long version = 1 + rng() % 3;
        int year = 2014 + static_cast<int>(rng() % 6);
        for (size_t v = 0; v < versions; ++v) {
            std::set<std::string> markets;
            switch (rng() % 5) {
            case 0: markets = {"appchina"}; break;
            case 1: markets = {"play.google.com", "appchina"}; break;
            default: markets = {"play.google.com"}; break;
            }
            corpus.push_back(
                make_facts(name, version, current, year, markets, static_cast<int>(rng() % 4)));

            // Mutate toward within-group additions so expansions are common.
            size_t mutations = 1 + rng() % 3;
            for (size_t m = 0; m < mutations; ++m) {
                switch (rng() % 4) {
                case 0:
                case 1:
                    current.insert(grouped[rng() % grouped.size()]);
                    break;
                case 2:
                    current.insert(ungrouped[rng() % ungrouped.size()]);
                    break;
                case 3:
                    if (!current.empty()) {
                        auto it = current.begin();
                        std::advance(it, rng() % current.size());
                        current.erase(it);
                    }
                    break;
                }
            }
            version += 1 + rng() % 4;
            year += rng() % 2;
            if (year > 2025) year = 2025;
        }
    }
    // A couple of records with no metadata row, which chains must skip.
    ApkFacts orphan = make_facts("app.c4.orphan", 1, {"android.permission.READ_SMS"}, 0, {}, 0);
    orphan.dex_year.reset();
    corpus.push_back(orphan);
    return corpus;
}

std::vector<ApkFacts> engineered_expansion_corpus(
    const std::map<size_t, size_t>& apps_by_event_count, size_t non_expanding_apps) {
    // One update per event, each adding the next STORAGE member.
    const std::vector<std::string> storage_members = {
        "android.permission.WRITE_EXTERNAL_STORAGE",
        "android.permission.READ_EXTERNAL_STORAGE",
        "android.permission.ACCESS_MEDIA_LOCATION",
        "android.permission.READ_MEDIA_IMAGES",
        "android.permission.READ_MEDIA_VIDEO",
        "android.permission.READ_MEDIA_AUDIO",
    };

    std::vector<ApkFacts> corpus;
    size_t app_index = 0;
    for (const auto& [events, apps] : apps_by_event_count) {
        for (size_t a = 0; a < apps; ++a) {
            char name[48];
            std::snprintf(name, sizeof(name), "app.c5.e%zu.n%05zu", events, app_index++);
            std::set<std::string> current = {storage_members[0]};
            corpus.push_back(make_facts(name, 1, current, 2023, {"play.google.com"}, 0));
            for (size_t e = 0; e < events; ++e) {
                current.insert(storage_members[1 + e]);
                corpus.push_back(make_facts(name, 2 + static_cast<long long>(e), current, 2023,
                                            {"play.google.com"}, 0));
            }
        }
    }
    for (size_t a = 0; a < non_expanding_apps; ++a) {
        char name[48];
        std::snprintf(name, sizeof(name), "app.c5.flat.n%05zu", a);
        std::set<std::string> perms = {"android.permission.INTERNET",
                                       "android.permission.READ_CONTACTS"};
        corpus.push_back(make_facts(name, 1, perms, 2023, {"play.google.com"}, 0));
        corpus.push_back(make_facts(name, 2, perms, 2023, {"play.google.com"}, 0));
    }
    return corpus;
}

// ---- pair corpus -------------------------------------------------------------

namespace {

ApkFacts definer(const std::string& package, const std::string& permission,
                 ProtectionLevel level, bool explicit_level, bool exported,
                 const std::vector<std::string>& authorities, const std::string& cert) {
    ApkFacts f = make_facts(package, 1, {}, 2024, {"play.google.com"}, 0);
    if (!cert.empty()) f.cert_digest = cert;
    PermissionDef def{permission, level, explicit_level};
    f.permission_defs.push_back(def);
    ComponentDecl provider;
    provider.kind = ComponentKind::provider;
    provider.class_name = package + ".Provider";
    provider.exported = exported;
    provider.guard_permission = permission;
    provider.authorities = authorities;
    f.components.push_back(provider);
    return f;
}

CallSite site(const std::string& cls, ResolverOp op, std::optional<std::string> authority) {
    CallSite s;
    s.declaring_class = cls;
    s.method_name = "run";
    s.op_kind = op;
    s.resolved_authority = std::move(authority);
    return s;
}

} // namespace

PairFixtureCorpus pair_fixture_corpus() {
    PairFixtureCorpus corpus;
    auto& facts = corpus.facts;
    auto& sites = corpus.call_sites;

    // Defining side.
    facts.push_back(definer("com.def.one", "com.def.one.ACCESS", ProtectionLevel::normal,
                            false, true, {"a1.data"}, "cert-d1"));
    facts.push_back(definer("com.def.two", "com.def.two.ACCESS", ProtectionLevel::normal,
                            true, true, {"a2.data"}, "cert-d2"));
    facts.push_back(definer("com.def.sig", "com.def.sig.ACCESS", ProtectionLevel::signature,
                            true, true, {"a3.data"}, "cert-d3"));
    facts.push_back(definer("com.def.hidden", "com.def.hidden.ACCESS", ProtectionLevel::normal,
                            false, false, {"a4.data"}, "cert-d4"));
    facts.push_back(definer("com.def.danger", "com.def.danger.ACCESS",
                            ProtectionLevel::dangerous, true, true, {"a6.data"}, "cert-d6"));
    // Same permission name defined by an unrelated second developer.
    facts.push_back(definer("com.def.seven", "com.def.one.ACCESS", ProtectionLevel::normal,
                            false, true, {"a7.data"}, "cert-d7"));
    // Two authorities on one provider.
    facts.push_back(definer("com.def.eight", "com.def.eight.ACCESS", ProtectionLevel::normal,
                            false, true, {"a8.main", "a8.alt"}, "cert-d8"));
    // Unattached normal custom permission.
    {
        ApkFacts f = make_facts("com.def.unattached", 1, {}, 2024, {"play.google.com"}, 0);
        f.cert_digest = "cert-d5";
        f.permission_defs.push_back({"com.def.unattached.ACCESS", ProtectionLevel::normal, false});
        facts.push_back(f);
    }

    // The two main definers also exploit each other: bidirectional roles.
    facts[0].requested_permissions.insert("com.def.two.ACCESS");
    sites["com.def.one"] = {site("com.def.one.sync.Engine", ResolverOp::query, "a2.data")};
    facts[1].requested_permissions.insert("com.def.one.ACCESS");
    sites["com.def.two"] = {site("com.adsdk.track.Collector", ResolverOp::insert, "a1.data")};

    auto requester = [&](const std::string& package, const std::string& cert,
                         std::set<std::string> permissions, std::vector<CallSite> call_sites) {
        ApkFacts f = make_facts(package, 1, std::move(permissions), 2024,
                                {"play.google.com"}, 0);
        if (!cert.empty()) f.cert_digest = cert;
        facts.push_back(f);
        if (!call_sites.empty()) sites[package] = std::move(call_sites);
    };

    requester("com.req.r01", "cert-r01", {"com.def.one.ACCESS"},
              {site("com.req.r01.Main", ResolverOp::query, "a1.data")});
    // Same signing key as the definer: never a cross-developer pair.
    requester("com.req.r02", "cert-d1", {"com.def.one.ACCESS"},
              {site("com.req.r02.Main", ResolverOp::query, "a1.data")});
    // Declaration without any call site.
    requester("com.req.r03", "cert-r03", {"com.def.one.ACCESS"}, {});
    // Call site that never resolved.
    requester("com.req.r04", "cert-r04", {"com.def.one.ACCESS"},
              {site("com.req.r04.Main", ResolverOp::query, std::nullopt)});
    // Resolved, but against an unrelated authority.
    requester("com.req.r05", "cert-r05", {"com.def.one.ACCESS"},
              {site("com.req.r05.Main", ResolverOp::query, "unrelated.data")});
    // Two declared permissions, two matching call sites.
    requester("com.req.r06", "cert-r06", {"com.def.two.ACCESS", "com.def.eight.ACCESS"},
              {site("com.req.r06.A", ResolverOp::update, "a2.data"),
               site("com.req.r06.B", ResolverOp::call, "a8.alt")});
    // Shared permission name: reaches the second definer's authority only.
    requester("com.req.r07", "cert-r07", {"com.def.one.ACCESS"},
              {site("com.req.r07.Main", ResolverOp::query, "a7.data")});
    // Both authorities of one provider.
    requester("com.req.r08", "cert-r08", {"com.def.eight.ACCESS"},
              {site("com.req.r08.Main", ResolverOp::query, "a8.main"),
               site("com.req.r08.Main", ResolverOp::del, "a8.alt")});
    // Call site without the matching declaration.
    requester("com.req.r09", "cert-r09", {"android.permission.INTERNET"},
              {site("com.req.r09.Main", ResolverOp::query, "a1.data")});
    // Unsigned requester: no developer identity, no pair.
    requester("com.req.r10", "", {"com.def.one.ACCESS"},
              {site("com.req.r10.Main", ResolverOp::query, "a1.data")});
    // Requester of the signature-guarded and non-exported providers.
    requester("com.req.r11", "cert-r11", {"com.def.sig.ACCESS", "com.def.hidden.ACCESS"},
              {site("com.req.r11.Main", ResolverOp::query, "a3.data"),
               site("com.req.r11.Main", ResolverOp::query, "a4.data")});
    // Requester of the dangerous-level guard.
    requester("com.req.r12", "cert-r12", {"com.def.danger.ACCESS"},
              {site("com.req.r12.Main", ResolverOp::query, "a6.data")});

    // Filler apps with nothing of interest, up to 30 total.
    while (facts.size() < 30) {
        char name[32];
        std::snprintf(name, sizeof(name), "com.filler.f%02zu", facts.size());
        ApkFacts f = make_facts(name, 1, {"android.permission.INTERNET"}, 2024,
                                {"play.google.com"}, 0);
        f.cert_digest = std::string("cert-") + name;
        facts.push_back(f);
    }
    return corpus;
}

// ---- monitor log --------------------------------------------------------------

std::string iso_timestamp(int year, int day_of_year, int hour) {
    static const int month_days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    int month = 0;
    int day = day_of_year;
    while (true) {
        int in_month = month_days[month] + (month == 1 && leap ? 1 : 0);
        if (day < in_month) break;
        day -= in_month;
        ++month;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00:00Z", year, month + 1, day + 1,
                  hour);
    return buf;
}

std::vector<PackageEvent> monitor_96day_log() {
    std::vector<PackageEvent> log;
    auto event = [&](int day, int hour, PackageEvent::Kind kind, const std::string& package,
                     long long version, std::set<std::string> permissions,
                     std::set<std::string> granted) {
        PackageEvent e;
        e.timestamp = iso_timestamp(2025, day, hour);
        e.kind = kind;
        e.package = package;
        e.version_code = version;
        e.permissions = std::move(permissions);
        e.granted_groups = std::move(granted);
        log.push_back(e);
    };

    const std::string img = "android.permission.READ_MEDIA_IMAGES";
    const std::string vid = "android.permission.READ_MEDIA_VIDEO";
    const std::string aud = "android.permission.READ_MEDIA_AUDIO";
    const std::string ext = "android.permission.READ_EXTERNAL_STORAGE";
    const std::string cal = "android.permission.READ_CALENDAR";

    // Day 0: all 13 packages appear with a single granted STORAGE member.
    for (int p = 0; p < 13; ++p) {
        char name[32];
        std::snprintf(name, sizeof(name), "app.mon.%02d", p + 1);
        event(0, p % 23, PackageEvent::Kind::added, name, 1, {img}, {"STORAGE"});
    }

    // 23 qualifying updates: packages 1..10 twice, 11..13 once. Days are
    // spread so the final qualifying event lands exactly on day 96.
    struct Step {
        int package;
        long long version;
        std::set<std::string> permissions;
    };
    std::vector<Step> steps;
    for (int p = 0; p < 13; ++p) {
        steps.push_back({p, 2, {img, vid}});
    }
    for (int p = 0; p < 10; ++p) {
        steps.push_back({p, 3, {img, vid, aud}});
    }
    for (size_t i = 0; i < steps.size(); ++i) {
        int day = static_cast<int>((i + 1) * 96 / steps.size());
        char name[32];
        std::snprintf(name, sizeof(name), "app.mon.%02d", steps[i].package + 1);
        event(day, 0, PackageEvent::Kind::replaced, name, steps[i].version,
              steps[i].permissions, {"STORAGE"});
    }

    // Noise that must not notify. First-time group introduction: CALENDAR
    // is granted but had no member in the previous snapshot.
    event(55, 1, PackageEvent::Kind::replaced, "app.mon.11", 3, {img, vid, cal},
          {"STORAGE", "CALENDAR"});
    // New permission whose group the host reports as not granted.
    event(60, 1, PackageEvent::Kind::replaced, "app.mon.12", 3, {img, vid, ext}, {});
    // And a brand-new package appearing mid-deployment.
    event(65, 2, PackageEvent::Kind::added, "app.mon.late", 1, {img}, {"STORAGE"});

    std::stable_sort(log.begin(), log.end(),
                     [](const PackageEvent& a, const PackageEvent& b) {
                         return a.timestamp < b.timestamp;
                     });
    return log;
}

} // namespace permdrift::testsupport
