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

#include "permdrift/dex/attribution.hpp"

#include <fstream>
#include <sstream>

#include "permdrift/errors.hpp"
#include "permdrift/util/text.hpp"

namespace permdrift {

namespace {

constexpr std::string_view kBuiltinPrefixes = R"(# Ad / analytics / crash-reporting SDK package prefixes.
com.google.android.gms
com.google.ads
com.google.firebase
com.google.analytics
com.facebook.ads
com.facebook.appevents
com.flurry
com.chartboost
com.unity3d.ads
com.unity3d.services
com.applovin
com.inmobi
com.mopub
com.adjust.sdk
com.appsflyer
com.crashlytics
io.fabric.sdk
com.amazon.device.ads
com.vungle
com.ironsource
com.tapjoy
com.umeng
com.adcolony
com.startapp
com.mintegral
com.bytedance.sdk
com.appodeal
com.smaato
com.millennialmedia
com.my.target
com.yandex.metrica
com.mixpanel
com.segment.analytics
com.amplitude
com.braze
com.onesignal
com.urbanairship
com.batch.android
io.branch
com.kochava
com.tune
com.localytics
com.adsdk
)";

} // namespace

SdkPrefixList SdkPrefixList::parse(std::string_view text) {
    SdkPrefixList list;
    for (const auto& raw_line : split(text, '\n')) {
        std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;
        list.prefixes.emplace_back(line);
    }
    return list;
}

SdkPrefixList SdkPrefixList::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInput("cannot open SDK prefix list: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

SdkPrefixList builtin_sdk_prefixes() {
    return SdkPrefixList::parse(kBuiltinPrefixes);
}

Attribution attribute_call_site(std::string_view declaring_class,
                                std::string_view app_package,
                                const SdkPrefixList& sdk_prefixes) {
    if (!app_package.empty() &&
        declaring_class.starts_with(std::string(app_package) + ".")) {
        return Attribution::app_core;
    }
    for (const auto& prefix : sdk_prefixes.prefixes) {
        if (package_prefix_match(declaring_class, prefix)) {
            return Attribution::third_party;
        }
    }
    return Attribution::unclassified;
}

} // namespace permdrift
