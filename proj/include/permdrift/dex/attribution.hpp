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

#include <string>
#include <string_view>
#include <vector>

#include "permdrift/dex/callsites.hpp"

namespace permdrift {

// Known ad/analytics SDK package prefixes; one per line, '#' comments.
struct SdkPrefixList {
    std::vector<std::string> prefixes;

    static SdkPrefixList load(const std::string& path);
    static SdkPrefixList parse(std::string_view text);
};

SdkPrefixList builtin_sdk_prefixes();

// app_core when the class sits under the app's own package (checked
// first), third_party on an SDK prefix match, unclassified otherwise.
Attribution attribute_call_site(std::string_view declaring_class,
                                std::string_view app_package,
                                const SdkPrefixList& sdk_prefixes);

} // namespace permdrift
