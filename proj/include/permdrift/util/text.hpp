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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace permdrift {

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);
std::string to_lower(std::string_view text);
std::string to_upper(std::string_view text);

// True when `name` equals `prefix` or starts with `prefix` followed by a
// package separator. "com.adsdkx" is not under "com.adsdk".
bool package_prefix_match(std::string_view name, std::string_view prefix);

std::optional<long long> parse_int(std::string_view text);

// Year component of an ISO-8601 date or timestamp ("2023-05-17...").
std::optional<int> iso_year(std::string_view iso);

// Seconds since epoch for "YYYY-MM-DDThh:mm:ssZ". Rejects anything else.
std::optional<long long> parse_iso_timestamp(std::string_view iso);

} // namespace permdrift
