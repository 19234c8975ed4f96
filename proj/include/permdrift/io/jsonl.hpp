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
#include <vector>

#include <json.hpp>

#include "permdrift/apk/manifest.hpp"
#include "permdrift/expansion/expansion.hpp"
#include "permdrift/links/links.hpp"
#include "permdrift/sim/grant.hpp"
#include "permdrift/sim/monitor.hpp"
#include "permdrift/stats/stats.hpp"

namespace permdrift {

// Field order is part of the wire contract: reruns must be byte-identical.
using Json = nlohmann::ordered_json;

Json to_json(const ApkFacts& facts);
ApkFacts apk_facts_from_json(const Json& j);

Json to_json(const ExpansionEvent& event);
ExpansionEvent expansion_event_from_json(const Json& j);

Json to_json(const ExpansionSummary& summary);

Json to_json(const CallSite& site);
CallSite call_site_from_json(const Json& j);

Json to_json(const ProviderSensitivity& sensitivity);
Json to_json(const CrossDevPair& pair);

Json to_json(const SweepEntry& entry);

Json to_json(const DeviceState& state);
Json to_json(const NotificationRecord& record);
Json to_json(const ReplaySummary& summary);

// Monitor event log line: {timestamp, event, package, version_code,
// permissions[], granted_groups[]}.
PackageEvent package_event_from_json(const Json& j);

// One JSON document per line; blank lines ignored.
std::vector<Json> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<Json>& lines);

} // namespace permdrift
