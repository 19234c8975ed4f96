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
#include <string>
#include <vector>

#include "permdrift/apk/manifest.hpp"
#include "permdrift/dex/callsites.hpp"
#include "permdrift/sim/monitor.hpp"
#include "permdrift/util/bytes.hpp"

namespace permdrift::testsupport {

// ---- manifests -----------------------------------------------------------

// Plaintext manifest sources covering the attribute and element shapes
// the extractor must handle; used directly and as encode/decode inputs.
std::vector<std::pair<std::string, std::string>> manifest_fixtures(); // (name, xml)

// ---- DEX propagation fixtures ---------------------------------------------

struct PropagationFixture {
    std::string name;
    Bytes dex;
    // Expected (op, authority) per call site, in scan order; empty
    // authority means the site must stay unresolved.
    std::vector<std::pair<ResolverOp, std::optional<std::string>>> expected;
};

// Hand-assembled bytecode bodies: direct constants, concatenation,
// builder chains, cross-branch conflicts, dynamic strings, and a body
// with no resolver call at all.
std::vector<PropagationFixture> propagation_fixtures();

// Provider bodies for the column-extraction analysis.
Bytes provider_dex_sqlite();   // columns PHONE_NUMBER / USER_EMAIL, sqlite-backed
Bytes provider_dex_null();     // query returns null unconditionally
Bytes provider_dex_file();     // file-backed, FILE_PATH column
inline constexpr const char* kProviderClass = "com.prov.DataProvider";

// ---- synthetic corpora -----------------------------------------------------

// Randomized multi-version corpus (seeded, deterministic) for the
// expansion-detection oracle comparison.
std::vector<ApkFacts> expansion_corpus(size_t packages, unsigned seed);

// Corpus engineered to an exact expanding-app and event count:
// `per_app_events[i]` apps receive `i` expansion events each.
std::vector<ApkFacts> engineered_expansion_corpus(
    const std::map<size_t, size_t>& apps_by_event_count, size_t non_expanding_apps);

// ---- pair-linking fixture corpus -------------------------------------------

struct PairFixtureCorpus {
    std::vector<ApkFacts> facts;
    std::map<std::string, std::vector<CallSite>> call_sites; // by package
};

PairFixtureCorpus pair_fixture_corpus();

// ---- monitor log ------------------------------------------------------------

// A 96-day event log over 13 packages with exactly 23 qualifying
// replacement events, plus noise that must not notify.
std::vector<PackageEvent> monitor_96day_log();

std::string iso_timestamp(int year, int day_of_year, int hour);

} // namespace permdrift::testsupport
