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
#include <vector>

#include "permdrift/util/bytes.hpp"

namespace permdrift {

enum class ResolverOp { query, insert, update, del, call };

const char* to_string(ResolverOp op);
std::optional<ResolverOp> resolver_op_from_name(std::string_view name);

enum class Attribution { app_core, third_party, unclassified };
const char* to_string(Attribution a);

struct CallSite {
    std::string declaring_class; // dotted FQCN of the enclosing method's class
    std::string method_name;
    ResolverOp op_kind = ResolverOp::query;
    std::optional<std::string> resolved_authority; // normalized, no scheme
    Attribution attribution = Attribution::unclassified;

    // Ordering / in-method identity; not part of the wire record.
    std::string method_signature;
    uint32_t insn_offset = 0;

    bool operator==(const CallSite&) const = default;
};

struct ScanResult {
    std::vector<CallSite> call_sites;
    std::vector<std::string> errors; // one entry per DEX that failed to scan
};

// One CallSite per invocation of a ContentResolver operation
// (query/insert/update/delete/call), with the authority argument
// resolved by constant propagation where provable. A malformed DEX
// aborts that file only. Output ordered by (class, method, offset).
ScanResult scan_call_sites(const std::vector<Bytes>& dex_files);

// Strip the content scheme and any path: "content://com.x.data/items"
// and "com.x.data" both normalize to "com.x.data". Empty means invalid.
std::string normalize_authority(std::string_view uri);

} // namespace permdrift
