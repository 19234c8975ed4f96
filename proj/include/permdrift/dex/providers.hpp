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

#include <set>
#include <string>
#include <vector>

#include "permdrift/util/bytes.hpp"

namespace permdrift {

enum class StoreKind { sqlite, file, none_detected };
const char* to_string(StoreKind kind);

struct ProviderSensitivity {
    std::string provider_class; // dotted FQCN
    std::set<std::string> column_constants;
    StoreKind store_kind = StoreKind::none_detected;

    bool operator==(const ProviderSensitivity&) const = default;
};

// String constants on the return paths of the provider's query()
// implementation, plus a coarse backing-store classification. A query
// that provably returns null contributes nothing. Throws ClassNotFound
// when the class is not defined in the DEX set.
ProviderSensitivity extract_provider_columns(const std::vector<Bytes>& dex_files,
                                             const std::string& provider_class);

} // namespace permdrift
