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
#include <string>
#include <string_view>

#include "permdrift/apk/manifest.hpp"

namespace permdrift {

// Corpus metadata CSV keyed by APK digest. Header columns: sha256,
// pkg_name, vercode, vt_detection, markets (pipe-separated), dex_date
// (ISO date; the year is extracted).
class MetadataIndex {
public:
    static MetadataIndex load(const std::string& path);
    static MetadataIndex parse(std::string_view text);

    const MetaRow* find(const std::string& sha256) const;
    size_t size() const { return rows_.size(); }

private:
    std::map<std::string, MetaRow> rows_; // keyed by lowercase sha256
};

} // namespace permdrift
