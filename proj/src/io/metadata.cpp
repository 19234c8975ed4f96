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

#include "permdrift/io/metadata.hpp"

#include <fstream>
#include <sstream>

#include "permdrift/errors.hpp"
#include "permdrift/util/text.hpp"

namespace permdrift {

MetadataIndex MetadataIndex::parse(std::string_view text) {
    MetadataIndex index;
    auto lines = split(text, '\n');
    if (lines.empty()) return index;

    auto header = split(lines[0], ',');
    std::map<std::string, size_t> columns;
    for (size_t i = 0; i < header.size(); ++i) {
        columns[std::string(trim(header[i]))] = i;
    }
    for (const char* required : {"sha256", "vt_detection", "markets", "dex_date"}) {
        if (!columns.count(required)) {
            throw Error(std::string("metadata CSV is missing column: ") + required);
        }
    }

    for (size_t li = 1; li < lines.size(); ++li) {
        if (trim(lines[li]).empty()) continue;
        auto fields = split(lines[li], ',');
        auto field = [&](const char* name) -> std::string {
            size_t idx = columns.at(name);
            return idx < fields.size() ? std::string(trim(fields[idx])) : std::string();
        };
        std::string sha = to_lower(field("sha256"));
        if (sha.empty()) continue;
        MetaRow row;
        if (auto vt = parse_int(field("vt_detection"))) {
            row.vt_detections = static_cast<int>(std::max(0LL, *vt));
        }
        for (const auto& market : split(field("markets"), '|')) {
            std::string m(trim(market));
            if (!m.empty()) row.markets.insert(m);
        }
        row.dex_year = iso_year(field("dex_date")).value_or(0);
        index.rows_[sha] = std::move(row);
    }
    return index;
}

MetadataIndex MetadataIndex::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInput("cannot open metadata CSV: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const MetaRow* MetadataIndex::find(const std::string& sha256) const {
    auto it = rows_.find(to_lower(sha256));
    return it == rows_.end() ? nullptr : &it->second;
}

} // namespace permdrift
