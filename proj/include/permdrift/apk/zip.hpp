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

// Read-only view of a ZIP container held in memory. Central-directory
// driven; supports stored and deflate entries, which covers APKs.
class ZipReader {
public:
    struct Entry {
        std::string name;
        uint16_t method = 0;
        uint32_t compressed_size = 0;
        uint32_t uncompressed_size = 0;
        uint32_t local_header_offset = 0;
    };

    // Throws MalformedContainer when no end-of-central-directory record or
    // the directory does not parse.
    explicit ZipReader(ByteView data);

    const std::vector<Entry>& entries() const { return entries_; }
    bool has_entry(const std::string& name) const;

    // Decompressed entry contents; nullopt when the name is absent. Throws
    // MalformedContainer on a corrupt local header or stream.
    std::optional<Bytes> read(const std::string& name) const;

    // Offset of the first local header, i.e. where the signing block scan
    // ends. The central directory starts at central_dir_offset().
    uint32_t central_dir_offset() const { return cd_offset_; }

private:
    ByteView data_;
    std::vector<Entry> entries_;
    uint32_t cd_offset_ = 0;
};

} // namespace permdrift
