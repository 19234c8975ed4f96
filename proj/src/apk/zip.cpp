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

#include "permdrift/apk/zip.hpp"

#include <cstring>

#include <zlib.h>

#include "permdrift/errors.hpp"

namespace permdrift {

namespace {

constexpr uint32_t kEocdSignature = 0x06054b50;
constexpr uint32_t kCentralSignature = 0x02014b50;
constexpr uint32_t kLocalSignature = 0x04034b50;
constexpr uint16_t kMethodStored = 0;
constexpr uint16_t kMethodDeflate = 8;

uint32_t read_u32(ByteView d, size_t off) {
    return static_cast<uint32_t>(d[off]) | (static_cast<uint32_t>(d[off + 1]) << 8) |
           (static_cast<uint32_t>(d[off + 2]) << 16) |
           (static_cast<uint32_t>(d[off + 3]) << 24);
}

uint16_t read_u16(ByteView d, size_t off) {
    return static_cast<uint16_t>(d[off] | (d[off + 1] << 8));
}

Bytes inflate_raw(ByteView compressed, size_t expected_size) {
    // DEFLATE cannot expand beyond ~1032:1; a declared size past that is
    // a lie and would otherwise force a giant allocation up front.
    if (expected_size > compressed.size() * 1032 + 64) {
        throw MalformedContainer("implausible uncompressed size");
    }
    Bytes out(expected_size);
    z_stream strm;
    std::memset(&strm, 0, sizeof(strm));
    if (inflateInit2(&strm, -MAX_WBITS) != Z_OK) {
        throw MalformedContainer("zlib init failed");
    }
    strm.next_in = const_cast<Bytef*>(compressed.data());
    strm.avail_in = static_cast<uInt>(compressed.size());
    strm.next_out = out.data();
    strm.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&strm, Z_FINISH);
    inflateEnd(&strm);
    if (rc != Z_STREAM_END || strm.total_out != expected_size) {
        throw MalformedContainer("deflate stream corrupt");
    }
    return out;
}

} // namespace

ZipReader::ZipReader(ByteView data) : data_(data) {
    // EOCD: fixed 22 bytes plus a comment of up to 64 KiB; scan backwards.
    if (data_.size() < 22) throw MalformedContainer("too small for a ZIP");
    size_t scan_start = data_.size() >= 22 + 65535 ? data_.size() - 22 - 65535 : 0;
    size_t eocd = SIZE_MAX;
    for (size_t i = data_.size() - 22 + 1; i-- > scan_start;) {
        if (read_u32(data_, i) == kEocdSignature) {
            eocd = i;
            break;
        }
    }
    if (eocd == SIZE_MAX) throw MalformedContainer("no end-of-central-directory");

    uint16_t entry_count = read_u16(data_, eocd + 10);
    uint32_t cd_size = read_u32(data_, eocd + 12);
    cd_offset_ = read_u32(data_, eocd + 16);
    if (static_cast<uint64_t>(cd_offset_) + cd_size > data_.size()) {
        throw MalformedContainer("central directory out of range");
    }

    size_t pos = cd_offset_;
    entries_.reserve(entry_count);
    for (uint16_t i = 0; i < entry_count; ++i) {
        if (pos + 46 > data_.size() || read_u32(data_, pos) != kCentralSignature) {
            throw MalformedContainer("bad central directory entry");
        }
        Entry e;
        e.method = read_u16(data_, pos + 10);
        e.compressed_size = read_u32(data_, pos + 20);
        e.uncompressed_size = read_u32(data_, pos + 24);
        uint16_t name_len = read_u16(data_, pos + 28);
        uint16_t extra_len = read_u16(data_, pos + 30);
        uint16_t comment_len = read_u16(data_, pos + 32);
        e.local_header_offset = read_u32(data_, pos + 42);
        if (pos + 46 + name_len > data_.size()) {
            throw MalformedContainer("entry name out of range");
        }
        e.name.assign(reinterpret_cast<const char*>(data_.data() + pos + 46), name_len);
        entries_.push_back(std::move(e));
        pos += 46 + name_len + extra_len + comment_len;
    }
}

bool ZipReader::has_entry(const std::string& name) const {
    for (const auto& e : entries_) {
        if (e.name == name) return true;
    }
    return false;
}

std::optional<Bytes> ZipReader::read(const std::string& name) const {
    const Entry* entry = nullptr;
    for (const auto& e : entries_) {
        if (e.name == name) {
            entry = &e;
            break;
        }
    }
    if (!entry) return std::nullopt;

    size_t pos = entry->local_header_offset;
    if (pos + 30 > data_.size() || read_u32(data_, pos) != kLocalSignature) {
        throw MalformedContainer("bad local header for " + name);
    }
    // Sizes in the local header may be zero (streamed entries); trust the
    // central directory, which is authoritative.
    uint16_t name_len = read_u16(data_, pos + 26);
    uint16_t extra_len = read_u16(data_, pos + 28);
    size_t data_start = pos + 30 + name_len + extra_len;
    if (data_start + entry->compressed_size > data_.size()) {
        throw MalformedContainer("entry data out of range for " + name);
    }
    ByteView raw = data_.subspan(data_start, entry->compressed_size);

    switch (entry->method) {
    case kMethodStored:
        if (entry->compressed_size != entry->uncompressed_size) {
            throw MalformedContainer("stored entry size mismatch for " + name);
        }
        return Bytes(raw.begin(), raw.end());
    case kMethodDeflate:
        return inflate_raw(raw, entry->uncompressed_size);
    default:
        throw MalformedContainer("unsupported compression method for " + name);
    }
}

} // namespace permdrift
