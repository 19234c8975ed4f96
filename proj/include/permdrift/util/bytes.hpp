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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace permdrift {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

// Bounds-checked little-endian cursor over a byte buffer. Overruns throw
// the exception type the owning parser installs via the template parameter
// of fail(); callers use the typed helpers below.
class ByteReader {
public:
    explicit ByteReader(ByteView data) : data_(data) {}

    size_t pos() const { return pos_; }
    size_t size() const { return data_.size(); }
    size_t remaining() const { return data_.size() - pos_; }
    bool eof() const { return pos_ >= data_.size(); }

    bool can_read(size_t n) const { return n <= remaining(); }

    void seek(size_t p) {
        ok_ = ok_ && p <= data_.size();
        pos_ = p <= data_.size() ? p : data_.size();
    }

    void skip(size_t n) { seek(ok_ ? pos_ + n : data_.size()); }

    uint8_t u8() { return ok_ && can_read(1) ? data_[pos_++] : fail8(); }

    uint16_t u16() {
        if (!ok_ || !can_read(2)) return fail8();
        uint16_t v = static_cast<uint16_t>(data_[pos_] | (data_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }

    uint32_t u32() {
        if (!ok_ || !can_read(4)) return fail8();
        uint32_t v = static_cast<uint32_t>(data_[pos_]) |
                     (static_cast<uint32_t>(data_[pos_ + 1]) << 8) |
                     (static_cast<uint32_t>(data_[pos_ + 2]) << 16) |
                     (static_cast<uint32_t>(data_[pos_ + 3]) << 24);
        pos_ += 4;
        return v;
    }

    uint64_t u64() {
        uint64_t lo = u32();
        uint64_t hi = u32();
        return lo | (hi << 32);
    }

    // Unsigned LEB128 (DEX encoding), capped at five bytes.
    uint32_t uleb128() {
        uint32_t v = 0;
        for (int shift = 0; shift < 35; shift += 7) {
            uint8_t b = u8();
            v |= static_cast<uint32_t>(b & 0x7f) << shift;
            if ((b & 0x80) == 0) break;
        }
        return v;
    }

    ByteView bytes(size_t n) {
        if (!ok_ || !can_read(n)) {
            fail8();
            return {};
        }
        ByteView out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    // True while every read so far stayed in bounds.
    bool ok() const { return ok_; }

private:
    uint8_t fail8() {
        ok_ = false;
        pos_ = data_.size();
        return 0;
    }

    ByteView data_;
    size_t pos_ = 0;
    bool ok_ = true;
};

std::string to_hex(ByteView data);

} // namespace permdrift
