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

#include <array>
#include <cstdint>
#include <string>

#include "permdrift/util/bytes.hpp"

namespace permdrift {

// FIPS 180-4 SHA-256, self-contained so the parsers have no crypto
// library dependency.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(ByteView data);
    std::array<uint8_t, 32> digest();

private:
    void process_block(const uint8_t* block);

    std::array<uint32_t, 8> state_{};
    uint64_t total_len_ = 0;
    std::array<uint8_t, 64> buffer_{};
    size_t buffer_len_ = 0;
};

std::array<uint8_t, 32> sha256(ByteView data);
std::string sha256_hex(ByteView data);

} // namespace permdrift
