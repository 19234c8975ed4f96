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

#include "permdrift/apk/cert.hpp"

#include <cstring>

#include "permdrift/apk/zip.hpp"
#include "permdrift/util/sha256.hpp"
#include "permdrift/util/text.hpp"

namespace permdrift {

namespace {

constexpr char kSigBlockMagic[] = "APK Sig Block 42"; // 16 bytes, no NUL
constexpr uint32_t kV2BlockId = 0x7109871a;
constexpr uint32_t kV3BlockId = 0xf05368c0;

uint32_t read_u32(ByteView d, size_t off) {
    return static_cast<uint32_t>(d[off]) | (static_cast<uint32_t>(d[off + 1]) << 8) |
           (static_cast<uint32_t>(d[off + 2]) << 16) |
           (static_cast<uint32_t>(d[off + 3]) << 24);
}

uint64_t read_u64(ByteView d, size_t off) {
    return static_cast<uint64_t>(read_u32(d, off)) |
           (static_cast<uint64_t>(read_u32(d, off + 4)) << 32);
}

// v2 and v3 scheme blocks share their leading layout down to the signer's
// certificate list: signers / signer / signed-data / digests / certificates.
std::optional<ByteView> first_cert_in_scheme_block(ByteView block) {
    ByteReader r(block);
    r.skip(4); // signer sequence length
    r.skip(4); // first signer length
    r.skip(4); // signed data length
    uint32_t digests_len = r.u32();
    r.skip(digests_len);
    r.skip(4); // certificates length
    uint32_t cert_len = r.u32();
    ByteView cert = r.bytes(cert_len);
    if (!r.ok() || cert_len == 0) return std::nullopt;
    return cert;
}

std::optional<ByteView> cert_from_signing_block(ByteView apk, uint32_t cd_offset) {
    if (cd_offset < 32 || cd_offset > apk.size()) return std::nullopt;
    if (std::memcmp(apk.data() + cd_offset - 16, kSigBlockMagic, 16) != 0) {
        return std::nullopt;
    }
    uint64_t block_size = read_u64(apk, cd_offset - 24);
    if (block_size < 24 || block_size + 8 > cd_offset) return std::nullopt;
    // Pairs start right after the leading size field and run up to the
    // trailing size field.
    size_t pairs_begin = cd_offset - block_size;
    size_t pairs_end = cd_offset - 24;

    std::optional<ByteView> v2;
    size_t pos = pairs_begin;
    while (pos + 12 <= pairs_end) {
        uint64_t pair_len = read_u64(apk, pos);
        uint32_t id = read_u32(apk, pos + 8);
        // pair_len is attacker-controlled; compare against the remaining
        // span without forming pos + pair_len.
        if (pair_len < 4 || pair_len - 4 > pairs_end - (pos + 12)) break;
        ByteView value = apk.subspan(pos + 12, pair_len - 4);
        if (id == kV3BlockId) {
            if (auto cert = first_cert_in_scheme_block(value)) return cert;
        } else if (id == kV2BlockId && !v2) {
            v2 = first_cert_in_scheme_block(value);
        }
        pos += 8 + pair_len;
    }
    return v2;
}

// Minimal DER TLV walk, enough to pull the first certificate out of a
// PKCS#7 SignedData.
struct Tlv {
    uint8_t tag = 0;
    ByteView content;
    size_t total = 0; // header + content
};

std::optional<Tlv> read_tlv(ByteView data) {
    if (data.size() < 2) return std::nullopt;
    Tlv t;
    t.tag = data[0];
    size_t len = data[1];
    size_t header = 2;
    if (len & 0x80) {
        size_t len_bytes = len & 0x7f;
        if (len_bytes == 0 || len_bytes > 4 || data.size() < 2 + len_bytes) return std::nullopt;
        len = 0;
        for (size_t i = 0; i < len_bytes; ++i) len = (len << 8) | data[2 + i];
        header = 2 + len_bytes;
    }
    if (header + len > data.size()) return std::nullopt;
    t.content = data.subspan(header, len);
    t.total = header + len;
    return t;
}

const uint8_t kOidSignedData[] = {0x2a, 0x86, 0x48, 0x86, 0xf7, 0x0d, 0x01, 0x07, 0x02};

std::optional<ByteView> cert_from_pkcs7(ByteView der) {
    auto content_info = read_tlv(der);
    if (!content_info || content_info->tag != 0x30) return std::nullopt;

    ByteView body = content_info->content;
    auto oid = read_tlv(body);
    if (!oid || oid->tag != 0x06) return std::nullopt;
    if (oid->content.size() != sizeof(kOidSignedData) ||
        std::memcmp(oid->content.data(), kOidSignedData, sizeof(kOidSignedData)) != 0) {
        return std::nullopt;
    }
    body = body.subspan(oid->total);

    auto wrapper = read_tlv(body); // [0] EXPLICIT content
    if (!wrapper || wrapper->tag != 0xa0) return std::nullopt;
    auto signed_data = read_tlv(wrapper->content);
    if (!signed_data || signed_data->tag != 0x30) return std::nullopt;

    // SignedData: version, digestAlgorithms, encapContentInfo,
    // [0] certificates, ...
    ByteView fields = signed_data->content;
    for (int skip = 0; skip < 3; ++skip) {
        auto f = read_tlv(fields);
        if (!f) return std::nullopt;
        fields = fields.subspan(f->total);
    }
    auto certs = read_tlv(fields);
    if (!certs || certs->tag != 0xa0) return std::nullopt;
    auto first = read_tlv(certs->content);
    if (!first || first->tag != 0x30) return std::nullopt;
    return certs->content.subspan(0, first->total);
}

std::optional<ByteView> cert_from_meta_inf(const ZipReader& zip, std::vector<Bytes>& storage) {
    for (const auto& entry : zip.entries()) {
        if (!entry.name.starts_with("META-INF/")) continue;
        std::string lower = to_lower(entry.name);
        if (!lower.ends_with(".rsa") && !lower.ends_with(".dsa") && !lower.ends_with(".ec")) {
            continue;
        }
        auto blob = zip.read(entry.name);
        if (!blob || blob->empty()) continue;
        storage.push_back(std::move(*blob));
        ByteView der(storage.back());
        if (auto cert = cert_from_pkcs7(der)) return cert;
        // Some tooling stores a bare certificate instead of a PKCS#7 blob.
        auto tlv = read_tlv(der);
        if (tlv && tlv->tag == 0x30 && tlv->total == der.size()) return der;
    }
    return std::nullopt;
}

} // namespace

std::optional<std::string> cert_digest(ByteView apk_bytes, const ZipReader& zip) {
    if (auto cert = cert_from_signing_block(apk_bytes, zip.central_dir_offset())) {
        return sha256_hex(*cert);
    }
    std::vector<Bytes> storage;
    if (auto cert = cert_from_meta_inf(zip, storage)) {
        return sha256_hex(*cert);
    }
    return std::nullopt;
}

} // namespace permdrift
