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

#include "permdrift/apk/axml.hpp"

#include <cstdio>

#include "permdrift/errors.hpp"

namespace permdrift {

namespace {

constexpr uint16_t kResXmlType = 0x0003;
constexpr uint16_t kResStringPoolType = 0x0001;
constexpr uint16_t kResXmlResourceMapType = 0x0180;
constexpr uint16_t kResXmlStartNamespaceType = 0x0100;
constexpr uint16_t kResXmlEndNamespaceType = 0x0101;
constexpr uint16_t kResXmlStartElementType = 0x0102;
constexpr uint16_t kResXmlEndElementType = 0x0103;
constexpr uint16_t kResXmlCdataType = 0x0104;

constexpr uint8_t kTypeNull = 0x00;
constexpr uint8_t kTypeString = 0x03;
constexpr uint8_t kTypeIntDec = 0x10;
constexpr uint8_t kTypeIntHex = 0x11;
constexpr uint8_t kTypeIntBoolean = 0x12;

constexpr uint32_t kNoEntry = 0xffffffff;
constexpr uint32_t kUtf8Flag = 1u << 8;

// Manifest attribute names for APKs whose string pool leaves the name
// slot empty and identifies the attribute by resource id only.
const char* attr_name_for_resource_id(uint32_t id) {
    switch (id) {
    case 0x01010000: return "theme";
    case 0x01010001: return "label";
    case 0x01010002: return "icon";
    case 0x01010003: return "name";
    case 0x01010006: return "permission";
    case 0x01010007: return "readPermission";
    case 0x01010008: return "writePermission";
    case 0x01010009: return "protectionLevel";
    case 0x0101000a: return "permissionGroup";
    case 0x01010010: return "exported";
    case 0x01010018: return "authorities";
    case 0x01010020: return "description";
    case 0x0101020c: return "minSdkVersion";
    case 0x0101021b: return "versionCode";
    case 0x0101021c: return "versionName";
    case 0x01010270: return "targetSdkVersion";
    case 0x01010271: return "maxSdkVersion";
    default: return nullptr;
    }
}

struct StringPool {
    std::vector<std::string> strings;

    const std::string& at(uint32_t idx) const {
        if (idx >= strings.size()) {
            throw MalformedManifest("string index out of range");
        }
        return strings[idx];
    }
};

std::string utf16le_to_utf8(ByteView units) {
    std::string out;
    size_t i = 0;
    auto next = [&]() -> uint32_t {
        uint32_t v = static_cast<uint32_t>(units[i]) | (static_cast<uint32_t>(units[i + 1]) << 8);
        i += 2;
        return v;
    };
    while (i + 2 <= units.size()) {
        uint32_t cp = next();
        if (cp >= 0xd800 && cp <= 0xdbff && i + 2 <= units.size()) {
            uint32_t lo = next();
            if (lo >= 0xdc00 && lo <= 0xdfff) {
                cp = 0x10000 + ((cp - 0xd800) << 10) + (lo - 0xdc00);
            }
        }
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        } else {
            out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        }
    }
    return out;
}

StringPool parse_string_pool(ByteView chunk) {
    ByteReader r(chunk);
    r.skip(2); // type
    uint16_t header_size = r.u16();
    r.skip(4); // chunk size
    uint32_t string_count = r.u32();
    r.skip(4); // style count
    uint32_t flags = r.u32();
    uint32_t strings_start = r.u32();
    r.skip(4); // styles start
    if (!r.ok() || header_size < 28 || header_size > chunk.size()) {
        throw MalformedManifest("string pool header truncated");
    }
    if (string_count > (chunk.size() - header_size) / 4) {
        throw MalformedManifest("string count exceeds the pool chunk");
    }
    bool utf8 = (flags & kUtf8Flag) != 0;

    r.seek(header_size);
    std::vector<uint32_t> offsets(string_count);
    for (auto& off : offsets) off = r.u32();
    if (!r.ok()) throw MalformedManifest("string pool offsets truncated");

    StringPool pool;
    pool.strings.reserve(string_count);
    for (uint32_t off : offsets) {
        ByteReader s(chunk);
        s.seek(strings_start + off);
        if (utf8) {
            // Two lengths precede the data: UTF-16 unit count (ignored)
            // and byte count, each one or two bytes.
            uint32_t u16len = s.u8();
            if (u16len & 0x80) s.u8();
            (void)u16len;
            uint32_t byte_len = s.u8();
            if (byte_len & 0x80) byte_len = ((byte_len & 0x7f) << 8) | s.u8();
            ByteView data = s.bytes(byte_len);
            if (!s.ok()) throw MalformedManifest("utf8 string out of range");
            pool.strings.emplace_back(reinterpret_cast<const char*>(data.data()),
                                      data.size());
        } else {
            uint32_t len = s.u16();
            if (len & 0x8000) len = ((len & 0x7fff) << 16) | s.u16();
            ByteView data = s.bytes(static_cast<size_t>(len) * 2);
            if (!s.ok()) throw MalformedManifest("utf16 string out of range");
            pool.strings.push_back(utf16le_to_utf8(data));
        }
    }
    return pool;
}

std::string format_typed_value(uint8_t type, uint32_t data, const StringPool& pool) {
    char buf[16];
    switch (type) {
    case kTypeNull:
        return "";
    case kTypeString:
        return pool.at(data);
    case kTypeIntBoolean:
        return data ? "true" : "false";
    case kTypeIntDec:
        std::snprintf(buf, sizeof(buf), "%d", static_cast<int32_t>(data));
        return buf;
    case kTypeIntHex:
        std::snprintf(buf, sizeof(buf), "0x%x", data);
        return buf;
    default:
        std::snprintf(buf, sizeof(buf), "%u", data);
        return buf;
    }
}

} // namespace

std::optional<std::string> XmlNode::attr(std::string_view name) const {
    for (const auto& a : attributes) {
        if (a.name == name) return a.value;
    }
    return std::nullopt;
}

const XmlNode* XmlNode::child(std::string_view tag_name) const {
    for (const auto& c : children) {
        if (c.tag == tag_name) return &c;
    }
    return nullptr;
}

bool is_axml(ByteView data) {
    if (data.size() < 8) return false;
    uint16_t type = static_cast<uint16_t>(data[0] | (data[1] << 8));
    uint16_t header_size = static_cast<uint16_t>(data[2] | (data[3] << 8));
    return type == kResXmlType && header_size == 8;
}

XmlNode decode_axml(ByteView data) {
    if (!is_axml(data)) throw MalformedManifest("not a binary XML document");
    ByteReader header(data);
    header.skip(4);
    uint32_t file_size = header.u32();
    if (file_size > data.size()) throw MalformedManifest("file chunk size out of range");

    StringPool pool;
    std::vector<uint32_t> resource_map;

    struct NsDecl {
        std::string prefix;
        std::string uri;
        bool attached = false; // xmlns attribute already re-emitted
    };
    std::vector<NsDecl> namespaces;

    XmlNode root;
    bool have_root = false;
    std::vector<XmlNode*> stack;

    size_t pos = 8;
    while (pos + 8 <= file_size) {
        ByteReader r(data.subspan(pos, file_size - pos));
        uint16_t type = r.u16();
        r.skip(2);
        uint32_t size = r.u32();
        if (!r.ok() || size < 8 || pos + size > file_size) {
            throw MalformedManifest("truncated chunk");
        }
        ByteView chunk = data.subspan(pos, size);

        switch (type) {
        case kResStringPoolType:
            pool = parse_string_pool(chunk);
            break;
        case kResXmlResourceMapType: {
            ByteReader m(chunk);
            m.skip(8);
            resource_map.clear();
            for (uint32_t i = 0; i < (size - 8) / 4; ++i) resource_map.push_back(m.u32());
            break;
        }
        case kResXmlStartNamespaceType: {
            ByteReader n(chunk);
            n.skip(16); // header, line, comment
            uint32_t prefix = n.u32();
            uint32_t uri = n.u32();
            if (!n.ok()) throw MalformedManifest("namespace chunk truncated");
            namespaces.push_back({prefix == kNoEntry ? "" : pool.at(prefix),
                                  uri == kNoEntry ? "" : pool.at(uri), false});
            break;
        }
        case kResXmlEndNamespaceType:
            if (namespaces.empty()) throw MalformedManifest("namespace underflow");
            namespaces.pop_back();
            break;
        case kResXmlStartElementType: {
            ByteReader e(chunk);
            e.skip(16); // header, line, comment
            e.skip(4);  // element namespace
            uint32_t name = e.u32();
            e.skip(4); // attribute start/size
            uint16_t attr_count = e.u16();
            e.skip(6); // id/class/style indices
            if (!e.ok()) throw MalformedManifest("element chunk truncated");

            XmlNode node;
            node.tag = pool.at(name);

            for (auto& ns : namespaces) {
                if (ns.attached) continue;
                ns.attached = true;
                node.attributes.push_back({"xmlns:" + ns.prefix, ns.uri, 0});
            }

            for (uint16_t i = 0; i < attr_count; ++i) {
                uint32_t attr_ns = e.u32();
                uint32_t attr_name = e.u32();
                uint32_t raw_value = e.u32();
                e.skip(2); // typed value size
                e.skip(1); // res0
                uint8_t value_type = e.u8();
                uint32_t value_data = e.u32();
                if (!e.ok()) throw MalformedManifest("attribute record truncated");

                XmlAttr attr;
                std::string local = pool.at(attr_name);
                if (attr_name < resource_map.size()) {
                    attr.resource_id = resource_map[attr_name];
                    if (local.empty()) {
                        if (const char* known = attr_name_for_resource_id(attr.resource_id)) {
                            local = known;
                        }
                    }
                }
                if (local.empty()) throw MalformedManifest("attribute without a name");
                if (attr_ns != kNoEntry) {
                    const std::string& uri = pool.at(attr_ns);
                    for (auto it = namespaces.rbegin(); it != namespaces.rend(); ++it) {
                        if (it->uri == uri) {
                            attr.name = it->prefix + ":" + local;
                            break;
                        }
                    }
                    if (attr.name.empty()) attr.name = local;
                } else {
                    attr.name = local;
                }
                attr.value = raw_value != kNoEntry ? pool.at(raw_value)
                                                   : format_typed_value(value_type, value_data, pool);
                node.attributes.push_back(std::move(attr));
            }

            if (stack.empty()) {
                if (have_root) throw MalformedManifest("multiple root elements");
                root = std::move(node);
                have_root = true;
                stack.push_back(&root);
            } else {
                stack.back()->children.push_back(std::move(node));
                stack.push_back(&stack.back()->children.back());
            }
            break;
        }
        case kResXmlEndElementType:
            if (stack.empty()) throw MalformedManifest("element underflow");
            stack.pop_back();
            break;
        case kResXmlCdataType:
            break; // manifests carry no meaningful text nodes
        default:
            throw MalformedManifest("unknown chunk type");
        }
        pos += size;
    }

    if (!have_root) throw MalformedManifest("document has no root element");
    if (!stack.empty()) throw MalformedManifest("unbalanced elements");
    return root;
}

} // namespace permdrift
