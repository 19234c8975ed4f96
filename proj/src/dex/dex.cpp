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

#include "permdrift/dex/dex.hpp"

#include <cstring>

#include "permdrift/errors.hpp"

namespace permdrift {

namespace {

constexpr size_t kHeaderSize = 0x70;

// Signed LEB128, used by encoded catch handler lists.
int32_t sleb128(ByteReader& r) {
    int32_t value = 0;
    int shift = 0;
    uint8_t byte = 0;
    do {
        byte = r.u8();
        value |= static_cast<int32_t>(byte & 0x7f) << shift;
        shift += 7;
    } while ((byte & 0x80) && shift < 35);
    if (shift < 32 && (byte & 0x40)) {
        value |= -(1 << shift); // sign extend
    }
    return value;
}

} // namespace

bool DexFile::looks_like_dex(ByteView data) {
    return data.size() >= 8 && std::memcmp(data.data(), "dex\n", 4) == 0 && data[7] == 0;
}

DexFile DexFile::parse(ByteView data) {
    if (!looks_like_dex(data) || data.size() < kHeaderSize) {
        throw MalformedDex("bad magic or truncated header");
    }
    DexFile dex;
    dex.data_ = data;

    ByteReader header(data);
    header.seek(0x38);
    uint32_t string_ids_size = header.u32();
    uint32_t string_ids_off = header.u32();
    uint32_t type_ids_size = header.u32();
    uint32_t type_ids_off = header.u32();
    uint32_t proto_ids_size = header.u32();
    uint32_t proto_ids_off = header.u32();
    header.skip(8); // field ids
    uint32_t method_ids_size = header.u32();
    uint32_t method_ids_off = header.u32();
    uint32_t class_defs_size = header.u32();
    uint32_t class_defs_off = header.u32();
    if (!header.ok()) throw MalformedDex("truncated header");

    auto table = [&](uint32_t off, uint32_t count, uint32_t stride) -> ByteReader {
        if (static_cast<uint64_t>(off) + static_cast<uint64_t>(count) * stride > data.size()) {
            throw MalformedDex("id table out of range");
        }
        ByteReader r(data);
        r.seek(off);
        return r;
    };

    // Strings: MUTF-8, NUL-terminated; the leading uleb is the UTF-16
    // length, which is not the byte count.
    {
        ByteReader ids = table(string_ids_off, string_ids_size, 4);
        dex.strings_.reserve(string_ids_size);
        for (uint32_t i = 0; i < string_ids_size; ++i) {
            uint32_t off = ids.u32();
            if (off >= data.size()) throw MalformedDex("string data out of range");
            ByteReader s(data);
            s.seek(off);
            s.uleb128();
            std::string value;
            while (true) {
                uint8_t byte = s.u8();
                if (!s.ok()) throw MalformedDex("unterminated string");
                if (byte == 0) break;
                value.push_back(static_cast<char>(byte));
            }
            dex.strings_.push_back(std::move(value));
        }
        if (!ids.ok()) throw MalformedDex("string id table truncated");
    }

    {
        ByteReader ids = table(type_ids_off, type_ids_size, 4);
        dex.type_ids_.reserve(type_ids_size);
        for (uint32_t i = 0; i < type_ids_size; ++i) {
            uint32_t idx = ids.u32();
            if (idx >= dex.strings_.size()) throw MalformedDex("type id out of range");
            dex.type_ids_.push_back(idx);
        }
    }

    {
        ByteReader ids = table(proto_ids_off, proto_ids_size, 12);
        dex.protos_.reserve(proto_ids_size);
        for (uint32_t i = 0; i < proto_ids_size; ++i) {
            ids.u32(); // shorty
            uint32_t return_type = ids.u32();
            uint32_t params_off = ids.u32();
            if (return_type >= dex.type_ids_.size()) throw MalformedDex("proto return type");
            Proto proto;
            proto.return_type = dex.type_descriptor(return_type);
            if (params_off != 0) {
                if (params_off + 4 > data.size()) throw MalformedDex("type list out of range");
                ByteReader list(data);
                list.seek(params_off);
                uint32_t count = list.u32();
                for (uint32_t j = 0; j < count; ++j) {
                    uint16_t type_idx = list.u16();
                    if (!list.ok() || type_idx >= dex.type_ids_.size()) {
                        throw MalformedDex("type list entry out of range");
                    }
                    proto.param_types.push_back(dex.type_descriptor(type_idx));
                }
            }
            dex.protos_.push_back(std::move(proto));
        }
        if (!ids.ok()) throw MalformedDex("proto id table truncated");
    }

    {
        ByteReader ids = table(method_ids_off, method_ids_size, 8);
        dex.methods_.reserve(method_ids_size);
        for (uint32_t i = 0; i < method_ids_size; ++i) {
            MethodRef ref;
            ref.class_idx = ids.u16();
            ref.proto_idx = ids.u16();
            uint32_t name_idx = ids.u32();
            if (ref.class_idx >= dex.type_ids_.size() || ref.proto_idx >= dex.protos_.size() ||
                name_idx >= dex.strings_.size()) {
                throw MalformedDex("method id out of range");
            }
            ref.class_descriptor = dex.type_descriptor(ref.class_idx);
            ref.name = dex.strings_[name_idx];
            dex.methods_.push_back(std::move(ref));
        }
        if (!ids.ok()) throw MalformedDex("method id table truncated");
    }

    {
        ByteReader defs = table(class_defs_off, class_defs_size, 32);
        dex.classes_.reserve(class_defs_size);
        for (uint32_t i = 0; i < class_defs_size; ++i) {
            uint32_t class_idx = defs.u32();
            defs.u32(); // access flags
            uint32_t superclass_idx = defs.u32();
            defs.skip(12); // interfaces, source file, annotations
            uint32_t class_data_off = defs.u32();
            defs.u32(); // static values
            if (class_idx >= dex.type_ids_.size()) throw MalformedDex("class def out of range");

            ClassDef def;
            def.descriptor = dex.type_descriptor(class_idx);
            def.superclass = superclass_idx == 0xffffffff || superclass_idx >= dex.type_ids_.size()
                                 ? ""
                                 : dex.type_descriptor(superclass_idx);
            if (class_data_off != 0) {
                if (class_data_off >= data.size()) throw MalformedDex("class data out of range");
                ByteReader cd(data);
                cd.seek(class_data_off);
                uint32_t static_fields = cd.uleb128();
                uint32_t instance_fields = cd.uleb128();
                uint32_t direct_methods = cd.uleb128();
                uint32_t virtual_methods = cd.uleb128();
                // Encoded fields and methods take at least two bytes each;
                // counts beyond the remaining bytes cannot be honest.
                uint64_t declared = static_cast<uint64_t>(static_fields) + instance_fields +
                                    direct_methods + virtual_methods;
                if (declared * 2 > cd.remaining()) {
                    throw MalformedDex("class data counts exceed the file");
                }
                for (uint32_t f = 0; f < static_fields + instance_fields; ++f) {
                    cd.uleb128(); // field idx diff
                    cd.uleb128(); // access flags
                }
                auto read_methods = [&](uint32_t count, std::vector<EncodedMethod>& out) {
                    uint32_t method_idx = 0;
                    for (uint32_t m = 0; m < count; ++m) {
                        method_idx += cd.uleb128();
                        EncodedMethod em;
                        em.method_idx = method_idx;
                        em.access_flags = cd.uleb128();
                        em.code_off = cd.uleb128();
                        if (!cd.ok() || em.method_idx >= dex.methods_.size()) {
                            throw MalformedDex("encoded method out of range");
                        }
                        out.push_back(em);
                    }
                };
                read_methods(direct_methods, def.direct_methods);
                read_methods(virtual_methods, def.virtual_methods);
                if (!cd.ok()) throw MalformedDex("class data truncated");
            }
            dex.classes_.push_back(std::move(def));
        }
        if (!defs.ok()) throw MalformedDex("class def table truncated");
    }

    return dex;
}

const std::string& DexFile::string_at(uint32_t idx) const {
    if (idx >= strings_.size()) throw MalformedDex("string index out of range");
    return strings_[idx];
}

const std::string& DexFile::type_descriptor(uint32_t idx) const {
    if (idx >= type_ids_.size()) throw MalformedDex("type index out of range");
    return strings_[type_ids_[idx]];
}

const DexFile::Proto& DexFile::proto_at(uint32_t idx) const {
    if (idx >= protos_.size()) throw MalformedDex("proto index out of range");
    return protos_[idx];
}

const DexFile::MethodRef& DexFile::method_at(uint32_t idx) const {
    if (idx >= methods_.size()) throw MalformedDex("method index out of range");
    return methods_[idx];
}

const DexFile::ClassDef* DexFile::find_class(const std::string& descriptor) const {
    for (const auto& def : classes_) {
        if (def.descriptor == descriptor) return &def;
    }
    return nullptr;
}

DexFile::Code DexFile::read_code(uint32_t code_off) const {
    if (code_off == 0 || code_off + 16 > data_.size()) {
        throw MalformedDex("code item out of range");
    }
    ByteReader r(data_);
    r.seek(code_off);
    Code code;
    code.registers_size = r.u16();
    code.ins_size = r.u16();
    r.u16(); // outs
    uint16_t tries_size = r.u16();
    r.u32(); // debug info
    uint32_t insns_size = r.u32();
    if (static_cast<uint64_t>(insns_size) * 2 > r.remaining()) {
        throw MalformedDex("declared instruction count exceeds the file");
    }
    code.insns.reserve(insns_size);
    for (uint32_t i = 0; i < insns_size; ++i) code.insns.push_back(r.u16());
    if (!r.ok()) throw MalformedDex("code item truncated");

    if (tries_size > 0) {
        if (insns_size % 2 == 1) r.u16(); // alignment
        std::vector<uint16_t> handler_offs(tries_size);
        for (uint16_t t = 0; t < tries_size; ++t) {
            r.u32(); // start addr
            r.u16(); // insn count
            handler_offs[t] = r.u16();
        }
        size_t handlers_base = r.pos();
        ByteReader h(data_);
        h.seek(handlers_base);
        uint32_t list_size = h.uleb128();
        // Walk the whole handler list; every catch address is a root for
        // the dataflow engine.
        for (uint32_t i = 0; i < list_size && h.ok(); ++i) {
            int32_t size = sleb128(h);
            uint32_t pairs = static_cast<uint32_t>(size < 0 ? -size : size);
            for (uint32_t p = 0; p < pairs; ++p) {
                h.uleb128(); // type idx
                code.handler_addrs.push_back(h.uleb128());
            }
            if (size <= 0) code.handler_addrs.push_back(h.uleb128()); // catch-all
        }
        if (!h.ok()) throw MalformedDex("catch handler list truncated");
    }
    return code;
}

std::string descriptor_to_dotted(std::string_view descriptor) {
    if (descriptor.size() >= 2 && descriptor.front() == 'L' && descriptor.back() == ';') {
        std::string out(descriptor.substr(1, descriptor.size() - 2));
        for (char& c : out) {
            if (c == '/') c = '.';
        }
        return out;
    }
    return std::string(descriptor);
}

std::string dotted_to_descriptor(std::string_view dotted) {
    std::string out = "L";
    out += dotted;
    out += ";";
    for (char& c : out) {
        if (c == '.') c = '/';
    }
    return out;
}

} // namespace permdrift
