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

// Structural view of one classes.dex. Parses the identifier pools, class
// definitions, and code items; bytecode semantics live in insns.hpp.
class DexFile {
public:
    struct Proto {
        std::string return_type;
        std::vector<std::string> param_types;
    };

    struct MethodRef {
        uint32_t class_idx = 0;
        uint32_t proto_idx = 0;
        std::string class_descriptor;
        std::string name;
    };

    struct EncodedMethod {
        uint32_t method_idx = 0;
        uint32_t access_flags = 0;
        uint32_t code_off = 0; // zero for abstract/native
    };

    struct ClassDef {
        std::string descriptor;
        std::string superclass;
        std::vector<EncodedMethod> direct_methods;
        std::vector<EncodedMethod> virtual_methods;
    };

    struct Code {
        uint16_t registers_size = 0;
        uint16_t ins_size = 0;
        std::vector<uint16_t> insns;
        std::vector<uint32_t> handler_addrs; // catch entry points, code units
    };

    // Throws MalformedDex on a bad magic, truncated tables, or
    // out-of-range offsets.
    static DexFile parse(ByteView data);

    const std::vector<std::string>& strings() const { return strings_; }
    const std::string& string_at(uint32_t idx) const;
    const std::string& type_descriptor(uint32_t idx) const;
    const Proto& proto_at(uint32_t idx) const;
    const MethodRef& method_at(uint32_t idx) const;
    const std::vector<ClassDef>& classes() const { return classes_; }
    const ClassDef* find_class(const std::string& descriptor) const;

    Code read_code(uint32_t code_off) const;

    static bool looks_like_dex(ByteView data);

private:
    ByteView data_;
    std::vector<std::string> strings_;
    std::vector<uint32_t> type_ids_; // indices into strings_
    std::vector<Proto> protos_;
    std::vector<MethodRef> methods_;
    std::vector<ClassDef> classes_;
};

// "Lcom/foo/Bar;" <-> "com.foo.Bar"
std::string descriptor_to_dotted(std::string_view descriptor);
std::string dotted_to_descriptor(std::string_view dotted);

} // namespace permdrift
