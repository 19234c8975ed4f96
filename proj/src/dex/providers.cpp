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

#include "permdrift/dex/providers.hpp"

#include <algorithm>

#include "permdrift/dex/dex.hpp"
#include "permdrift/dex/strprop.hpp"
#include "permdrift/errors.hpp"

namespace permdrift {

namespace {

bool is_sqlite_helper(const std::string& class_descriptor) {
    return class_descriptor.starts_with("Landroid/database/sqlite/");
}

bool is_file_helper(const std::string& class_descriptor, const std::string& method_name) {
    if (class_descriptor == "Ljava/io/FileInputStream;" ||
        class_descriptor == "Ljava/io/FileReader;" ||
        class_descriptor == "Ljava/io/RandomAccessFile;" ||
        class_descriptor == "Landroid/os/ParcelFileDescriptor;" ||
        class_descriptor == "Landroid/content/res/AssetFileDescriptor;") {
        return true;
    }
    return method_name == "openFileInput" || method_name == "openFile" ||
           method_name == "openAssetFile";
}

} // namespace

const char* to_string(StoreKind kind) {
    switch (kind) {
    case StoreKind::sqlite: return "sqlite";
    case StoreKind::file: return "file";
    case StoreKind::none_detected: return "none-detected";
    }
    return "none-detected";
}

ProviderSensitivity extract_provider_columns(const std::vector<Bytes>& dex_files,
                                             const std::string& provider_class) {
    std::string descriptor = dotted_to_descriptor(provider_class);

    ProviderSensitivity out;
    out.provider_class = provider_class;
    bool found = false;

    for (const auto& bytes : dex_files) {
        DexFile dex = DexFile::parse(ByteView(bytes));
        const DexFile::ClassDef* def = dex.find_class(descriptor);
        if (!def) continue;
        found = true;

        for (const auto& method : def->virtual_methods) {
            const auto& ref = dex.method_at(method.method_idx);
            if (ref.name != "query" || method.code_off == 0) continue;

            DexFile::Code code = dex.read_code(method.code_off);
            StringFlow flow(dex, code);
            const auto& insns = flow.insns();
            const auto& starts = flow.block_starts();
            auto succ = flow.successors();
            size_t block_count = starts.size();

            // Blocks holding a return of a possibly non-null cursor.
            std::vector<bool> returns_value(block_count, false);
            for (size_t b = 0; b < block_count; ++b) {
                size_t first = starts[b];
                size_t last = (b + 1 < block_count ? starts[b + 1] : insns.size());
                for (size_t i = first; i < last; ++i) {
                    const Insn& insn = insns[i];
                    if (insn.opcode != op::kReturnObject) continue;
                    if (!flow.definitely_null_at(insn.offset, insn.reg_a)) {
                        returns_value[b] = true;
                    }
                }
            }

            // Blocks that can reach such a return, via reverse edges.
            std::vector<std::vector<size_t>> pred(block_count);
            for (size_t b = 0; b < block_count; ++b) {
                for (size_t s : succ[b]) pred[s].push_back(b);
            }
            std::vector<bool> on_return_path = returns_value;
            std::vector<size_t> stack;
            for (size_t b = 0; b < block_count; ++b) {
                if (on_return_path[b]) stack.push_back(b);
            }
            while (!stack.empty()) {
                size_t b = stack.back();
                stack.pop_back();
                for (size_t p : pred[b]) {
                    if (!on_return_path[p]) {
                        on_return_path[p] = true;
                        stack.push_back(p);
                    }
                }
            }

            bool saw_sqlite = false;
            bool saw_file = false;
            for (size_t b = 0; b < block_count; ++b) {
                if (!on_return_path[b] || !flow.block_reachable(b)) continue;
                size_t first = starts[b];
                size_t last = (b + 1 < block_count ? starts[b + 1] : insns.size());
                for (size_t i = first; i < last; ++i) {
                    const Insn& insn = insns[i];
                    if (insn.opcode == op::kConstString ||
                        insn.opcode == op::kConstStringJumbo) {
                        out.column_constants.insert(dex.string_at(insn.index));
                    } else if (insn.is_invoke()) {
                        const auto& target = dex.method_at(insn.index);
                        if (is_sqlite_helper(target.class_descriptor)) saw_sqlite = true;
                        if (is_file_helper(target.class_descriptor, target.name)) {
                            saw_file = true;
                        }
                    } else if (insn.opcode == op::kNewInstance) {
                        const std::string& type = dex.type_descriptor(insn.index);
                        if (is_sqlite_helper(type)) saw_sqlite = true;
                        if (is_file_helper(type, "")) saw_file = true;
                    }
                }
            }
            if (saw_sqlite) {
                out.store_kind = StoreKind::sqlite;
            } else if (saw_file && out.store_kind != StoreKind::sqlite) {
                out.store_kind = StoreKind::file;
            }
        }
    }

    if (!found) throw ClassNotFound("provider class not in DEX set: " + provider_class);
    return out;
}

} // namespace permdrift
