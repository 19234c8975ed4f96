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

#include "permdrift/dex/callsites.hpp"

#include <algorithm>
#include <set>

#include "permdrift/dex/dex.hpp"
#include "permdrift/dex/strprop.hpp"
#include "permdrift/errors.hpp"

namespace permdrift {

namespace {

constexpr std::string_view kContentResolver = "Landroid/content/ContentResolver;";
constexpr std::string_view kUriType = "Landroid/net/Uri;";
constexpr std::string_view kStringType = "Ljava/lang/String;";

std::string proto_signature(const DexFile& dex, uint32_t proto_idx) {
    const auto& proto = dex.proto_at(proto_idx);
    std::string sig = "(";
    for (const auto& p : proto.param_types) sig += p;
    sig += ")";
    sig += proto.return_type;
    return sig;
}

} // namespace

const char* to_string(ResolverOp op) {
    switch (op) {
    case ResolverOp::query: return "query";
    case ResolverOp::insert: return "insert";
    case ResolverOp::update: return "update";
    case ResolverOp::del: return "delete";
    case ResolverOp::call: return "call";
    }
    return "query";
}

std::optional<ResolverOp> resolver_op_from_name(std::string_view name) {
    if (name == "query") return ResolverOp::query;
    if (name == "insert") return ResolverOp::insert;
    if (name == "update") return ResolverOp::update;
    if (name == "delete") return ResolverOp::del;
    if (name == "call") return ResolverOp::call;
    return std::nullopt;
}

const char* to_string(Attribution a) {
    switch (a) {
    case Attribution::app_core: return "app_core";
    case Attribution::third_party: return "third_party";
    case Attribution::unclassified: return "unclassified";
    }
    return "unclassified";
}

std::string normalize_authority(std::string_view uri) {
    constexpr std::string_view kScheme = "content://";
    if (uri.starts_with(kScheme)) uri.remove_prefix(kScheme.size());
    if (auto end = uri.find_first_of("/?#"); end != std::string_view::npos) {
        uri = uri.substr(0, end);
    }
    return std::string(uri);
}

ScanResult scan_call_sites(const std::vector<Bytes>& dex_files) {
    ScanResult result;

    // Parse everything first so the name-only fallback can tell locally
    // defined receiver types from unknown external ones.
    std::vector<DexFile> parsed;
    std::vector<size_t> parsed_source;
    std::set<std::string> defined_classes;
    for (size_t i = 0; i < dex_files.size(); ++i) {
        try {
            parsed.push_back(DexFile::parse(ByteView(dex_files[i])));
            parsed_source.push_back(i);
            for (const auto& def : parsed.back().classes()) {
                defined_classes.insert(def.descriptor);
            }
        } catch (const MalformedDex& e) {
            result.errors.push_back("dex " + std::to_string(i) + ": " + e.what());
        }
    }

    for (const DexFile& dex : parsed) {
        // Sort classes by descriptor for a deterministic walk.
        std::vector<const DexFile::ClassDef*> classes;
        for (const auto& def : dex.classes()) classes.push_back(&def);
        std::sort(classes.begin(), classes.end(),
                  [](const DexFile::ClassDef* a, const DexFile::ClassDef* b) {
                      return a->descriptor < b->descriptor;
                  });

        for (const DexFile::ClassDef* def : classes) {
            auto scan_method = [&](const DexFile::EncodedMethod& method) {
                if (method.code_off == 0) return;
                const auto& enclosing = dex.method_at(method.method_idx);
                DexFile::Code code;
                std::optional<StringFlow> flow;
                try {
                    code = dex.read_code(method.code_off);
                    flow.emplace(dex, code);
                } catch (const MalformedDex&) {
                    return; // skip bodies we cannot decode
                }

                for (const Insn& insn : flow->insns()) {
                    if (!insn.is_invoke()) continue;
                    const auto& target = dex.method_at(insn.index);
                    auto op = resolver_op_from_name(target.name);
                    if (!op) continue;

                    const auto& proto = dex.proto_at(target.proto_idx);
                    bool uri_first = !proto.param_types.empty() &&
                                     proto.param_types[0] == kUriType;
                    bool string_first = !proto.param_types.empty() &&
                                        proto.param_types[0] == kStringType;

                    bool exact = target.class_descriptor == kContentResolver &&
                                 (uri_first || (*op == ResolverOp::call && string_first));
                    // Receiver types we cannot resolve locally (e.g.
                    // resolver subclasses) match by name and Uri argument.
                    bool fallback = !exact && uri_first &&
                                    !defined_classes.count(target.class_descriptor) &&
                                    target.class_descriptor != kContentResolver;
                    if (!exact && !fallback) continue;
                    if (insn.invoke_arg_count() < 2) continue;

                    CallSite site;
                    site.declaring_class = descriptor_to_dotted(enclosing.class_descriptor);
                    site.method_name = enclosing.name;
                    site.method_signature = proto_signature(dex, enclosing.proto_idx);
                    site.op_kind = *op;
                    site.insn_offset = insn.offset;
                    uint16_t uri_reg = insn.invoke_arg(1);
                    if (auto value = flow->value_at(insn.offset, uri_reg)) {
                        std::string authority = normalize_authority(*value);
                        if (!authority.empty()) site.resolved_authority = authority;
                    }
                    result.call_sites.push_back(std::move(site));
                }
            };
            for (const auto& m : def->direct_methods) scan_method(m);
            for (const auto& m : def->virtual_methods) scan_method(m);
        }
    }

    std::sort(result.call_sites.begin(), result.call_sites.end(),
              [](const CallSite& a, const CallSite& b) {
                  if (a.declaring_class != b.declaring_class) {
                      return a.declaring_class < b.declaring_class;
                  }
                  if (a.method_name != b.method_name) return a.method_name < b.method_name;
                  if (a.method_signature != b.method_signature) {
                      return a.method_signature < b.method_signature;
                  }
                  return a.insn_offset < b.insn_offset;
              });
    return result;
}

} // namespace permdrift
