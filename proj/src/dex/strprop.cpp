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

#include "permdrift/dex/strprop.hpp"

#include <algorithm>
#include <deque>

#include "permdrift/errors.hpp"

namespace permdrift {

namespace {

constexpr std::string_view kStringBuilder = "Ljava/lang/StringBuilder;";
constexpr std::string_view kString = "Ljava/lang/String;";
constexpr std::string_view kCharSequence = "Ljava/lang/CharSequence;";
constexpr std::string_view kUri = "Landroid/net/Uri;";

} // namespace

StringFlow::StringFlow(const DexFile& dex, const DexFile::Code& code) : dex_(dex) {
    insns_ = decode_insns(code.insns);
    reg_count_ = code.registers_size;
    for (size_t i = 0; i < insns_.size(); ++i) {
        insn_index_by_offset_[insns_[i].offset] = i;
    }
    build_blocks(code);
    run_fixpoint();
}

size_t StringFlow::block_of_offset(uint32_t offset) const {
    auto it = insn_index_by_offset_.find(offset);
    if (it == insn_index_by_offset_.end()) throw MalformedDex("offset is not an instruction");
    size_t idx = it->second;
    // block_starts_ is sorted; find the block containing idx.
    auto b = std::upper_bound(block_starts_.begin(), block_starts_.end(), idx);
    return static_cast<size_t>(b - block_starts_.begin()) - 1;
}

void StringFlow::build_blocks(const DexFile::Code& code) {
    std::vector<uint32_t> leaders;
    leaders.push_back(0);
    for (uint32_t addr : code.handler_addrs) leaders.push_back(addr);

    auto add_target = [&](const Insn& insn, int32_t rel) {
        int64_t target = static_cast<int64_t>(insn.offset) + rel;
        if (target < 0) throw MalformedDex("branch before method start");
        leaders.push_back(static_cast<uint32_t>(target));
    };

    for (size_t i = 0; i < insns_.size(); ++i) {
        const Insn& insn = insns_[i];
        if (insn.is_payload) continue;
        if (insn.is_goto() || insn.is_conditional_branch()) {
            add_target(insn, insn.branch);
        }
        if (insn.is_switch()) {
            for (int32_t rel : switch_targets(code.insns, insn)) add_target(insn, rel);
        }
        bool splits_after = insn.is_goto() || insn.is_conditional_branch() ||
                            insn.is_switch() || insn.ends_block();
        if (splits_after && i + 1 < insns_.size()) {
            leaders.push_back(insns_[i + 1].offset);
        }
    }

    std::sort(leaders.begin(), leaders.end());
    leaders.erase(std::unique(leaders.begin(), leaders.end()), leaders.end());

    for (uint32_t offset : leaders) {
        auto it = insn_index_by_offset_.find(offset);
        if (it == insn_index_by_offset_.end()) {
            throw MalformedDex("branch into the middle of an instruction");
        }
        block_starts_.push_back(it->second);
    }

    // Successor edges per block.
    succ_.assign(block_starts_.size(), {});
    for (size_t b = 0; b < block_starts_.size(); ++b) {
        size_t first = block_starts_[b];
        size_t last = (b + 1 < block_starts_.size() ? block_starts_[b + 1] : insns_.size()) - 1;
        const Insn& end = insns_[last];
        auto link_offset = [&](int64_t target_offset) {
            auto it = insn_index_by_offset_.find(static_cast<uint32_t>(target_offset));
            if (it == insn_index_by_offset_.end()) throw MalformedDex("branch target invalid");
            auto sb = std::upper_bound(block_starts_.begin(), block_starts_.end(), it->second);
            succ_[b].push_back(static_cast<size_t>(sb - block_starts_.begin()) - 1);
        };
        (void)first;
        if (end.is_payload || end.is_return() || end.opcode == op::kThrow) {
            continue;
        }
        if (end.is_goto()) {
            link_offset(static_cast<int64_t>(end.offset) + end.branch);
            continue;
        }
        if (end.is_conditional_branch()) {
            link_offset(static_cast<int64_t>(end.offset) + end.branch);
        }
        if (end.is_switch()) {
            for (int32_t rel : switch_targets(code.insns, end)) {
                link_offset(static_cast<int64_t>(end.offset) + rel);
            }
        }
        if (last + 1 < insns_.size()) {
            succ_[b].push_back(b + 1); // fallthrough
        }
    }

    roots_.push_back(0);
    for (uint32_t addr : code.handler_addrs) {
        auto it = insn_index_by_offset_.find(addr);
        if (it == insn_index_by_offset_.end()) continue;
        auto sb = std::upper_bound(block_starts_.begin(), block_starts_.end(), it->second);
        roots_.push_back(static_cast<size_t>(sb - block_starts_.begin()) - 1);
    }
    std::sort(roots_.begin(), roots_.end());
    roots_.erase(std::unique(roots_.begin(), roots_.end()), roots_.end());
}

bool StringFlow::merge_into(State& dest, const State& src) {
    if (!src.reachable) return false;
    if (!dest.reachable) {
        dest = src;
        return true;
    }
    bool changed = false;
    for (size_t r = 0; r < dest.regs.size(); ++r) {
        if (dest.regs[r] == src.regs[r]) continue;
        if (dest.regs[r].kind != Value::Kind::unknown) {
            dest.regs[r] = Value{};
            changed = true;
        }
    }
    // Builders: keep entries both paths agree on; demote the rest.
    for (auto& [id, content] : dest.builders) {
        auto it = src.builders.find(id);
        if (it == src.builders.end() || it->second != content) {
            if (content.has_value()) {
                content.reset();
                changed = true;
            }
        }
    }
    for (const auto& [id, content] : src.builders) {
        if (!dest.builders.count(id)) {
            dest.builders[id] = std::nullopt;
            changed = true;
        }
    }
    for (uint32_t id : src.escaped) {
        if (dest.escaped.insert(id).second) changed = true;
    }
    return changed;
}

void StringFlow::apply(const Insn& insn, State& state, Value& pending,
                       bool& pending_valid) const {
    auto set_reg = [&](uint16_t reg, Value v) {
        if (reg < state.regs.size()) state.regs[reg] = std::move(v);
    };
    auto get_reg = [&](uint16_t reg) -> Value {
        return reg < state.regs.size() ? state.regs[reg] : Value{};
    };
    auto kill = [&](uint16_t reg, bool wide) {
        set_reg(reg, Value{});
        if (wide) set_reg(static_cast<uint16_t>(reg + 1), Value{});
    };

    bool was_pending = pending_valid;
    pending_valid = false;

    if (insn.is_payload) return;

    switch (insn.opcode) {
    case op::kNop:
        return;
    case op::kMoveObject:
    case op::kMoveObjectFrom16:
    case op::kMoveObject16:
        set_reg(insn.reg_a, get_reg(insn.reg_b));
        return;
    case op::kMoveResult:
    case op::kMoveResultObject:
        set_reg(insn.reg_a, was_pending ? pending : Value{});
        return;
    case op::kConst4:
    case op::kConst16:
    case op::kConst:
        // Object-typed zero is null; other literals are non-strings.
        set_reg(insn.reg_a,
                insn.literal == 0 ? Value{Value::Kind::null, "", 0} : Value{});
        return;
    case op::kConstString:
    case op::kConstStringJumbo:
        set_reg(insn.reg_a, Value{Value::Kind::str, dex_.string_at(insn.index), 0});
        return;
    case op::kCheckCast:
        return; // value unchanged
    case op::kNewInstance: {
        const std::string& type = dex_.type_descriptor(insn.index);
        if (type == kStringBuilder) {
            uint32_t id = insn.offset + 1;
            state.builders[id] = std::nullopt; // no content until <init>
            set_reg(insn.reg_a, Value{Value::Kind::builder, "", id});
        } else {
            kill(insn.reg_a, false);
        }
        return;
    }
    default:
        break;
    }

    // Builders stored where an untracked alias can reach them lose their
    // contents at the next opaque call.
    auto mark_escapes = [&](std::initializer_list<uint16_t> sources) {
        for (uint16_t reg : sources) {
            Value v = get_reg(reg);
            if (v.kind == Value::Kind::builder) state.escaped.insert(v.builder_id);
        }
    };
    if (insn.opcode == 0x4d || insn.opcode == 0x5b || insn.opcode == 0x69) {
        mark_escapes({insn.reg_a}); // aput/iput/sput-object
        return;
    }
    if (insn.opcode == 0x24 || insn.opcode == 0x25) { // filled-new-array
        for (size_t i = 0; i < insn.invoke_arg_count(); ++i) {
            mark_escapes({insn.invoke_arg(i)});
        }
        return;
    }
    if (insn.opcode >= 0xfa && insn.opcode <= 0xfd) {
        // invoke-polymorphic/custom: argument registers are not decoded,
        // so assume any builder may have been reached and mutated.
        for (auto& [id, content] : state.builders) {
            (void)id;
            content.reset();
        }
        return;
    }

    if (insn.is_invoke()) {
        const auto& ref = dex_.method_at(insn.index);
        const auto& proto = dex_.proto_at(ref.proto_idx);
        size_t argc = insn.invoke_arg_count();
        auto arg = [&](size_t i) { return get_reg(insn.invoke_arg(i)); };
        auto opaque_call = [&]() {
            // Arguments and every escaped builder may be mutated.
            for (size_t i = 0; i < argc; ++i) {
                Value v = arg(i);
                if (v.kind == Value::Kind::builder) state.builders[v.builder_id] = std::nullopt;
            }
            for (uint32_t id : state.escaped) state.builders[id] = std::nullopt;
        };
        // A builder method on an untracked receiver can only touch a
        // builder that escaped earlier (loads from fields or arrays);
        // those lose their contents.
        auto wipe_escaped = [&]() {
            for (uint32_t id : state.escaped) state.builders[id] = std::nullopt;
        };

        pending = Value{};
        pending_valid = true;

        if (ref.class_descriptor == kStringBuilder) {
            if (ref.name == "<init>" && argc >= 1) {
                Value recv = arg(0);
                if (recv.kind == Value::Kind::builder) {
                    if (proto.param_types.empty()) {
                        state.builders[recv.builder_id] = "";
                    } else if (proto.param_types.size() == 1 &&
                               (proto.param_types[0] == kString ||
                                proto.param_types[0] == kCharSequence) &&
                               argc >= 2 && arg(1).kind == Value::Kind::str) {
                        state.builders[recv.builder_id] = arg(1).text;
                    } else {
                        state.builders[recv.builder_id] = std::nullopt;
                    }
                } else {
                    wipe_escaped();
                }
                pending_valid = false;
                return;
            }
            if (ref.name == "append" && argc >= 2) {
                Value recv = arg(0);
                if (recv.kind == Value::Kind::builder) {
                    auto it = state.builders.find(recv.builder_id);
                    bool known = it != state.builders.end() && it->second.has_value();
                    bool is_string_param = proto.param_types.size() == 1 &&
                                           (proto.param_types[0] == kString ||
                                            proto.param_types[0] == kCharSequence);
                    Value operand = arg(1);
                    if (known && is_string_param && operand.kind == Value::Kind::str) {
                        state.builders[recv.builder_id] = *it->second + operand.text;
                    } else {
                        state.builders[recv.builder_id] = std::nullopt;
                    }
                    pending = recv; // append returns this
                } else {
                    wipe_escaped(); // mutation through an untracked alias
                }
                return;
            }
            if (ref.name == "toString" && argc >= 1) {
                Value recv = arg(0);
                if (recv.kind == Value::Kind::builder) {
                    auto it = state.builders.find(recv.builder_id);
                    if (it != state.builders.end() && it->second.has_value()) {
                        pending = Value{Value::Kind::str, *it->second, 0};
                    }
                }
                return;
            }
            opaque_call(); // insert, reverse, setLength, ...
            return;
        }

        if (ref.class_descriptor == kUri && ref.name == "parse" && argc >= 1) {
            // Model a parsed Uri by the string it came from.
            Value operand = arg(0);
            if (operand.kind == Value::Kind::str) pending = operand;
            return;
        }
        if (ref.class_descriptor == kUri && ref.name == "toString" && argc >= 1) {
            Value recv = arg(0);
            if (recv.kind == Value::Kind::str) pending = recv;
            return;
        }
        if (ref.class_descriptor == kString) {
            if (ref.name == "concat" && argc >= 2) {
                Value lhs = arg(0);
                Value rhs = arg(1);
                if (lhs.kind == Value::Kind::str && rhs.kind == Value::Kind::str) {
                    pending = Value{Value::Kind::str, lhs.text + rhs.text, 0};
                }
                return;
            }
            if (ref.name == "valueOf" && argc >= 1) {
                Value operand = arg(0);
                if (operand.kind == Value::Kind::str) pending = operand;
                return;
            }
            if (ref.name == "toString" && argc >= 1) {
                Value recv = arg(0);
                if (recv.kind == Value::Kind::str) pending = recv;
                return;
            }
            opaque_call();
            return;
        }
        opaque_call(); // unmodeled call: result stays unknown
        return;
    }

    int dest = insn.dest_reg();
    if (dest >= 0) {
        kill(static_cast<uint16_t>(dest), insn.dest_is_wide());
    }
}

void StringFlow::run_fixpoint() {
    in_.assign(block_starts_.size(), State{});
    if (block_starts_.empty()) return;

    std::deque<size_t> worklist;
    for (size_t root : roots_) {
        State entry;
        entry.reachable = true;
        entry.regs.assign(reg_count_, Value{});
        merge_into(in_[root], entry);
        worklist.push_back(root);
    }

    size_t guard = 0;
    const size_t max_steps =
        (block_starts_.size() + 1) * (reg_count_ + insns_.size() + 8) * 4 + 1024;
    while (!worklist.empty()) {
        if (++guard > max_steps) {
            // Monotone meet should always converge well inside the bound;
            // if not, discard everything rather than use partial facts.
            converged_ = false;
            break;
        }
        size_t b = worklist.front();
        worklist.pop_front();

        State state = in_[b];
        if (!state.reachable) continue;
        Value pending;
        bool pending_valid = false;
        size_t first = block_starts_[b];
        size_t last = (b + 1 < block_starts_.size() ? block_starts_[b + 1] : insns_.size());
        for (size_t i = first; i < last; ++i) {
            apply(insns_[i], state, pending, pending_valid);
        }

        for (size_t next : succ_[b]) {
            if (merge_into(in_[next], state)) {
                if (std::find(worklist.begin(), worklist.end(), next) == worklist.end()) {
                    worklist.push_back(next);
                }
            }
        }
    }
}

StringFlow::State StringFlow::state_before(uint32_t offset) const {
    auto it = insn_index_by_offset_.find(offset);
    if (it == insn_index_by_offset_.end()) throw MalformedDex("no instruction at offset");
    size_t idx = it->second;
    size_t b = block_of_offset(offset);

    State state = in_[b];
    if (!state.reachable) return state;
    Value pending;
    bool pending_valid = false;
    for (size_t i = block_starts_[b]; i < idx; ++i) {
        apply(insns_[i], state, pending, pending_valid);
    }
    return state;
}

std::optional<std::string> StringFlow::value_at(uint32_t offset, uint16_t reg) const {
    if (!converged_) return std::nullopt;
    State state = state_before(offset);
    if (!state.reachable || reg >= state.regs.size()) return std::nullopt;
    const Value& v = state.regs[reg];
    if (v.kind == Value::Kind::str) return v.text;
    if (v.kind == Value::Kind::builder) {
        auto it = state.builders.find(v.builder_id);
        if (it != state.builders.end() && it->second.has_value()) return *it->second;
    }
    return std::nullopt;
}

bool StringFlow::definitely_null_at(uint32_t offset, uint16_t reg) const {
    if (!converged_) return false;
    State state = state_before(offset);
    if (!state.reachable || reg >= state.regs.size()) return false;
    return state.regs[reg].kind == Value::Kind::null;
}

} // namespace permdrift
