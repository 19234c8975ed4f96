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

#include <cstdint>
#include <span>
#include <vector>

namespace permdrift {

// Dalvik opcodes the analyses act on by name. Everything else is decoded
// structurally (length, registers, branch targets) and treated as opaque.
namespace op {
inline constexpr uint8_t kNop = 0x00;
inline constexpr uint8_t kMoveObject = 0x07;
inline constexpr uint8_t kMoveObjectFrom16 = 0x08;
inline constexpr uint8_t kMoveObject16 = 0x09;
inline constexpr uint8_t kMoveResult = 0x0a;
inline constexpr uint8_t kMoveResultObject = 0x0c;
inline constexpr uint8_t kMoveException = 0x0d;
inline constexpr uint8_t kReturnVoid = 0x0e;
inline constexpr uint8_t kReturn = 0x0f;
inline constexpr uint8_t kReturnWide = 0x10;
inline constexpr uint8_t kReturnObject = 0x11;
inline constexpr uint8_t kConst4 = 0x12;
inline constexpr uint8_t kConst16 = 0x13;
inline constexpr uint8_t kConst = 0x14;
inline constexpr uint8_t kConstString = 0x1a;
inline constexpr uint8_t kConstStringJumbo = 0x1b;
inline constexpr uint8_t kCheckCast = 0x1f;
inline constexpr uint8_t kNewInstance = 0x22;
inline constexpr uint8_t kFillArrayData = 0x26;
inline constexpr uint8_t kThrow = 0x27;
inline constexpr uint8_t kGoto = 0x28;
inline constexpr uint8_t kGoto16 = 0x29;
inline constexpr uint8_t kGoto32 = 0x2a;
inline constexpr uint8_t kPackedSwitch = 0x2b;
inline constexpr uint8_t kSparseSwitch = 0x2c;
inline constexpr uint8_t kIfFirst = 0x32;   // if-eq
inline constexpr uint8_t kIfLast = 0x3d;    // if-lez
inline constexpr uint8_t kInvokeVirtual = 0x6e;
inline constexpr uint8_t kInvokeSuper = 0x6f;
inline constexpr uint8_t kInvokeDirect = 0x70;
inline constexpr uint8_t kInvokeStatic = 0x71;
inline constexpr uint8_t kInvokeInterface = 0x72;
inline constexpr uint8_t kInvokeVirtualRange = 0x74;
inline constexpr uint8_t kInvokeInterfaceRange = 0x78;
} // namespace op

struct Insn {
    uint32_t offset = 0;  // code units from method start
    uint8_t opcode = 0;
    uint8_t length = 0;   // code units, payloads excepted (see is_payload)
    uint32_t payload_units = 0;

    // Operands; which are meaningful depends on the format.
    uint16_t reg_a = 0;
    uint16_t reg_b = 0;
    uint16_t reg_c = 0;
    uint32_t index = 0;   // string@, type@, method@, field@
    int32_t branch = 0;   // relative target in code units
    int64_t literal = 0;

    // invoke operands
    uint16_t args[5] = {0, 0, 0, 0, 0};
    uint8_t arg_count = 0;
    bool is_range = false;
    uint16_t range_base = 0;

    bool is_payload = false;

    bool is_invoke() const {
        return (opcode >= op::kInvokeVirtual && opcode <= op::kInvokeInterface) ||
               (opcode >= op::kInvokeVirtualRange && opcode <= op::kInvokeInterfaceRange);
    }
    bool is_conditional_branch() const {
        return opcode >= op::kIfFirst && opcode <= op::kIfLast;
    }
    bool is_goto() const {
        return opcode == op::kGoto || opcode == op::kGoto16 || opcode == op::kGoto32;
    }
    bool is_switch() const {
        return opcode == op::kPackedSwitch || opcode == op::kSparseSwitch;
    }
    bool is_return() const { return opcode >= op::kReturnVoid && opcode <= op::kReturnObject; }
    bool ends_block() const {
        return is_goto() || is_return() || opcode == op::kThrow;
    }

    // Argument register i of an invoke, range or not.
    uint16_t invoke_arg(size_t i) const {
        return is_range ? static_cast<uint16_t>(range_base + i) : args[i];
    }
    size_t invoke_arg_count() const { return arg_count; }

    // Register written by this instruction, or -1. Wide writes also
    // clobber dest+1; callers kill both.
    int dest_reg() const;
    bool dest_is_wide() const;
};

// Decode a full instruction stream. Switch/array payloads become
// pseudo-instructions with is_payload set. Throws MalformedDex on
// unknown opcodes or truncated units.
std::vector<Insn> decode_insns(std::span<const uint16_t> units);

// Relative branch targets of a packed/sparse switch, read from its payload.
std::vector<int32_t> switch_targets(std::span<const uint16_t> units, const Insn& insn);

} // namespace permdrift
