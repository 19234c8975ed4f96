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

#include "permdrift/dex/insns.hpp"

#include "permdrift/errors.hpp"

namespace permdrift {

namespace {

enum Format : uint8_t {
    kBad = 0,
    k10x, k12x, k11n, k11x, k10t,
    k20t, k22x, k21t, k21s, k21h, k21c, k23x, k22b, k22t, k22s, k22c,
    k30t, k32x, k31i, k31t, k31c,
    k35c, k3rc,
    k45cc, k4rcc,
    k51l,
};

constexpr uint8_t kFormats[256] = {
    /* 00 */ k10x, k12x, k22x, k32x, k12x, k22x, k32x, k12x,
    /* 08 */ k22x, k32x, k11x, k11x, k11x, k11x, k10x, k11x,
    /* 10 */ k11x, k11x, k11n, k21s, k31i, k21h, k21s, k31i,
    /* 18 */ k51l, k21h, k21c, k31c, k21c, k11x, k11x, k21c,
    /* 20 */ k22c, k12x, k21c, k22c, k35c, k3rc, k31t, k11x,
    /* 28 */ k10t, k20t, k30t, k31t, k31t, k23x, k23x, k23x,
    /* 30 */ k23x, k23x, k22t, k22t, k22t, k22t, k22t, k22t,
    /* 38 */ k21t, k21t, k21t, k21t, k21t, k21t, kBad, kBad,
    /* 40 */ kBad, kBad, kBad, kBad, k23x, k23x, k23x, k23x,
    /* 48 */ k23x, k23x, k23x, k23x, k23x, k23x, k23x, k23x,
    /* 50 */ k23x, k23x, k22c, k22c, k22c, k22c, k22c, k22c,
    /* 58 */ k22c, k22c, k22c, k22c, k22c, k22c, k22c, k22c,
    /* 60 */ k21c, k21c, k21c, k21c, k21c, k21c, k21c, k21c,
    /* 68 */ k21c, k21c, k21c, k21c, k21c, k21c, k35c, k35c,
    /* 70 */ k35c, k35c, k35c, kBad, k3rc, k3rc, k3rc, k3rc,
    /* 78 */ k3rc, kBad, kBad, k12x, k12x, k12x, k12x, k12x,
    /* 80 */ k12x, k12x, k12x, k12x, k12x, k12x, k12x, k12x,
    /* 88 */ k12x, k12x, k12x, k12x, k12x, k12x, k12x, k12x,
    /* 90 */ k23x, k23x, k23x, k23x, k23x, k23x, k23x, k23x,
    /* 98 */ k23x, k23x, k23x, k23x, k23x, k23x, k23x, k23x,
    /* a0 */ k23x, k23x, k23x, k23x, k23x, k23x, k23x, k23x,
    /* a8 */ k23x, k23x, k23x, k23x, k23x, k23x, k23x, k23x,
    /* b0 */ k12x, k12x, k12x, k12x, k12x, k12x, k12x, k12x,
    /* b8 */ k12x, k12x, k12x, k12x, k12x, k12x, k12x, k12x,
    /* c0 */ k12x, k12x, k12x, k12x, k12x, k12x, k12x, k12x,
    /* c8 */ k12x, k12x, k12x, k12x, k12x, k12x, k12x, k12x,
    /* d0 */ k22s, k22s, k22s, k22s, k22s, k22s, k22s, k22s,
    /* d8 */ k22b, k22b, k22b, k22b, k22b, k22b, k22b, k22b,
    /* e0 */ k22b, k22b, k22b, kBad, kBad, kBad, kBad, kBad,
    /* e8 */ kBad, kBad, kBad, kBad, kBad, kBad, kBad, kBad,
    /* f0 */ kBad, kBad, kBad, kBad, kBad, kBad, kBad, kBad,
    /* f8 */ kBad, kBad, k45cc, k4rcc, k35c, k3rc, k21c, k21c,
};

constexpr uint8_t format_length(uint8_t fmt) {
    switch (fmt) {
    case k10x: case k12x: case k11n: case k11x: case k10t:
        return 1;
    case k20t: case k22x: case k21t: case k21s: case k21h: case k21c:
    case k23x: case k22b: case k22t: case k22s: case k22c:
        return 2;
    case k30t: case k32x: case k31i: case k31t: case k31c: case k35c: case k3rc:
        return 3;
    case k45cc: case k4rcc:
        return 4;
    case k51l:
        return 5;
    default:
        return 0;
    }
}

// Opcodes that write a register; complement of pure reads/branches.
bool writes_register(uint8_t opcode) {
    if (opcode >= 0x01 && opcode <= 0x0d) return true;  // moves, move-result, move-exception
    if (opcode >= 0x12 && opcode <= 0x1c) return true;  // const family
    if (opcode >= 0x20 && opcode <= 0x23) return true;  // instance-of .. new-array
    if (opcode >= 0x2d && opcode <= 0x31) return true;  // cmp
    if (opcode >= 0x44 && opcode <= 0x4a) return true;  // aget
    if (opcode >= 0x52 && opcode <= 0x58) return true;  // iget
    if (opcode >= 0x60 && opcode <= 0x66) return true;  // sget
    if (opcode >= 0x7b && opcode <= 0xe2) return true;  // unop/binop
    if (opcode == 0xfe || opcode == 0xff) return true;  // const-method-*
    return false;
}

bool wide_write(uint8_t opcode) {
    switch (opcode) {
    case 0x04: case 0x05: case 0x06: // move-wide
    case 0x0b:                       // move-result-wide
    case 0x16: case 0x17: case 0x18: case 0x19: // const-wide
    case 0x45: case 0x53: case 0x61:            // aget/iget/sget-wide
        return true;
    default:
        // long/double producing arithmetic
        if (opcode >= 0x7b && opcode <= 0x8f) {
            switch (opcode) {
            case 0x7d: case 0x7e: case 0x80: // neg-long, not-long, neg-double
            case 0x81: case 0x83:            // int-to-long, int-to-double
            case 0x86: case 0x88:            // long-to-double, float-to-long
            case 0x89: case 0x8b:            // float-to-double, double-to-long
                return true;
            default:
                return false;
            }
        }
        if (opcode >= 0x90 && opcode <= 0xcf) {
            // binop groups cycle add..ushr per type; the -long and -double
            // variants produce wide results.
            uint8_t base = opcode;
            if (base >= 0xb0) base = static_cast<uint8_t>(base - 0xb0 + 0x90);
            bool is_long = base >= 0x9b && base <= 0xa5;
            bool is_double = base >= 0xab && base <= 0xaf;
            return is_long || is_double;
        }
        return false;
    }
}

} // namespace

int Insn::dest_reg() const {
    if (is_payload || !writes_register(opcode)) return -1;
    return reg_a;
}

bool Insn::dest_is_wide() const { return wide_write(opcode); }

std::vector<Insn> decode_insns(std::span<const uint16_t> units) {
    std::vector<Insn> insns;
    size_t pos = 0;
    while (pos < units.size()) {
        uint16_t unit0 = units[pos];
        uint8_t opcode = static_cast<uint8_t>(unit0 & 0xff);
        uint8_t high = static_cast<uint8_t>(unit0 >> 8);

        Insn insn;
        insn.offset = static_cast<uint32_t>(pos);
        insn.opcode = opcode;

        // Switch and array payloads are data embedded in the stream.
        if (opcode == op::kNop && (high == 0x01 || high == 0x02 || high == 0x03)) {
            uint32_t units_len = 0;
            if (high == 0x01) {
                if (pos + 2 > units.size()) throw MalformedDex("packed-switch payload truncated");
                units_len = static_cast<uint32_t>(units[pos + 1]) * 2 + 4;
            } else if (high == 0x02) {
                if (pos + 2 > units.size()) throw MalformedDex("sparse-switch payload truncated");
                units_len = static_cast<uint32_t>(units[pos + 1]) * 4 + 2;
            } else {
                if (pos + 4 > units.size()) throw MalformedDex("array payload truncated");
                uint64_t width = units[pos + 1];
                uint64_t count = static_cast<uint64_t>(units[pos + 2]) |
                                 (static_cast<uint64_t>(units[pos + 3]) << 16);
                uint64_t total = (count * width + 1) / 2 + 4;
                if (total > units.size() - pos) throw MalformedDex("array payload overruns");
                units_len = static_cast<uint32_t>(total);
            }
            if (pos + units_len > units.size()) throw MalformedDex("payload overruns method");
            insn.is_payload = true;
            insn.payload_units = units_len;
            insn.length = 0;
            insns.push_back(insn);
            pos += units_len;
            continue;
        }

        uint8_t fmt = kFormats[opcode];
        if (fmt == kBad) throw MalformedDex("unknown opcode");
        uint8_t len = format_length(fmt);
        if (pos + len > units.size()) throw MalformedDex("instruction truncated");

        auto u = [&](size_t i) { return units[pos + i]; };
        switch (fmt) {
        case k10x:
            break;
        case k12x:
            insn.reg_a = (unit0 >> 8) & 0xf;
            insn.reg_b = unit0 >> 12;
            break;
        case k11n:
            insn.reg_a = (unit0 >> 8) & 0xf;
            insn.literal = static_cast<int8_t>(static_cast<uint8_t>(unit0 >> 12) << 4) >> 4;
            break;
        case k11x:
            insn.reg_a = unit0 >> 8;
            break;
        case k10t:
            insn.branch = static_cast<int8_t>(unit0 >> 8);
            break;
        case k20t:
            insn.branch = static_cast<int16_t>(u(1));
            break;
        case k22x:
            insn.reg_a = unit0 >> 8;
            insn.reg_b = u(1);
            break;
        case k21t:
            insn.reg_a = unit0 >> 8;
            insn.branch = static_cast<int16_t>(u(1));
            break;
        case k21s:
            insn.reg_a = unit0 >> 8;
            insn.literal = static_cast<int16_t>(u(1));
            break;
        case k21h:
            insn.reg_a = unit0 >> 8;
            insn.literal = static_cast<int64_t>(static_cast<int16_t>(u(1)))
                           << (opcode == 0x19 ? 48 : 16);
            break;
        case k21c:
            insn.reg_a = unit0 >> 8;
            insn.index = u(1);
            break;
        case k23x:
            insn.reg_a = unit0 >> 8;
            insn.reg_b = u(1) & 0xff;
            insn.reg_c = u(1) >> 8;
            break;
        case k22b:
            insn.reg_a = unit0 >> 8;
            insn.reg_b = u(1) & 0xff;
            insn.literal = static_cast<int8_t>(u(1) >> 8);
            break;
        case k22t:
            insn.reg_a = (unit0 >> 8) & 0xf;
            insn.reg_b = unit0 >> 12;
            insn.branch = static_cast<int16_t>(u(1));
            break;
        case k22s:
            insn.reg_a = (unit0 >> 8) & 0xf;
            insn.reg_b = unit0 >> 12;
            insn.literal = static_cast<int16_t>(u(1));
            break;
        case k22c:
            insn.reg_a = (unit0 >> 8) & 0xf;
            insn.reg_b = unit0 >> 12;
            insn.index = u(1);
            break;
        case k30t:
            insn.branch = static_cast<int32_t>(static_cast<uint32_t>(u(1)) |
                                               (static_cast<uint32_t>(u(2)) << 16));
            break;
        case k32x:
            insn.reg_a = u(1);
            insn.reg_b = u(2);
            break;
        case k31i:
            insn.reg_a = unit0 >> 8;
            insn.literal = static_cast<int32_t>(static_cast<uint32_t>(u(1)) |
                                                (static_cast<uint32_t>(u(2)) << 16));
            break;
        case k31t:
            insn.reg_a = unit0 >> 8;
            insn.branch = static_cast<int32_t>(static_cast<uint32_t>(u(1)) |
                                               (static_cast<uint32_t>(u(2)) << 16));
            break;
        case k31c:
            insn.reg_a = unit0 >> 8;
            insn.index = static_cast<uint32_t>(u(1)) | (static_cast<uint32_t>(u(2)) << 16);
            break;
        case k35c: {
            insn.arg_count = static_cast<uint8_t>(unit0 >> 12);
            if (insn.arg_count > 5) throw MalformedDex("invoke with more than five args");
            insn.index = u(1);
            uint16_t regs = u(2);
            uint16_t g = (unit0 >> 8) & 0xf;
            uint16_t all[5] = {static_cast<uint16_t>(regs & 0xf),
                               static_cast<uint16_t>((regs >> 4) & 0xf),
                               static_cast<uint16_t>((regs >> 8) & 0xf),
                               static_cast<uint16_t>(regs >> 12), g};
            for (uint8_t i = 0; i < insn.arg_count; ++i) insn.args[i] = all[i];
            break;
        }
        case k3rc:
            insn.arg_count = static_cast<uint8_t>(unit0 >> 8);
            insn.index = u(1);
            insn.range_base = u(2);
            insn.is_range = true;
            break;
        case k45cc:
        case k4rcc:
            insn.index = u(1);
            break;
        case k51l:
            insn.reg_a = unit0 >> 8;
            insn.literal = static_cast<int64_t>(
                static_cast<uint64_t>(u(1)) | (static_cast<uint64_t>(u(2)) << 16) |
                (static_cast<uint64_t>(u(3)) << 32) | (static_cast<uint64_t>(u(4)) << 48));
            break;
        default:
            throw MalformedDex("unhandled format");
        }

        insn.length = len;
        insns.push_back(insn);
        pos += len;
    }
    return insns;
}

std::vector<int32_t> switch_targets(std::span<const uint16_t> units, const Insn& insn) {
    if (!insn.is_switch()) return {};
    int64_t payload_off = static_cast<int64_t>(insn.offset) + insn.branch;
    if (payload_off < 0 || static_cast<size_t>(payload_off) + 2 > units.size()) {
        throw MalformedDex("switch payload out of range");
    }
    size_t p = static_cast<size_t>(payload_off);
    uint16_t ident = units[p];
    std::vector<int32_t> targets;
    auto s32 = [&](size_t at) {
        return static_cast<int32_t>(static_cast<uint32_t>(units[at]) |
                                    (static_cast<uint32_t>(units[at + 1]) << 16));
    };
    if (ident == 0x0100) { // packed
        uint16_t size = units[p + 1];
        if (p + 4 + size * 2 > units.size()) throw MalformedDex("packed payload truncated");
        for (uint16_t i = 0; i < size; ++i) targets.push_back(s32(p + 4 + i * 2));
    } else if (ident == 0x0200) { // sparse
        uint16_t size = units[p + 1];
        if (p + 2 + size * 4 > units.size()) throw MalformedDex("sparse payload truncated");
        for (uint16_t i = 0; i < size; ++i) targets.push_back(s32(p + 2 + size * 2 + i * 2));
    } else {
        throw MalformedDex("switch target is not a payload");
    }
    return targets;
}

} // namespace permdrift
