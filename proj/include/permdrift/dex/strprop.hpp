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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "permdrift/dex/dex.hpp"
#include "permdrift/dex/insns.hpp"

namespace permdrift {

// Intraprocedural forward propagation of string constants through
// const-string, String.concat, StringBuilder append chains, and
// Uri.parse. Must-analysis: a register holds a value only when every
// path to the query point agrees on it, so conflicting branch
// assignments resolve to unknown rather than a guess.
class StringFlow {
public:
    StringFlow(const DexFile& dex, const DexFile::Code& code);

    // Constant string value of `reg` immediately before the instruction
    // at `offset` (code units). Empty when not a provable constant.
    std::optional<std::string> value_at(uint32_t offset, uint16_t reg) const;

    // True when `reg` is provably null at that point. Used by the
    // provider return-path analysis.
    bool definitely_null_at(uint32_t offset, uint16_t reg) const;

    const std::vector<Insn>& insns() const { return insns_; }
    const std::vector<size_t>& block_starts() const { return block_starts_; }

    // Forward reachability (from entry and catch handlers) per block.
    bool block_reachable(size_t block_index) const { return in_[block_index].reachable; }
    size_t block_of_offset(uint32_t offset) const;
    std::vector<std::vector<size_t>> successors() const { return succ_; }

private:
    struct Value {
        enum class Kind : uint8_t { unknown, null, str, builder };
        Kind kind = Kind::unknown;
        std::string text;
        uint32_t builder_id = 0;

        bool operator==(const Value&) const = default;
    };

    struct State {
        bool reachable = false;
        std::vector<Value> regs;
        // Builder contents keyed by allocation site; empty optional means
        // the content is not a provable constant.
        std::map<uint32_t, std::optional<std::string>> builders;
        // Builders stored to fields/arrays: an unseen alias may mutate
        // them, so any unmodeled call wipes their contents.
        std::set<uint32_t> escaped;
    };

    void build_blocks(const DexFile::Code& code);
    void run_fixpoint();
    static bool merge_into(State& dest, const State& src);
    void apply(const Insn& insn, State& state, Value& pending, bool& pending_valid) const;
    State state_before(uint32_t offset) const;

    const DexFile& dex_;
    std::vector<Insn> insns_;
    std::map<uint32_t, size_t> insn_index_by_offset_;
    std::vector<size_t> block_starts_;          // insn indices
    std::vector<std::vector<size_t>> succ_;     // block -> successor blocks
    std::vector<size_t> roots_;                 // entry + handler blocks
    std::vector<State> in_;
    uint16_t reg_count_ = 0;
    bool converged_ = true;
};

} // namespace permdrift
