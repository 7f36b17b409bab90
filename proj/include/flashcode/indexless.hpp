#pragma once

// Stage-0 code: each block of k_eff cells stores one bit as its parity, and
// which bit it stores is encoded in the cyclic order its cells were raised.
// A block for bit i fills cell i to q-1, then cell i+1, and so on mod k_eff.

#include "flashcode/core.hpp"

namespace flashcode::indexless {

/// Bit index encoded in an active block. Throws corrupted_state for empty,
/// full, or malformed blocks.
int read_index(std::span<const Level> block, int q);

/// One more level along the block's writing order; flips its parity.
void advance(std::span<Level> block, int q);

/// Starts an empty block for bit i.
void open_block(int i, std::span<Level> block);

/// Bits are k_eff long; padding bits are always 0.
InfoVector decode0(const CodeParams& params, const CellState& state);

/// Scans blocks in ascending order: advance the active block for bit i if
/// one exists, else open the first empty block, else erase.
EncodeOutcome encode0(const CodeParams& params, int i, const CellState& state);

/// The stage-0 block windows (the first m blocks of k_eff cells).
inline BlockView stage0_block(const CodeParams& params, int j) {
  return BlockView{static_cast<std::size_t>(j) * static_cast<std::size_t>(params.k_eff),
                   static_cast<std::size_t>(params.k_eff), BlockRole::parity};
}

}  // namespace flashcode::indexless
