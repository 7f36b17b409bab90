#pragma once

// Recursive multi-stage code. Stage 0 is the indexless code. When a stage
// can no longer accept a write, the parity region is re-read as blocks of
// half the size, the live ones are paired with a fresh batch of explicit
// index blocks, and writing continues. There are s = ceil(log2 k_eff) stages.
//
// Two ways of storing index blocks:
//   base-q   every stage r >= 1 owns its own batch of 2(k_eff-1) blocks of
//            mu = ceil(log_q(k_eff+2)) cells holding a base-q numeral.
//   stacked  blocks of mu' = ceil(log2(k_eff+2)) cells hold a binary numeral
//            written as offsets above a per-stage floor level, so one stack
//            of cells serves q-1 consecutive stages. A tally region whose
//            level-sum equals the current stage tells the decoder where it is.
//
// Index block values: 0 = available, b+1 = bit b, all-top = full.

#include "flashcode/core.hpp"

namespace flashcode::multistage {

struct IndexBlockValue {
  enum class Kind { available, bit, full };

  Kind kind = Kind::available;
  int bit = 0;

  static IndexBlockValue available() { return {Kind::available, 0}; }
  static IndexBlockValue of_bit(int b) { return {Kind::bit, b}; }
  static IndexBlockValue full() { return {Kind::full, 0}; }

  friend bool operator==(const IndexBlockValue&, const IndexBlockValue&) = default;
};

/// Where the index blocks of stage r live and how their cells are read.
struct StageContext {
  int stage = 0;
  int block_size = 0;   // parity block size, k_eff / 2^r
  int block_count = 0;  // 2^r * m
  std::size_t index_base = 0;
  int floor = 0;  // stacked only: lowest level of this stage's window
};

StageContext stage_context(const CodeParams& params, int r);

/// Window of the slot-th index block used by stage r >= 1.
BlockView index_block(const CodeParams& params, int r, int slot);

IndexBlockValue read_index_block(const CodeParams& params, int r, std::span<const Level> cells);

/// Raises cells to encode `value`. Only available->bit, available->full,
/// bit->full and same-value rewrites are legal.
void write_index_block(const CodeParams& params, int r, std::span<Level> cells, IndexBlockValue value);

int current_stage(const CodeParams& params, const CellState& state);

/// Re-partitions for stage r and records v (k_eff bits) in the first k_eff
/// live parity blocks. Erases when fewer than k_eff live blocks remain.
EncodeOutcome transition(const CodeParams& params, int r, const CellState& state, const InfoVector& v);

InfoVector decode_r(const CodeParams& params, int r, const CellState& state);
EncodeOutcome encode_r(const CodeParams& params, int r, int i, const CellState& state);

/// Top-level driver over all stages. Bits are k_eff long.
InfoVector decode(const CodeParams& params, const CellState& state);
EncodeOutcome encode(const CodeParams& params, int i, const CellState& state);

/// A live parity block of stage r and the index block paired with it.
struct LivePair {
  BlockView parity;
  BlockView index;
  IndexBlockValue value;
};

/// Walks parity and index blocks in lockstep, skipping full ones on both
/// sides. Throws corrupted_state if the live counts disagree.
std::vector<LivePair> live_pairs(const CodeParams& params, int r, const CellState& state);

}  // namespace flashcode::multistage
