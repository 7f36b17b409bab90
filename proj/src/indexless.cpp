#include "flashcode/indexless.hpp"

#include <algorithm>

namespace flashcode::indexless {

namespace {

[[noreturn]] void corrupted(const char* what) { throw Error(ErrorKind::corrupted_state, what); }

struct ZeroRun {
  int start;
  int length;
};

// Locates the single cyclic run of zeros, or returns nullopt when there are
// no zeros at all. Empty blocks and multiple runs are rejected.
std::optional<ZeroRun> zero_run(std::span<const Level> block) {
  const int len = static_cast<int>(block.size());
  int zeros = 0;
  int starts = 0;
  int start = -1;
  for (int j = 0; j < len; ++j) {
    if (block[j] != 0) continue;
    ++zeros;
    if (block[(j + len - 1) % len] != 0) {
      ++starts;
      start = j;
    }
  }
  if (zeros == 0) return std::nullopt;
  if (zeros == len) corrupted("block is empty");
  if (starts != 1) corrupted("zero cells do not form one cyclic run");
  return ZeroRun{start, zeros};
}

int unique_unfinished(std::span<const Level> block, int q) {
  int found = -1;
  for (int j = 0; j < static_cast<int>(block.size()); ++j) {
    if (block[j] >= q - 1) continue;
    if (found >= 0) corrupted("more than one unfinished cell in a block with no zeros");
    found = j;
  }
  if (found < 0) corrupted("block is full");
  return found;
}

}  // namespace

int read_index(std::span<const Level> block, int q) {
  const int len = static_cast<int>(block.size());
  if (auto run = zero_run(block)) return (run->start + run->length) % len;
  return (unique_unfinished(block, q) + 1) % len;
}

void advance(std::span<Level> block, int q) {
  const int len = static_cast<int>(block.size());
  if (block_status(block, q) == BlockStatus::full) throw Error(ErrorKind::full_block, "advance on a full block");
  if (auto run = zero_run(block)) {
    Level& before = block[(run->start + len - 1) % len];
    if (before < q - 1) {
      ++before;
    } else {
      block[run->start] = 1;
    }
    return;
  }
  ++block[unique_unfinished(block, q)];
}

void open_block(int i, std::span<Level> block) {
  if (std::any_of(block.begin(), block.end(), [](Level l) { return l != 0; })) {
    throw Error(ErrorKind::not_empty, "open_block on a block already written");
  }
  block[i] = 1;
}

InfoVector decode0(const CodeParams& params, const CellState& state) {
  auto v = InfoVector::zeros(params.k_eff);
  for (int j = 0; j < params.m; ++j) {
    auto block = stage0_block(params, j).in(state);
    if (block_status(block, params.q) != BlockStatus::active) continue;
    v.bits[read_index(block, params.q)] = static_cast<std::uint8_t>(parity(block));
  }
  return v;
}

EncodeOutcome encode0(const CodeParams& params, int i, const CellState& state) {
  int first_empty = -1;
  for (int j = 0; j < params.m; ++j) {
    auto block = stage0_block(params, j).in(state);
    auto status = block_status(block, params.q);
    if (status == BlockStatus::empty) {
      if (first_empty < 0) first_empty = j;
      continue;
    }
    if (status == BlockStatus::active && read_index(block, params.q) == i) {
      CellState next = state;
      advance(stage0_block(params, j).in(next), params.q);
      return next;
    }
  }
  if (first_empty < 0) return EncodeOutcome::erase();
  CellState next = state;
  open_block(i, stage0_block(params, first_empty).in(next));
  return next;
}

}  // namespace flashcode::indexless
