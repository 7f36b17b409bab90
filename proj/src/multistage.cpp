#include "flashcode/multistage.hpp"

#include <algorithm>

#include "flashcode/indexless.hpp"

namespace flashcode::multistage {

namespace {

using Kind = IndexBlockValue::Kind;

[[noreturn]] void corrupted(const std::string& what) { throw Error(ErrorKind::corrupted_state, what); }

bool stacked(const CodeParams& p) { return p.scheme == Scheme::multistage_stacked; }

void check_stage(const CodeParams& p, int r) {
  if (p.scheme != Scheme::multistage_baseq && p.scheme != Scheme::multistage_stacked) {
    throw Error(ErrorKind::invalid_params, "not a multistage scheme");
  }
  if (r < 1 || r >= p.stages) throw Error(ErrorKind::invalid_params, "stage out of range: " + std::to_string(r));
}

// Numeral stored in the block: base q, or binary offsets above the floor.
std::int64_t numeral(const CodeParams& p, const StageContext& ctx, std::span<const Level> cells) {
  const int radix = stacked(p) ? 2 : p.q;
  std::int64_t value = 0;
  for (Level l : cells) {
    int digit = l;
    if (stacked(p)) {
      digit -= ctx.floor;
      if (digit < 0 || digit > 1) corrupted("stacked index cell outside its stage window");
    }
    value = value * radix + digit;
  }
  return value;
}

std::int64_t full_numeral(const CodeParams& p) { return ipow(stacked(p) ? 2 : p.q, p.index_width) - 1; }

std::int64_t to_numeral(const CodeParams& p, IndexBlockValue v) {
  switch (v.kind) {
    case Kind::available:
      return 0;
    case Kind::bit:
      return v.bit + 1;
    case Kind::full:
      return full_numeral(p);
  }
  return 0;
}

bool legal(IndexBlockValue from, IndexBlockValue to) {
  if (from == to) return true;
  if (from.kind == Kind::available) return to.kind != Kind::available;
  return from.kind == Kind::bit && to.kind == Kind::full;
}

std::vector<BlockView> live_parity_blocks(const CodeParams& p, const StageContext& ctx, const CellState& state) {
  std::vector<BlockView> live;
  for (int j = 0; j < ctx.block_count; ++j) {
    BlockView b{static_cast<std::size_t>(j) * ctx.block_size, static_cast<std::size_t>(ctx.block_size),
                BlockRole::parity};
    if (is_live(b.in(state), p.q)) live.push_back(b);
  }
  return live;
}

}  // namespace

StageContext stage_context(const CodeParams& p, int r) {
  StageContext ctx;
  ctx.stage = r;
  ctx.block_size = p.k_eff >> r;
  ctx.block_count = p.m << r;
  if (r == 0) return ctx;
  check_stage(p, r);
  const std::size_t group_cells = static_cast<std::size_t>(p.batch_blocks) * p.index_width;
  const int group = stacked(p) ? (r - 1) / (p.q - 1) : r - 1;
  ctx.index_base = static_cast<std::size_t>(p.index_offset()) + group * group_cells;
  ctx.floor = stacked(p) ? (r - 1) % (p.q - 1) : 0;
  return ctx;
}

BlockView index_block(const CodeParams& p, int r, int slot) {
  auto ctx = stage_context(p, r);
  return BlockView{ctx.index_base + static_cast<std::size_t>(slot) * p.index_width,
                   static_cast<std::size_t>(p.index_width), BlockRole::index};
}

IndexBlockValue read_index_block(const CodeParams& p, int r, std::span<const Level> cells) {
  auto ctx = stage_context(p, r);
  const auto value = numeral(p, ctx, cells);
  if (value == 0) return IndexBlockValue::available();
  if (value == full_numeral(p)) return IndexBlockValue::full();
  if (value > p.k_eff) corrupted("index block value " + std::to_string(value) + " out of range");
  return IndexBlockValue::of_bit(static_cast<int>(value - 1));
}

void write_index_block(const CodeParams& p, int r, std::span<Level> cells, IndexBlockValue value) {
  auto ctx = stage_context(p, r);
  const auto from = read_index_block(p, r, cells);
  if (!legal(from, value)) throw Error(ErrorKind::illegal_transition, "illegal index block transition");
  if (value.kind == Kind::bit && (value.bit < 0 || value.bit >= p.k_eff)) {
    throw Error(ErrorKind::illegal_transition, "bit value out of range");
  }

  const int radix = stacked(p) ? 2 : p.q;
  auto target = to_numeral(p, value);
  for (std::size_t c = cells.size(); c-- > 0;) {
    const int level = static_cast<int>(target % radix) + ctx.floor;
    target /= radix;
    if (level < cells[c]) throw Error(ErrorKind::illegal_transition, "index write would lower a cell");
    cells[c] = static_cast<Level>(level);
  }
}

int current_stage(const CodeParams& p, const CellState& state) {
  if (stacked(p)) {
    std::int64_t r = 0;
    for (int t = 0; t < p.tally_cells; ++t) r += state.levels[p.tally_offset() + t];
    return static_cast<int>(r);
  }
  const auto group_cells = static_cast<std::size_t>(p.batch_blocks) * p.index_width;
  for (int g = p.index_groups; g-- > 0;) {
    auto begin = state.levels.begin() + static_cast<std::ptrdiff_t>(p.index_offset() + g * group_cells);
    if (std::any_of(begin, begin + static_cast<std::ptrdiff_t>(group_cells), [](Level l) { return l != 0; })) {
      return g + 1;
    }
  }
  return 0;
}

std::vector<LivePair> live_pairs(const CodeParams& p, int r, const CellState& state) {
  auto ctx = stage_context(p, r);
  std::vector<LivePair> pairs;
  int slot = 0;
  auto next_live_index = [&]() -> std::optional<LivePair> {
    while (slot < p.batch_blocks) {
      auto view = index_block(p, r, slot++);
      auto value = read_index_block(p, r, view.in(state));
      if (value.kind != Kind::full) return LivePair{{}, view, value};
    }
    return std::nullopt;
  };
  for (const auto& parity_block : live_parity_blocks(p, ctx, state)) {
    auto pair = next_live_index();
    if (!pair) corrupted("more live parity blocks than live index blocks");
    pair->parity = parity_block;
    pairs.push_back(*pair);
  }
  if (next_live_index()) corrupted("more live index blocks than live parity blocks");
  return pairs;
}

EncodeOutcome transition(const CodeParams& p, int r, const CellState& state, const InfoVector& v) {
  auto ctx = stage_context(p, r);
  check_stage(p, r);
  const auto live = live_parity_blocks(p, ctx, state);
  const int live_count = static_cast<int>(live.size());
  if (live_count < p.k_eff) return EncodeOutcome::erase();
  if (live_count > p.batch_blocks) corrupted("previous stage was not exhausted");

  CellState next = state;
  if (stacked(p) && ctx.floor > 0) {
    auto stack = std::span<Level>(next.levels).subspan(ctx.index_base,
                                                       static_cast<std::size_t>(p.batch_blocks) * p.index_width);
    for (Level& l : stack) l = std::max<Level>(l, static_cast<Level>(ctx.floor));
  }

  for (int slot = 0; slot < p.batch_blocks; ++slot) {
    IndexBlockValue value = slot < p.k_eff        ? IndexBlockValue::of_bit(slot)
                            : slot < live_count ? IndexBlockValue::available()
                                                : IndexBlockValue::full();
    write_index_block(p, r, index_block(p, r, slot).in(next), value);
  }

  for (int i = 0; i < p.k_eff; ++i) {
    auto block = live[i].in(next);
    if (parity(block) == v[i]) continue;
    increment_lowest(block, p.q);
    if (block_status(block, p.q) == BlockStatus::full) {
      write_index_block(p, r, index_block(p, r, i).in(next), IndexBlockValue::full());
    }
  }

  if (stacked(p)) {
    increment_lowest(std::span<Level>(next.levels).subspan(p.tally_offset(), p.tally_cells), p.q);
  }
  return next;
}

InfoVector decode_r(const CodeParams& p, int r, const CellState& state) {
  auto v = InfoVector::zeros(p.k_eff);
  for (const auto& pair : live_pairs(p, r, state)) {
    if (pair.value.kind == Kind::bit) v.bits[pair.value.bit] = static_cast<std::uint8_t>(parity(pair.parity.in(state)));
  }
  return v;
}

EncodeOutcome encode_r(const CodeParams& p, int r, int i, const CellState& state) {
  const auto pairs = live_pairs(p, r, state);

  auto bump = [&](CellState& next, const LivePair& pair) {
    auto block = pair.parity.in(next);
    increment_lowest(block, p.q);
    if (block_status(block, p.q) == BlockStatus::full) {
      write_index_block(p, r, pair.index.in(next), IndexBlockValue::full());
    }
  };

  for (const auto& pair : pairs) {
    if (pair.value == IndexBlockValue::of_bit(i)) {
      CellState next = state;
      bump(next, pair);
      return next;
    }
  }

  // No live block holds bit i, so it currently reads 0 and must become 1.
  for (const auto& pair : pairs) {
    if (pair.value.kind != Kind::available) continue;
    CellState next = state;
    write_index_block(p, r, pair.index.in(next), IndexBlockValue::of_bit(i));
    if (parity(pair.parity.in(next)) != 1) bump(next, pair);
    return next;
  }
  return EncodeOutcome::erase();
}

InfoVector decode(const CodeParams& p, const CellState& state) {
  const int r = current_stage(p, state);
  return r == 0 ? indexless::decode0(p, state) : decode_r(p, r, state);
}

EncodeOutcome encode(const CodeParams& p, int i, const CellState& state) {
  const int r = current_stage(p, state);
  auto out = r == 0 ? indexless::encode0(p, i, state) : encode_r(p, r, i, state);
  if (!out.erased() || r + 1 >= p.stages) return out;

  auto moved = transition(p, r + 1, state, decode(p, state));
  if (moved.erased()) return moved;
  return encode_r(p, r + 1, i, moved.state());
}

}  // namespace flashcode::multistage
