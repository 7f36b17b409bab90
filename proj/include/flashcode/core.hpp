#pragma once

// Cell-state model shared by every flash code in this library: parameters,
// the cell vector, block windows over it, and the weight/parity/status
// primitives the codecs are built from.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flashcode {

using Level = std::uint8_t;

enum class ErrorKind {
  invalid_params,
  insufficient_cells,
  corrupted_state,
  full_block,
  not_empty,
  illegal_transition,
  budget_exceeded,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class Scheme {
  indexless,
  multistage_baseq,
  multistage_stacked,
  constant_rate,
};

std::string_view scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);

/// Internal bit count for a scheme: odd k with even q gains a pinned-zero bit,
/// and the multistage schemes round up to a power of two.
int effective_k(int k, int q, Scheme scheme);

/// Smallest w >= 0 with base^w >= x.
int ceil_log(std::int64_t base, std::int64_t x);
inline int ceil_log2(std::int64_t x) { return ceil_log(2, x); }
std::int64_t ipow(std::int64_t base, int exp);

/// The tuple (n, k, q) plus everything the layout derives from it.
///
/// `k_eff` is the internal bit count after padding: odd k with even q gets
/// one extra pinned-zero bit so that a full block always has even weight, and
/// the multistage schemes further round up to a power of two. All public
/// interfaces speak logical k.
///
/// Meaning of the derived fields per scheme:
///   indexless           m parity blocks of k_eff cells
///   multistage-baseq    m parity blocks, `index_groups` = s-1 batches of
///                       `batch_blocks` index blocks, `index_width` = mu
///   multistage-stacked  as base-q, but `index_groups` counts stacks, each
///                       hosting q-1 stages, `index_width` = mu', plus one
///                       tally cell per stack
///   constant-rate       k parity cells, one tally cell, m slots of
///                       `index_width` cells
struct CodeParams {
  int n = 0;
  int k = 0;
  int q = 0;
  Scheme scheme = Scheme::indexless;

  int k_eff = 0;
  int m = 0;
  int stages = 1;
  int index_width = 0;
  int index_groups = 0;
  int batch_blocks = 0;
  int tally_cells = 0;

  /// Validates and derives. Throws Error(invalid_params) for malformed
  /// tuples and Error(insufficient_cells) when the layout does not fit.
  static CodeParams make(int n, int k, int q, Scheme scheme);

  /// Cells set aside at the tail for index blocks and tallies.
  int reserved_cells() const { return index_groups * batch_blocks * index_width + tally_cells; }
  int index_offset() const { return n - reserved_cells(); }
  int tally_offset() const { return n - tally_cells; }
  std::int64_t total_levels() const { return std::int64_t{n} * (q - 1); }

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

struct CellState {
  std::vector<Level> levels;

  static CellState zeros(std::size_t n) { return CellState{std::vector<Level>(n, 0)}; }

  std::size_t size() const { return levels.size(); }
  std::int64_t total_weight() const;
  /// True when every cell of *this is at least the matching cell of `before`.
  bool dominates(const CellState& before) const;

  friend bool operator==(const CellState&, const CellState&) = default;
};

struct InfoVector {
  std::vector<std::uint8_t> bits;

  static InfoVector zeros(std::size_t k) { return InfoVector{std::vector<std::uint8_t>(k, 0)}; }

  std::size_t size() const { return bits.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits[i]; }
  void flip(std::size_t i) { bits[i] ^= 1U; }
  /// Drops padding bits beyond the first k.
  InfoVector truncated(std::size_t k) const;

  friend bool operator==(const InfoVector&, const InfoVector&) = default;
};

/// Either a successor state or the erasure signal.
class EncodeOutcome {
 public:
  EncodeOutcome(CellState next) : next_(std::move(next)) {}
  static EncodeOutcome erase() { return EncodeOutcome(); }

  bool erased() const { return !next_.has_value(); }
  const CellState& state() const { return next_.value(); }
  CellState take() && { return std::move(next_).value(); }

 private:
  EncodeOutcome() = default;
  std::optional<CellState> next_;
};

enum class BlockRole { parity, index, tally };
enum class BlockStatus { empty, active, full };

struct BlockView {
  std::size_t offset = 0;
  std::size_t length = 0;
  BlockRole role = BlockRole::parity;

  std::span<const Level> in(const CellState& state) const {
    return std::span<const Level>(state.levels).subspan(offset, length);
  }
  std::span<Level> in(CellState& state) const {
    return std::span<Level>(state.levels).subspan(offset, length);
  }

  friend bool operator==(const BlockView&, const BlockView&) = default;
};

std::int64_t weight(std::span<const Level> block);
inline int parity(std::span<const Level> block) { return static_cast<int>(weight(block) & 1); }
BlockStatus block_status(std::span<const Level> block, int q);
inline bool is_live(std::span<const Level> block, int q) { return block_status(block, q) != BlockStatus::full; }

/// Raises the lowest-index cell below q-1 by one. Throws full_block if none.
void increment_lowest(std::span<Level> block, int q);

/// Disjoint windows making up the memory layout: stage-0 parity blocks first
/// (or the constant-rate parity group), then index blocks, then tally cells.
/// Cells not covered by any window are never written.
std::vector<BlockView> layout(const CodeParams& params);

}  // namespace flashcode
