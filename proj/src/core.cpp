#include "flashcode/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace flashcode {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::invalid_params, what); }

[[noreturn]] void too_small(const std::string& what) { throw Error(ErrorKind::insufficient_cells, what); }

int pad_for_parity(int k, int q) { return (k % 2 == 1 && q % 2 == 0) ? k + 1 : k; }

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::indexless:
      return "indexless";
    case Scheme::multistage_baseq:
      return "multistage-baseq";
    case Scheme::multistage_stacked:
      return "multistage-stacked";
    case Scheme::constant_rate:
      return "constant-rate";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (auto s : {Scheme::indexless, Scheme::multistage_baseq, Scheme::multistage_stacked, Scheme::constant_rate}) {
    if (scheme_name(s) == name) return s;
  }
  invalid("unknown scheme '" + std::string(name) + "'");
}

int ceil_log(std::int64_t base, std::int64_t x) {
  int w = 0;
  for (std::int64_t p = 1; p < x; p *= base) ++w;
  return w;
}

int effective_k(int k, int q, Scheme scheme) {
  switch (scheme) {
    case Scheme::indexless:
      return pad_for_parity(k, q);
    case Scheme::multistage_baseq:
    case Scheme::multistage_stacked:
      return static_cast<int>(std::bit_ceil(static_cast<unsigned>(pad_for_parity(k, q))));
    case Scheme::constant_rate:
      return k;
  }
  return k;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

CodeParams CodeParams::make(int n, int k, int q, Scheme scheme) {
  if (q < 2 || q > 256) invalid("q must be in [2, 256], got " + std::to_string(q));
  if (n < 1) invalid("n must be positive, got " + std::to_string(n));
  if (k < 1 || k > n) invalid("k must be in [1, n], got " + std::to_string(k));

  CodeParams p;
  p.n = n;
  p.k = k;
  p.q = q;
  p.scheme = scheme;

  switch (scheme) {
    case Scheme::indexless:
      p.k_eff = effective_k(k, q, scheme);
      p.m = n / p.k_eff;
      break;
    case Scheme::multistage_baseq:
    case Scheme::multistage_stacked: {
      p.k_eff = effective_k(k, q, scheme);
      p.stages = std::max(1, ceil_log2(p.k_eff));
      p.batch_blocks = 2 * (p.k_eff - 1);
      if (scheme == Scheme::multistage_baseq) {
        p.index_width = ceil_log(q, p.k_eff + 2);
        p.index_groups = p.stages - 1;
      } else {
        p.index_width = ceil_log2(p.k_eff + 2);
        p.index_groups = ceil_div(p.stages - 1, q - 1);
        p.tally_cells = p.index_groups;
      }
      if (p.index_groups == 0) {
        p.batch_blocks = 0;
        p.index_width = 0;
      }
      if (p.reserved_cells() > n) {
        too_small("index region needs " + std::to_string(p.reserved_cells()) + " cells, only " + std::to_string(n) +
                  " available");
      }
      p.m = (n - p.reserved_cells()) / p.k_eff;
      break;
    }
    case Scheme::constant_rate:
      p.k_eff = effective_k(k, q, scheme);
      p.index_width = ceil_log2(k + 2);
      p.tally_cells = 1;
      p.m = n > k ? (n - k - 1) / p.index_width : 0;
      if (p.m < 1) too_small("constant-rate layout leaves no index slots");
      return p;
  }

  if (p.m < p.k_eff) {
    too_small("need at least " + std::to_string(p.k_eff) + " parity blocks, layout leaves " + std::to_string(p.m));
  }
  return p;
}

std::int64_t CellState::total_weight() const { return weight(levels); }

bool CellState::dominates(const CellState& before) const {
  if (before.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (levels[i] < before.levels[i]) return false;
  }
  return true;
}

InfoVector InfoVector::truncated(std::size_t k) const {
  return InfoVector{std::vector<std::uint8_t>(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(k))};
}

std::int64_t weight(std::span<const Level> block) {
  return std::accumulate(block.begin(), block.end(), std::int64_t{0});
}

BlockStatus block_status(std::span<const Level> block, int q) {
  bool all_zero = true;
  bool all_top = true;
  for (Level l : block) {
    all_zero = all_zero && l == 0;
    all_top = all_top && l == q - 1;
  }
  if (all_zero) return BlockStatus::empty;
  if (all_top) return BlockStatus::full;
  return BlockStatus::active;
}

void increment_lowest(std::span<Level> block, int q) {
  auto it = std::find_if(block.begin(), block.end(), [q](Level l) { return l < q - 1; });
  if (it == block.end()) throw Error(ErrorKind::full_block, "increment on a full block");
  ++*it;
}

std::vector<BlockView> layout(const CodeParams& p) {
  std::vector<BlockView> views;
  auto n_of = [](int x) { return static_cast<std::size_t>(x); };

  if (p.scheme == Scheme::constant_rate) {
    views.push_back({0, n_of(p.k), BlockRole::parity});
    views.push_back({n_of(p.k), 1, BlockRole::tally});
    for (int s = 0; s < p.m; ++s) {
      views.push_back({n_of(p.k + 1 + s * p.index_width), n_of(p.index_width), BlockRole::index});
    }
    return views;
  }

  for (int j = 0; j < p.m; ++j) views.push_back({n_of(j * p.k_eff), n_of(p.k_eff), BlockRole::parity});
  const int index_blocks = p.index_groups * p.batch_blocks;
  for (int b = 0; b < index_blocks; ++b) {
    views.push_back({n_of(p.index_offset() + b * p.index_width), n_of(p.index_width), BlockRole::index});
  }
  for (int t = 0; t < p.tally_cells; ++t) views.push_back({n_of(p.tally_offset() + t), 1, BlockRole::tally});
  return views;
}

}  // namespace flashcode
