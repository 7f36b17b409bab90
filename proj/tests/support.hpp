#pragma once

// Test-only reference models. Nothing here calls into the codec internals
// it is used to check.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "flashcode/analysis.hpp"
#include "flashcode/codec.hpp"

namespace flashcode::testing {

inline CellState cells(std::initializer_list<int> levels) {
  CellState s;
  for (int l : levels) s.levels.push_back(static_cast<Level>(l));
  return s;
}

inline std::vector<Level> levels(std::initializer_list<int> values) {
  std::vector<Level> out;
  for (int v : values) out.push_back(static_cast<Level>(v));
  return out;
}

/// Levels of a block that stores `bit` after `writes` writes: cells are
/// filled to q-1 one after another starting at cell `bit`, cyclically.
inline std::vector<Level> cyclic_fill(int bit, int writes, int size, int q) {
  std::vector<Level> out(static_cast<std::size_t>(size), 0);
  for (int c = 0; c < size; ++c) {
    const int level = std::clamp(writes - c * (q - 1), 0, q - 1);
    out[static_cast<std::size_t>((bit + c) % size)] = static_cast<Level>(level);
  }
  return out;
}

/// Block-level model of the indexless code: each block is either unused or
/// (bit, writes so far).
class IndexlessModel {
 public:
  IndexlessModel(int n, int k_eff, int q) : n_(n), k_eff_(k_eff), q_(q), blocks_(n / k_eff) {}

  bool write(int bit) {
    const int capacity = k_eff_ * (q_ - 1);
    for (auto& b : blocks_) {
      if (b && b->first == bit && b->second < capacity) {
        ++b->second;
        return true;
      }
    }
    for (auto& b : blocks_) {
      if (!b) {
        b = std::pair{bit, 1};
        return true;
      }
    }
    return false;
  }

  CellState render() const {
    CellState s = CellState::zeros(static_cast<std::size_t>(n_));
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (!blocks_[j]) continue;
      auto fill = cyclic_fill(blocks_[j]->first, blocks_[j]->second, k_eff_, q_);
      std::copy(fill.begin(), fill.end(), s.levels.begin() + static_cast<std::ptrdiff_t>(j * k_eff_));
    }
    return s;
  }

 private:
  int n_;
  int k_eff_;
  int q_;
  std::vector<std::optional<std::pair<int, int>>> blocks_;
};

/// Longest L such that no write sequence of length L erases, by plain
/// enumeration of all k^L sequences for growing L. Independent of the
/// memoized oracle; only usable for tiny configurations.
inline std::int64_t brute_force_guaranteed_writes(const Codec& codec, int max_len) {
  const int k = codec.params().k;
  std::function<bool(const CellState&, int)> survives = [&](const CellState& s, int remaining) {
    if (remaining == 0) return true;
    for (int i = 0; i < k; ++i) {
      auto out = codec.encode(i, s);
      if (out.erased() || !survives(out.state(), remaining - 1)) return false;
    }
    return true;
  };
  int len = 0;
  while (len < max_len && survives(codec.init(), len + 1)) ++len;
  return len;
}

/// Drives `codec` with uniformly random writes for `total_writes` writes,
/// restarting from the all-zero state after every erasure, and calls
/// `check(before, after, bit, shadow)` after each successful write.
template <typename Check>
std::int64_t fuzz(const Codec& codec, std::uint64_t seed, std::int64_t total_writes, Check&& check) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, codec.params().k - 1);
  auto state = codec.init();
  auto shadow = InfoVector::zeros(static_cast<std::size_t>(codec.params().k));
  std::int64_t erasures = 0;
  for (std::int64_t w = 0; w < total_writes; ++w) {
    const int bit = pick(rng);
    auto out = codec.encode(bit, state);
    if (out.erased()) {
      ++erasures;
      state = codec.init();
      shadow = InfoVector::zeros(shadow.size());
      continue;
    }
    shadow.flip(static_cast<std::size_t>(bit));
    check(state, out.state(), bit, shadow);
    state = std::move(out).take();
  }
  return erasures;
}

}  // namespace flashcode::testing
