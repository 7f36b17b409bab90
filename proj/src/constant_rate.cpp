#include "flashcode/constant_rate.hpp"

#include <algorithm>
#include <cmath>

namespace flashcode::constant_rate {

namespace {

[[noreturn]] void corrupted(const std::string& what) { throw Error(ErrorKind::corrupted_state, what); }

void check_scheme(const CodeParams& p) {
  if (p.scheme != Scheme::constant_rate) throw Error(ErrorKind::invalid_params, "not a constant-rate scheme");
}

std::span<Level> slot_cells(const CodeParams& p, CellState& state, int slot) {
  return std::span<Level>(state.levels).subspan(static_cast<std::size_t>(p.k + 1 + slot * p.index_width),
                                                static_cast<std::size_t>(p.index_width));
}

std::span<const Level> slot_cells(const CodeParams& p, const CellState& state, int slot) {
  return std::span<const Level>(state.levels)
      .subspan(static_cast<std::size_t>(p.k + 1 + slot * p.index_width), static_cast<std::size_t>(p.index_width));
}

// Value recorded in a slot during phase p; 0 means unused.
int slot_value(std::span<const Level> cells, int p) {
  int value = 0;
  for (Level l : cells) {
    const int digit = l - (p - 1);
    if (digit < 0 || digit > 1) corrupted("index cell outside its phase window");
    value = value * 2 + digit;
  }
  return value;
}

void write_slot(std::span<Level> cells, int p, int value) {
  for (std::size_t c = cells.size(); c-- > 0;) {
    cells[c] = static_cast<Level>((p - 1) + (value & 1));
    value >>= 1;
  }
}

int first_free_slot(const CodeParams& params, const CellState& state, int p) {
  for (int s = 0; s < params.m; ++s) {
    if (slot_value(slot_cells(params, state, s), p) == 0) return s;
  }
  return -1;
}

}  // namespace

int phase(const CodeParams& params, const CellState& state) {
  check_scheme(params);
  const int p = state.levels[params.k] + 1;
  if (p > params.q - 1) corrupted("phase tally beyond the last phase");
  return p;
}

InfoVector cr_decode(const CodeParams& params, const CellState& state) {
  const int p = phase(params, state);
  auto v = InfoVector::zeros(params.k);
  if (p > 1) {
    for (int j = 0; j < params.k; ++j) v.bits[j] = state.levels[j] >= p - 1 ? 1 : 0;
  }
  for (int s = 0; s < params.m; ++s) {
    const int value = slot_value(slot_cells(params, state, s), p);
    if (value == 0) continue;
    if (value > params.k) corrupted("slot records bit index out of range");
    v.flip(value - 1);
  }
  return v;
}

EncodeOutcome cr_encode(const CodeParams& params, int i, const CellState& state) {
  int p = phase(params, state);
  int slot = first_free_slot(params, state, p);
  CellState next = state;

  if (slot < 0) {
    if (p == params.q - 1) return EncodeOutcome::erase();
    const auto v = cr_decode(params, state);
    for (int j = 0; j < params.k; ++j) next.levels[j] = static_cast<Level>((p - 1) + v[j]);
    for (int s = 0; s < params.m; ++s) {
      for (Level& l : slot_cells(params, next, s)) l = static_cast<Level>(p);
    }
    next.levels[params.k] = static_cast<Level>(p);
    ++p;
    slot = 0;
  }

  write_slot(slot_cells(params, next, slot), p, i + 1);
  return next;
}

std::int64_t cr_capacity(const CodeParams& params) {
  check_scheme(params);
  return std::int64_t{params.m} * (params.q - 1);
}

double cr_capacity_ideal(std::int64_t n, std::int64_t k, std::int64_t q) {
  const double rate = static_cast<double>(k) / static_cast<double>(n);
  return static_cast<double>(n) * static_cast<double>(q - 1) * (1.0 - rate) / std::log2(static_cast<double>(k));
}

}  // namespace flashcode::constant_rate
