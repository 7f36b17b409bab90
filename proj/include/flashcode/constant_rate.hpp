#pragma once

// Code for k/n held constant. Cells are split into a k-cell parity group, one
// phase tally cell, and an index group of m slots. Each write records the
// flipped bit's index (as b+1, in binary) in the next free slot, using levels
// {p-1, p} during phase p. When the slots run out the current bits are
// snapshotted into the parity group, every index cell is raised to p, and
// phase p+1 begins. There are q-1 phases.

#include "flashcode/core.hpp"

namespace flashcode::constant_rate {

/// Current phase in 1..q-1.
int phase(const CodeParams& params, const CellState& state);

EncodeOutcome cr_encode(const CodeParams& params, int i, const CellState& state);
InfoVector cr_decode(const CodeParams& params, const CellState& state);

/// Exact guaranteed writes, m * (q - 1).
std::int64_t cr_capacity(const CodeParams& params);

/// n(q-1)(1-R)/log2 k with R = k/n, ignoring all rounding. Only meaningful
/// for k >= 2.
double cr_capacity_ideal(std::int64_t n, std::int64_t k, std::int64_t q);

}  // namespace flashcode::constant_rate
