#pragma once

// Common interface over every scheme. Codecs are immutable; all state lives
// in the CellState values passed in and returned, so one codec can be shared
// across threads.

#include <memory>
#include <optional>

#include "flashcode/core.hpp"

namespace flashcode {

class Codec {
 public:
  explicit Codec(CodeParams params) : params_(params) {}
  virtual ~Codec() = default;

  const CodeParams& params() const { return params_; }
  CellState init() const { return CellState::zeros(static_cast<std::size_t>(params_.n)); }

  /// Flip logical bit i. Throws Error(invalid_params) when i is out of range.
  EncodeOutcome encode(int i, const CellState& state) const;
  /// Logical k bits.
  InfoVector decode(const CellState& state) const;

  /// Upper bound on write deficiency n(q-1) - t for this scheme.
  std::int64_t capacity_bound() const;

  virtual int stage(const CellState&) const { return 0; }

  /// For each logical bit, the unused levels left in the block currently
  /// storing it, or nullopt when no block is allocated to it.
  virtual std::vector<std::optional<std::int64_t>> allocations(const CellState& state) const = 0;

 protected:
  virtual EncodeOutcome encode_raw(int i, const CellState& state) const = 0;
  virtual InfoVector decode_raw(const CellState& state) const = 0;

 private:
  CodeParams params_;
};

std::unique_ptr<Codec> make_codec(const CodeParams& params);

}  // namespace flashcode
