#include "flashcode/codec.hpp"

#include "flashcode/analysis.hpp"
#include "flashcode/constant_rate.hpp"
#include "flashcode/indexless.hpp"
#include "flashcode/multistage.hpp"

namespace flashcode {

namespace {

std::int64_t remaining(std::span<const Level> block, int q) {
  return static_cast<std::int64_t>(block.size()) * (q - 1) - weight(block);
}

class IndexlessCodec final : public Codec {
 public:
  using Codec::Codec;

  std::vector<std::optional<std::int64_t>> allocations(const CellState& state) const override {
    const auto& p = params();
    std::vector<std::optional<std::int64_t>> out(p.k);
    for (int j = 0; j < p.m; ++j) {
      auto block = indexless::stage0_block(p, j).in(state);
      if (block_status(block, p.q) != BlockStatus::active) continue;
      const int bit = indexless::read_index(block, p.q);
      if (bit < p.k) out[bit] = remaining(block, p.q);
    }
    return out;
  }

 protected:
  EncodeOutcome encode_raw(int i, const CellState& state) const override {
    return indexless::encode0(params(), i, state);
  }
  InfoVector decode_raw(const CellState& state) const override { return indexless::decode0(params(), state); }
};

class MultistageCodec final : public Codec {
 public:
  using Codec::Codec;

  int stage(const CellState& state) const override { return multistage::current_stage(params(), state); }

  std::vector<std::optional<std::int64_t>> allocations(const CellState& state) const override {
    const auto& p = params();
    const int r = stage(state);
    if (r == 0) return IndexlessCodec(p).allocations(state);
    std::vector<std::optional<std::int64_t>> out(p.k);
    for (const auto& pair : multistage::live_pairs(p, r, state)) {
      if (pair.value.kind != multistage::IndexBlockValue::Kind::bit || pair.value.bit >= p.k) continue;
      out[pair.value.bit] = remaining(pair.parity.in(state), p.q);
    }
    return out;
  }

 protected:
  EncodeOutcome encode_raw(int i, const CellState& state) const override {
    return multistage::encode(params(), i, state);
  }
  InfoVector decode_raw(const CellState& state) const override { return multistage::decode(params(), state); }
};

class ConstantRateCodec final : public Codec {
 public:
  using Codec::Codec;

  int stage(const CellState& state) const override { return constant_rate::phase(params(), state) - 1; }

  // Writes never accumulate into per-bit blocks here.
  std::vector<std::optional<std::int64_t>> allocations(const CellState&) const override {
    return std::vector<std::optional<std::int64_t>>(params().k);
  }

 protected:
  EncodeOutcome encode_raw(int i, const CellState& state) const override {
    return constant_rate::cr_encode(params(), i, state);
  }
  InfoVector decode_raw(const CellState& state) const override { return constant_rate::cr_decode(params(), state); }
};

}  // namespace

EncodeOutcome Codec::encode(int i, const CellState& state) const {
  if (i < 0 || i >= params_.k) {
    throw Error(ErrorKind::invalid_params, "bit index " + std::to_string(i) + " out of range [0, " +
                                               std::to_string(params_.k) + ")");
  }
  if (state.size() != static_cast<std::size_t>(params_.n)) {
    throw Error(ErrorKind::corrupted_state, "state has the wrong number of cells");
  }
  return encode_raw(i, state);
}

InfoVector Codec::decode(const CellState& state) const {
  if (state.size() != static_cast<std::size_t>(params_.n)) {
    throw Error(ErrorKind::corrupted_state, "state has the wrong number of cells");
  }
  return decode_raw(state).truncated(static_cast<std::size_t>(params_.k));
}

std::int64_t Codec::capacity_bound() const { return deficiency_bound(params_); }

std::unique_ptr<Codec> make_codec(const CodeParams& params) {
  switch (params.scheme) {
    case Scheme::indexless:
      return std::make_unique<IndexlessCodec>(params);
    case Scheme::multistage_baseq:
    case Scheme::multistage_stacked:
      return std::make_unique<MultistageCodec>(params);
    case Scheme::constant_rate:
      return std::make_unique<ConstantRateCodec>(params);
  }
  throw Error(ErrorKind::invalid_params, "unknown scheme");
}

}  // namespace flashcode
