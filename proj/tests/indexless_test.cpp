#include <doctest.h>

#include <array>
#include <map>

#include "flashcode/codec.hpp"
#include "flashcode/indexless.hpp"
#include "support.hpp"

using namespace flashcode;
using flashcode::testing::cells;
using flashcode::testing::levels;

namespace {

std::vector<Level> advanced(std::vector<Level> block, int q = 3) {
  indexless::advance(block, q);
  return block;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected flashcode::Error");
  return ErrorKind::invalid_params;
}

}  // namespace

TEST_CASE("read_index") {
  CHECK(indexless::read_index(levels({2, 1, 0, 0}), 3) == 0);
  CHECK(indexless::read_index(levels({0, 2, 2, 1}), 3) == 1);
  CHECK(indexless::read_index(levels({1, 0, 2, 2}), 3) == 2);
  CHECK(indexless::read_index(levels({2, 2, 2, 1}), 3) == 0);
  CHECK(indexless::read_index(levels({0, 0, 0, 1}), 3) == 3);
  // zeros wrapping around the end
  CHECK(indexless::read_index(levels({0, 2, 1, 0}), 3) == 1);

  CHECK(kind_of([] { indexless::read_index(levels({0, 0, 0, 0}), 3); }) == ErrorKind::corrupted_state);
  CHECK(kind_of([] { indexless::read_index(levels({2, 2, 2, 2}), 3); }) == ErrorKind::corrupted_state);
  CHECK(kind_of([] { indexless::read_index(levels({1, 0, 1, 0}), 3); }) == ErrorKind::corrupted_state);
  CHECK(kind_of([] { indexless::read_index(levels({1, 1, 2, 2}), 3); }) == ErrorKind::corrupted_state);
}

TEST_CASE("advance") {
  CHECK(advanced(levels({2, 2, 0, 0})) == levels({2, 2, 1, 0}));
  CHECK(advanced(levels({0, 2, 2, 2})) == levels({1, 2, 2, 2}));
  CHECK(advanced(levels({2, 2, 2, 1})) == levels({2, 2, 2, 2}));
  CHECK(kind_of([] { advanced(levels({2, 2, 2, 2})); }) == ErrorKind::full_block);
  CHECK(kind_of([] { advanced(levels({0, 0, 0, 0})); }) == ErrorKind::corrupted_state);
}

TEST_CASE("open_block") {
  auto block = levels({0, 0, 0, 0});
  indexless::open_block(1, block);
  CHECK(block == levels({0, 1, 0, 0}));
  CHECK(indexless::read_index(block, 3) == 1);
  CHECK(parity(block) == 1);

  block = levels({0, 0, 0, 0});
  indexless::open_block(3, block);
  CHECK(block == levels({0, 0, 0, 1}));

  block = levels({0, 0, 0, 0});
  indexless::open_block(0, block);
  CHECK(block == levels({1, 0, 0, 0}));

  CHECK(kind_of([] {
          auto b = levels({0, 1, 0, 0});
          indexless::open_block(2, b);
        }) == ErrorKind::not_empty);
}

TEST_CASE("writing orders for k=4, q=3") {
  const std::array<std::array<const char*, 9>, 4> orders{{
      {"0000", "1000", "2000", "2100", "2200", "2210", "2220", "2221", "2222"},
      {"0000", "0100", "0200", "0210", "0220", "0221", "0222", "1222", "2222"},
      {"0000", "0010", "0020", "0021", "0022", "1022", "2022", "2122", "2222"},
      {"0000", "0001", "0002", "1002", "2002", "2102", "2202", "2212", "2222"},
  }};
  auto render = [](const std::vector<Level>& b) {
    std::string s;
    for (Level l : b) s += static_cast<char>('0' + l);
    return s;
  };
  for (int bit = 0; bit < 4; ++bit) {
    CAPTURE(bit);
    std::vector<Level> block(4, 0);
    CHECK(render(block) == orders[bit][0]);
    indexless::open_block(bit, block);
    CHECK(render(block) == orders[bit][1]);
    for (int step = 2; step < 9; ++step) {
      CHECK(indexless::read_index(block, 3) == bit);
      indexless::advance(block, 3);
      CHECK(render(block) == orders[bit][step]);
    }
  }
}

TEST_CASE("decode0 and encode0 examples") {
  const auto p = CodeParams::make(16, 4, 3, Scheme::indexless);
  auto zero = CellState::zeros(16);

  CHECK(indexless::decode0(p, zero) == InfoVector::zeros(4));

  auto s = zero;
  s.levels[0] = 2;
  s.levels[1] = 1;
  CHECK(indexless::decode0(p, s).bits == std::vector<std::uint8_t>{1, 0, 0, 0});

  s = zero;
  s.levels[1] = 1;
  CHECK(indexless::decode0(p, s).bits == std::vector<std::uint8_t>{0, 1, 0, 0});

  auto out = indexless::encode0(p, 2, zero);
  REQUIRE_FALSE(out.erased());
  CHECK(std::vector<Level>(out.state().levels.begin(), out.state().levels.begin() + 4) == levels({0, 0, 1, 0}));

  s = zero;
  std::fill(s.levels.begin(), s.levels.begin() + 4, 2);
  s.levels[5] = 1;
  out = indexless::encode0(p, 1, s);
  REQUIRE_FALSE(out.erased());
  CHECK(std::vector<Level>(out.state().levels.begin() + 4, out.state().levels.begin() + 8) == levels({0, 2, 0, 0}));

  const auto small = CodeParams::make(4, 2, 2, Scheme::indexless);
  CHECK(indexless::encode0(small, 0, cells({1, 1, 0, 1})).erased());
}

TEST_CASE("encode0 matches the block-level writing-order model") {
  struct Config {
    int n, k, q;
  };
  for (auto cfg : {Config{16, 4, 3}, Config{19, 4, 3}, Config{16, 4, 2}, Config{36, 5, 2}, Config{36, 6, 4},
                   Config{9, 3, 3}}) {
    CAPTURE(cfg.n);
    CAPTURE(cfg.k);
    CAPTURE(cfg.q);
    const auto p = CodeParams::make(cfg.n, cfg.k, cfg.q, Scheme::indexless);
    const auto codec = make_codec(p);
    std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.n * 31 + cfg.k));
    for (int run = 0; run < 200; ++run) {
      flashcode::testing::IndexlessModel model(p.n, p.k_eff, p.q);
      auto state = codec->init();
      auto shadow = InfoVector::zeros(static_cast<std::size_t>(p.k));
      while (true) {
        const int bit = static_cast<int>(rng() % static_cast<std::uint64_t>(p.k));
        auto out = codec->encode(bit, state);
        const bool accepted = model.write(bit);
        REQUIRE(out.erased() == !accepted);
        if (out.erased()) break;
        REQUIRE(out.state() == model.render());
        shadow.flip(static_cast<std::size_t>(bit));
        REQUIRE(codec->decode(out.state()) == shadow);
        state = std::move(out).take();
      }
    }
  }
}

TEST_CASE("indexless invariants under random writes") {
  for (int q : {2, 3, 5}) {
    const auto p = CodeParams::make(40, 5, q, Scheme::indexless);
    const auto codec = make_codec(p);
    flashcode::testing::fuzz(*codec, 99 + q, 100000, [&](const CellState& before, const CellState& after, int bit,
                                                         const InfoVector& shadow) {
      REQUIRE(after.dominates(before));
      REQUIRE(after.total_weight() == before.total_weight() + 1);
      auto expect = codec->decode(before);
      expect.flip(static_cast<std::size_t>(bit));
      REQUIRE(codec->decode(after) == expect);
      REQUIRE(codec->decode(after) == shadow);

      std::map<int, int> active_per_bit;
      int active = 0;
      for (int j = 0; j < p.m; ++j) {
        auto block = indexless::stage0_block(p, j).in(after);
        if (block_status(block, p.q) != BlockStatus::active) continue;
        ++active;
        REQUIRE(++active_per_bit[indexless::read_index(block, p.q)] == 1);
      }
      REQUIRE(active <= p.k_eff);
      if (p.k_eff > p.k) REQUIRE(active_per_bit.count(p.k_eff - 1) == 0);
    });
  }
}

TEST_CASE("guaranteed writes under random sequences respect the indexless bound") {
  for (auto [n, k, q] : {std::tuple{64, 4, 3}, std::tuple{100, 6, 4}, std::tuple{100, 9, 2}}) {
    const auto p = CodeParams::make(n, k, q, Scheme::indexless);
    const auto codec = make_codec(p);
    const auto rows = simulate_serial(p, Policy::uniform_random, 5, 2000);
    for (const auto& r : rows) REQUIRE(r.deficiency <= r.bound);
  }
}
