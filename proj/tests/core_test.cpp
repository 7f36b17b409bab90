#include <doctest.h>

#include <algorithm>
#include <random>

#include "flashcode/core.hpp"
#include "flashcode/state_json.hpp"
#include "support.hpp"

using namespace flashcode;
using flashcode::testing::levels;

TEST_CASE("weight, parity and status of small blocks") {
  const auto a = levels({2, 1, 0, 0});
  const auto zero = levels({0, 0, 0, 0});
  const auto top = levels({2, 2, 2, 2});

  CHECK(weight(a) == 3);
  CHECK(weight(zero) == 0);
  CHECK(weight(top) == 8);

  CHECK(parity(a) == 1);
  CHECK(parity(levels({0, 2, 2, 1})) == 1);
  CHECK(parity(top) == 0);

  CHECK(block_status(zero, 3) == BlockStatus::empty);
  CHECK(block_status(top, 3) == BlockStatus::full);
  CHECK(block_status(a, 3) == BlockStatus::active);
  CHECK(is_live(a, 3));
  CHECK_FALSE(is_live(top, 3));
}

TEST_CASE("parity agrees with weight mod 2 on random windows") {
  std::mt19937 rng(11);
  std::vector<Level> cells(64);
  for (int trial = 0; trial < 100000; ++trial) {
    const int q = 2 + static_cast<int>(rng() % 7);
    for (auto& c : cells) c = static_cast<Level>(rng() % q);
    const auto off = rng() % cells.size();
    const auto len = rng() % (cells.size() - off + 1);
    std::span<const Level> w(cells.data() + off, len);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < len; ++i) sum += cells[off + i];
    REQUIRE(weight(w) == sum);
    REQUIRE(parity(w) == sum % 2);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(CodeParams::make(16, 4, 1, Scheme::indexless), Error);
  CHECK_THROWS_AS(CodeParams::make(0, 1, 2, Scheme::indexless), Error);
  CHECK_THROWS_AS(CodeParams::make(4, 5, 2, Scheme::indexless), Error);
  CHECK_THROWS_AS(parse_scheme("bogus"), Error);

  try {
    CodeParams::make(15, 4, 3, Scheme::indexless);
    FAIL("expected insufficient cells");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::insufficient_cells);
  }
}

TEST_CASE("padding of k") {
  CHECK(CodeParams::make(16, 3, 2, Scheme::indexless).k_eff == 4);
  CHECK(CodeParams::make(9, 3, 3, Scheme::indexless).k_eff == 3);
  CHECK(CodeParams::make(200, 5, 3, Scheme::multistage_baseq).k_eff == 8);
  CHECK(CodeParams::make(200, 5, 2, Scheme::multistage_stacked).k_eff == 8);
  CHECK(CodeParams::make(20, 5, 2, Scheme::constant_rate).k_eff == 5);
}

TEST_CASE("layout examples") {
  SUBCASE("exact fit") {
    const auto p = CodeParams::make(16, 4, 3, Scheme::indexless);
    const auto views = layout(p);
    REQUIRE(views.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(views[j] == BlockView{j * 4, 4, BlockRole::parity});
    }
  }
  SUBCASE("remainder cells left unused") {
    const auto p = CodeParams::make(19, 4, 3, Scheme::indexless);
    const auto views = layout(p);
    CHECK(views.size() == 4);
    CHECK(views.back().offset + views.back().length == 16);
  }
  SUBCASE("base-q index reservation") {
    const auto p = CodeParams::make(64, 4, 3, Scheme::multistage_baseq);
    CHECK(p.reserved_cells() == 12);
    CHECK(p.m == 13);
    const auto views = layout(p);
    CHECK(std::count_if(views.begin(), views.end(), [](auto& v) { return v.role == BlockRole::parity; }) == 13);
    CHECK(std::count_if(views.begin(), views.end(), [](auto& v) { return v.role == BlockRole::index; }) == 6);
  }
  SUBCASE("stacked index and tally") {
    const auto p = CodeParams::make(256, 8, 3, Scheme::multistage_stacked);
    CHECK(p.stages == 3);
    CHECK(p.index_width == 4);
    CHECK(p.index_groups == 1);
    CHECK(p.tally_cells == 1);
    CHECK(p.reserved_cells() == 14 * 4 + 1);
  }
  SUBCASE("constant rate") {
    const auto p = CodeParams::make(1024, 16, 4, Scheme::constant_rate);
    CHECK(p.index_width == 5);
    CHECK(p.m == 201);
    const auto views = layout(p);
    CHECK(views.size() == 2 + 201);
    CHECK(views[1] == BlockView{16, 1, BlockRole::tally});
  }
}

TEST_CASE("layout windows are disjoint and in bounds") {
  int checked = 0;
  for (int k : {2, 4, 8, 16}) {
    for (int q : {2, 3, 4, 8}) {
      for (int n : {k * k, 2 * k * k, k * k + 17}) {
        for (auto scheme : {Scheme::indexless, Scheme::multistage_baseq, Scheme::multistage_stacked,
                            Scheme::constant_rate}) {
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(q);
          CAPTURE(scheme_name(scheme));
          CodeParams p;
          try {
            p = CodeParams::make(n, k, q, scheme);
          } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::insufficient_cells);
            continue;
          }
          std::vector<int> owner(static_cast<std::size_t>(n), 0);
          for (const auto& v : layout(p)) {
            REQUIRE(v.length > 0);
            REQUIRE(v.offset + v.length <= static_cast<std::size_t>(n));
            for (std::size_t c = v.offset; c < v.offset + v.length; ++c) REQUIRE(owner[c]++ == 0);
          }
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("cell state json") {
  const auto p = CodeParams::make(8, 2, 3, Scheme::indexless);
  auto s = CellState::zeros(8);
  s.levels[0] = 2;
  s.levels[1] = 1;
  const auto doc = state_to_json(p, s);
  CHECK(doc.dump() == R"({"n":8,"k":2,"q":3,"scheme":"indexless","cells":[2,1,0,0,0,0,0,0]})");

  const auto [p2, s2] = state_from_json(doc);
  CHECK(p2 == p);
  CHECK(s2 == s);

  auto bad = doc;
  bad["cells"][3] = 3;
  CHECK_THROWS_AS(state_from_json(bad), Error);
  bad = doc;
  bad["cells"].erase(0);
  CHECK_THROWS_AS(state_from_json(bad), Error);
  bad = doc;
  bad.erase("q");
  CHECK_THROWS_AS(state_from_json(bad), Error);
}

TEST_CASE("dominates") {
  auto a = CellState::zeros(3);
  auto b = a;
  b.levels[1] = 1;
  CHECK(b.dominates(a));
  CHECK_FALSE(a.dominates(b));
  CHECK(a.dominates(a));
}
