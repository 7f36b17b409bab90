#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

#include "flashcode/analysis.hpp"

namespace flashcode {

namespace {

struct BudgetExceeded {};

class Minimax {
 public:
  Minimax(const Codec& codec, std::size_t max_states) : codec_(codec), max_states_(max_states) {}

  // Guaranteed writes from `state`. `depth` is the number of writes taken to
  // reach it and feeds the partial upper bound kept for budget overruns.
  std::int64_t solve(const CellState& state, std::int64_t depth) {
    std::string key(state.levels.begin(), state.levels.end());
    if (auto it = memo_.find(key); it != memo_.end()) {
      best_erasing_ = std::min(best_erasing_, depth + it->second);
      return it->second;
    }
    if (memo_.size() >= max_states_) throw BudgetExceeded{};

    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (int i = 0; i < codec_.params().k && best > 0; ++i) {
      auto out = codec_.encode(i, state);
      if (out.erased()) {
        best = 0;
        best_erasing_ = std::min(best_erasing_, depth);
        break;
      }
      best = std::min(best, 1 + solve(out.state(), depth + 1));
    }
    if (memo_.size() >= max_states_) throw BudgetExceeded{};
    memo_.emplace(std::move(key), best);
    return best;
  }

  std::size_t states() const { return memo_.size(); }
  std::int64_t best_erasing() const { return best_erasing_; }

 private:
  const Codec& codec_;
  std::size_t max_states_;
  std::unordered_map<std::string, std::int64_t> memo_;
  std::int64_t best_erasing_ = std::numeric_limits<std::int64_t>::max();
};

}  // namespace

OracleResult oracle_min_writes(const Codec& codec, OracleOptions options) {
  Minimax search(codec, options.max_states);
  OracleResult result;
  try {
    result.writes = search.solve(codec.init(), 0);
    result.complete = true;
  } catch (const BudgetExceeded&) {
    const auto found = search.best_erasing();
    result.writes = found == std::numeric_limits<std::int64_t>::max() ? -1 : found;
    result.complete = false;
  }
  result.states = search.states();
  return result;
}

}  // namespace flashcode
