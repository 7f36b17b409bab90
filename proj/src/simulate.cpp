#include <exception>
#include <random>

#include "flashcode/analysis.hpp"

namespace flashcode {

namespace {

// Lowest bit with nothing allocated; otherwise the bit whose block has the
// fewest levels left.
int greedy_pick(const Codec& codec, const CellState& state) {
  const auto alloc = codec.allocations(state);
  int closest = 0;
  for (int b = 0; b < static_cast<int>(alloc.size()); ++b) {
    if (!alloc[b]) return b;
    if (*alloc[b] < *alloc[closest]) closest = b;
  }
  return closest;
}

}  // namespace

std::string_view policy_name(Policy policy) {
  switch (policy) {
    case Policy::uniform_random:
      return "uniform-random";
    case Policy::round_robin:
      return "round-robin";
    case Policy::greedy_adversary:
      return "greedy-adversary";
  }
  return "?";
}

Policy parse_policy(std::string_view name) {
  for (auto p : {Policy::uniform_random, Policy::round_robin, Policy::greedy_adversary}) {
    if (policy_name(p) == name) return p;
  }
  throw Error(ErrorKind::invalid_params, "unknown policy '" + std::string(name) + "'");
}

std::int64_t run_to_erasure(const Codec& codec, Policy policy, std::uint64_t seed) {
  const int k = codec.params().k;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, k - 1);
  const auto start = static_cast<std::int64_t>(seed % static_cast<std::uint64_t>(k));

  auto state = codec.init();
  for (std::int64_t writes = 0;; ++writes) {
    int bit = 0;
    switch (policy) {
      case Policy::uniform_random:
        bit = pick(rng);
        break;
      case Policy::round_robin:
        bit = static_cast<int>((start + writes) % k);
        break;
      case Policy::greedy_adversary:
        bit = greedy_pick(codec, state);
        break;
    }
    auto out = codec.encode(bit, state);
    if (out.erased()) return writes;
    state = std::move(out).take();
  }
}

std::vector<DeficiencyReport> simulate_serial(const CodeParams& params, Policy policy, std::uint64_t seed, int runs) {
  const auto codec = make_codec(params);
  std::vector<DeficiencyReport> rows;
  rows.reserve(static_cast<std::size_t>(std::max(runs, 0)));
  for (int j = 0; j < runs; ++j) {
    const std::uint64_t run_seed = seed + static_cast<std::uint64_t>(j);
    rows.push_back(make_report(params, std::string(policy_name(policy)), run_seed,
                               run_to_erasure(*codec, policy, run_seed)));
  }
  return rows;
}

std::vector<DeficiencyReport> simulate(const CodeParams& params, Policy policy, std::uint64_t seed, int runs) {
  const auto codec = make_codec(params);
  const int count = std::max(runs, 0);
  std::vector<std::int64_t> writes(static_cast<std::size_t>(count));

  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < count; ++j) {
    try {
      writes[j] = run_to_erasure(*codec, policy, seed + static_cast<std::uint64_t>(j));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<DeficiencyReport> rows;
  rows.reserve(writes.size());
  for (int j = 0; j < count; ++j) {
    rows.push_back(make_report(params, std::string(policy_name(policy)), seed + static_cast<std::uint64_t>(j), writes[j]));
  }
  return rows;
}

}  // namespace flashcode
