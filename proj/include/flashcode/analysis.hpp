#pragma once

// Deficiency bounds, the exhaustive adversarial oracle and the randomized
// simulator.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flashcode/codec.hpp"

namespace flashcode {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  std::int64_t ceil() const;
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Lower bound on the deficiency of any code: (1/2)(q-1) min{n, k-1}.
Rational jbb_lower_bound(std::int64_t n, std::int64_t k, std::int64_t q);

/// (k-1)((k+1)(q-1) - 1)
std::int64_t bound_indexless(std::int64_t k_eff, std::int64_t q);

/// (q-1)(k-1)(2(s-1) ceil(log_q(k+2)) + 3) + k(s-1), s = ceil(log2 k).
std::int64_t bound_multistage_baseq(std::int64_t k_eff, std::int64_t q);

/// Stacked index cost 2(q-1)(k-1) ceil((s-1)/(q-1)) ceil(log2(k+2)) plus the
/// non-index terms of the base-q bound, plus the tally region when asked.
std::int64_t bound_multistage_stacked(std::int64_t k_eff, std::int64_t q, bool with_tally = true);
std::int64_t stacked_tally_allowance(std::int64_t k_eff, std::int64_t q);

/// The bound matching params.scheme. For constant-rate this is exact:
/// n(q-1) minus the guaranteed writes.
std::int64_t deficiency_bound(const CodeParams& params);

struct DeficiencyReport {
  Scheme scheme = Scheme::indexless;
  int n = 0;
  int k = 0;
  int q = 0;
  std::string policy;
  std::optional<std::uint64_t> seed;
  std::int64_t writes = 0;
  std::int64_t deficiency = 0;
  std::int64_t bound = 0;

  bool within_bound() const { return deficiency <= bound; }
  friend bool operator==(const DeficiencyReport&, const DeficiencyReport&) = default;
};

DeficiencyReport make_report(const CodeParams& params, std::string policy, std::optional<std::uint64_t> seed,
                             std::int64_t writes);

std::string csv_header();
std::string csv_row(const DeficiencyReport& report);

// --- exhaustive oracle ---------------------------------------------------

struct OracleOptions {
  std::size_t max_states = std::size_t{1} << 24;
};

struct OracleResult {
  /// Exact guaranteed writes when complete; otherwise the shortest erasing
  /// sequence found so far, which is an upper bound on the true value
  /// (-1 if none was found before the budget ran out).
  std::int64_t writes = 0;
  std::size_t states = 0;
  bool complete = false;
};

/// t(x) = min over bits i of (0 if encode(i, x) erases, else 1 + t(encode(i, x))),
/// memoized on the raw cell vector and evaluated at the all-zero state.
OracleResult oracle_min_writes(const Codec& codec, OracleOptions options = {});

// --- simulation ----------------------------------------------------------

enum class Policy { uniform_random, round_robin, greedy_adversary };

std::string_view policy_name(Policy policy);
Policy parse_policy(std::string_view name);

/// Drives a fresh codec to erasure and returns the number of writes accepted.
/// Round-robin starts on bit seed mod k; greedy ignores the seed.
std::int64_t run_to_erasure(const Codec& codec, Policy policy, std::uint64_t seed);

/// Run j uses seed + j. Rows come back in run order.
std::vector<DeficiencyReport> simulate(const CodeParams& params, Policy policy, std::uint64_t seed, int runs);
/// Single-threaded reference for `simulate`; produces identical rows.
std::vector<DeficiencyReport> simulate_serial(const CodeParams& params, Policy policy, std::uint64_t seed, int runs);

}  // namespace flashcode
