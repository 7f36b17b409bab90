#include <algorithm>
#include <numeric>

#include "flashcode/analysis.hpp"
#include "flashcode/constant_rate.hpp"

namespace flashcode {

namespace {

std::int64_t stage_count(std::int64_t k_eff) { return std::max(1, ceil_log2(k_eff)); }

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// Terms shared by both multistage bounds: unused remainder cells, the last
// stage's live two-cell blocks, and one wasted level per bit per transition.
std::int64_t non_index_terms(std::int64_t k_eff, std::int64_t q) {
  return 3 * (q - 1) * (k_eff - 1) + k_eff * (stage_count(k_eff) - 1);
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

std::int64_t Rational::ceil() const {
  const auto quotient = num / den;
  return (num % den > 0) ? quotient + 1 : quotient;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational jbb_lower_bound(std::int64_t n, std::int64_t k, std::int64_t q) {
  return Rational::make((q - 1) * std::min(n, k - 1), 2);
}

std::int64_t bound_indexless(std::int64_t k_eff, std::int64_t q) { return (k_eff - 1) * ((k_eff + 1) * (q - 1) - 1); }

std::int64_t bound_multistage_baseq(std::int64_t k_eff, std::int64_t q) {
  const auto s = stage_count(k_eff);
  return 2 * (q - 1) * (k_eff - 1) * (s - 1) * ceil_log(q, k_eff + 2) + non_index_terms(k_eff, q);
}

std::int64_t stacked_tally_allowance(std::int64_t k_eff, std::int64_t q) {
  return ceil_div(stage_count(k_eff) - 1, q - 1) * (q - 1);
}

std::int64_t bound_multistage_stacked(std::int64_t k_eff, std::int64_t q, bool with_tally) {
  const auto s = stage_count(k_eff);
  const auto stacks = ceil_div(s - 1, q - 1);
  auto bound = 2 * (q - 1) * (k_eff - 1) * stacks * ceil_log2(k_eff + 2) + non_index_terms(k_eff, q);
  if (with_tally) bound += stacked_tally_allowance(k_eff, q);
  return bound;
}

std::int64_t deficiency_bound(const CodeParams& p) {
  switch (p.scheme) {
    case Scheme::indexless:
      return bound_indexless(p.k_eff, p.q);
    case Scheme::multistage_baseq:
      return bound_multistage_baseq(p.k_eff, p.q);
    case Scheme::multistage_stacked:
      return bound_multistage_stacked(p.k_eff, p.q);
    case Scheme::constant_rate:
      return p.total_levels() - constant_rate::cr_capacity(p);
  }
  return 0;
}

DeficiencyReport make_report(const CodeParams& p, std::string policy, std::optional<std::uint64_t> seed,
                             std::int64_t writes) {
  DeficiencyReport r;
  r.scheme = p.scheme;
  r.n = p.n;
  r.k = p.k;
  r.q = p.q;
  r.policy = std::move(policy);
  r.seed = seed;
  r.writes = writes;
  r.deficiency = p.total_levels() - writes;
  r.bound = deficiency_bound(p);
  return r;
}

std::string csv_header() { return "scheme,n,k,q,policy,seed,writes,deficiency,bound"; }

std::string csv_row(const DeficiencyReport& r) {
  std::string row;
  row += scheme_name(r.scheme);
  row += ',' + std::to_string(r.n) + ',' + std::to_string(r.k) + ',' + std::to_string(r.q);
  row += ',' + r.policy + ',';
  if (r.seed) row += std::to_string(*r.seed);
  row += ',' + std::to_string(r.writes) + ',' + std::to_string(r.deficiency) + ',' + std::to_string(r.bound);
  return row;
}

}  // namespace flashcode
