#pragma once

#include <optional>
#include <string>
#include <vector>

#include "altnet/matrix.hpp"
#include "altnet/realization.hpp"
#include "altnet/scheme.hpp"

namespace altnet {

enum class CheckMode { Single, WorstCase, GenericSampled, ExhaustiveFraction };

inline const char* to_string(CheckMode m) {
  switch (m) {
    case CheckMode::Single: return "single";
    case CheckMode::WorstCase: return "worst-case";
    case CheckMode::GenericSampled: return "generic-sampled";
    case CheckMode::ExhaustiveFraction: return "exhaustive-fraction";
  }
  throw std::logic_error("bad CheckMode");
}

/// Outcome of a decodability check. A realization counts as a failure
/// when any receiver misses any of its desired symbols under the exact
/// linear criterion (receivers know all coefficients). For worst-case
/// verdicts a false result always carries the lexicographically first
/// counterexample, which re-checks via receiver_decodable.
struct DecodabilityReport {
  CheckMode mode = CheckMode::Single;
  bool verdict = false;
  std::vector<bool> per_receiver;  // false iff a failure was observed for r
  std::optional<ChannelRealization> counterexample;
  std::optional<int> counterexample_receiver;
  std::uint64_t realizations_total = 0;    // exhaustive total, or trial count
  std::uint64_t realizations_checked = 0;  // how many the run actually visited
  std::uint64_t failures = 0;
  std::optional<Rational> failure_fraction;  // exact or sampled estimate
};

namespace detail {

/// Reusable scratch for the hot loops: builds each receiver's effective
/// matrix in place and answers the per-receiver unit-row criterion
/// without allocating per realization.
class DecodabilityChecker {
 public:
  explicit DecodabilityChecker(const LinearScheme& scheme)
      : scheme_(scheme), n_(scheme.slot_count()), m_(scheme.symbol_count()),
        p_(scheme.field().p()),
        buf_(static_cast<std::size_t>(n_) * m_),
        pivots_(m_) {
    for (int r = 0; r < scheme.users(); ++r)
      desired_.push_back(scheme.config().desired_of(r));
  }

  bool receiver_ok(const ChannelRealization& real, int rx) {
    const auto& wanted = desired_[rx];
    if (wanted.empty()) return true;
    std::fill(buf_.begin(), buf_.end(), 0);
    for (int slot = 0; slot < n_; ++slot)
      for (int t = 0; t < scheme_.users(); ++t) {
        std::int64_t h = real.coeff(slot, rx, t);
        if (h == 0) continue;
        for (auto [sym, c] : scheme_.entries(t, slot)) {
          std::int64_t& cell = buf_[static_cast<std::size_t>(slot) * m_ + sym];
          cell = gf::add(cell, gf::mul(h, c, p_), p_);
        }
      }
    rref_in_place(buf_.data(), n_, m_, p_, pivots_.data());
    for (int i : wanted)
      if (!unit_vector_in_rowspace(buf_.data(), m_, m_, pivots_.data(), i))
        return false;
    return true;
  }

  /// First receiver that cannot decode, or -1 when all can.
  int first_failing_receiver(const ChannelRealization& real) {
    for (int r = 0; r < scheme_.users(); ++r)
      if (!receiver_ok(real, r)) return r;
    return -1;
  }

 private:
  const LinearScheme& scheme_;
  int n_, m_;
  std::int64_t p_;
  std::vector<std::vector<int>> desired_;
  std::vector<std::int64_t> buf_;
  std::vector<int> pivots_;
};

}  // namespace detail

/// Zero-error criterion for one receiver at one realization: every
/// desired symbol's unit vector lies in the row space of the effective
/// matrix.
inline bool receiver_decodable(const LinearScheme& scheme,
                               const ChannelRealization& real, int rx) {
  real.validate_support(scheme.seq());
  if (rx < 0 || rx >= scheme.users())
    throw std::invalid_argument("receiver_decodable: receiver out of range");
  detail::DecodabilityChecker checker(scheme);
  return checker.receiver_ok(real, rx);
}

inline DecodabilityReport single_check(const LinearScheme& scheme,
                                       const ChannelRealization& real) {
  real.validate_support(scheme.seq());
  detail::DecodabilityChecker checker(scheme);
  DecodabilityReport report;
  report.mode = CheckMode::Single;
  report.realizations_total = 1;
  report.realizations_checked = 1;
  report.verdict = true;
  for (int r = 0; r < scheme.users(); ++r) {
    bool ok = checker.receiver_ok(real, r);
    report.per_receiver.push_back(ok);
    if (!ok && report.verdict) {
      report.verdict = false;
      report.counterexample = real;
      report.counterexample_receiver = r;
    }
  }
  report.failures = report.verdict ? 0 : 1;
  if (!report.verdict) report.failure_fraction = Rational(1);
  else report.failure_fraction = Rational(0);
  return report;
}

/// Exhaustive check over every coefficient realization. Passes iff every
/// receiver decodes everywhere; stops at the lexicographically first
/// failure otherwise. The scan may be split into `shards` index ranges;
/// the reduction (AND of verdicts, minimum failing index) gives the same
/// report for any shard count.
inline DecodabilityReport worst_case_check(
    const LinearScheme& scheme, std::uint64_t guard = kDefaultEnumerationGuard,
    int shards = 1) {
  if (shards < 1) throw std::invalid_argument("worst_case_check: shards must be >= 1");
  RealizationEnumerator en(scheme.seq(), scheme.field(), guard);
  detail::DecodabilityChecker checker(scheme);
  DecodabilityReport report;
  report.mode = CheckMode::WorstCase;
  report.realizations_total = en.total();

  std::uint64_t best_fail = UINT64_MAX;
  int best_rx = -1;
  std::uint64_t checked = 0;
  for (int shard = 0; shard < shards; ++shard) {
    std::uint64_t begin = en.total() * shard / shards;
    std::uint64_t end = en.total() * (shard + 1) / shards;
    int fail_rx = -1;
    std::uint64_t stop = en.scan(begin, end,
                                 [&](const ChannelRealization& real, std::uint64_t) {
                                   fail_rx = checker.first_failing_receiver(real);
                                   return fail_rx < 0;
                                 });
    checked += (stop - begin) + (stop < end ? 1 : 0);
    if (stop < end && stop < best_fail) {
      best_fail = stop;
      best_rx = fail_rx;
    }
  }
  report.realizations_checked = checked;
  report.per_receiver.assign(scheme.users(), true);
  if (best_fail == UINT64_MAX) {
    report.verdict = true;
    report.failures = 0;
    report.failure_fraction = Rational(0);
  } else {
    report.verdict = false;
    report.failures = 1;  // counted up to the first failure only
    report.per_receiver[best_rx] = false;
    en.seek(best_fail);
    ChannelRealization real(scheme.field(), scheme.seq());
    en.next(real);
    report.counterexample = real;
    report.counterexample_receiver = best_rx;
  }
  return report;
}

/// Exact failing fraction: scans the full realization space and counts
/// failures. Shard-splittable with an order-independent reduction.
inline DecodabilityReport failure_fraction_exact(
    const LinearScheme& scheme, std::uint64_t guard = kDefaultEnumerationGuard,
    int shards = 1) {
  if (shards < 1)
    throw std::invalid_argument("failure_fraction_exact: shards must be >= 1");
  RealizationEnumerator en(scheme.seq(), scheme.field(), guard);
  detail::DecodabilityChecker checker(scheme);
  DecodabilityReport report;
  report.mode = CheckMode::ExhaustiveFraction;
  report.realizations_total = en.total();
  report.per_receiver.assign(scheme.users(), true);

  std::uint64_t failures = 0;
  std::uint64_t best_fail = UINT64_MAX;
  int best_rx = -1;
  for (int shard = 0; shard < shards; ++shard) {
    std::uint64_t begin = en.total() * shard / shards;
    std::uint64_t end = en.total() * (shard + 1) / shards;
    en.scan(begin, end, [&](const ChannelRealization& real, std::uint64_t idx) {
      bool failed = false;
      for (int r = 0; r < scheme.users(); ++r) {
        if (!checker.receiver_ok(real, r)) {
          report.per_receiver[r] = false;
          if (!failed && idx < best_fail) {
            best_fail = idx;
            best_rx = r;
          }
          failed = true;
        }
      }
      if (failed) ++failures;
      return true;
    });
  }
  report.realizations_checked = en.total();
  report.failures = failures;
  report.verdict = failures == 0;
  report.failure_fraction =
      en.total() == 0 ? Rational(0)
                      : Rational(static_cast<std::int64_t>(failures),
                                 static_cast<std::int64_t>(en.total()));
  if (best_fail != UINT64_MAX) {
    en.seek(best_fail);
    ChannelRealization real(scheme.field(), scheme.seq());
    en.next(real);
    report.counterexample = real;
    report.counterexample_receiver = best_rx;
  }
  return report;
}

/// Sampled check: `trials` seeded realizations, reporting the failing
/// fraction as an estimate. Deterministic for a fixed seed; trial 0 draws
/// exactly the realization sample_realization(seq, field, seed) yields.
inline DecodabilityReport generic_check(const LinearScheme& scheme, int trials,
                                        std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("generic_check: trials must be >= 1");
  detail::DecodabilityChecker checker(scheme);
  DecodabilityReport report;
  report.mode = CheckMode::GenericSampled;
  report.realizations_total = static_cast<std::uint64_t>(trials);
  report.per_receiver.assign(scheme.users(), true);
  std::mt19937_64 rng(seed);
  std::uint64_t failures = 0;
  for (int trial = 0; trial < trials; ++trial) {
    ChannelRealization real = draw_realization(scheme.seq(), scheme.field(), rng);
    bool failed = false;
    for (int r = 0; r < scheme.users(); ++r) {
      if (!checker.receiver_ok(real, r)) {
        report.per_receiver[r] = false;
        failed = true;
        if (!report.counterexample) {
          report.counterexample = real;
          report.counterexample_receiver = r;
        }
      }
    }
    if (failed) ++failures;
  }
  report.realizations_checked = static_cast<std::uint64_t>(trials);
  report.failures = failures;
  report.verdict = failures == 0;
  report.failure_fraction = Rational(static_cast<std::int64_t>(failures), trials);
  return report;
}

}  // namespace altnet
