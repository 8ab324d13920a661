#pragma once

#include <array>
#include <string>
#include <utility>

#include "altnet/rational.hpp"
#include "altnet/topology.hpp"

namespace altnet {

using RateValue = Rational;

/// A capacity formula was evaluated outside the regime where it is known
/// to hold (e.g. asymmetric fractions for the X/BC formulas).
class TheoremPreconditionError : public std::invalid_argument {
 public:
  TheoremPreconditionError(const std::string& which, const std::string& why)
      : std::invalid_argument(which + ": " + why), which(which) {}
  std::string which;
};

/// Sum capacity of the two-user interference channel under alternating
/// connectivity: 1 + lambda_D + min(lambda_A, lambda_B, lambda_C).
inline RateValue ic2_sum_capacity(const StateFractions& f) {
  return Rational(1) + f.d() + min(min(f.a(), f.b()), f.c());
}

/// The three sum-rate outer bounds whose minimum matches the capacity:
/// the Z-state separation bound 1 + lambda_C + lambda_D and the two
/// genie-aided multiple-access bounds 1 + lambda_B + lambda_D and
/// 1 + lambda_A + lambda_D.
struct BoundSet {
  RateValue z_bound;
  RateValue mac_bound_1;
  RateValue mac_bound_2;

  RateValue min() const {
    return altnet::min(z_bound, altnet::min(mac_bound_1, mac_bound_2));
  }

  std::array<std::pair<const char*, RateValue>, 3> named() const {
    return {{{"Z-bound", z_bound},
             {"MAC-bound-1", mac_bound_1},
             {"MAC-bound-2", mac_bound_2}}};
  }
};

inline BoundSet ic2_outer_bounds(const StateFractions& f) {
  return BoundSet{Rational(1) + f.c() + f.d(),
                  Rational(1) + f.b() + f.d(),
                  Rational(1) + f.a() + f.d()};
}

/// Best rate without coding across states (1 + lambda_D) and the gain
/// joint coding adds on top, min(lambda_A, lambda_B, lambda_C). The gain
/// vanishes as soon as one of A, B, C never occurs.
inline std::pair<RateValue, RateValue> ic2_baseline_and_gain(
    const StateFractions& f) {
  RateValue baseline = Rational(1) + f.d();
  return {baseline, ic2_sum_capacity(f) - baseline};
}

/// Sum capacity of the symmetric two-user X channel:
/// 1 + lambda_D + min(lambda_A, lambda_C). Only the symmetric case
/// (lambda_A = lambda_B) is characterized; anything else is refused.
inline RateValue x2_sum_capacity(const StateFractions& f) {
  if (f.a() != f.b())
    throw TheoremPreconditionError(
        "x2_sum_capacity",
        "requires lambda_A = lambda_B (got " + f.a().str() + " and " +
            f.b().str() + "); the asymmetric X capacity is unknown");
  return Rational(1) + f.d() + min(f.a(), f.c());
}

/// Sum capacity of the symmetric two-user vector broadcast channel:
/// 1 + lambda_A + lambda_D. Holds for field size > 2; at p = 2 topology
/// knowledge is full CSIT and zero-forcing reaches 2 instead.
inline RateValue bc2_sum_capacity(const StateFractions& f) {
  if (f.a() != f.b())
    throw TheoremPreconditionError(
        "bc2_sum_capacity",
        "requires lambda_A = lambda_B (got " + f.a().str() + " and " +
            f.b().str() + "); the asymmetric BC capacity is unknown");
  return Rational(1) + f.a() + f.d();
}

/// Correspondence between the connectivity states and the alternating
/// CSIT states of the equivalent broadcast model: per state, the CSIT
/// quality pair (user 1, user 2), P = perfect, N = none.
struct CsitMapEntry {
  TwoUserStateId state;
  char user1;
  char user2;
};

inline std::array<CsitMapEntry, 4> csit_state_mapping() {
  return {{{TwoUserStateId::A, 'N', 'P'},
           {TwoUserStateId::B, 'P', 'N'},
           {TwoUserStateId::C, 'N', 'N'},
           {TwoUserStateId::D, 'P', 'P'}}};
}

}  // namespace altnet
