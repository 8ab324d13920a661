#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "altnet/builders.hpp"
#include "altnet/verifier.hpp"

namespace altnet {

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

/// The encoder space of a search exceeds its budget. `required` is the
/// candidate count the search would have to visit (saturated).
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::uint64_t required, std::uint64_t budget)
      : std::runtime_error("search budget exceeded: " + std::to_string(required) +
                           " candidates required, budget is " +
                           std::to_string(budget)),
        required(required) {}
  std::uint64_t required;
};

/// Exhaustive search instance: all linear schemes over `seq` with at most
/// `max_symbols_per_tx` symbols per transmitter, private (IC) messages,
/// candidate encoders canonicalized per column (first nonzero entry 1,
/// zero columns rejected, column tuples strictly increasing per
/// transmitter). `decodability` picks the certificate: worst-case or the
/// equivalent exhaustive-failing-fraction-zero criterion.
struct SearchSpec {
  StateSequence seq;
  FieldSpec field;
  MessageMode mode = MessageMode::IC;
  int max_symbols_per_tx = 2;
  CheckMode decodability = CheckMode::WorstCase;
  std::uint64_t budget = kDefaultSearchBudget;
  std::uint64_t guard = kDefaultEnumerationGuard;
};

/// Maximum zero-error linear sum rate found, with the first witness in
/// candidate order (symbol counts high to low; within a symbol count,
/// allocations to earlier transmitters first, then column tuples in
/// lexicographic order, transmitter-major). The witness is re-verified
/// through the public verifier before it is returned.
struct SearchResult {
  Rational best_rate;
  LinearScheme witness;
  std::uint64_t candidates_examined = 0;
  bool exhaustive = true;
};

namespace detail {

/// All nonzero vectors of GF(p)^n whose first nonzero entry is 1, in
/// lexicographic order. Any encoder column is a nonzero scalar multiple
/// of exactly one of these.
inline std::vector<std::vector<std::int64_t>> canonical_columns(int n,
                                                                std::int64_t p) {
  double space = 1;
  for (int i = 0; i < n; ++i) space *= static_cast<double>(p);
  if (space > 2e7)
    throw BudgetError(UINT64_MAX, kDefaultSearchBudget);
  std::vector<std::vector<std::int64_t>> cols;
  std::vector<std::int64_t> v(n, 0);
  while (true) {
    int i = n - 1;
    while (i >= 0 && v[i] == p - 1) {
      v[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++v[i];
    for (int j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      if (v[j] == 1) cols.push_back(v);
      break;
    }
  }
  return cols;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

inline std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    out = saturating_mul(out, n - i);
    out /= (i + 1);
  }
  return out;
}

/// Allocations (m_0 .. m_{K-1}) with the given sum, each entry in
/// [0, cap], earlier transmitters taking more first.
inline std::vector<std::vector<int>> allocations(int users, int total, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(users, 0);
  std::function<void(int, int)> rec = [&](int t, int rem) {
    if (t == users) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    int hi = std::min(cap, rem);
    int lo = std::max(0, rem - cap * (users - 1 - t));
    for (int m = hi; m >= lo; --m) {
      cur[t] = m;
      rec(t + 1, rem - m);
    }
  };
  rec(0, total);
  return out;
}

/// Lexicographic iteration over strictly increasing index tuples.
inline bool next_combination(std::vector<int>& tuple, int ncols) {
  int m = static_cast<int>(tuple.size());
  for (int i = m - 1; i >= 0; --i) {
    if (tuple[i] < ncols - (m - i)) {
      ++tuple[i];
      for (int j = i + 1; j < m; ++j) tuple[j] = tuple[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Certified maximum zero-error linear sum rate at the requested block
/// length, by exhaustive enumeration of canonicalized encoders, highest
/// symbol count first. This is the linear zero-error optimum, a lower
/// bound proxy for capacity.
inline SearchResult max_linear_rate(const SearchSpec& spec) {
  spec.seq.validate();
  if (spec.mode != MessageMode::IC)
    throw std::invalid_argument(
        "max_linear_rate: only IC message configs are searchable");
  if (spec.decodability != CheckMode::WorstCase &&
      spec.decodability != CheckMode::ExhaustiveFraction)
    throw std::invalid_argument(
        "max_linear_rate: decodability mode must be exhaustive "
        "(worst-case or exhaustive-fraction)");
  if (spec.max_symbols_per_tx < 1)
    throw std::invalid_argument("max_linear_rate: max symbols must be >= 1");

  const int users = spec.seq.users();
  const int n = spec.seq.length();
  const std::int64_t p = spec.field.p();
  auto cols = detail::canonical_columns(n, p);
  const int ncols = static_cast<int>(cols.size());
  const int cap = std::min(spec.max_symbols_per_tx, ncols);

  std::uint64_t estimate = 0;
  for (int total = users * cap; total >= 1; --total)
    for (const auto& alloc : detail::allocations(users, total, cap)) {
      std::uint64_t c = 1;
      for (int m : alloc)
        c = detail::saturating_mul(c, detail::choose(ncols, m));
      estimate = detail::saturating_add(estimate, c);
    }
  if (estimate > spec.budget) throw BudgetError(estimate, spec.budget);

  RealizationEnumerator en(spec.seq, spec.field, spec.guard);
  std::vector<std::int64_t> eff(static_cast<std::size_t>(n) * users * cap);
  std::vector<int> pivots(users * cap);
  std::uint64_t examined = 0;

  for (int total = users * cap; total >= 1; --total) {
    for (const auto& alloc : detail::allocations(users, total, cap)) {
      const int m_total = total;
      std::vector<int> owner;
      for (int t = 0; t < users; ++t)
        for (int i = 0; i < alloc[t]; ++i) owner.push_back(t);
      std::vector<std::vector<int>> desired_by(users);
      for (int j = 0; j < m_total; ++j) desired_by[owner[j]].push_back(j);

      std::vector<std::vector<int>> tuples(users);
      for (int t = 0; t < users; ++t) {
        tuples[t].resize(alloc[t]);
        for (int i = 0; i < alloc[t]; ++i) tuples[t][i] = i;
      }

      while (true) {
        ++examined;
        std::vector<const std::int64_t*> col_of(m_total);
        {
          int j = 0;
          for (int t = 0; t < users; ++t)
            for (int i : tuples[t]) col_of[j++] = cols[i].data();
        }
        bool feasible = true;
        en.scan(0, en.total(), [&](const ChannelRealization& real, std::uint64_t) {
          for (int r = 0; r < users; ++r) {
            if (desired_by[r].empty()) continue;
            for (int slot = 0; slot < n; ++slot)
              for (int j = 0; j < m_total; ++j)
                eff[static_cast<std::size_t>(slot) * m_total + j] =
                    gf::mul(real.coeff(slot, r, owner[j]), col_of[j][slot], p);
            detail::rref_in_place(eff.data(), n, m_total, p, pivots.data());
            for (int i : desired_by[r])
              if (!detail::unit_vector_in_rowspace(eff.data(), m_total, m_total,
                                                   pivots.data(), i)) {
                feasible = false;
                return false;
              }
          }
          return true;
        });

        if (feasible) {
          LinearScheme witness(spec.field, spec.seq, MessageConfig::ic(users, owner));
          for (int j = 0; j < m_total; ++j)
            for (int slot = 0; slot < n; ++slot)
              if (col_of[j][slot] != 0)
                witness.add_entry(owner[j], slot, j, col_of[j][slot]);
          witness.validate();
          DecodabilityReport recheck =
              spec.decodability == CheckMode::WorstCase
                  ? worst_case_check(witness, spec.guard)
                  : failure_fraction_exact(witness, spec.guard);
          if (!recheck.verdict)
            throw std::logic_error(
                "max_linear_rate: witness failed re-verification");
          return SearchResult{Rational(m_total, n), std::move(witness), examined,
                              true};
        }

        int t = users - 1;
        for (; t >= 0; --t)
          if (detail::next_combination(tuples[t], ncols)) break;
        if (t < 0) break;
        for (int u = t + 1; u < users; ++u)
          for (int i = 0; i < alloc[u]; ++i) tuples[u][i] = i;
      }
    }
  }
  // A single symbol on a direct link always decodes, so the loop cannot
  // fall through.
  throw std::logic_error("max_linear_rate: search space collapsed");
}

/// Per user pair, the linear zero-error optimum after silencing the third
/// transmitter and restricting both states to the induced two-user
/// topologies (block length 2).
struct PairwiseRates {
  static constexpr std::array<std::array<int, 2>, 3> kPairs = {
      {{0, 1}, {0, 2}, {1, 2}}};
  std::array<Rational, 3> rates;
};

inline PairwiseRates pairwise_bound_check(
    const TopologyState& first, const TopologyState& second, FieldSpec field,
    std::uint64_t budget = kDefaultSearchBudget,
    std::uint64_t guard = kDefaultEnumerationGuard) {
  if (first.users() != 3 || second.users() != 3)
    throw std::invalid_argument("pairwise_bound_check: wants 3-user states");
  PairwiseRates out;
  for (std::size_t i = 0; i < PairwiseRates::kPairs.size(); ++i) {
    const auto& pr = PairwiseRates::kPairs[i];
    SearchSpec spec{sequence_of_states({first.induced(pr), second.induced(pr)}),
                    field};
    spec.max_symbols_per_tx = 2;
    spec.budget = budget;
    spec.guard = guard;
    out.rates[i] = max_linear_rate(spec).best_rate;
  }
  return out;
}

/// What a certified two-state example must look like: each state useless
/// on its own (individual linear optimum 1 at block lengths 1 and 2),
/// jointly worth 3/2 with one symbol per user, and no user pair above 1.
struct ExampleProfile {
  std::array<Rational, 2> individual;
  Rational joint;
  std::array<Rational, 3> pairwise;
  bool pass = false;
};

struct ExampleCandidate {
  TopologyState first;
  TopologyState second;
  ExampleProfile profile;
  LinearScheme witness;
};

struct ExampleSearchOptions {
  std::uint64_t budget = kDefaultSearchBudget;
  std::uint64_t guard = kDefaultEnumerationGuard;
  bool dedup = true;  // canonicalize under simultaneous user relabeling
  std::function<void(const std::string&)> progress;
};

namespace detail {

inline Rational individual_linear_rate(const TopologyState& s, FieldSpec field,
                                       std::uint64_t budget, std::uint64_t guard) {
  SearchSpec one{sequence_of_states({s}), field};
  one.max_symbols_per_tx = 2;
  one.budget = budget;
  one.guard = guard;
  SearchSpec two{sequence_of_states({s, s}), field};
  two.max_symbols_per_tx = 2;
  two.budget = budget;
  two.guard = guard;
  return max(max_linear_rate(one).best_rate, max_linear_rate(two).best_rate);
}

inline std::uint64_t pair_key(const TopologyState& a, const TopologyState& b) {
  return (a.bits() << 16) | b.bits();
}

inline std::uint64_t canonical_pair_key(const TopologyState& a,
                                        const TopologyState& b) {
  static const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::uint64_t best = UINT64_MAX;
  for (const auto& perm : perms) {
    std::uint64_t key = pair_key(a.relabeled(perm), b.relabeled(perm));
    if (key < best) best = key;
  }
  return best;
}

}  // namespace detail

/// Builds the profile of one candidate pair (individual, joint, pairwise
/// rates and the pass verdict).
inline ExampleCandidate certify_example_pair(
    const TopologyState& first, const TopologyState& second, FieldSpec field,
    std::uint64_t budget = kDefaultSearchBudget,
    std::uint64_t guard = kDefaultEnumerationGuard) {
  if (first.users() != 3 || second.users() != 3)
    throw std::invalid_argument("certify_example_pair: wants 3-user states");
  ExampleProfile profile;
  profile.individual[0] = detail::individual_linear_rate(first, field, budget, guard);
  profile.individual[1] = detail::individual_linear_rate(second, field, budget, guard);
  SearchSpec joint{sequence_of_states({first, second}), field};
  joint.max_symbols_per_tx = 1;
  joint.budget = budget;
  joint.guard = guard;
  SearchResult joint_result = max_linear_rate(joint);
  profile.joint = joint_result.best_rate;
  profile.pairwise = pairwise_bound_check(first, second, field, budget, guard).rates;
  profile.pass = profile.individual[0] == Rational(1) &&
                 profile.individual[1] == Rational(1) &&
                 profile.joint >= Rational(3, 2);
  for (const auto& r : profile.pairwise)
    if (r > Rational(1)) profile.pass = false;
  return ExampleCandidate{first, second, profile, std::move(joint_result.witness)};
}

/// Exhaustive reconstruction of the two-state, three-user examples: scans
/// all cross-link patterns (diagonals fixed) for pairs whose profile
/// passes. Output order is the scan order and is identical across runs;
/// pairs equivalent under simultaneous user relabeling are deduplicated
/// unless opts.dedup is off.
inline std::vector<ExampleCandidate> find_example_topologies(
    FieldSpec field, const ExampleSearchOptions& opts = {}) {
  constexpr int kStates = 64;  // 2^6 cross-link patterns
  std::vector<TopologyState> states;
  states.reserve(kStates);
  for (int bits = 0; bits < kStates; ++bits)
    states.push_back(TopologyState::from_cross_bits(3, bits));

  std::vector<bool> individual_ok(kStates, false);
  for (int i = 0; i < kStates; ++i) {
    Rational r = detail::individual_linear_rate(states[i], field, opts.budget,
                                                opts.guard);
    individual_ok[i] = (r == Rational(1));
    if (opts.progress && (i + 1) % 16 == 0)
      opts.progress("individual-rate scan: " + std::to_string(i + 1) + "/" +
                    std::to_string(kStates) + " states");
  }

  std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> pairwise_cache;
  auto cached_pairwise = [&](const TopologyState& a, const TopologyState& b,
                             std::size_t which) {
    const auto& pr = PairwiseRates::kPairs[which];
    TopologyState ia = a.induced(pr), ib = b.induced(pr);
    auto key = std::make_pair(ia.bits(), ib.bits());
    auto it = pairwise_cache.find(key);
    if (it != pairwise_cache.end()) return it->second;
    SearchSpec spec{sequence_of_states({ia, ib}), field};
    spec.max_symbols_per_tx = 2;
    spec.budget = opts.budget;
    spec.guard = opts.guard;
    Rational r = max_linear_rate(spec).best_rate;
    pairwise_cache.emplace(key, r);
    return r;
  };

  std::vector<ExampleCandidate> found;
  std::vector<std::uint64_t> seen_keys;
  for (int i = 0; i < kStates; ++i) {
    if (!individual_ok[i]) continue;
    for (int j = 0; j < kStates; ++j) {
      if (j == i || !individual_ok[j]) continue;
      SearchSpec joint{sequence_of_states({states[i], states[j]}), field};
      joint.max_symbols_per_tx = 1;
      joint.budget = opts.budget;
      joint.guard = opts.guard;
      SearchResult joint_result = max_linear_rate(joint);
      if (joint_result.best_rate < Rational(3, 2)) continue;
      bool pairwise_ok = true;
      std::array<Rational, 3> pw;
      for (std::size_t q = 0; q < 3; ++q) {
        pw[q] = cached_pairwise(states[i], states[j], q);
        if (pw[q] > Rational(1)) pairwise_ok = false;
      }
      if (!pairwise_ok) continue;
      if (opts.dedup) {
        std::uint64_t key = detail::canonical_pair_key(states[i], states[j]);
        bool dup = false;
        for (std::uint64_t k : seen_keys)
          if (k == key) {
            dup = true;
            break;
          }
        if (dup) continue;
        seen_keys.push_back(key);
      }
      DecodabilityReport recheck = worst_case_check(joint_result.witness, opts.guard);
      if (!recheck.verdict)
        throw std::logic_error("find_example_topologies: witness failed recheck");
      ExampleProfile profile;
      profile.individual = {Rational(1), Rational(1)};
      profile.joint = joint_result.best_rate;
      profile.pairwise = pw;
      profile.pass = true;
      found.push_back(ExampleCandidate{states[i], states[j], profile,
                                       std::move(joint_result.witness)});
      if (opts.progress)
        opts.progress("hit: pair (" + std::to_string(i) + "," + std::to_string(j) +
                      "), " + std::to_string(found.size()) + " found so far");
    }
    if (opts.progress && (i + 1) % 8 == 0)
      opts.progress("pair scan: " + std::to_string(i + 1) + "/" +
                    std::to_string(kStates) + " first states");
  }
  return found;
}

}  // namespace altnet
