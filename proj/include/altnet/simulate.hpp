#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "altnet/builders.hpp"
#include "altnet/formulas.hpp"
#include "altnet/oracle.hpp"
#include "altnet/util.hpp"
#include "altnet/verifier.hpp"

namespace altnet {

enum class Scenario { Ic2, X2, Bc2, Ic3Example };

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::Ic2: return "ic2";
    case Scenario::X2: return "x2";
    case Scenario::Bc2: return "bc2";
    case Scenario::Ic3Example: return "ic3-example";
  }
  throw std::logic_error("bad Scenario");
}

inline Scenario scenario_from_string(const std::string& s) {
  if (s == "ic2") return Scenario::Ic2;
  if (s == "x2") return Scenario::X2;
  if (s == "bc2") return Scenario::Bc2;
  if (s == "ic3-example") return Scenario::Ic3Example;
  throw std::invalid_argument("unknown scenario \"" + s + "\"");
}

enum class SequenceMode { Quota, Iid };

inline const char* to_string(SequenceMode m) {
  return m == SequenceMode::Quota ? "quota" : "iid";
}

inline SequenceMode sequence_mode_from_string(const std::string& s) {
  if (s == "quota") return SequenceMode::Quota;
  if (s == "iid") return SequenceMode::Iid;
  throw std::invalid_argument("unknown sequence mode \"" + s + "\"");
}

struct SimConfig {
  Scenario scenario = Scenario::Ic2;
  std::optional<StateFractions> fractions;  // required except for ic3-example
  std::int64_t p = 3;
  int n = 1;
  std::uint64_t seed = 0;
  SequenceMode sequence_mode = SequenceMode::Quota;
  CheckMode decodability = CheckMode::WorstCase;
  // ic3-example: the two alternating 3-user states.
  std::optional<std::pair<TopologyState, TopologyState>> ic3_pair;

  std::string canonical_string() const {
    std::ostringstream out;
    out << "scenario=" << to_string(scenario);
    out << ";lambda=" << (fractions ? fractions->str() : "-");
    out << ";p=" << p << ";n=" << n << ";seed=" << seed;
    out << ";sequence=" << to_string(sequence_mode);
    out << ";decodability=" << to_string(decodability);
    if (ic3_pair) {
      out << ";pair=" << ic3_pair->first.bits() << "," << ic3_pair->second.bits();
    }
    return out.str();
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("SimConfig: n must be >= 1");
    if (scenario == Scenario::Ic3Example) {
      if (!ic3_pair)
        throw std::invalid_argument("SimConfig: ic3-example needs a topology pair");
    } else if (!fractions) {
      throw std::invalid_argument("SimConfig: scenario needs state fractions");
    }
  }
};

/// End-to-end result of one simulated block, with the formula value the
/// schedule chases and full provenance for reproducibility.
struct RateReport {
  Rational achieved;
  std::optional<Rational> formula;
  std::optional<BoundSet> bounds;
  std::optional<Rational> gap;  // formula - achieved
  std::uint64_t decode_failures = 0;
  int symbols_total = 0;
  int symbols_decoded = 0;
  double runtime_seconds = 0;
  // provenance
  std::uint64_t seed = 0;
  std::string config_string;
  std::string config_hash;
  std::string rng_id = kSeedAlgorithmId;
  bool offline_scheduling = true;  // schedules see the whole realized block
  bool field_meets_preconditions = true;
  std::string note;
};

namespace detail {

inline std::array<int, 4> realized_counts(const StateSequence& seq) {
  std::array<int, 4> counts{};
  for (int s = 0; s < seq.length(); ++s) {
    const TopologyState& st = seq.state_at(s);
    bool to1 = st.link(0, 1), to2 = st.link(1, 0);
    if (to1 && to2) ++counts[2];
    else if (to1) ++counts[0];
    else if (to2) ++counts[1];
    else ++counts[3];
  }
  return counts;
}

/// Repeats a verified 2-slot, 3-symbol witness across floor(n/2) blocks;
/// an odd final slot carries one fresh symbol from transmitter 1.
inline LinearScheme repeat_ic3_witness(const LinearScheme& witness, int n) {
  int pairs = n / 2;
  bool odd = n % 2 != 0;
  if (pairs < 1) pairs = 0;
  std::vector<TopologyState> states;
  for (int j = 0; j < pairs; ++j) {
    states.push_back(witness.seq().state_at(0));
    states.push_back(witness.seq().state_at(1));
  }
  if (odd || pairs == 0) states.push_back(witness.seq().state_at(0));
  StateSequence seq = sequence_of_states(states);

  std::vector<int> origin;
  struct Entry {
    int tx, slot, symbol;
    std::int64_t coeff;
  };
  std::vector<Entry> entries;
  std::vector<DecodeBlock> blocks;
  for (int j = 0; j < pairs; ++j) {
    int base = static_cast<int>(origin.size());
    for (int t = 0; t < 3; ++t) origin.push_back(t);
    DecodeBlock block{{2 * j, 2 * j + 1}, {base, base + 1, base + 2}};
    for (int t = 0; t < 3; ++t)
      for (int slot = 0; slot < 2; ++slot)
        for (auto [sym, c] : witness.entries(t, slot))
          entries.push_back({t, 2 * j + slot, base + sym, c});
    blocks.push_back(std::move(block));
  }
  if (odd || pairs == 0) {
    int base = static_cast<int>(origin.size());
    origin.push_back(0);
    int slot = seq.length() - 1;
    entries.push_back({0, slot, base, 1});
    blocks.push_back({{slot}, {base}});
  }
  LinearScheme s(witness.field(), seq, MessageConfig::ic(3, origin));
  for (const auto& e : entries) s.add_entry(e.tx, e.slot, e.symbol, e.coeff);
  s.set_blocks(std::move(blocks));
  s.validate();
  return s;
}

}  // namespace detail

/// Builds the scenario's schedule over the (quota or realized-i.i.d.)
/// block, runs one seeded realization with random messages end to end,
/// and reports the achieved sum rate next to the formula value. Message
/// symbols draw from a stream seeded with seed xor golden-ratio so they
/// are independent of the coefficient draws.
inline RateReport run_simulation(const SimConfig& config) {
  Stopwatch watch;
  config.validate();
  FieldSpec field(config.p);

  LinearScheme scheme = [&]() -> LinearScheme {
    if (config.scenario == Scenario::Ic3Example) {
      SearchSpec joint{sequence_of_states({config.ic3_pair->first,
                                           config.ic3_pair->second}),
                       field};
      joint.max_symbols_per_tx = 1;
      SearchResult found = max_linear_rate(joint);
      if (found.best_rate < Rational(3, 2))
        throw std::invalid_argument(
            "run_simulation: topology pair has no rate-3/2 joint scheme (best " +
            found.best_rate.str() + ")");
      return detail::repeat_ic3_witness(found.witness, config.n);
    }
    std::array<int, 4> counts =
        config.sequence_mode == SequenceMode::Quota
            ? quota_counts(*config.fractions, config.n)
            : detail::realized_counts(
                  iid_sequence(*config.fractions, config.n, config.seed));
    switch (config.scenario) {
      case Scenario::Ic2: return ic2_schedule_from_counts(counts, field);
      case Scenario::X2: return x2_schedule_from_counts(counts, field);
      case Scenario::Bc2: return bc2_schedule_from_counts(counts, field);
      default: throw std::logic_error("unreachable");
    }
  }();

  ChannelRealization real = sample_realization(scheme.seq(), field, config.seed);
  std::mt19937_64 msg_rng(config.seed ^ 0x9E3779B97F4A7C15ull);
  std::vector<std::int64_t> s(scheme.symbol_count());
  for (auto& v : s)
    v = static_cast<std::int64_t>(
        uniform_below(msg_rng, static_cast<std::uint64_t>(config.p)));

  // Observations Y_r(slot) = sum_t h X_t.
  auto x = encode(scheme, s);
  std::int64_t p = config.p;
  std::vector<std::vector<std::int64_t>> y(
      scheme.users(), std::vector<std::int64_t>(scheme.slot_count(), 0));
  for (int r = 0; r < scheme.users(); ++r)
    for (int slot = 0; slot < scheme.slot_count(); ++slot) {
      std::int64_t acc = 0;
      for (int t = 0; t < scheme.users(); ++t)
        acc = gf::add(acc, gf::mul(real.coeff(slot, r, t), x[slot][t], p), p);
      y[r][slot] = acc;
    }

  RateReport report;
  report.symbols_total = scheme.symbol_count();
  const auto& desired_rx = scheme.config().desired_rx;
  for (const DecodeBlock& block : scheme.blocks()) {
    std::vector<int> rx_here;
    for (int sym : block.symbols) {
      int rx = desired_rx[sym];
      if (rx >= 0 && std::find(rx_here.begin(), rx_here.end(), rx) == rx_here.end())
        rx_here.push_back(rx);
    }
    for (int rx : rx_here) {
      std::vector<int> wanted_local;
      for (std::size_t i = 0; i < block.symbols.size(); ++i)
        if (desired_rx[block.symbols[i]] == rx)
          wanted_local.push_back(static_cast<int>(i));
      Matrix local = block_effective_matrix(scheme, real, rx, block);
      std::vector<std::int64_t> local_y;
      for (int slot : block.slots) local_y.push_back(y[rx][slot]);
      auto solved = solve_for(local, local_y, wanted_local);
      for (auto& [local_idx, value] : solved) {
        int sym = block.symbols[local_idx];
        if (!value.has_value()) {
          ++report.decode_failures;
          continue;
        }
        if (value->value() != s[sym])
          throw std::logic_error(
              "run_simulation: decoded value disagrees with ground truth");
        ++report.symbols_decoded;
      }
    }
  }
  if (report.decode_failures > 0 && config.decodability == CheckMode::WorstCase)
    throw std::logic_error(
        "run_simulation: decode failure in a worst-case-certified schedule "
        "(implementation bug)");

  report.achieved = Rational(report.symbols_decoded, scheme.slot_count());
  try {
    switch (config.scenario) {
      case Scenario::Ic2:
        report.formula = ic2_sum_capacity(*config.fractions);
        report.bounds = ic2_outer_bounds(*config.fractions);
        break;
      case Scenario::X2:
        report.formula = x2_sum_capacity(*config.fractions);
        report.bounds = ic2_outer_bounds(*config.fractions);
        break;
      case Scenario::Bc2:
        report.formula = bc2_sum_capacity(*config.fractions);
        break;
      case Scenario::Ic3Example:
        report.formula = Rational(3, 2);
        break;
    }
  } catch (const TheoremPreconditionError& e) {
    report.note = std::string("formula undefined: ") + e.what();
  }
  if (report.formula) report.gap = *report.formula - report.achieved;
  report.seed = config.seed;
  report.config_string = config.canonical_string();
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(report.config_string)));
  report.config_hash = hex;
  report.field_meets_preconditions = field.meets_capacity_preconditions();
  report.runtime_seconds = watch.seconds();
  return report;
}

}  // namespace altnet
