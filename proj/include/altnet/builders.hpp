#pragma once

#include <array>
#include <vector>

#include "altnet/scheme.hpp"

namespace altnet {

/// Joint code over one A, one B and one C slot: 4 symbols in 3 uses, rate
/// 4/3. Transmitter 1 sends (a1, a2, a2), transmitter 2 sends
/// (b1, b2, b1); the repeated symbol is the one the other receiver
/// overhears, so each receiver ends up with 3 equations in 3 unknowns.
inline LinearScheme ic2_joint_abc_scheme(FieldSpec field) {
  StateSequence seq = sequence_of_two_user_ids(std::array{
      TwoUserStateId::A, TwoUserStateId::B, TwoUserStateId::C});
  MessageConfig config = MessageConfig::ic(2, {0, 0, 1, 1});
  LinearScheme s(field, seq, config);
  s.add_entry(0, 0, 0, 1);  // a1
  s.add_entry(0, 1, 1, 1);  // a2
  s.add_entry(0, 2, 1, 1);  // a2 again
  s.add_entry(1, 0, 2, 1);  // b1
  s.add_entry(1, 1, 3, 1);  // b2
  s.add_entry(1, 2, 2, 1);  // b1 again
  s.set_blocks({DecodeBlock{{0, 1, 2}, {0, 1, 2, 3}}});
  s.validate();
  return s;
}

/// Cooperative broadcast code over one A and one B slot: 3 symbols in 2
/// uses, rate 3/2. Symbol a1 is for receiver 1; b1, b2 are for receiver
/// 2. Transmitter 1 repeats b1 in the B slot, where receiver 1 hears it
/// cleanly and can cancel it from its A-slot observation.
inline LinearScheme bc2_joint_ab_scheme(FieldSpec field) {
  StateSequence seq = sequence_of_two_user_ids(
      std::array{TwoUserStateId::A, TwoUserStateId::B});
  MessageConfig config = MessageConfig::bc(2, {0, 1, 1});
  LinearScheme s(field, seq, config);
  s.add_entry(0, 0, 0, 1);  // a1
  s.add_entry(1, 0, 1, 1);  // b1
  s.add_entry(0, 1, 1, 1);  // b1, cooperative repeat
  s.add_entry(1, 1, 2, 1);  // b2
  s.set_blocks({DecodeBlock{{0, 1}, {0, 1, 2}}});
  s.validate();
  return s;
}

namespace detail {

/// Sorted block layout shared by all two-user schedules: all A slots,
/// then B, C, D (matching quota_sequence).
inline StateSequence sequence_of_counts(const std::array<int, 4>& counts) {
  std::vector<TwoUserStateId> ids;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < counts[i]; ++j) ids.push_back(kTwoUserStates[i]);
  return sequence_of_two_user_ids(ids);
}

/// Shared schedule for the interference and X configurations (the X case
/// simply drops the cross message groups, leaving the same symbol
/// placement). Full triples run the joint A/B/C code; D slots carry one
/// fresh symbol per user; leftover single-state slots carry one fresh
/// symbol from alternating transmitters, transmitter 1 first.
inline LinearScheme build_two_user_schedule(const std::array<int, 4>& counts,
                                            FieldSpec field, MessageMode mode) {
  const auto [ca, cb, cc, cd] = counts;
  int j_groups = std::min({ca, cb, cc});

  struct Slot {
    int index;
    int tx;  // active transmitter for single-symbol slots
  };
  std::vector<std::array<int, 3>> triples;
  std::vector<Slot> singles;
  std::vector<int> d_slots;
  int a0 = 0, b0 = ca, c0 = ca + cb, d0 = ca + cb + cc;
  for (int j = 0; j < j_groups; ++j)
    triples.push_back({a0 + j, b0 + j, c0 + j});
  for (int j = j_groups; j < ca; ++j) singles.push_back({a0 + j, 0});
  for (int j = j_groups; j < cb; ++j) singles.push_back({b0 + j, 0});
  for (int j = j_groups; j < cc; ++j) singles.push_back({c0 + j, 0});
  for (std::size_t i = 0; i < singles.size(); ++i)
    singles[i].tx = static_cast<int>(i % 2);
  for (int j = 0; j < cd; ++j) d_slots.push_back(d0 + j);

  std::vector<int> origin;
  auto push_symbols = [&](std::initializer_list<int> owners) {
    int first = static_cast<int>(origin.size());
    for (int o : owners) origin.push_back(o);
    return first;
  };

  struct Entry {
    int tx, slot, symbol;
  };
  std::vector<Entry> entries;
  std::vector<DecodeBlock> blocks;

  for (const auto& tri : triples) {
    int base = push_symbols({0, 0, 1, 1});
    entries.push_back({0, tri[0], base + 0});
    entries.push_back({0, tri[1], base + 1});
    entries.push_back({0, tri[2], base + 1});
    entries.push_back({1, tri[0], base + 2});
    entries.push_back({1, tri[1], base + 3});
    entries.push_back({1, tri[2], base + 2});
    blocks.push_back({{tri[0], tri[1], tri[2]}, {base, base + 1, base + 2, base + 3}});
  }
  for (const auto& slot : singles) {
    int base = push_symbols({slot.tx});
    entries.push_back({slot.tx, slot.index, base});
    blocks.push_back({{slot.index}, {base}});
  }
  for (int slot : d_slots) {
    int base = push_symbols({0, 1});
    entries.push_back({0, slot, base});
    entries.push_back({1, slot, base + 1});
    blocks.push_back({{slot}, {base, base + 1}});
  }

  MessageConfig config;
  if (mode == MessageMode::IC) {
    config = MessageConfig::ic(2, origin);
  } else {
    std::vector<std::pair<int, int>> groups;
    for (int o : origin) groups.emplace_back(o, o);  // W11 / W22 only
    config = MessageConfig::x(2, groups);
  }
  LinearScheme s(field, sequence_of_counts(counts), config);
  for (const auto& e : entries) s.add_entry(e.tx, e.slot, e.symbol, 1);
  s.set_blocks(std::move(blocks));
  s.validate();
  return s;
}

}  // namespace detail

/// Interference-channel schedule realizing 1 + lambda_D + min(lambda_A,
/// lambda_B, lambda_C) as n grows; the finite-n rate is
/// (n + count_D + joint_triples) / n.
inline LinearScheme ic2_schedule_from_counts(const std::array<int, 4>& counts,
                                             FieldSpec field) {
  return detail::build_two_user_schedule(counts, field, MessageMode::IC);
}

inline LinearScheme ic2_schedule(const StateFractions& f, int n, FieldSpec field) {
  return ic2_schedule_from_counts(quota_counts(f, n), field);
}

/// X-channel schedule: the interference schedule with the cross message
/// groups left empty.
inline LinearScheme x2_schedule_from_counts(const std::array<int, 4>& counts,
                                            FieldSpec field) {
  return detail::build_two_user_schedule(counts, field, MessageMode::X);
}

inline LinearScheme x2_schedule(const StateFractions& f, int n, FieldSpec field) {
  return x2_schedule_from_counts(quota_counts(f, n), field);
}

/// Broadcast schedule: A slots pair with B slots to run the cooperative
/// joint code; unpaired A/B and C slots carry one symbol for receiver 1
/// over transmitter 1 (its direct link is always present); D slots carry
/// one symbol per receiver. Finite-n rate (n + min(count_A, count_B) +
/// count_D) / n, approaching 1 + lambda_A + lambda_D when lambda_A =
/// lambda_B.
inline LinearScheme bc2_schedule_from_counts(const std::array<int, 4>& counts,
                                             FieldSpec field) {
  const auto [ca, cb, cc, cd] = counts;
  int pairs = std::min(ca, cb);
  int a0 = 0, b0 = ca, c0 = ca + cb, d0 = ca + cb + cc;

  std::vector<int> desired;
  auto push_symbols = [&](std::initializer_list<int> rxs) {
    int first = static_cast<int>(desired.size());
    for (int r : rxs) desired.push_back(r);
    return first;
  };
  struct Entry {
    int tx, slot, symbol;
  };
  std::vector<Entry> entries;
  std::vector<DecodeBlock> blocks;

  for (int j = 0; j < pairs; ++j) {
    int sa = a0 + j, sb = b0 + j;
    int base = push_symbols({0, 1, 1});
    entries.push_back({0, sa, base + 0});
    entries.push_back({1, sa, base + 1});
    entries.push_back({0, sb, base + 1});
    entries.push_back({1, sb, base + 2});
    blocks.push_back({{sa, sb}, {base, base + 1, base + 2}});
  }
  std::vector<int> single_slots;
  for (int j = pairs; j < ca; ++j) single_slots.push_back(a0 + j);
  for (int j = pairs; j < cb; ++j) single_slots.push_back(b0 + j);
  for (int j = 0; j < cc; ++j) single_slots.push_back(c0 + j);
  for (int slot : single_slots) {
    int base = push_symbols({0});
    entries.push_back({0, slot, base});
    blocks.push_back({{slot}, {base}});
  }
  for (int j = 0; j < cd; ++j) {
    int slot = d0 + j;
    int base = push_symbols({0, 1});
    entries.push_back({0, slot, base});
    entries.push_back({1, slot, base + 1});
    blocks.push_back({{slot}, {base, base + 1}});
  }

  LinearScheme s(field, detail::sequence_of_counts(counts), MessageConfig::bc(2, desired));
  for (const auto& e : entries) s.add_entry(e.tx, e.slot, e.symbol, 1);
  s.set_blocks(std::move(blocks));
  s.validate();
  return s;
}

inline LinearScheme bc2_schedule(const StateFractions& f, int n, FieldSpec field) {
  return bc2_schedule_from_counts(quota_counts(f, n), field);
}

/// Per-transmitter activity pattern for the 3-user two-state codes: in
/// which of the two slots each transmitter repeats its single symbol.
struct Ic3Assignment {
  std::array<bool, 2> active_slots_tx0;
  std::array<bool, 2> active_slots_tx1;
  std::array<bool, 2> active_slots_tx2;

  const std::array<bool, 2>& of(int tx) const {
    switch (tx) {
      case 0: return active_slots_tx0;
      case 1: return active_slots_tx1;
      case 2: return active_slots_tx2;
    }
    throw std::invalid_argument("Ic3Assignment: bad transmitter");
  }
};

/// Three users, one symbol each, two slots shared between two topology
/// states; rate 3/2 by construction. Whether the result decodes is the
/// verifier's business.
inline LinearScheme ic3_candidate_scheme(const TopologyState& first,
                                         const TopologyState& second,
                                         const Ic3Assignment& assignment,
                                         FieldSpec field) {
  if (first.users() != 3 || second.users() != 3)
    throw std::invalid_argument("ic3_candidate_scheme: wants 3-user states");
  StateSequence seq = sequence_of_states({first, second});
  LinearScheme s(field, seq, MessageConfig::ic(3, {0, 1, 2}));
  for (int t = 0; t < 3; ++t) {
    const auto& slots = assignment.of(t);
    if (!slots[0] && !slots[1])
      throw std::invalid_argument(
          "ic3_candidate_scheme: transmitter " + std::to_string(t) +
          " never transmits its symbol");
    for (int slot = 0; slot < 2; ++slot)
      if (slots[slot]) s.add_entry(t, slot, t, 1);
  }
  s.set_blocks({DecodeBlock{{0, 1}, {0, 1, 2}}});
  s.validate();
  return s;
}

}  // namespace altnet
