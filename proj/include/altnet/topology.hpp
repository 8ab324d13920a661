#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "altnet/rational.hpp"
#include "altnet/util.hpp"

namespace altnet {

/// Connectivity at one channel use: present(r, t) says whether the link
/// from transmitter t into receiver r exists. Direct links (the diagonal)
/// are always present.
class TopologyState {
 public:
  TopologyState(int k, std::vector<std::uint8_t> present)
      : k_(k), present_(std::move(present)) {
    if (k < 1) throw std::invalid_argument("TopologyState: need at least one user");
    if (present_.size() != static_cast<std::size_t>(k) * k)
      throw std::invalid_argument("TopologyState: grid size mismatch");
    for (int i = 0; i < k; ++i)
      if (!link(i, i))
        throw std::invalid_argument("TopologyState: direct link missing at user " +
                                    std::to_string(i));
  }

  static TopologyState fully_connected(int k) {
    return TopologyState(k, std::vector<std::uint8_t>(static_cast<std::size_t>(k) * k, 1));
  }

  static TopologyState interference_free(int k) {
    std::vector<std::uint8_t> g(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i) g[static_cast<std::size_t>(i) * k + i] = 1;
    return TopologyState(k, std::move(g));
  }

  /// Builds the k-user state whose off-diagonal links are given by `bits`,
  /// enumerated row-major over the k*(k-1) off-diagonal positions.
  static TopologyState from_cross_bits(int k, std::uint64_t bits) {
    std::vector<std::uint8_t> g(static_cast<std::size_t>(k) * k, 0);
    int pos = 0;
    for (int r = 0; r < k; ++r)
      for (int t = 0; t < k; ++t) {
        if (r == t) {
          g[static_cast<std::size_t>(r) * k + t] = 1;
        } else {
          g[static_cast<std::size_t>(r) * k + t] =
              static_cast<std::uint8_t>((bits >> pos) & 1);
          ++pos;
        }
      }
    return TopologyState(k, std::move(g));
  }

  int users() const { return k_; }
  bool link(int rx, int tx) const {
    return present_[static_cast<std::size_t>(rx) * k_ + tx] != 0;
  }
  int link_count() const {
    int n = 0;
    for (auto b : present_) n += b ? 1 : 0;
    return n;
  }

  /// Row-major bit encoding of the full grid; usable as a cache key.
  std::uint64_t bits() const {
    if (k_ > 8) throw std::logic_error("TopologyState::bits: k too large");
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < present_.size(); ++i)
      if (present_[i]) b |= std::uint64_t{1} << i;
    return b;
  }

  /// Simultaneous relabeling of users: new user i is old user perm[i].
  TopologyState relabeled(std::span<const int> perm) const {
    std::vector<std::uint8_t> g(present_.size());
    for (int r = 0; r < k_; ++r)
      for (int t = 0; t < k_; ++t)
        g[static_cast<std::size_t>(r) * k_ + t] =
            present_[static_cast<std::size_t>(perm[r]) * k_ + perm[t]] ? 1 : 0;
    return TopologyState(k_, std::move(g));
  }

  /// Restriction to a subset of users (the rest silenced and ignored).
  TopologyState induced(std::span<const int> users) const {
    int k = static_cast<int>(users.size());
    std::vector<std::uint8_t> g(static_cast<std::size_t>(k) * k);
    for (int r = 0; r < k; ++r)
      for (int t = 0; t < k; ++t)
        g[static_cast<std::size_t>(r) * k + t] = link(users[r], users[t]) ? 1 : 0;
    return TopologyState(k, std::move(g));
  }

  std::string grid_text() const {
    std::string out;
    for (int r = 0; r < k_; ++r) {
      for (int t = 0; t < k_; ++t) out.push_back(link(r, t) ? '1' : '0');
      out.push_back('\n');
    }
    return out;
  }

  friend bool operator==(const TopologyState& a, const TopologyState& b) {
    return a.k_ == b.k_ && a.present_ == b.present_;
  }
  friend bool operator!=(const TopologyState& a, const TopologyState& b) {
    return !(a == b);
  }

 private:
  int k_;
  std::vector<std::uint8_t> present_;
};

/// The four two-user states. A: only the cross link into receiver 1
/// exists; B is its mirror; C has both cross links; D has neither.
enum class TwoUserStateId { A, B, C, D };

inline constexpr std::array<TwoUserStateId, 4> kTwoUserStates = {
    TwoUserStateId::A, TwoUserStateId::B, TwoUserStateId::C, TwoUserStateId::D};

inline char to_char(TwoUserStateId id) {
  switch (id) {
    case TwoUserStateId::A: return 'A';
    case TwoUserStateId::B: return 'B';
    case TwoUserStateId::C: return 'C';
    case TwoUserStateId::D: return 'D';
  }
  throw std::logic_error("bad TwoUserStateId");
}

inline TwoUserStateId two_user_state_from_char(char c) {
  switch (c) {
    case 'A': case 'a': return TwoUserStateId::A;
    case 'B': case 'b': return TwoUserStateId::B;
    case 'C': case 'c': return TwoUserStateId::C;
    case 'D': case 'd': return TwoUserStateId::D;
    default:
      throw std::invalid_argument(std::string("unknown state '") + c +
                                  "' (want A, B, C or D)");
  }
}

inline TopologyState two_user_state(TwoUserStateId id) {
  auto make = [](bool cross_to_rx1, bool cross_to_rx2) {
    return TopologyState(2, {1, static_cast<std::uint8_t>(cross_to_rx1),
                             static_cast<std::uint8_t>(cross_to_rx2), 1});
  };
  switch (id) {
    case TwoUserStateId::A: return make(true, false);
    case TwoUserStateId::B: return make(false, true);
    case TwoUserStateId::C: return make(true, true);
    case TwoUserStateId::D: return make(false, false);
  }
  throw std::logic_error("bad TwoUserStateId");
}

/// Exact fractions of time spent in the two-user states A..D. Fractions
/// must be nonnegative rationals summing to one; they are parsed from
/// "num/den" strings only, never from decimals.
class StateFractions {
 public:
  StateFractions(Rational a, Rational b, Rational c, Rational d)
      : vals_{a, b, c, d} {
    Rational sum(0);
    for (const auto& v : vals_) {
      if (v < Rational(0))
        throw std::invalid_argument("StateFractions: negative fraction " + v.str());
      sum += v;
    }
    if (sum != Rational(1))
      throw std::invalid_argument("StateFractions: fractions sum to " + sum.str() +
                                  ", expected 1");
  }

  /// Parses a comma-separated list "1/3,1/3,1/3,0" in A,B,C,D order.
  static StateFractions parse(std::string_view text) {
    std::array<Rational, 4> vals;
    std::size_t start = 0;
    for (int i = 0; i < 4; ++i) {
      std::size_t comma = text.find(',', start);
      bool last = (i == 3);
      if (last != (comma == std::string_view::npos))
        throw std::invalid_argument(
            "StateFractions: expected 4 comma-separated rationals");
      std::string_view part =
          text.substr(start, last ? std::string_view::npos : comma - start);
      vals[i] = Rational::parse(part);
      start = comma + 1;
    }
    return StateFractions(vals[0], vals[1], vals[2], vals[3]);
  }

  const Rational& of(TwoUserStateId id) const {
    return vals_[static_cast<int>(id)];
  }
  const Rational& a() const { return vals_[0]; }
  const Rational& b() const { return vals_[1]; }
  const Rational& c() const { return vals_[2]; }
  const Rational& d() const { return vals_[3]; }

  std::string str() const {
    return vals_[0].str() + "," + vals_[1].str() + "," + vals_[2].str() + "," +
           vals_[3].str();
  }

 private:
  std::array<Rational, 4> vals_;
};

/// A block's worth of channel uses: per slot an index into a small
/// alphabet of defined topology states.
struct StateSequence {
  std::vector<TopologyState> alphabet;
  std::vector<int> slots;

  int length() const { return static_cast<int>(slots.size()); }
  int users() const {
    if (alphabet.empty()) throw std::logic_error("StateSequence: empty alphabet");
    return alphabet[0].users();
  }
  const TopologyState& state_at(int slot) const { return alphabet[slots[slot]]; }

  void validate() const {
    if (alphabet.empty() || slots.empty())
      throw std::invalid_argument("StateSequence: must have at least one slot");
    int k = alphabet[0].users();
    for (const auto& s : alphabet)
      if (s.users() != k)
        throw std::invalid_argument("StateSequence: alphabet user counts differ");
    for (int id : slots)
      if (id < 0 || id >= static_cast<int>(alphabet.size()))
        throw std::invalid_argument("StateSequence: slot references undefined state");
  }

  friend bool operator==(const StateSequence& x, const StateSequence& y) {
    return x.alphabet == y.alphabet && x.slots == y.slots;
  }
};

inline StateSequence sequence_of_two_user_ids(std::span<const TwoUserStateId> ids) {
  StateSequence seq;
  for (TwoUserStateId s : kTwoUserStates) seq.alphabet.push_back(two_user_state(s));
  for (TwoUserStateId id : ids) seq.slots.push_back(static_cast<int>(id));
  seq.validate();
  return seq;
}

inline StateSequence sequence_of_states(std::vector<TopologyState> states) {
  StateSequence seq;
  for (auto& s : states) {
    int found = -1;
    for (std::size_t i = 0; i < seq.alphabet.size(); ++i)
      if (seq.alphabet[i] == s) { found = static_cast<int>(i); break; }
    if (found < 0) {
      seq.alphabet.push_back(s);
      found = static_cast<int>(seq.alphabet.size()) - 1;
    }
    seq.slots.push_back(found);
  }
  seq.validate();
  return seq;
}

/// Per-state slot counts for a length-n block: floor(lambda*n) each, and
/// the remaining slots go to the largest fractional parts (ties resolved
/// in A, B, C, D order). Every count is within 1 of lambda*n.
inline std::array<int, 4> quota_counts(const StateFractions& f, int n) {
  if (n < 1) throw std::invalid_argument("quota_counts: n must be >= 1");
  std::array<int, 4> counts{};
  std::array<Rational, 4> fracs;
  int assigned = 0;
  for (int i = 0; i < 4; ++i) {
    Rational target = f.of(kTwoUserStates[i]) * Rational(n);
    std::int64_t floor = target.num() / target.den();
    counts[i] = static_cast<int>(floor);
    fracs[i] = target - Rational(floor);
    assigned += counts[i];
  }
  int remainder = n - assigned;
  std::array<int, 4> order = {0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return fracs[x] > fracs[y]; });
  for (int i = 0; i < remainder; ++i) counts[order[i]] += 1;
  return counts;
}

/// Deterministic block layout: all A slots, then B, C, D.
inline StateSequence quota_sequence(const StateFractions& f, int n) {
  auto counts = quota_counts(f, n);
  std::vector<TwoUserStateId> ids;
  ids.reserve(n);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < counts[i]; ++j) ids.push_back(kTwoUserStates[i]);
  return sequence_of_two_user_ids(ids);
}

/// I.i.d. state draws for Monte Carlo runs. Exact: a slot lands on state
/// s with probability lambda_s (integer weights over a common
/// denominator, rejection-sampled).
inline StateSequence iid_sequence(const StateFractions& f, int n,
                                  std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("iid_sequence: n must be >= 1");
  __int128 den128 = 1;
  for (TwoUserStateId s : kTwoUserStates) {
    std::int64_t d = f.of(s).den();
    den128 = den128 / std::gcd(static_cast<std::int64_t>(den128 % d), d) * d;
    if (den128 > (std::int64_t{1} << 62))
      throw std::invalid_argument(
          "iid_sequence: common denominator of the fractions is too large");
  }
  std::int64_t den = static_cast<std::int64_t>(den128);
  std::array<std::int64_t, 4> weights;
  for (int i = 0; i < 4; ++i) {
    const Rational& v = f.of(kTwoUserStates[i]);
    weights[i] = v.num() * (den / v.den());
  }
  std::mt19937_64 rng(seed);
  std::vector<TwoUserStateId> ids;
  ids.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::int64_t draw =
        static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(den)));
    int pick = 3;
    for (int s = 0; s < 4; ++s) {
      if (draw < weights[s]) { pick = s; break; }
      draw -= weights[s];
    }
    ids.push_back(kTwoUserStates[pick]);
  }
  return sequence_of_two_user_ids(ids);
}

/// Plain-text grid format: one state per block, k lines of k characters
/// ('1'/'0', rows = receivers), blocks separated by blank lines. Lines
/// starting with '#' are comments. The diagonal must be '1'.
inline std::vector<TopologyState> parse_topology_blocks(std::istream& in) {
  std::vector<TopologyState> states;
  std::vector<std::string> block;
  int line_no = 0, block_start = 0;
  auto flush = [&]() {
    if (block.empty()) return;
    int k = static_cast<int>(block.size());
    std::vector<std::uint8_t> grid;
    for (int r = 0; r < k; ++r) {
      if (static_cast<int>(block[r].size()) != k)
        throw ParseError(block_start + r,
                         "grid row has " + std::to_string(block[r].size()) +
                             " characters, expected " + std::to_string(k));
      for (char c : block[r]) {
        if (c != '0' && c != '1')
          throw ParseError(block_start + r,
                           std::string("bad character '") + c + "' in grid row");
        grid.push_back(c == '1' ? 1 : 0);
      }
    }
    try {
      states.emplace_back(k, std::move(grid));
    } catch (const std::invalid_argument& e) {
      throw ParseError(block_start, e.what());
    }
    block.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;
    std::size_t end = line.find_last_not_of(" \t");
    std::string trimmed = end == std::string::npos ? "" : line.substr(0, end + 1);
    if (trimmed.empty()) {
      flush();
    } else {
      if (block.empty()) block_start = line_no;
      block.push_back(trimmed);
    }
  }
  flush();
  if (states.empty()) throw ParseError(line_no, "no topology blocks found");
  return states;
}

inline std::vector<TopologyState> parse_topology_blocks(const std::string& text) {
  std::istringstream in(text);
  return parse_topology_blocks(in);
}

inline std::string format_topology_blocks(std::span<const TopologyState> states) {
  std::string out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) out.push_back('\n');
    out += states[i].grid_text();
  }
  return out;
}

}  // namespace altnet
