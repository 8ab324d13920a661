#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "altnet/field.hpp"
#include "altnet/topology.hpp"
#include "altnet/util.hpp"

namespace altnet {

inline constexpr std::uint64_t kDefaultEnumerationGuard = 10'000'000;

/// Raised when an exhaustive pass would visit more realizations than the
/// guard allows. `count` is the realization count (saturated at 2^64-1).
class GuardExceededError : public std::runtime_error {
 public:
  GuardExceededError(std::uint64_t count, std::uint64_t guard)
      : std::runtime_error(
            "too-large-to-enumerate: " + std::to_string(count) +
            " realizations exceed the guard of " + std::to_string(guard) +
            "; use a sampled check (generic_check) instead"),
        count(count) {}
  std::uint64_t count;
};

/// Concrete channel coefficients for every slot of a state sequence:
/// nonzero exactly on the links the slot's topology keeps, zero elsewhere.
class ChannelRealization {
 public:
  ChannelRealization(FieldSpec field, const StateSequence& seq)
      : field_(field), users_(seq.users()), slots_(seq.length()),
        h_(static_cast<std::size_t>(slots_) * users_ * users_, 0) {}

  const FieldSpec& field() const { return field_; }
  int users() const { return users_; }
  int slot_count() const { return slots_; }

  std::int64_t coeff(int slot, int rx, int tx) const { return h_[index(slot, rx, tx)]; }
  void set_coeff(int slot, int rx, int tx, std::int64_t v) {
    if (v < 0 || v >= field_.p())
      throw std::invalid_argument("ChannelRealization: coefficient out of range");
    h_[index(slot, rx, tx)] = v;
  }

  /// The defining support invariant; every construction path asserts it.
  void validate_support(const StateSequence& seq) const {
    if (seq.length() != slots_ || seq.users() != users_)
      throw std::invalid_argument("ChannelRealization: sequence shape mismatch");
    for (int s = 0; s < slots_; ++s) {
      const TopologyState& st = seq.state_at(s);
      for (int r = 0; r < users_; ++r)
        for (int t = 0; t < users_; ++t) {
          std::int64_t v = coeff(s, r, t);
          if (st.link(r, t) ? v == 0 : v != 0)
            throw std::invalid_argument(
                "ChannelRealization: support mismatch at slot " + std::to_string(s) +
                ", link (" + std::to_string(r) + "," + std::to_string(t) + ")");
        }
    }
  }

  friend bool operator==(const ChannelRealization& a, const ChannelRealization& b) {
    return a.field_ == b.field_ && a.users_ == b.users_ && a.slots_ == b.slots_ &&
           a.h_ == b.h_;
  }

 private:
  std::size_t index(int slot, int rx, int tx) const {
    return (static_cast<std::size_t>(slot) * users_ + rx) * users_ + tx;
  }

  FieldSpec field_;
  int users_, slots_;
  std::vector<std::int64_t> h_;
};

/// Draws coefficients from an already-running stream: each present link,
/// visited in (slot, receiver, transmitter) order, gets an independent
/// uniform value among the p-1 nonzero elements.
inline ChannelRealization draw_realization(const StateSequence& seq, FieldSpec field,
                                           std::mt19937_64& rng) {
  seq.validate();
  ChannelRealization real(field, seq);
  std::uint64_t nonzero = static_cast<std::uint64_t>(field.p()) - 1;
  for (int s = 0; s < seq.length(); ++s) {
    const TopologyState& st = seq.state_at(s);
    for (int r = 0; r < seq.users(); ++r)
      for (int t = 0; t < seq.users(); ++t)
        if (st.link(r, t))
          real.set_coeff(s, r, t,
                         1 + static_cast<std::int64_t>(uniform_below(rng, nonzero)));
  }
  real.validate_support(seq);
  return real;
}

inline ChannelRealization sample_realization(const StateSequence& seq,
                                             FieldSpec field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return draw_realization(seq, field, rng);
}

/// Number of realizations of a sequence, (p-1)^(present links), saturated
/// at 2^64-1.
inline std::uint64_t realization_count(const StateSequence& seq, FieldSpec field) {
  std::uint64_t base = static_cast<std::uint64_t>(field.p()) - 1;
  std::uint64_t total = 1;
  for (int s = 0; s < seq.length(); ++s) {
    for (int i = 0; i < seq.state_at(s).link_count(); ++i) {
      if (base != 0 && total > UINT64_MAX / base) return UINT64_MAX;
      total *= base;
    }
  }
  return total;
}

/// Streams every realization of a sequence exactly once, in lexicographic
/// order of the link-value tuple taken in (slot, receiver, transmitter)
/// order with the last link varying fastest. Supports seeking so the
/// index range can be split into shards.
class RealizationEnumerator {
 public:
  RealizationEnumerator(const StateSequence& seq, FieldSpec field,
                        std::uint64_t guard = kDefaultEnumerationGuard)
      : field_(field), total_(realization_count(seq, field)) {
    seq.validate();
    if (total_ > guard) throw GuardExceededError(total_, guard);
    for (int s = 0; s < seq.length(); ++s) {
      const TopologyState& st = seq.state_at(s);
      for (int r = 0; r < seq.users(); ++r)
        for (int t = 0; t < seq.users(); ++t)
          if (st.link(r, t)) links_.push_back({s, r, t});
    }
    current_ = std::make_unique<ChannelRealization>(field, seq);
    seek(0);
    // sanity: the first realization satisfies the support invariant
    if (total_ > 0) current_->validate_support(seq);
  }

  std::uint64_t total() const { return total_; }
  std::uint64_t position() const { return next_index_; }

  /// Positions the stream so the next() call yields realization `index`.
  void seek(std::uint64_t index) {
    next_index_ = index;
    if (index >= total_) return;
    std::uint64_t base = static_cast<std::uint64_t>(field_.p()) - 1;
    std::uint64_t rem = index;
    for (int i = static_cast<int>(links_.size()) - 1; i >= 0; --i) {
      const Link& l = links_[i];
      current_->set_coeff(l.slot, l.rx, l.tx,
                          static_cast<std::int64_t>(1 + rem % base));
      rem /= base;
    }
  }

  /// Copies the next realization into `out`; false once exhausted.
  bool next(ChannelRealization& out) {
    if (next_index_ >= total_) return false;
    out = *current_;
    advance();
    return true;
  }

  /// Scans realizations [begin, end) through `fn`; stops early when fn
  /// returns false. Returns the index at which the scan stopped, or end.
  template <typename Fn>
  std::uint64_t scan(std::uint64_t begin, std::uint64_t end, Fn&& fn) {
    if (end > total_) end = total_;
    seek(begin);
    for (std::uint64_t i = begin; i < end; ++i) {
      if (!fn(static_cast<const ChannelRealization&>(*current_), i)) return i;
      advance();
    }
    return end;
  }

 private:
  struct Link {
    int slot, rx, tx;
  };

  void advance() {
    ++next_index_;
    if (next_index_ >= total_) return;
    std::int64_t pmax = field_.p() - 1;
    for (int i = static_cast<int>(links_.size()) - 1; i >= 0; --i) {
      const Link& l = links_[i];
      std::int64_t v = current_->coeff(l.slot, l.rx, l.tx);
      if (v < pmax) {
        current_->set_coeff(l.slot, l.rx, l.tx, v + 1);
        return;
      }
      current_->set_coeff(l.slot, l.rx, l.tx, 1);
    }
  }

  FieldSpec field_;
  std::uint64_t total_;
  std::vector<Link> links_;
  std::unique_ptr<ChannelRealization> current_;
  std::uint64_t next_index_ = 0;
};

}  // namespace altnet
