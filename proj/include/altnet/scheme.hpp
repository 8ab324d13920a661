#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "altnet/matrix.hpp"
#include "altnet/message.hpp"
#include "altnet/realization.hpp"
#include "altnet/topology.hpp"

namespace altnet {

/// A group of slots and symbols that decodes independently of the rest of
/// the scheme: those slots carry only those symbols and vice versa. Long
/// schedules decode block by block instead of materializing the full
/// effective matrix.
struct DecodeBlock {
  std::vector<int> slots;
  std::vector<int> symbols;

  friend bool operator==(const DecodeBlock& a, const DecodeBlock& b) {
    return a.slots == b.slots && a.symbols == b.symbols;
  }
};

/// A linear code over a state sequence: per transmitter an n x M encoding
/// matrix over GF(p), stored sparsely per slot. Encoders are fixed by the
/// state sequence alone; nothing here may depend on coefficient values.
class LinearScheme {
 public:
  using SlotEntries = std::vector<std::pair<int, std::int64_t>>;  // (symbol, coeff)

  LinearScheme(FieldSpec field, StateSequence seq, MessageConfig config)
      : field_(field), seq_(std::move(seq)), config_(std::move(config)),
        enc_(config_.users,
             std::vector<SlotEntries>(static_cast<std::size_t>(seq_.length()))) {
    seq_.validate();
    config_.validate();
    if (seq_.users() != config_.users)
      throw std::invalid_argument("LinearScheme: sequence/config user mismatch");
  }

  const FieldSpec& field() const { return field_; }
  const StateSequence& seq() const { return seq_; }
  const MessageConfig& config() const { return config_; }
  int users() const { return config_.users; }
  int slot_count() const { return seq_.length(); }
  int symbol_count() const { return config_.symbol_count(); }
  Rational rate() const { return Rational(symbol_count(), slot_count()); }

  const std::vector<DecodeBlock>& blocks() const { return blocks_; }

  /// Sets E_t[slot, symbol] = coeff (nonzero, reduced into the field).
  void add_entry(int tx, int slot, int symbol, std::int64_t coeff) {
    check_tx_slot(tx, slot);
    if (symbol < 0 || symbol >= symbol_count())
      throw std::invalid_argument("LinearScheme: symbol index out of range");
    std::int64_t p = field_.p();
    coeff = ((coeff % p) + p) % p;
    if (coeff == 0) return;
    int own = config_.origin[symbol];
    if (own >= 0 && own != tx)
      throw std::invalid_argument(
          "LinearScheme: transmitter " + std::to_string(tx) +
          " cannot carry symbol " + std::to_string(symbol) + " owned by " +
          std::to_string(own));
    SlotEntries& row = enc_[tx][slot];
    for (auto& [sym, c] : row)
      if (sym == symbol) {
        c = coeff;
        return;
      }
    row.emplace_back(symbol, coeff);
    std::sort(row.begin(), row.end());
  }

  const SlotEntries& entries(int tx, int slot) const {
    check_tx_slot(tx, slot);
    return enc_[tx][slot];
  }

  std::int64_t encoder_entry(int tx, int slot, int symbol) const {
    for (auto [sym, c] : entries(tx, slot))
      if (sym == symbol) return c;
    return 0;
  }

  void set_blocks(std::vector<DecodeBlock> blocks) {
    blocks_ = std::move(blocks);
    validate_blocks();
  }

  /// Full-scheme validation: every symbol transmitted somewhere, block
  /// partition (when present) consistent with the encoders.
  void validate() const {
    for (int j = 0; j < symbol_count(); ++j) {
      bool seen = false;
      for (int t = 0; t < users() && !seen; ++t)
        for (int s = 0; s < slot_count() && !seen; ++s)
          if (encoder_entry(t, s, j) != 0) seen = true;
      if (!seen)
        throw std::invalid_argument("LinearScheme: symbol " + std::to_string(j) +
                                    " is never transmitted (zero column)");
    }
    validate_blocks();
  }

  friend bool operator==(const LinearScheme& a, const LinearScheme& b) {
    return a.field_ == b.field_ && a.seq_ == b.seq_ && a.config_ == b.config_ &&
           a.enc_ == b.enc_ && a.blocks_ == b.blocks_;
  }

 private:
  void check_tx_slot(int tx, int slot) const {
    if (tx < 0 || tx >= users())
      throw std::invalid_argument("LinearScheme: transmitter index out of range");
    if (slot < 0 || slot >= slot_count())
      throw std::invalid_argument("LinearScheme: slot index out of range");
  }

  void validate_blocks() const {
    if (blocks_.empty()) return;
    std::vector<int> slot_block(slot_count(), -1), sym_block(symbol_count(), -1);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      for (int s : blocks_[b].slots) {
        if (s < 0 || s >= slot_count() || slot_block[s] != -1)
          throw std::invalid_argument("LinearScheme: bad block slot assignment");
        slot_block[s] = static_cast<int>(b);
      }
      for (int j : blocks_[b].symbols) {
        if (j < 0 || j >= symbol_count() || sym_block[j] != -1)
          throw std::invalid_argument("LinearScheme: bad block symbol assignment");
        sym_block[j] = static_cast<int>(b);
      }
    }
    for (int s = 0; s < slot_count(); ++s)
      if (slot_block[s] == -1)
        throw std::invalid_argument("LinearScheme: slot not covered by blocks");
    for (int j = 0; j < symbol_count(); ++j)
      if (sym_block[j] == -1)
        throw std::invalid_argument("LinearScheme: symbol not covered by blocks");
    for (int t = 0; t < users(); ++t)
      for (int s = 0; s < slot_count(); ++s)
        for (auto [sym, c] : enc_[t][s])
          if (sym_block[sym] != slot_block[s])
            throw std::invalid_argument(
                "LinearScheme: encoder entry crosses block boundary");
  }

  FieldSpec field_;
  StateSequence seq_;
  MessageConfig config_;
  std::vector<std::vector<SlotEntries>> enc_;  // [tx][slot]
  std::vector<DecodeBlock> blocks_;
};

/// X_t(slot) = E_t[slot] . s, for every transmitter and slot.
inline std::vector<std::vector<std::int64_t>> encode(
    const LinearScheme& scheme, std::span<const std::int64_t> s) {
  if (static_cast<int>(s.size()) != scheme.symbol_count())
    throw std::invalid_argument("encode: message vector length mismatch");
  std::int64_t p = scheme.field().p();
  std::vector<std::vector<std::int64_t>> x(
      scheme.slot_count(), std::vector<std::int64_t>(scheme.users(), 0));
  for (int t = 0; t < scheme.users(); ++t)
    for (int slot = 0; slot < scheme.slot_count(); ++slot) {
      std::int64_t acc = 0;
      for (auto [sym, c] : scheme.entries(t, slot))
        acc = gf::add(acc, gf::mul(c, s[sym], p), p);
      x[slot][t] = acc;
    }
  return x;
}

/// Receiver r's effective matrix: M_r[slot, j] = sum_t h(slot, r, t) *
/// E_t[slot, j], so that Y_r = M_r . s. Dense; meant for short schemes.
inline Matrix effective_matrix(const LinearScheme& scheme,
                               const ChannelRealization& real, int rx) {
  std::int64_t p = scheme.field().p();
  Matrix m(scheme.field(), scheme.slot_count(), scheme.symbol_count());
  for (int slot = 0; slot < scheme.slot_count(); ++slot)
    for (int t = 0; t < scheme.users(); ++t) {
      std::int64_t h = real.coeff(slot, rx, t);
      if (h == 0) continue;
      for (auto [sym, c] : scheme.entries(t, slot))
        m.set(slot, sym, gf::add(m.at(slot, sym), gf::mul(h, c, p), p));
    }
  return m;
}

/// Effective matrix restricted to one decode block (rows = block slots,
/// columns = block symbols, in block order).
inline Matrix block_effective_matrix(const LinearScheme& scheme,
                                     const ChannelRealization& real, int rx,
                                     const DecodeBlock& block) {
  std::int64_t p = scheme.field().p();
  Matrix m(scheme.field(), static_cast<int>(block.slots.size()),
           static_cast<int>(block.symbols.size()));
  for (std::size_t i = 0; i < block.slots.size(); ++i) {
    int slot = block.slots[i];
    for (int t = 0; t < scheme.users(); ++t) {
      std::int64_t h = real.coeff(slot, rx, t);
      if (h == 0) continue;
      for (auto [sym, c] : scheme.entries(t, slot)) {
        auto it = std::find(block.symbols.begin(), block.symbols.end(), sym);
        int col = static_cast<int>(it - block.symbols.begin());
        m.set(static_cast<int>(i), col,
              gf::add(m.at(static_cast<int>(i), col), gf::mul(h, c, p), p));
      }
    }
  }
  return m;
}

struct ReceiverView {
  std::vector<std::int64_t> observed;  // Y_r per slot
  Matrix effective;                    // M_r with Y_r = M_r . s
};

/// Per-receiver observations for a realization and message vector,
/// computed as Y_r(slot) = sum_t h(slot, r, t) X_t(slot), together with
/// the effective matrix.
inline std::vector<ReceiverView> receive(const LinearScheme& scheme,
                                         const ChannelRealization& real,
                                         std::span<const std::int64_t> s) {
  real.validate_support(scheme.seq());
  if (real.field() != scheme.field())
    throw std::invalid_argument("receive: realization field mismatch");
  std::int64_t p = scheme.field().p();
  auto x = encode(scheme, s);
  std::vector<ReceiverView> views;
  views.reserve(scheme.users());
  for (int r = 0; r < scheme.users(); ++r) {
    ReceiverView v{std::vector<std::int64_t>(scheme.slot_count(), 0),
                   effective_matrix(scheme, real, r)};
    for (int slot = 0; slot < scheme.slot_count(); ++slot) {
      std::int64_t acc = 0;
      for (int t = 0; t < scheme.users(); ++t)
        acc = gf::add(acc, gf::mul(real.coeff(slot, r, t), x[slot][t], p), p);
      v.observed[slot] = acc;
    }
    views.push_back(std::move(v));
  }
  return views;
}

// ---------------------------------------------------------------------------
// Textual serialization. Round-trips exactly; parse errors carry line
// numbers.
// ---------------------------------------------------------------------------

inline std::string format_scheme(const LinearScheme& scheme) {
  std::ostringstream out;
  out << "altnet-scheme v1\n";
  out << "field " << scheme.field().p() << '\n';
  out << "users " << scheme.users() << '\n';
  out << "symbols " << scheme.symbol_count() << '\n';
  out << "mode " << to_string(scheme.config().mode) << '\n';
  const StateSequence& seq = scheme.seq();
  out << "alphabet " << seq.alphabet.size() << '\n';
  for (const auto& st : seq.alphabet) out << st.grid_text();
  out << "slots " << seq.slots.size() << '\n';
  for (std::size_t i = 0; i < seq.slots.size(); ++i)
    out << seq.slots[i] << (i + 1 == seq.slots.size() ? '\n' : ' ');
  out << "origin";
  for (int o : scheme.config().origin) out << ' ' << o;
  out << '\n';
  out << "desired";
  for (int d : scheme.config().desired_rx) out << ' ' << d;
  out << '\n';
  for (int t = 0; t < scheme.users(); ++t) {
    out << "encoder " << t << '\n';
    for (int slot = 0; slot < scheme.slot_count(); ++slot) {
      for (int j = 0; j < scheme.symbol_count(); ++j) {
        if (j) out << ' ';
        out << scheme.encoder_entry(t, slot, j);
      }
      out << '\n';
    }
  }
  for (const auto& b : scheme.blocks()) {
    out << "block";
    for (int s : b.slots) out << ' ' << s;
    out << " :";
    for (int j : b.symbols) out << ' ' << j;
    out << '\n';
  }
  out << "end\n";
  return out.str();
}

namespace detail {

/// Line-oriented token cursor that tracks line numbers for errors.
class LineCursor {
 public:
  explicit LineCursor(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines_.push_back(line);
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  int line_no() const { return static_cast<int>(pos_) + 1; }

  std::string next_line() {
    while (!done()) {
      const std::string& l = lines_[pos_];
      ++pos_;
      if (l.empty() || l[0] == '#') continue;
      return l;
    }
    throw ParseError(line_no(), "unexpected end of file");
  }

  std::vector<std::string> next_tokens() {
    int at = line_no();
    std::istringstream iss(next_line());
    std::vector<std::string> toks;
    std::string t;
    while (iss >> t) toks.push_back(t);
    if (toks.empty()) throw ParseError(at, "blank line where tokens expected");
    return toks;
  }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

inline std::int64_t parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got \"" + tok + "\"");
  }
}

}  // namespace detail

inline LinearScheme parse_scheme(std::istream& in) {
  detail::LineCursor cur(in);
  int at = cur.line_no();
  if (cur.next_line() != "altnet-scheme v1")
    throw ParseError(at, "expected header \"altnet-scheme v1\"");

  auto expect_kv = [&](const std::string& key) -> std::vector<std::string> {
    int line = cur.line_no();
    auto toks = cur.next_tokens();
    if (toks[0] != key)
      throw ParseError(line, "expected \"" + key + "\", got \"" + toks[0] + "\"");
    toks.erase(toks.begin());
    return toks;
  };

  int line = cur.line_no();
  auto field_toks = expect_kv("field");
  if (field_toks.size() != 1) throw ParseError(line, "field wants one value");
  FieldSpec field = [&] {
    try {
      return FieldSpec(detail::parse_int(field_toks[0], line));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  }();

  line = cur.line_no();
  auto users_toks = expect_kv("users");
  int users = static_cast<int>(detail::parse_int(users_toks.at(0), line));
  line = cur.line_no();
  auto sym_toks = expect_kv("symbols");
  int symbols = static_cast<int>(detail::parse_int(sym_toks.at(0), line));
  line = cur.line_no();
  auto mode_toks = expect_kv("mode");
  MessageMode mode = [&] {
    try {
      return message_mode_from_string(mode_toks.at(0));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  }();

  line = cur.line_no();
  auto alpha_toks = expect_kv("alphabet");
  int alphabet_size = static_cast<int>(detail::parse_int(alpha_toks.at(0), line));
  if (alphabet_size < 1) throw ParseError(line, "alphabet must be nonempty");
  std::vector<TopologyState> alphabet;
  for (int i = 0; i < alphabet_size; ++i) {
    std::vector<std::uint8_t> grid;
    for (int r = 0; r < users; ++r) {
      int gl = cur.line_no();
      std::string row = cur.next_line();
      if (static_cast<int>(row.size()) != users)
        throw ParseError(gl, "grid row has wrong length");
      for (char c : row) {
        if (c != '0' && c != '1') throw ParseError(gl, "grid rows are '0'/'1' only");
        grid.push_back(c == '1' ? 1 : 0);
      }
    }
    try {
      alphabet.emplace_back(users, std::move(grid));
    } catch (const std::invalid_argument& e) {
      throw ParseError(cur.line_no() - 1, e.what());
    }
  }

  line = cur.line_no();
  auto slots_toks = expect_kv("slots");
  int n = static_cast<int>(detail::parse_int(slots_toks.at(0), line));
  if (n < 1) throw ParseError(line, "need at least one slot");
  StateSequence seq;
  seq.alphabet = std::move(alphabet);
  {
    int sl = cur.line_no();
    auto toks = cur.next_tokens();
    if (static_cast<int>(toks.size()) != n)
      throw ParseError(sl, "expected " + std::to_string(n) + " slot ids");
    for (const auto& t : toks) {
      int id = static_cast<int>(detail::parse_int(t, sl));
      if (id < 0 || id >= alphabet_size)
        throw ParseError(sl, "slot id " + t + " out of range");
      seq.slots.push_back(id);
    }
  }

  line = cur.line_no();
  auto origin_toks = expect_kv("origin");
  if (static_cast<int>(origin_toks.size()) != symbols)
    throw ParseError(line, "origin wants one entry per symbol");
  line = cur.line_no();
  auto desired_toks = expect_kv("desired");
  if (static_cast<int>(desired_toks.size()) != symbols)
    throw ParseError(line, "desired wants one entry per symbol");

  MessageConfig config;
  config.mode = mode;
  config.users = users;
  for (int j = 0; j < symbols; ++j) {
    config.origin.push_back(static_cast<int>(detail::parse_int(origin_toks[j], line)));
    config.desired_rx.push_back(
        static_cast<int>(detail::parse_int(desired_toks[j], line)));
  }
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }

  LinearScheme scheme = [&] {
    try {
      return LinearScheme(field, seq, config);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  }();

  for (int t = 0; t < users; ++t) {
    int el = cur.line_no();
    auto toks = cur.next_tokens();
    if (toks.size() != 2 || toks[0] != "encoder" ||
        detail::parse_int(toks[1], el) != t)
      throw ParseError(el, "expected \"encoder " + std::to_string(t) + "\"");
    for (int slot = 0; slot < n; ++slot) {
      int rl = cur.line_no();
      auto row = cur.next_tokens();
      if (static_cast<int>(row.size()) != symbols)
        throw ParseError(rl, "encoder row wants one entry per symbol");
      for (int j = 0; j < symbols; ++j) {
        std::int64_t v = detail::parse_int(row[j], rl);
        if (v < 0 || v >= field.p())
          throw ParseError(rl, "encoder entry " + row[j] + " outside [0, p)");
        if (v != 0) {
          try {
            scheme.add_entry(t, slot, j, v);
          } catch (const std::invalid_argument& e) {
            throw ParseError(rl, e.what());
          }
        }
      }
    }
  }

  std::vector<DecodeBlock> blocks;
  while (true) {
    int bl = cur.line_no();
    auto toks = cur.next_tokens();
    if (toks[0] == "end") break;
    if (toks[0] != "block")
      throw ParseError(bl, "expected \"block\" or \"end\", got \"" + toks[0] + "\"");
    DecodeBlock b;
    std::size_t i = 1;
    for (; i < toks.size() && toks[i] != ":"; ++i)
      b.slots.push_back(static_cast<int>(detail::parse_int(toks[i], bl)));
    if (i == toks.size()) throw ParseError(bl, "block wants \"slots : symbols\"");
    for (++i; i < toks.size(); ++i)
      b.symbols.push_back(static_cast<int>(detail::parse_int(toks[i], bl)));
    blocks.push_back(std::move(b));
  }
  if (!blocks.empty()) {
    try {
      scheme.set_blocks(std::move(blocks));
    } catch (const std::invalid_argument& e) {
      throw ParseError(cur.line_no(), e.what());
    }
  }
  try {
    scheme.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(cur.line_no(), e.what());
  }
  return scheme;
}

inline LinearScheme parse_scheme(const std::string& text) {
  std::istringstream in(text);
  return parse_scheme(in);
}

/// Rebuilds a scheme over a different prime; every encoder entry must
/// already be a valid residue of the new field.
inline LinearScheme refield_scheme(const LinearScheme& scheme, FieldSpec field) {
  if (field == scheme.field()) return scheme;
  LinearScheme out(field, scheme.seq(), scheme.config());
  for (int t = 0; t < scheme.users(); ++t)
    for (int slot = 0; slot < scheme.slot_count(); ++slot)
      for (auto [sym, c] : scheme.entries(t, slot)) {
        if (c >= field.p())
          throw std::invalid_argument(
              "refield_scheme: entry " + std::to_string(c) +
              " is not a residue mod " + std::to_string(field.p()));
        out.add_entry(t, slot, sym, c);
      }
  out.set_blocks(scheme.blocks());
  return out;
}

}  // namespace altnet
