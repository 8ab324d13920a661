#pragma once

#include <string>
#include <vector>

#include <stdexcept>

namespace altnet {

/// IC: each transmitter has a private message for its own receiver.
/// X: a transmitter may address either receiver, message groups W(rx,tx).
/// BC: transmitters cooperate, every symbol is available to all of them.
enum class MessageMode { IC, X, BC };

inline const char* to_string(MessageMode m) {
  switch (m) {
    case MessageMode::IC: return "IC";
    case MessageMode::X: return "X";
    case MessageMode::BC: return "BC";
  }
  throw std::logic_error("bad MessageMode");
}

inline MessageMode message_mode_from_string(const std::string& s) {
  if (s == "IC") return MessageMode::IC;
  if (s == "X") return MessageMode::X;
  if (s == "BC") return MessageMode::BC;
  throw std::invalid_argument("unknown message mode \"" + s + "\"");
}

/// Who originates and who wants each symbol of the global message vector.
/// origin[j] is the only transmitter allowed to carry symbol j (-1 in BC
/// mode: any transmitter). desired_rx[j] is the receiver that must decode
/// it (-1 marks a helper symbol nobody decodes, used by diagnostics).
struct MessageConfig {
  MessageMode mode = MessageMode::IC;
  int users = 0;
  std::vector<int> origin;
  std::vector<int> desired_rx;

  int symbol_count() const { return static_cast<int>(origin.size()); }

  std::vector<int> desired_of(int rx) const {
    std::vector<int> out;
    for (int j = 0; j < symbol_count(); ++j)
      if (desired_rx[j] == rx) out.push_back(j);
    return out;
  }

  void validate() const {
    if (users < 1) throw std::invalid_argument("MessageConfig: users must be >= 1");
    if (origin.size() != desired_rx.size())
      throw std::invalid_argument("MessageConfig: origin/desired size mismatch");
    for (int j = 0; j < symbol_count(); ++j) {
      int o = origin[j], d = desired_rx[j];
      if (o < -1 || o >= users || d < -1 || d >= users)
        throw std::invalid_argument("MessageConfig: user index out of range");
      switch (mode) {
        case MessageMode::IC:
          if (o < 0)
            throw std::invalid_argument("MessageConfig: IC symbols need an owner");
          if (d >= 0 && d != o)
            throw std::invalid_argument(
                "MessageConfig: IC symbol desired by a foreign receiver");
          break;
        case MessageMode::X:
          if (o < 0)
            throw std::invalid_argument("MessageConfig: X symbols need an owner");
          break;
        case MessageMode::BC:
          if (o != -1)
            throw std::invalid_argument(
                "MessageConfig: BC symbols are shared (origin must be -1)");
          break;
      }
    }
  }

  static MessageConfig ic(int users, const std::vector<int>& owner_per_symbol) {
    MessageConfig c;
    c.mode = MessageMode::IC;
    c.users = users;
    c.origin = owner_per_symbol;
    c.desired_rx = owner_per_symbol;
    c.validate();
    return c;
  }

  /// X-channel config from (origin tx, desired rx) pairs per symbol.
  static MessageConfig x(int users, const std::vector<std::pair<int, int>>& groups) {
    MessageConfig c;
    c.mode = MessageMode::X;
    c.users = users;
    for (auto [tx, rx] : groups) {
      c.origin.push_back(tx);
      c.desired_rx.push_back(rx);
    }
    c.validate();
    return c;
  }

  static MessageConfig bc(int users, const std::vector<int>& desired_per_symbol) {
    MessageConfig c;
    c.mode = MessageMode::BC;
    c.users = users;
    c.desired_rx = desired_per_symbol;
    c.origin.assign(desired_per_symbol.size(), -1);
    c.validate();
    return c;
  }

  friend bool operator==(const MessageConfig& a, const MessageConfig& b) {
    return a.mode == b.mode && a.users == b.users && a.origin == b.origin &&
           a.desired_rx == b.desired_rx;
  }
};

}  // namespace altnet
