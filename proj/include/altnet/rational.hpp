#pragma once

#include <charconv>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace altnet {

namespace detail {

inline __int128 abs128(__int128 v) { return v < 0 ? -v : v; }

inline __int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t narrow128(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// Exact rational number on int64 numerator/denominator, always stored in
/// lowest terms with a positive denominator. Arithmetic goes through
/// 128-bit intermediates and throws std::overflow_error instead of
/// silently wrapping. There is intentionally no conversion from floating
/// point: rates and state fractions stay exact end to end.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) { *this = make(num, den); }

  static Rational make(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = detail::gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    Rational r;
    r.num_ = detail::narrow128(num);
    r.den_ = detail::narrow128(den);
    return r;
  }

  /// Accepts "a/b" or a bare integer "a". Anything else (decimals,
  /// exponents, stray characters) is rejected.
  static Rational parse(std::string_view text) {
    auto bad = [&] {
      throw std::invalid_argument("not a rational (want \"num/den\" or integer): \"" +
                                  std::string(text) + "\"");
    };
    std::size_t slash = text.find('/');
    std::string_view num_part = text.substr(0, slash == std::string_view::npos
                                                   ? text.size()
                                                   : slash);
    std::int64_t num = 0, den = 1;
    auto parse_int = [&](std::string_view s, std::int64_t& out) {
      if (s.empty()) bad();
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc() || ptr != s.data() + s.size()) bad();
    };
    parse_int(num_part, num);
    if (slash != std::string_view::npos)
      parse_int(text.substr(slash + 1), den);
    return Rational(num, den);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Fixed-point decimal rendering (round half away from zero).
  std::string decimal(int digits = 6) const {
    __int128 n = detail::abs128(num_);
    __int128 d = den_;
    std::string frac;
    __int128 rem = n % d;
    for (int i = 0; i < digits; ++i) {
      rem *= 10;
      frac.push_back(static_cast<char>('0' + static_cast<int>(rem / d)));
      rem %= d;
    }
    __int128 whole = n / d;
    if (2 * rem >= d) {
      int i = digits - 1;
      for (; i >= 0; --i) {
        if (frac[i] != '9') {
          ++frac[i];
          break;
        }
        frac[i] = '0';
      }
      if (i < 0) ++whole;
    }
    std::string out;
    if (num_ < 0 && (whole != 0 || frac.find_first_not_of('0') != std::string::npos))
      out.push_back('-');
    out += std::to_string(static_cast<long long>(whole));
    if (digits > 0) {
      out.push_back('.');
      out += frac;
    }
    return out;
  }

  friend Rational operator+(const Rational& x, const Rational& y) {
    return make(static_cast<__int128>(x.num_) * y.den_ +
                    static_cast<__int128>(y.num_) * x.den_,
                static_cast<__int128>(x.den_) * y.den_);
  }
  friend Rational operator-(const Rational& x, const Rational& y) {
    return make(static_cast<__int128>(x.num_) * y.den_ -
                    static_cast<__int128>(y.num_) * x.den_,
                static_cast<__int128>(x.den_) * y.den_);
  }
  friend Rational operator*(const Rational& x, const Rational& y) {
    return make(static_cast<__int128>(x.num_) * y.num_,
                static_cast<__int128>(x.den_) * y.den_);
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw std::domain_error("rational: division by zero");
    return make(static_cast<__int128>(x.num_) * y.den_,
                static_cast<__int128>(x.den_) * y.num_);
  }
  Rational operator-() const { return make(-static_cast<__int128>(num_), den_); }

  Rational& operator+=(const Rational& x) { return *this = *this + x; }
  Rational& operator-=(const Rational& x) { return *this = *this - x; }
  Rational& operator*=(const Rational& x) { return *this = *this * x; }
  Rational& operator/=(const Rational& x) { return *this = *this / x; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
  friend bool operator<(const Rational& x, const Rational& y) {
    return static_cast<__int128>(x.num_) * y.den_ <
           static_cast<__int128>(y.num_) * x.den_;
  }
  friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
  friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
  friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) {
    return os << x.str();
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational abs(const Rational& a) { return a.num() < 0 ? -a : a; }

}  // namespace altnet
