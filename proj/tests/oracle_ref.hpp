// Brute-force reference implementations used only by tests. These are
// deliberately independent of the library's elimination code: plain
// modular arithmetic and exhaustive enumeration, nothing shared with the
// code under test.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace oracle_ref {

using Mat = std::vector<std::vector<std::int64_t>>;
using Vec = std::vector<std::int64_t>;

inline Vec combine(const Mat& rows, const Vec& coeffs, std::int64_t p) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Vec out(cols, 0);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out[c] = (out[c] + coeffs[r] * rows[r][c]) % p;
  return out;
}

/// Every vector in the row span, by enumerating all p^rows coefficient
/// vectors.
inline std::set<Vec> row_span(const Mat& rows, std::int64_t p) {
  std::set<Vec> span;
  std::size_t k = rows.size();
  Vec coeffs(k, 0);
  while (true) {
    span.insert(combine(rows, coeffs, p));
    std::size_t i = 0;
    while (i < k && coeffs[i] == p - 1) coeffs[i++] = 0;
    if (i == k) break;
    ++coeffs[i];
  }
  return span;
}

/// A row subset is independent iff no nontrivial combination vanishes.
inline bool independent(const Mat& rows, std::int64_t p) {
  std::size_t k = rows.size();
  if (k == 0) return true;
  std::size_t cols = rows[0].size();
  Vec coeffs(k, 0);
  while (true) {
    std::size_t i = 0;
    while (i < k && coeffs[i] == p - 1) coeffs[i++] = 0;
    if (i == k) break;
    ++coeffs[i];
    Vec v = combine(rows, coeffs, p);
    bool zero = true;
    for (std::size_t c = 0; c < cols; ++c)
      if (v[c] % p != 0) zero = false;
    if (zero) return false;
  }
  return true;
}

/// Rank as the size of a maximal independent row subset, found by
/// checking every subset.
inline int rank(const Mat& rows, std::int64_t p) {
  int n = static_cast<int>(rows.size());
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Mat subset;
    for (int r = 0; r < n; ++r)
      if (mask & (1u << r)) subset.push_back(rows[r]);
    if (static_cast<int>(subset.size()) > best && independent(subset, p))
      best = static_cast<int>(subset.size());
  }
  return best;
}

inline bool in_row_space(const Mat& rows, const Vec& v, std::int64_t p) {
  Vec reduced(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) reduced[i] = ((v[i] % p) + p) % p;
  return row_span(rows, p).count(reduced) > 0;
}

/// Unknown i of the system y = M s is determined iff every s consistent
/// with y agrees on coordinate i.
inline std::optional<std::int64_t> solve_coordinate(const Mat& m, const Vec& y,
                                                    int i, std::int64_t p) {
  std::size_t cols = m.empty() ? 0 : m[0].size();
  Vec s(cols, 0);
  std::optional<std::int64_t> value;
  while (true) {
    bool consistent = true;
    for (std::size_t r = 0; r < m.size() && consistent; ++r) {
      std::int64_t acc = 0;
      for (std::size_t c = 0; c < cols; ++c) acc = (acc + m[r][c] * s[c]) % p;
      if (acc != ((y[r] % p) + p) % p) consistent = false;
    }
    if (consistent) {
      if (!value) {
        value = s[i];
      } else if (*value != s[i]) {
        return std::nullopt;
      }
    }
    std::size_t j = 0;
    while (j < cols && s[j] == p - 1) s[j++] = 0;
    if (j == cols) break;
    ++s[j];
  }
  return value;
}

}  // namespace oracle_ref
