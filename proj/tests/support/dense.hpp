#pragma once

// Independent bivariate expander over fixed-size dense __int128 arrays.
// Shares nothing with Poly2 beyond the final comparison.

#include <array>
#include <cstdint>
#include <stdexcept>

#include "weber/poly2.hpp"

namespace oracle {

constexpr int kMaxDeg = 12;

struct Dense {
  std::array<std::array<__int128, kMaxDeg + 1>, kMaxDeg + 1> c{};  // c[i][j] * x^i y^j

  static Dense constant(long v) {
    Dense d;
    d.c[0][0] = v;
    return d;
  }
  static Dense x() {
    Dense d;
    d.c[1][0] = 1;
    return d;
  }
  static Dense y() {
    Dense d;
    d.c[0][1] = 1;
    return d;
  }
};

inline Dense operator+(const Dense& a, const Dense& b) {
  Dense r;
  for (int i = 0; i <= kMaxDeg; ++i)
    for (int j = 0; j <= kMaxDeg; ++j) r.c[i][j] = a.c[i][j] + b.c[i][j];
  return r;
}

inline Dense operator-(const Dense& a, const Dense& b) {
  Dense r;
  for (int i = 0; i <= kMaxDeg; ++i)
    for (int j = 0; j <= kMaxDeg; ++j) r.c[i][j] = a.c[i][j] - b.c[i][j];
  return r;
}

inline Dense operator*(long k, const Dense& a) {
  Dense r;
  for (int i = 0; i <= kMaxDeg; ++i)
    for (int j = 0; j <= kMaxDeg; ++j) r.c[i][j] = a.c[i][j] * k;
  return r;
}

inline Dense operator*(const Dense& a, const Dense& b) {
  Dense r;
  for (int i = 0; i <= kMaxDeg; ++i)
    for (int j = 0; j <= kMaxDeg; ++j) {
      if (a.c[i][j] == 0) continue;
      for (int k = 0; k <= kMaxDeg; ++k)
        for (int l = 0; l <= kMaxDeg; ++l) {
          if (b.c[k][l] == 0) continue;
          if (i + k > kMaxDeg || j + l > kMaxDeg) throw std::overflow_error("dense degree overflow");
          r.c[i + k][j + l] += a.c[i][j] * b.c[k][l];
        }
    }
  return r;
}

inline Dense operator+(const Dense& a, long k) { return a + Dense::constant(k); }
inline Dense operator-(const Dense& a, long k) { return a - Dense::constant(k); }

inline Dense sq(const Dense& a) { return a * a; }

inline weber::Poly2 to_poly(const Dense& d) {
  weber::Poly2 p;
  for (int i = 0; i <= kMaxDeg; ++i)
    for (int j = 0; j <= kMaxDeg; ++j) {
      if (d.c[i][j] == 0) continue;
      __int128 v = d.c[i][j];
      const bool neg = v < 0;
      if (neg) v = -v;
      std::string digits;
      do {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
      } while (v > 0);
      weber::Rational q(digits);
      if (neg) q = -q;
      p += weber::Poly2::monomial(i, j, q);
    }
  return p;
}

// Squared distance to (a, b), integer centres only.
inline Dense squared_distance(long a, long b) {
  const Dense dx = Dense::x() - a, dy = Dense::y() - b;
  return dx * dx + dy * dy;
}

}  // namespace oracle
