#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace g2toda {

using Rat = mpq_class;

using Vec7Q = std::array<Rat, 7>;
using Mat7Q = std::array<std::array<Rat, 7>, 7>;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Vec7Q operator+(const Vec7Q& a, const Vec7Q& b) {
  Vec7Q r;
  for (int i = 0; i < 7; ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec7Q operator-(const Vec7Q& a, const Vec7Q& b) {
  Vec7Q r;
  for (int i = 0; i < 7; ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec7Q operator*(const Rat& s, const Vec7Q& a) {
  Vec7Q r;
  for (int i = 0; i < 7; ++i) r[i] = s * a[i];
  return r;
}

inline bool is_zero(const Vec7Q& a) {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

inline Vec7Q matvec(const Mat7Q& m, const Vec7Q& v) {
  Vec7Q r;
  for (int i = 0; i < 7; ++i) {
    Rat acc = 0;
    for (int j = 0; j < 7; ++j) acc += m[i][j] * v[j];
    r[i] = acc;
  }
  return r;
}

inline Mat7Q matmul(const Mat7Q& a, const Mat7Q& b) {
  Mat7Q r{};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      Rat acc = 0;
      for (int k = 0; k < 7; ++k) acc += a[i][k] * b[k][j];
      r[i][j] = acc;
    }
  return r;
}

inline Mat7Q from_columns(const std::array<Vec7Q, 7>& cols) {
  Mat7Q m{};
  for (int j = 0; j < 7; ++j)
    for (int i = 0; i < 7; ++i) m[i][j] = cols[j][i];
  return m;
}

// exact Gauss-Jordan inverse; throws on singular input
inline Mat7Q inverse(const Mat7Q& m) {
  Mat7Q a = m;
  Mat7Q inv{};
  for (int i = 0; i < 7; ++i) inv[i][i] = 1;
  for (int col = 0; col < 7; ++col) {
    int piv = -1;
    for (int r = col; r < 7; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::runtime_error("rational matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat d = a[col][col];
    for (int j = 0; j < 7; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (int r = 0; r < 7; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (int j = 0; j < 7; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline double to_double(const Rat& r) { return r.get_d(); }

}  // namespace g2toda
