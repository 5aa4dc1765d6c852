#pragma once

#include <stdexcept>
#include <vector>

#include "qsurg/cyclotomic.hpp"

namespace qsurg {

using CMat = std::vector<std::vector<Cyc>>;
using CVec = std::vector<Cyc>;

inline CMat cmat_identity(size_t n) {
  CMat m(n, CVec(n, Cyc::zero()));
  for (size_t i = 0; i < n; ++i) m[i][i] = Cyc::one();
  return m;
}

inline CMat cmat_mul(const CMat& a, const CMat& b) {
  size_t n = a.size(), k = b.size(), m = b[0].size();
  CMat r(n, CVec(m, Cyc::zero()));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (size_t j = 0; j < m; ++j) {
        if (b[t][j].is_zero()) continue;
        r[i][j] += a[i][t] * b[t][j];
      }
    }
  return r;
}

inline CVec cmat_apply(const CMat& a, const CVec& v) {
  size_t n = a.size(), m = v.size();
  CVec r(n, Cyc::zero());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j)
      if (!a[i][j].is_zero() && !v[j].is_zero()) r[i] += a[i][j] * v[j];
  return r;
}

inline CMat cmat_dagger(const CMat& a) {
  size_t n = a.size(), m = a[0].size();
  CMat r(m, CVec(n, Cyc::zero()));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j].conj();
  return r;
}

inline bool cmat_equal(const CMat& a, const CMat& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != b[i][j]) return false;
  }
  return true;
}

inline bool cmat_is_identity(const CMat& a) {
  return cmat_equal(a, cmat_identity(a.size()));
}

/// exactly one entry 1 per row/column, all others 0
inline bool cmat_is_permutation(const CMat& a) {
  size_t n = a.size();
  std::vector<int> col_hit(n, 0);
  for (size_t i = 0; i < n; ++i) {
    int row_hit = 0;
    for (size_t j = 0; j < n; ++j) {
      if (a[i][j].is_zero()) continue;
      if (a[i][j] != Cyc::one()) return false;
      ++row_hit;
      ++col_hit[j];
    }
    if (row_hit != 1) return false;
  }
  for (size_t j = 0; j < n; ++j)
    if (col_hit[j] != 1) return false;
  return true;
}

inline CMat cmat_inverse(CMat a) {
  size_t n = a.size();
  CMat inv = cmat_identity(n);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw std::runtime_error("singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Cyc d = a[c][c].inv();
    for (size_t j = 0; j < n; ++j) {
      a[c][j] = a[c][j] * d;
      inv[c][j] = inv[c][j] * d;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      Cyc f = a[i][c];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

inline Cyc cmat_trace(const CMat& a) {
  Cyc t = Cyc::zero();
  for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

inline long cmat_rank(CMat a) {
  size_t rows = a.size();
  if (rows == 0) return 0;
  size_t cols = a[0].size();
  long rank = 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Cyc d = a[r][c].inv();
    for (size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * d;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Cyc f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

}  // namespace qsurg
