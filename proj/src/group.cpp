#include "qsurg/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <gmpxx.h>

namespace qsurg {

AbelianGroup::AbelianGroup(std::vector<long> orders, long cap)
    : orders_(std::move(orders)) {
  for (long n : orders_) {
    if (n < 1) throw std::runtime_error("group factor order must be >= 1");
    size_ *= n;
    if (size_ > cap)
      throw cap_exceeded("group size exceeds cap " + std::to_string(cap));
    exponent_ = std::lcm(exponent_, n);
  }
  strides_.assign(orders_.size(), 1);
  for (long i = rank() - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * orders_[i + 1];
}

std::vector<long> AbelianGroup::tuple(long idx) const {
  std::vector<long> t(orders_.size());
  for (size_t i = 0; i < orders_.size(); ++i) {
    t[i] = idx / strides_[i];
    idx %= strides_[i];
  }
  return t;
}

long AbelianGroup::index(const std::vector<long>& t) const {
  long idx = 0;
  for (size_t i = 0; i < orders_.size(); ++i) {
    long c = t[i] % orders_[i];
    if (c < 0) c += orders_[i];
    idx += c * strides_[i];
  }
  return idx;
}

long AbelianGroup::add(long a, long b) const {
  long idx = 0;
  for (size_t i = 0; i < orders_.size(); ++i) {
    long ca = (a / strides_[i]) % orders_[i];
    long cb = (b / strides_[i]) % orders_[i];
    idx += ((ca + cb) % orders_[i]) * strides_[i];
  }
  return idx;
}

long AbelianGroup::neg(long a) const {
  long idx = 0;
  for (size_t i = 0; i < orders_.size(); ++i) {
    long ca = (a / strides_[i]) % orders_[i];
    idx += ((orders_[i] - ca) % orders_[i]) * strides_[i];
  }
  return idx;
}

long AbelianGroup::component(long a, long i) const {
  return (a / strides_[i]) % orders_[i];
}

long AbelianGroup::char_exponent(long m, long g) const {
  long k = 0;
  for (size_t i = 0; i < orders_.size(); ++i) {
    long mi = (m / strides_[i]) % orders_[i];
    long gi = (g / strides_[i]) % orders_[i];
    k = (k + mi * gi % exponent_ * (exponent_ / orders_[i])) % exponent_;
  }
  return k;
}

std::string AbelianGroup::tuple_str(long idx) const {
  std::ostringstream os;
  os << "(";
  auto t = tuple(idx);
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) os << ",";
    os << t[i];
  }
  os << ")";
  return os.str();
}

long SubgroupBasis::position_of(long element) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), element);
  if (it == elements.end() || *it != element) return -1;
  return static_cast<long>(it - elements.begin());
}

std::vector<long> subgroup_closure(const AbelianGroup& G,
                                   std::vector<long> gens) {
  std::set<long> seen{G.zero()};
  std::vector<long> frontier{G.zero()};
  while (!frontier.empty()) {
    std::vector<long> next;
    for (long x : frontier)
      for (long g : gens) {
        long y = G.add(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

namespace {

using ZMat = std::vector<std::vector<mpz_class>>;  // row-major

// Smith normal form: U*A0*V = D, U and V unimodular.
void smith_normal_form(ZMat A, ZMat& U, ZMat& V, ZMat& D) {
  size_t n = A.size(), m = A[0].size();
  U.assign(n, std::vector<mpz_class>(n, 0));
  V.assign(m, std::vector<mpz_class>(m, 0));
  for (size_t i = 0; i < n; ++i) U[i][i] = 1;
  for (size_t j = 0; j < m; ++j) V[j][j] = 1;

  auto row_op = [&](size_t r1, size_t r2, const mpz_class& c) {
    for (size_t j = 0; j < m; ++j) A[r1][j] += c * A[r2][j];
    for (size_t j = 0; j < n; ++j) U[r1][j] += c * U[r2][j];
  };
  auto col_op = [&](size_t c1, size_t c2, const mpz_class& c) {
    for (size_t i = 0; i < n; ++i) A[i][c1] += c * A[i][c2];
    for (size_t i = 0; i < m; ++i) V[i][c1] += c * V[i][c2];
  };

  size_t t = 0;
  while (t < n && t < m) {
    size_t pi = t, pj = t;
    mpz_class best = 0;
    for (size_t i = t; i < n; ++i)
      for (size_t j = t; j < m; ++j)
        if (A[i][j] != 0 && (best == 0 || abs(A[i][j]) < best)) {
          best = abs(A[i][j]);
          pi = i;
          pj = j;
        }
    if (best == 0) break;
    if (pi != t) {
      std::swap(A[pi], A[t]);
      std::swap(U[pi], U[t]);
    }
    if (pj != t) {
      for (size_t i = 0; i < n; ++i) std::swap(A[i][pj], A[i][t]);
      for (size_t i = 0; i < m; ++i) std::swap(V[i][pj], V[i][t]);
    }
    bool clean = true;
    for (size_t i = t + 1; i < n; ++i)
      if (A[i][t] != 0) {
        mpz_class q = A[i][t] / A[t][t];
        row_op(i, t, -q);
        if (A[i][t] != 0) clean = false;
      }
    for (size_t j = t + 1; j < m; ++j)
      if (A[t][j] != 0) {
        mpz_class q = A[t][j] / A[t][t];
        col_op(j, t, -q);
        if (A[t][j] != 0) clean = false;
      }
    if (!clean) continue;
    bool advance = true;
    for (size_t i = t + 1; i < n && advance; ++i)
      for (size_t j = t + 1; j < m && advance; ++j)
        if (A[i][j] % A[t][t] != 0) {
          row_op(t, i, 1);
          advance = false;
        }
    if (advance) ++t;
  }
  for (size_t i = 0; i < n && i < m; ++i)
    if (A[i][i] < 0) {
      for (size_t j = 0; j < m; ++j) A[i][j] = -A[i][j];
      for (size_t j = 0; j < n; ++j) U[i][j] = -U[i][j];
    }
  D = std::move(A);
}

// exact inverse of a square integer matrix known to be unimodular
ZMat inverse_unimodular(const ZMat& M) {
  size_t n = M.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = mpq_class(M[i][j]);
    a[i][n + i] = 1;
  }
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::runtime_error("singular matrix in basis solve");
    std::swap(a[p], a[c]);
    mpq_class d = a[c][c];
    for (size_t j = 0; j < 2 * n; ++j) a[c][j] /= d;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  ZMat R(n, std::vector<mpz_class>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      mpq_class v = a[i][n + j];
      if (v.get_den() != 1)
        throw std::runtime_error("non-integer inverse of unimodular matrix");
      R[i][j] = v.get_num();
    }
  return R;
}

// exact solve B*X = diag(N); X must be integral
ZMat solve_times_diag(const ZMat& B, const std::vector<long>& N) {
  size_t n = B.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = mpq_class(B[i][j]);
    a[i][n + i] = N[i];
  }
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw std::runtime_error("degenerate subgroup lattice");
    std::swap(a[p], a[c]);
    mpq_class d = a[c][c];
    for (size_t j = 0; j < 2 * n; ++j) a[c][j] /= d;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  ZMat X(n, std::vector<mpz_class>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      mpq_class v = a[i][n + j];
      if (v.get_den() != 1)
        throw std::runtime_error("subgroup lattice quotient not integral");
      X[i][j] = v.get_num();
    }
  return X;
}

}  // namespace

SubgroupBasis subgroup_basis(const AbelianGroup& G,
                             const std::vector<long>& elements) {
  SubgroupBasis out;
  out.elements = elements;
  std::sort(out.elements.begin(), out.elements.end());

  long s = G.rank();
  if (s == 0 || out.elements.size() <= 1) {
    out.exponents.assign(out.elements.size(), {});
    return out;
  }

  // lattice L = lifts of subgroup elements + N_i e_i
  ZMat A(s, std::vector<mpz_class>(out.elements.size() + s, 0));
  for (size_t c = 0; c < out.elements.size(); ++c) {
    auto t = G.tuple(out.elements[c]);
    for (long r = 0; r < s; ++r) A[r][c] = t[r];
  }
  for (long i = 0; i < s; ++i) A[i][out.elements.size() + i] = G.orders()[i];

  ZMat U1, V1, D1;
  smith_normal_form(A, U1, V1, D1);
  ZMat U1inv = inverse_unimodular(U1);
  // basis of L: columns of B = U1^{-1} * diag(D1)
  ZMat B(s, std::vector<mpz_class>(s, 0));
  for (long i = 0; i < s; ++i)
    for (long j = 0; j < s; ++j) B[i][j] = U1inv[i][j] * D1[j][j];

  // N-lattice in L-coordinates, then SNF for the quotient L/N
  ZMat C = solve_times_diag(B, G.orders());
  ZMat U2, V2, D2;
  smith_normal_form(C, U2, V2, D2);
  ZMat U2inv = inverse_unimodular(U2);

  for (long j = 0; j < s; ++j) {
    long mj = D2[j][j].get_si();
    if (mj == 1) continue;
    std::vector<long> t(s, 0);
    for (long i = 0; i < s; ++i) {
      mpz_class v = 0;
      for (long k = 0; k < s; ++k) v += B[i][k] * U2inv[k][j];
      mpz_class red = v % G.orders()[i];
      if (red < 0) red += G.orders()[i];
      t[i] = red.get_si();
    }
    out.generators.push_back(G.index(t));
    out.gen_orders.push_back(mj);
  }

  long total = 1;
  for (long m : out.gen_orders) total *= m;
  if (total != out.size())
    throw std::runtime_error("subgroup basis size mismatch");
  out.exponents.assign(out.elements.size(), {});
  std::vector<bool> hit(out.elements.size(), false);
  for (long c = 0; c < total; ++c) {
    long rem = c, el = G.zero();
    std::vector<long> cur(out.generators.size());
    for (size_t j = 0; j < out.generators.size(); ++j) {
      cur[j] = rem % out.gen_orders[j];
      rem /= out.gen_orders[j];
      for (long rep = 0; rep < cur[j]; ++rep) el = G.add(el, out.generators[j]);
    }
    long pos = out.position_of(el);
    if (pos < 0) throw std::runtime_error("subgroup basis escapes subgroup");
    if (hit[pos]) throw std::runtime_error("subgroup basis not independent");
    hit[pos] = true;
    out.exponents[pos] = cur;
  }
  return out;
}

}  // namespace qsurg
