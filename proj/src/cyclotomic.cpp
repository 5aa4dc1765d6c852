#include "qsurg/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qsurg {

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

namespace {

// exact division of integer polynomials, quotient only; b monic
std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> a,
                                      const std::vector<mpz_class>& b) {
  long db = static_cast<long>(b.size()) - 1;
  long da = static_cast<long>(a.size()) - 1;
  std::vector<mpz_class> q(std::max<long>(da - db + 1, 0), 0);
  for (long i = da; i >= db; --i) {
    mpz_class c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (long j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

std::mutex g_ctx_mutex;
std::map<long, CycContext>& context_cache() {
  static std::map<long, CycContext> cache;
  return cache;
}

}  // namespace

const CycContext& CycContext::get(long order) {
  if (order < 1) throw incompatible_order("order must be positive");
  std::lock_guard<std::mutex> lk(g_ctx_mutex);
  auto& cache = context_cache();
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  // building Phi_order recurses into smaller orders; release not needed since
  // recursive calls re-enter get() -> deadlock. Build divisors bottom-up here.
  for (long d = 1; d <= order; ++d) {
    if (order % d != 0 || cache.count(d)) continue;
    CycContext ctx;
    ctx.order = d;
    // direct bottom-up product to avoid recursion under the lock
    std::vector<mpz_class> num(d + 1, 0);
    num[0] = -1;
    num[d] = 1;
    for (long e = 1; e < d; ++e)
      if (d % e == 0) num = poly_div_exact(std::move(num), cache.at(e).phi);
    ctx.phi = std::move(num);
    ctx.degree = static_cast<long>(ctx.phi.size()) - 1;
    cache.emplace(d, std::move(ctx));
  }
  return cache.at(order);
}

Cyc Cyc::from_rational(const Rat& r) {
  Rat v = r;
  v.canonicalize();
  std::vector<Rat> c(1, std::move(v));
  return Cyc(1, std::move(c));
}

Cyc Cyc::from_poly(long order, std::vector<Rat> poly) {
  const CycContext& ctx = CycContext::get(order);
  // fold exponents mod order first
  std::vector<Rat> folded(order, Rat(0));
  for (size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] != 0) folded[i % order] += poly[i];
  }
  // reduce by Phi_order (monic)
  for (long i = order - 1; i >= ctx.degree; --i) {
    if (folded[i] == 0) continue;
    Rat c = folded[i];
    folded[i] = 0;
    for (long j = 0; j < ctx.degree; ++j)
      folded[i - ctx.degree + j] -= c * Rat(ctx.phi[j]);
  }
  folded.resize(ctx.degree);
  return Cyc(order, std::move(folded));
}

Cyc Cyc::root_of_unity(long k, long n) {
  if (n < 1) throw incompatible_order("root order must be >= 1");
  k %= n;
  if (k < 0) k += n;
  static std::mutex mu;
  static std::map<std::pair<long, long>, Cyc> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find({n, k});
    if (it != cache.end()) return it->second;
  }
  std::vector<Rat> poly(k + 1, Rat(0));
  poly[k] = 1;
  Cyc r = from_poly(n, std::move(poly));
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(std::make_pair(n, k), r);
  return r;
}

bool Cyc::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rat Cyc::rational_value() const {
  if (!is_rational()) throw std::runtime_error("value is not rational");
  return coeffs_[0];
}

bool Cyc::is_integer() const {
  return is_rational() && coeffs_[0].get_den() == 1;
}

bool Cyc::is_nonneg_integer() const {
  return is_integer() && coeffs_[0] >= 0;
}

mpz_class Cyc::integer_value() const {
  if (!is_integer()) throw std::runtime_error("value is not an integer");
  return coeffs_[0].get_num();
}

Cyc Cyc::lifted(long new_order) const {
  if (new_order % order_ != 0)
    throw incompatible_order("order " + std::to_string(order_) +
                             " does not divide " + std::to_string(new_order));
  long m = new_order / order_;
  std::vector<Rat> poly(static_cast<size_t>(coeffs_.size()) * m, Rat(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) poly[i * m] = coeffs_[i];
  return from_poly(new_order, std::move(poly));
}

Cyc operator+(const Cyc& a, const Cyc& b) {
  long L = lcm_long(a.order_, b.order_);
  Cyc x = a.lifted(L), y = b.lifted(L);
  for (size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
  return x;
}

Cyc operator-(const Cyc& a, const Cyc& b) {
  long L = lcm_long(a.order_, b.order_);
  Cyc x = a.lifted(L), y = b.lifted(L);
  for (size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] -= y.coeffs_[i];
  return x;
}

Cyc Cyc::operator-() const {
  Cyc x = *this;
  for (auto& c : x.coeffs_) c = -c;
  return x;
}

Cyc operator*(const Cyc& a, const Cyc& b) {
  long L = lcm_long(a.order_, b.order_);
  Cyc x = a.lifted(L), y = b.lifted(L);
  std::vector<Rat> prod(x.coeffs_.size() + y.coeffs_.size(), Rat(0));
  for (size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (x.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < y.coeffs_.size(); ++j) {
      if (y.coeffs_[j] == 0) continue;
      prod[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
  }
  return Cyc::from_poly(L, std::move(prod));
}

Cyc Cyc::conj() const {
  std::vector<Rat> poly(order_, Rat(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    long e = (order_ - static_cast<long>(i)) % order_;
    poly[e] += coeffs_[i];
  }
  return from_poly(order_, std::move(poly));
}

namespace {

// polynomial arithmetic over Q for the extended gcd used by inv()
using QPoly = std::vector<Rat>;

void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qtrim(r);
  return r;
}

QPoly qsub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rat(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qtrim(a);
  return a;
}

// a = q*b + r
void qdivmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
  q.assign(a.size(), Rat(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rat c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] += c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    qtrim(a);
  }
  qtrim(q);
  r = std::move(a);
}

}  // namespace

Cyc Cyc::inv() const {
  if (is_zero()) throw division_by_zero();
  if (is_rational()) return from_rational(Rat(1) / coeffs_[0]);
  const CycContext& ctx = CycContext::get(order_);
  QPoly f(coeffs_.begin(), coeffs_.end());
  qtrim(f);
  QPoly g(ctx.phi.size());
  for (size_t i = 0; i < ctx.phi.size(); ++i) g[i] = Rat(ctx.phi[i]);
  // extended euclid: s*f + t*g = gcd = nonzero rational
  QPoly r0 = g, r1 = f;
  QPoly s0 = {}, s1 = {Rat(1)};  // coefficients of f
  while (true) {
    QPoly q, r2;
    qdivmod(r0, r1, q, r2);
    QPoly s2 = qsub(s0, qmul(q, s1));
    if (r2.empty()) break;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 = gcd (degree 0 since Phi irreducible and f != 0 mod Phi)
  if (r1.size() != 1)
    throw std::runtime_error("cyclotomic inverse: gcd not constant");
  Rat c = r1[0];
  std::vector<Rat> res(s1.size());
  for (size_t i = 0; i < s1.size(); ++i) res[i] = s1[i] / c;
  return from_poly(order_, std::move(res));
}

Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inv(); }

bool Cyc::operator==(const Cyc& b) const {
  long L = lcm_long(order_, b.order_);
  Cyc x = lifted(L), y = b.lifted(L);
  return x.coeffs_ == y.coeffs_;
}

Cyc Cyc::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Cyc r = Cyc::one();
  Cyc base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

std::complex<double> Cyc::approx() const {
  std::complex<long double> z(0.0L, 0.0L);
  long double theta = 2.0L * 3.14159265358979323846264338327950288L /
                      static_cast<long double>(order_);
  for (size_t i = coeffs_.size(); i-- > 0;) {
    std::complex<long double> zeta(std::cos(theta * i), std::sin(theta * i));
    long double c = mpq_get_d(coeffs_[i].get_mpq_t());
    z += c * zeta;
  }
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

std::string Cyc::str() const {
  std::ostringstream os;
  os << "cyc(" << order_ << ")[";
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ", ";
    os << coeffs_[i].get_num().get_str();
    if (coeffs_[i].get_den() != 1) os << "/" << coeffs_[i].get_den().get_str();
  }
  os << "]";
  return os.str();
}

Cyc Cyc::parse(const std::string& s) {
  size_t p1 = s.find("cyc(");
  size_t p2 = s.find(')', p1);
  size_t p3 = s.find('[', p2);
  size_t p4 = s.rfind(']');
  if (p1 == std::string::npos || p2 == std::string::npos ||
      p3 == std::string::npos || p4 == std::string::npos || p4 < p3)
    throw std::runtime_error("bad cyclotomic literal: " + s);
  long order = std::stol(s.substr(p1 + 4, p2 - p1 - 4));
  std::vector<Rat> coeffs;
  std::string body = s.substr(p3 + 1, p4 - p3 - 1);
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    coeffs.emplace_back(tok);
    coeffs.back().canonicalize();
  }
  const CycContext& ctx = CycContext::get(order);
  if (static_cast<long>(coeffs.size()) != ctx.degree)
    throw std::runtime_error("bad coefficient count in: " + s);
  return Cyc(order, std::move(coeffs));
}

namespace {

long legendre_symbol(long t, long p) {
  long r = 1, base = t % p, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r == 1 ? 1 : (r == 0 ? 0 : -1);
}

}  // namespace

Cyc Cyc::sqrt_of_unsigned(unsigned long n) {
  if (n == 0) return Cyc::zero();
  mpz_class sq = 1;
  unsigned long rest = n;
  Cyc out = Cyc::one();
  for (unsigned long p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      sq *= p;
      rest /= p * p;
    }
  }
  out = Cyc::from_rational(Rat(sq));
  // rest is squarefree; take Gauss sums prime by prime
  unsigned long m = rest;
  for (unsigned long p = 2; p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (p == 2) {
      out = out * (Cyc::root_of_unity(1, 8) - Cyc::root_of_unity(3, 8));
    } else {
      Cyc g = Cyc::zero();
      for (unsigned long t = 1; t < p; ++t) {
        long ls = legendre_symbol(static_cast<long>(t), static_cast<long>(p));
        Cyc z = Cyc::root_of_unity(static_cast<long>(t), static_cast<long>(p));
        g = ls > 0 ? g + z : g - z;
      }
      if (p % 4 == 3) g = g * Cyc::root_of_unity(3, 4);  // -i * g
      out = out * g;
    }
  }
  return out;
}

}  // namespace qsurg
