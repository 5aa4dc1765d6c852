#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qsurg {

using Rat = mpq_class;

struct division_by_zero : std::runtime_error {
  division_by_zero() : std::runtime_error("division by zero") {}
};
struct incompatible_order : std::runtime_error {
  explicit incompatible_order(const std::string& m) : std::runtime_error(m) {}
};

/// Element of the cyclotomic field Q(zeta_L), stored in the power basis
/// 1, z, ..., z^{deg-1} with z = exp(2*pi*i/L), reduced modulo the L-th
/// cyclotomic polynomial.  Equality of same-order values is coefficient-wise;
/// mixed-order arithmetic lifts both sides to the lcm order first.
class Cyc {
 public:
  Cyc() : order_(1), coeffs_(1, Rat(0)) {}

  static Cyc zero() { return Cyc(); }
  static Cyc one() { return from_rational(Rat(1)); }
  static Cyc from_rational(const Rat& r);
  static Cyc from_int(long v) { return from_rational(Rat(v)); }

  // zeta_n^k, k reduced mod n
  static Cyc root_of_unity(long k, long n);

  // exact sqrt of a nonnegative integer, as a cyclotomic (Gauss sums)
  static Cyc sqrt_of_unsigned(unsigned long n);

  long order() const { return order_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const;  // throws if not rational
  bool is_integer() const;
  bool is_nonneg_integer() const;
  mpz_class integer_value() const;  // throws if not integer

  Cyc lifted(long new_order) const;  // throws incompatible_order if order % new

  Cyc conj() const;
  Cyc inv() const;  // throws division_by_zero

  std::complex<double> approx() const;

  std::string str() const;
  static Cyc parse(const std::string& s);

  friend Cyc operator+(const Cyc& a, const Cyc& b);
  friend Cyc operator-(const Cyc& a, const Cyc& b);
  friend Cyc operator*(const Cyc& a, const Cyc& b);
  friend Cyc operator/(const Cyc& a, const Cyc& b);
  Cyc operator-() const;
  Cyc& operator+=(const Cyc& b) { *this = *this + b; return *this; }
  Cyc& operator-=(const Cyc& b) { *this = *this - b; return *this; }
  Cyc& operator*=(const Cyc& b) { *this = *this * b; return *this; }
  Cyc& operator/=(const Cyc& b) { *this = *this / b; return *this; }

  bool operator==(const Cyc& b) const;
  bool operator!=(const Cyc& b) const { return !(*this == b); }

  Cyc pow(long e) const;

 private:
  long order_;
  std::vector<Rat> coeffs_;  // length = deg Phi_order

  Cyc(long order, std::vector<Rat> coeffs)
      : order_(order), coeffs_(std::move(coeffs)) {}

  static Cyc from_poly(long order, std::vector<Rat> poly);  // reduces
  friend class CycContext;
};

// Cached data for one cyclotomic order: Phi_L and its degree.
struct CycContext {
  long order;
  long degree;
  std::vector<mpz_class> phi;  // monic, length degree+1

  static const CycContext& get(long order);
};

long lcm_long(long a, long b);

}  // namespace qsurg
