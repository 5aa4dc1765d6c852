#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsurg {

struct cap_exceeded : std::runtime_error {
  explicit cap_exceeded(const std::string& m) : std::runtime_error(m) {}
};

/// Finite abelian group prod_i Z_{N_i}.  Elements are indexed 0..|G|-1 in
/// lexicographic order of their tuples (last factor fastest).
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<long> orders, long cap = 64);

  const std::vector<long>& orders() const { return orders_; }
  long rank() const { return static_cast<long>(orders_.size()); }
  long size() const { return size_; }
  long exponent() const { return exponent_; }

  std::vector<long> tuple(long idx) const;
  long index(const std::vector<long>& t) const;

  long zero() const { return 0; }
  long add(long a, long b) const;
  long neg(long a) const;
  long component(long a, long i) const;

  /// character m evaluated at g, as a phase exponent: chi_m(g) = zeta_L^k
  /// with L = exponent().  Characters are indexed like elements.
  long char_exponent(long m, long g) const;

  std::string tuple_str(long idx) const;

 private:
  std::vector<long> orders_;
  std::vector<long> strides_;
  long size_ = 1;
  long exponent_ = 1;
};

/// Subgroup of an AbelianGroup with an independent generator decomposition
/// Z = <g_1> + ... + <g_r>, |<g_j>| = m_j, computed via Smith normal form.
struct SubgroupBasis {
  std::vector<long> elements;     // sorted element indices
  std::vector<long> generators;   // element indices, independent
  std::vector<long> gen_orders;   // m_j >= 2
  // exponent tuple of each element of `elements` over the generators
  std::vector<std::vector<long>> exponents;

  long size() const { return static_cast<long>(elements.size()); }
  long position_of(long element) const;  // index into `elements`, -1 if absent
};

SubgroupBasis subgroup_basis(const AbelianGroup& G,
                             const std::vector<long>& elements);

/// Closure of a set of elements under the group law.
std::vector<long> subgroup_closure(const AbelianGroup& G,
                                   std::vector<long> gens);

}  // namespace qsurg
