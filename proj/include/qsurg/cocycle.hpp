#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "qsurg/cyclotomic.hpp"
#include "qsurg/group.hpp"

namespace qsurg {

struct TwistTerm {
  enum class Kind { PairI_II, TripleLow, TripleHigh, Quad };
  Kind kind;
  std::vector<long> indices;  // 1-based subgroup indices
  long p = 0;
};

struct TwistSpec {
  int dimension = 3;  // 3 or 4; cocycle degree equals dimension
  std::vector<TwistTerm> terms;
};

/// U(1) cochain on G^degree whose values are roots of unity zeta_L^k.
/// Stores exponents densely up to a configurable entry cap, evaluates
/// through the defining formula above it.
class CocycleTable {
 public:
  using Evaluator = std::function<long(const std::vector<long>&)>;

  CocycleTable() = default;
  CocycleTable(AbelianGroup g, int degree, long phase_order, Evaluator eval,
               long dense_cap_entries = kDefaultDenseCap);

  static constexpr long kDefaultDenseCap = 4096;  // |G|^degree entries

  const AbelianGroup& group() const { return group_; }
  int degree() const { return degree_; }
  long phase_order() const { return order_; }
  bool dense() const { return !values_.empty(); }

  /// exponent k of the value zeta_L^k on the argument tuple
  long exponent(const std::vector<long>& args) const;
  Cyc value(const std::vector<long>& args) const;

  CocycleTable with_dense_cap(long cap) const;

 private:
  AbelianGroup group_;
  int degree_ = 0;
  long order_ = 1;
  Evaluator eval_;
  std::vector<int32_t> values_;  // dense exponents, empty if lazy
  long flatten(const std::vector<long>& args) const;
};

/// Validate p ranges and indices of a twist against a group.
void normalize_twist(const AbelianGroup& g, TwistSpec& twist);

CocycleTable build_cocycle_2p1d(const AbelianGroup& g, TwistSpec twist,
                                long dense_cap = CocycleTable::kDefaultDenseCap);
CocycleTable build_cocycle_3p1d(const AbelianGroup& g, TwistSpec twist,
                                long dense_cap = CocycleTable::kDefaultDenseCap);

struct CocycleCheck {
  bool pass = false;
  std::vector<long> witness;  // first violating tuple if fail
};

/// Evaluates the coboundary on every (degree+1)-tuple.
CocycleCheck check_cocycle(const CocycleTable& t,
                           long enumeration_cap = 1 << 22);

/// Slant product by a group element: degree n -> n-1, alternating signs,
/// insertion slot 0 positive.
CocycleTable slant(const CocycleTable& t, long a,
                   long dense_cap = CocycleTable::kDefaultDenseCap);

}  // namespace qsurg
