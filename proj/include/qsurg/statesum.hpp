#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qsurg/builders.hpp"
#include "qsurg/cocycle.hpp"
#include "qsurg/complex.hpp"
#include "qsurg/cyclotomic.hpp"
#include "qsurg/group.hpp"

namespace qsurg {

/// One gauge model: a finite abelian group and a cocycle whose degree is the
/// spacetime dimension it is evaluated on.
struct DWModel {
  std::string name;
  AbelianGroup group;
  CocycleTable omega;
  int dimension() const { return omega.degree(); }
};

struct open_path_error : std::runtime_error {
  open_path_error() : std::runtime_error("charge line path is not closed") {}
};

/// closed loop of oriented edges weighted by a character of the group
struct ChargeLine {
  std::vector<std::pair<int, int>> path;  // (edge id, +1 forward / -1 back)
  long character = 0;                     // character index in the group
};

struct StateSumOptions {
  int threads = 1;
  long long node_cap = 1'000'000'000;  // backtracking guard
};

Cyc partition_function(const DeltaComplex& cx, const DWModel& model,
                       const StateSumOptions& opt = {});

Cyc partition_with_charge_lines(const DeltaComplex& cx, const DWModel& model,
                                const std::vector<ChargeLine>& lines,
                                const StateSumOptions& opt = {});

/// number of flat colorings, gauge copies included
mpz_class flat_coloring_count(const DeltaComplex& cx, const AbelianGroup& G,
                              const StateSumOptions& opt = {});

/// visit every flat coloring (gauge copies expanded); desk scale only
void for_each_flat_coloring(const DeltaComplex& cx, const AbelianGroup& G,
                            const std::function<void(const std::vector<long>&)>& fn,
                            long long cap = 2'000'000);

/// |Z(Y x S^1)| as a nonnegative integer; hard failure otherwise
mpz_class gsd(const DeltaComplex& spatial, const DWModel& model,
              const StateSumOptions& opt = {});

/// Z of the mapping torus of a named generator on T^fiber_dim
Cyc mcg_trace(McgGenerator g, int fiber_dim, const DWModel& model,
              const StateSumOptions& opt = {});

/// Raw weighted sum over flat colorings subject to per-edge clamps
/// (-1 = free); no gauge collapsing, no vertex normalization.
Cyc clamped_weight_sum(const DeltaComplex& cx, const DWModel& model,
                       const std::vector<long>& clamps,
                       const std::vector<ChargeLine>& lines = {},
                       const StateSumOptions& opt = {});

/// Cylinder transfer data on the one-vertex torus fiber: the state space is
/// indexed by axis-holonomy tuples (flattened mixed radix), and the matrix of
/// the gauge-averaged cylinder with an axis-permutation seam is returned as
/// column-major nonzero entries.
struct CylinderRep {
  long state_count = 0;                 // |G|^fiber_dim
  std::vector<long> image;              // column g -> row g' (-1 if zero col)
  std::vector<Cyc> entry;               // nonzero entry per column
};

CylinderRep cylinder_rep(const DWModel& model, int fiber_dim,
                         const std::vector<int>& axis_perm);

/// closed-loop holonomy of an axis path on the one-vertex kuhn torus
std::vector<ChargeLine> axis_charge_lines(const DeltaComplex& kuhn_t,
                                          int fiber_dim,
                                          const std::vector<long>& characters);

}  // namespace qsurg
