#pragma once

#include <optional>

#include "qsurg/modular2d.hpp"
#include "qsurg/modular3d.hpp"
#include "qsurg/report.hpp"

namespace qsurg {

/// Cross-gluing of two closed manifolds along a common cut with a
/// one-dimensional state space: the four amplitudes must multiply equally.
struct GluingScenario {
  std::string name;
  Cyc z_mm, z_nn, z_nm, z_mn;  // Z(M_U|M_D), Z(N_U|N_D), Z(N_U|M_D), Z(M_U|N_D)
  long cut_dimension = 1;      // state count at the cut; 1 required
};

CheckResult verify_gluing_identity(const GluingScenario& s);

/// Verlinde-type scenarios assembled from the computed matrices, one per
/// label triple; returns the first failure or a pass over the sweep.
CheckResult verify_verlinde(const ModularData2D& md);

/// Both directions of the cut-and-reglue relation for a generator matrix on
/// a family of amplitudes (rows = outer insertions).
CheckResult verify_regluing(const std::string& name, const CMat& K,
                            const CMat& amplitudes);
CheckResult verify_regluing_rotation(const Data3p1D& d3);

CheckResult verify_particle_string(const Data3p1D& d3);
CheckResult verify_string_particle(const Data3p1D& d3);

/// the two-line triple-link identity; sweeps all label triples up to
/// full_cube_cap labels, above that a deterministic admissible subset
CheckResult verify_three_loop(const Data3p1D& d3, long full_cube_cap = 80);

CheckResult verify_fusion_consistency(const Data3p1D& d3);

/// vacuum-collapse consistency: the six-step chain with empty outer
/// insertions must reproduce the base vector
CheckResult verify_chain_base(const Data3p1D& d3);

std::vector<CheckResult> verify_suite_2d(const ModularData2D& md,
                                         const StateSumOptions& opt = {});
std::vector<CheckResult> verify_suite_3d(const Data3p1D& d3,
                                         const StateSumOptions& opt = {});

}  // namespace qsurg
