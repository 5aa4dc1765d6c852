#pragma once

#include <string>
#include <vector>

#include "qsurg/linalg.hpp"
#include "qsurg/statesum.hpp"

namespace qsurg {

/// Particle label of a (2+1)-dimensional model: a flux together with a
/// projective character of the regular subgroup of its slant 2-cochain.
struct Anyon {
  long flux = 0;
  SubgroupBasis regular;        // Z = {b : eps_a(b,c) = eps_a(c,b) for all c}
  long phase_mod = 1;           // M: character values are zeta_M powers
  std::vector<long> phi;        // exponent of phi on regular.elements[i]
  long dim = 1;                 // sqrt(|G| / |Z|)

  bool charge_defined_at(long g) const { return regular.position_of(g) >= 0; }
  /// chi~(g) = dim * zeta_M^{phi}, zero off the regular subgroup
  Cyc chi(long g) const;
  /// phi alone (unit modulus), g must lie in the regular subgroup
  Cyc phase(long g) const;
};

struct ModularData2D {
  DWModel model;
  std::vector<Anyon> labels;  // vacuum first, then (flux, charge) lex
  CMat S;
  CVec Tdiag;
  std::vector<std::vector<std::vector<long>>> N;  // N[c][a][b]

  long size() const { return static_cast<long>(labels.size()); }
  /// label index of the pure charge (flux 0, character m); -1 if absent
  long pure_charge_label(long character) const;
  /// character index of a flux-0 label; -1 for flux-carrying labels
  long character_of_label(long label) const;
};

/// labels only (slant, regular subgroups, projective characters)
std::vector<Anyon> anyons(const DWModel& model2d);

/// labels + S + T + Verlinde fusion; integrality enforced
ModularData2D compute_modular2d(const DWModel& model2d);

/// amplitudes of three orthogonal charge lines on the three-torus, assembled
/// over all label triples: flux-carrying insertions have no flat support, the
/// pure-charge block comes from the state sum
CVec t3_line_table(const ModularData2D& md, const StateSumOptions& opt = {});

/// undo the three modular rotations: contract the inverse S once per index
CVec borromean_from_t3(const ModularData2D& md, const CVec& t3);

long triple_index(long n, long i, long j, long k);

}  // namespace qsurg
