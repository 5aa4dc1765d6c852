#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qsurg/modular2d.hpp"

namespace qsurg {

/// String labels of a (3+1)-dimensional model, organized by flux sector:
/// the three-torus state space decomposes over one axis holonomy, each block
/// carrying the particle labels of the slant-reduced (2+1)-dimensional model.
struct SectorTheory {
  long flux = 0;       // group element of the sector holonomy
  DWModel model2d;     // same group, slant cocycle
  std::vector<Anyon> anyons;
};

struct StringRef {
  long sector = 0;  // index into sectors (= group element index)
  long anyon = 0;   // index into that sector's anyon list
};

/// column-sparse matrix over string labels
using SparseCols = std::vector<std::vector<std::pair<long, Cyc>>>;

struct Data3p1D {
  DWModel model;
  std::vector<SectorTheory> sectors;
  std::vector<StringRef> strings;          // global order: sector, then anyon
  std::vector<long> sector_offset;         // strings index of sector start

  // frame conventions, fixed by the oracle battery at build time
  int flux_slot = 0, charge_slot = 1, sector_slot = 2;
  bool conj_weights = false;

  // basis columns in the flat-coloring space of the one-vertex three-torus
  struct BCol {
    std::vector<long> colorings;
    CVec coeff;
  };
  std::vector<BCol> basis;

  SparseCols S_xyz;   // per column, nonzero (row, value)
  CVec T_xy;          // diagonal
  Cyc z_s4;           // sphere normalization from the state sum
  CVec ltri_base;     // one worldsheet in the four-sphere, per label

  /// Worldsheet-operator frame: one label per (linked flux, two winding
  /// characters).  The states form a tight frame on the physical space, so
  /// the surgery identities hold verbatim; when the model has no doubled
  /// labels the frame is an orthonormal basis.
  struct OpFrame {
    long gsize = 1;
    long count = 1;                         // |G|^3
    std::vector<char> physical;             // per coloring
    std::vector<long> rot_image;            // coloring permutation
    std::vector<long> rot_preimage;
    CVec rot_entry;                         // unit phases (or zero)
    CVec L;                                 // base amplitudes, one per label
    Cyc z_s4;
    Cyc support_scale;                      // bra weight of the complement
    std::vector<long> base_support;         // colorings (g0 free, 0, 0)

    long index(long a, long m2, long m3) const {
      return (a * gsize + m2) * gsize + m3;
    }
    long mul(const AbelianGroup& G, long x, long y) const;
    /// worldsheet state in the coloring space
    std::vector<std::pair<long, Cyc>> column(const AbelianGroup& G,
                                             long label) const;
    /// row i of the rotation amplitudes <i| R |j>
    const std::map<long, Cyc>& s_row(const AbelianGroup& G, long i) const;
    /// u(eta) = sum_eta' S[eta'][eta] L[eta']
    CVec u_vector(const AbelianGroup& G) const;

    mutable std::map<long, std::map<long, Cyc>> row_memo;
  };
  OpFrame op;

  /// X[zeta] over the requested labels for a fixed mu1 (operator frame)
  std::map<long, Cyc> op_chain_entries(long mu1, const std::vector<long>& zetas,
                                       const CVec& u) const;
  /// full six-step evaluation in the operator frame (small models)
  Cyc op_ltri(long mu3, long mu2, long mu1) const;

  long n() const { return static_cast<long>(strings.size()); }
  long label_index(long sector, long anyon) const;
  const Anyon& anyon_of(long label) const;
  long flux_of(long label) const;    // linked holonomy of the worldsheet
  long sector_of(long label) const;  // sector holonomy

  /// particles: one per character of the group
  long particle_count() const { return model.group.size(); }

  /// shrinkable pure-flux labels, one per group element
  std::vector<long> s2_labels;  // indexed by flux element
  /// label embedding a particle (trivial fluxes, pure character)
  long particle_label(long character) const;

  /// worldsheet fusion, computed lazily from the charge-function products
  const std::vector<std::pair<long, long>>& fuse(long mu1, long mu2) const;

  /// particle-string braiding table entry
  Cyc link_s2s1(long mu, long sigma_character) const;

  /// full triple-link evaluation through the modular chain
  Cyc ltri(long mu3, long mu2, long mu1) const;

  /// X[mu1][zeta] = sum over the inverse rotation, fusion with mu1, forward
  /// rotation against the base vector; the building block of the triple-link
  /// identities
  CVec chain_row(long mu1) const;

  CMat s_dense() const;  // small models only
  mutable std::map<std::pair<long, long>, std::vector<std::pair<long, long>>>
      fusion_memo;

 private:
  friend Data3p1D compute_modular3d(const DWModel&, const StateSumOptions&);
  SparseCols S_inv;  // = dagger, verified unitary at build
};

Data3p1D compute_modular3d(const DWModel& model4d,
                           const StateSumOptions& opt = {});

}  // namespace qsurg
