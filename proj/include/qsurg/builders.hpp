#pragma once

#include <string>
#include <vector>

#include "qsurg/complex.hpp"

namespace qsurg {

/// S^n as the boundary of the (n+1)-simplex.
DeltaComplex sphere(int n);

/// T^d from the staircase triangulation of an N^d cube grid with opposite
/// faces identified; N=1 gives the one-vertex quotient with d! top cells.
DeltaComplex kuhn_torus(int d, int grid = 1);

DeltaComplex circle();    // = kuhn_torus(1)
DeltaComplex interval();  // two vertices, one edge (not closed)

struct Product {
  DeltaComplex cx;
  // provenance: product vertex id -> (vertex of A, vertex of B)
  std::vector<std::pair<int, int>> vertex_pair;
  // product edge id -> (a_is_edge, a_id, b_is_edge, b_id)
  struct EdgeSrc {
    bool a_is_edge;
    int a_id;
    bool b_is_edge;
    int b_id;
  };
  std::vector<EdgeSrc> edge_src;
};

/// Staircase triangulation of |A| x |B| (dim sum <= 4 for our use).
Product ez_product(const DeltaComplex& a, const DeltaComplex& b,
                   const std::string& name);

DeltaComplex product(const DeltaComplex& a, const DeltaComplex& b,
                     const std::string& name);

DeltaComplex disjoint_union(const DeltaComplex& a, const DeltaComplex& b);

/// Simplicial automorphism of a complex given on vertices and edges.
struct Automorphism {
  std::vector<int> vertex_image;
  std::vector<int> edge_image;
};

/// (K x I) / ((x,1) ~ (phi(x),0)) for a simplicial automorphism phi.
DeltaComplex mapping_torus_of_automorphism(const DeltaComplex& k,
                                           const Automorphism& phi,
                                           const std::string& name);

/// T^2 cut by both diagonals of the fundamental square with edge midpoints;
/// carries the quarter-turn as a simplicial automorphism.
DeltaComplex crosscut_torus();
Automorphism crosscut_quarter_turn(const DeltaComplex& cc);

/// axis permutation automorphism of kuhn_torus(d, 1)
Automorphism kuhn_axis_permutation(const DeltaComplex& t,
                                   const std::vector<int>& perm);

/// Mapping torus of the plane shear (x,y) -> (x+y,y) on T^2, layered from a
/// 2x2 grid torus with one diagonal flip per column.
DeltaComplex shear_mapping_torus_2d();

/// named MCG generators the catalog supports
enum class McgGenerator { Id, SxyRotation, TxyShear, SxyzCycle };

/// mapping torus of the generator acting on T^fiber_dim (fiber_dim 2 or 3)
DeltaComplex mcg_mapping_torus(McgGenerator g, int fiber_dim);

/// mapping_torus(base T^d, m) with m an integer matrix, det +-1.  Supports
/// identity, coordinate permutations, the SL(2,Z) quarter turn and the
/// (x,y)-shear; other matrices raise.
DeltaComplex mapping_torus(int fiber_dim,
                           const std::vector<std::vector<long>>& m);

/// catalog: S2 S3 S4 T2 T3 T4 S2xS1 S3xS1 S2xS2 S2xT2
DeltaComplex builtin_complex(const std::string& name);
std::vector<std::string> builtin_complex_names();

}  // namespace qsurg
