#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qsurg/model_spec.hpp"
#include "qsurg/statesum.hpp"

using namespace qsurg;

namespace {

// independent oracle: enumerate every edge assignment, no gauge fixing,
// no constraint propagation
Cyc brute_Z(const DeltaComplex& cx, const DWModel& model,
            const std::vector<ChargeLine>& lines = {}) {
  const AbelianGroup& G = model.group;
  long E = cx.edge_count();
  double total = std::pow(static_cast<double>(G.size()), static_cast<double>(E));
  REQUIRE(total <= 3e6);
  auto tris = triangle_constraints(cx);
  std::vector<long> vals(E, 0);
  Cyc sum = Cyc::zero();
  long n = static_cast<long>(total);
  for (long code = 0; code < n; ++code) {
    long rem = code;
    for (long e = 0; e < E; ++e) {
      vals[e] = rem % G.size();
      rem /= G.size();
    }
    bool flat = true;
    for (const auto& t : tris)
      if (G.add(vals[t[0]], vals[t[1]]) != vals[t[2]]) {
        flat = false;
        break;
      }
    if (!flat) continue;
    Cyc w = Cyc::one();
    std::vector<long> args(cx.dim());
    for (const auto& cell : cx.cells()) {
      for (int i = 0; i < cx.dim(); ++i)
        args[i] = vals[cx.cell_edge(cell, i, i + 1)];
      Cyc f = model.omega.value(args);
      w = w * (cell.sign > 0 ? f : f.inv());
    }
    for (const auto& line : lines) {
      long hol = G.zero();
      for (auto [e, dir] : line.path)
        hol = dir > 0 ? G.add(hol, vals[e]) : G.add(hol, G.neg(vals[e]));
      w = w * Cyc::root_of_unity(G.char_exponent(line.character, hol),
                                 G.exponent());
    }
    sum += w;
  }
  Rat norm(1);
  for (int i = 0; i < cx.vertex_count(); ++i) norm /= G.size();
  return sum * Cyc::from_rational(norm);
}

mpz_class brute_flat_count(const DeltaComplex& cx, const AbelianGroup& G) {
  long E = cx.edge_count();
  double total = std::pow(static_cast<double>(G.size()), static_cast<double>(E));
  REQUIRE(total <= 2e6);
  auto tris = triangle_constraints(cx);
  std::vector<long> vals(E, 0);
  mpz_class count = 0;
  for (long code = 0; code < static_cast<long>(total); ++code) {
    long rem = code;
    for (long e = 0; e < E; ++e) {
      vals[e] = rem % G.size();
      rem /= G.size();
    }
    bool flat = true;
    for (const auto& t : tris)
      if (G.add(vals[t[0]], vals[t[1]]) != vals[t[2]]) {
        flat = false;
        break;
      }
    if (flat) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("flat coloring counts against the exhaustive oracle") {
  DWModel z2 = build_model(builtin_model("z2_toric"));
  auto s3 = sphere(3);
  CHECK(flat_coloring_count(s3, z2.group) == 16);
  CHECK(brute_flat_count(s3, z2.group) == 16);

  auto t3 = kuhn_torus(3, 1);
  CHECK(flat_coloring_count(t3, z2.group) == 8);
  CHECK(brute_flat_count(t3, z2.group) == 8);

  DWModel triv = build_model(builtin_model("trivial2d"));
  CHECK(flat_coloring_count(t3, triv.group) == 1);

  // gauge-expanded enumeration agrees
  long seen = 0;
  for_each_flat_coloring(s3, z2.group,
                         [&](const std::vector<long>&) { ++seen; });
  CHECK(seen == 16);
}

TEST_CASE("sphere partition functions") {
  DWModel z2 = build_model(builtin_model("z2_toric"));
  Cyc z = partition_function(sphere(3), z2);
  CHECK(z == Cyc::from_rational(Rat(1, 2)));
  CHECK(z == brute_Z(sphere(3), z2));

  DWModel ds = build_model(builtin_model("z2_double_semion"));
  CHECK(partition_function(sphere(3), ds) == Cyc::from_rational(Rat(1, 2)));

  DWModel z2_4d = build_model(builtin_model("z2_4d"));
  CHECK(partition_function(sphere(4), z2_4d) == Cyc::from_rational(Rat(1, 2)));
}

TEST_CASE("torus partition functions count representations") {
  DWModel z2 = build_model(builtin_model("z2_toric"));
  auto t3 = kuhn_torus(3, 1);
  CHECK(partition_function(t3, z2) == Cyc::from_int(4));
  CHECK(brute_Z(t3, z2) == Cyc::from_int(4));

  DWModel ds = build_model(builtin_model("z2_double_semion"));
  CHECK(brute_Z(t3, ds) == partition_function(t3, ds));

  DWModel z2_4d = build_model(builtin_model("z2_4d"));
  auto t4 = kuhn_torus(4, 1);
  CHECK(partition_function(t4, z2_4d) == Cyc::from_int(8));
  CHECK(brute_Z(t4, z2_4d) == Cyc::from_int(8));
}

TEST_CASE("normalization on the product spheres") {
  for (const char* name : {"trivial2d", "z2_toric", "z2_double_semion",
                           "z2z2_p12", "z2cube_p123"}) {
    DWModel m = build_model(builtin_model(name));
    CHECK_MESSAGE(partition_function(builtin_complex("S2xS1"), m) == Cyc::one(),
                  name);
  }
  for (const char* name : {"trivial3d", "z2_4d", "z2z2_p112"}) {
    DWModel m = build_model(builtin_model(name));
    CHECK_MESSAGE(partition_function(builtin_complex("S3xS1"), m) == Cyc::one(),
                  name);
  }
}

TEST_CASE("pachner-equivalent triangulations agree") {
  DWModel ds = build_model(builtin_model("z2_double_semion"));
  auto a = partition_function(kuhn_torus(3, 1), ds);
  auto b = partition_function(product(kuhn_torus(2, 1), circle(), "T2xS1"), ds);
  CHECK(a == b);
  auto c = partition_function(product(sphere(2), circle(), "S2xS1"), ds);
  CHECK(c == Cyc::one());
}

TEST_CASE("disjoint unions factorize") {
  DWModel ds = build_model(builtin_model("z2_double_semion"));
  auto s3 = sphere(3);
  auto t3 = kuhn_torus(3, 1);
  auto uni = disjoint_union(s3, t3);
  CHECK(partition_function(uni, ds) ==
        partition_function(s3, ds) * partition_function(t3, ds));
}

TEST_CASE("orientation reversal conjugates the state sum") {
  for (const char* name : {"z2_double_semion", "z2cube_p123"}) {
    DWModel m = build_model(builtin_model(name));
    auto t3 = kuhn_torus(3, 1);
    CHECK(partition_function(t3.reversed(), m) ==
          partition_function(t3, m).conj());
  }
  DWModel m4 = build_model(builtin_model("z2quad_p1234"));
  auto t4 = kuhn_torus(4, 1);
  CHECK(partition_function(t4.reversed(), m4) ==
        partition_function(t4, m4).conj());
}

TEST_CASE("ground state counts") {
  DWModel z2 = build_model(builtin_model("z2_toric"));
  CHECK(gsd(sphere(2), z2) == 1);
  CHECK(gsd(kuhn_torus(2, 1), z2) == 4);
  DWModel z2_4d = build_model(builtin_model("z2_4d"));
  CHECK(gsd(sphere(3), z2_4d) == 1);
  CHECK(gsd(kuhn_torus(3, 1), z2_4d) == 8);
}

TEST_CASE("charge lines on the three-torus") {
  DWModel z2 = build_model(builtin_model("z2_toric"));
  auto t3 = kuhn_torus(3, 1);

  // no lines reduces to the plain partition function
  CHECK(partition_with_charge_lines(t3, z2, {}) == partition_function(t3, z2));

  // trivial characters on all three axes likewise
  auto triv_lines = axis_charge_lines(t3, 3, {0, 0, 0});
  CHECK(partition_with_charge_lines(t3, z2, triv_lines) ==
        partition_function(t3, z2));

  // one sign-character line: every value checked against the brute oracle
  auto one = axis_charge_lines(t3, 3, {1});
  Cyc got = partition_with_charge_lines(t3, z2, one);
  CHECK(got == brute_Z(t3, z2, one));
  CHECK(got == Cyc::zero());  // the summed character kills the free axis

  // twisted model: full character grid matches the oracle
  DWModel tw = build_model(builtin_model("z2cube_p123"));
  auto lines = axis_charge_lines(t3, 3, {tw.group.index({1, 0, 0}),
                                         tw.group.index({0, 1, 0}),
                                         tw.group.index({0, 0, 1})});
  CHECK(partition_with_charge_lines(t3, tw, lines) == brute_Z(t3, tw, lines));

  // open path rejected: pick an edge with distinct endpoints
  DWModel z22 = build_model(builtin_model("z2z2_p12"));
  auto s2xs1 = builtin_complex("S2xS1");
  int open_edge = -1;
  for (int e = 0; e < s2xs1.edge_count(); ++e) {
    auto [tl, hd] = s2xs1.edge_endpoints(e);
    if (tl != hd) {
      open_edge = e;
      break;
    }
  }
  REQUIRE(open_edge >= 0);
  ChargeLine bad;
  bad.path = {{open_edge, 1}};
  CHECK_THROWS_AS(partition_with_charge_lines(s2xs1, z22, {bad}),
                  open_path_error);
}

TEST_CASE("mapping torus traces for the identity") {
  DWModel z2 = build_model(builtin_model("z2_toric"));
  CHECK(mcg_trace(McgGenerator::Id, 2, z2) == Cyc::from_int(4));
  DWModel z2_4d = build_model(builtin_model("z2_4d"));
  CHECK(mcg_trace(McgGenerator::Id, 3, z2_4d) == Cyc::from_int(8));
}

TEST_CASE("flat counts on the twisted-seam mapping tori") {
  // representation counts from the fundamental group: the monodromy relations
  // t g t^{-1} = m(g) pin the fiber holonomies, t stays free
  DWModel z2 = build_model(builtin_model("z2_toric"));

  // quarter turn over Z_2: relations x = y and y = -x = x, so x = y free?
  // no: both must hold, leaving the diagonal {x = y}; |Hom| = 2 * 2 = 4.
  // both mapping tori keep 4 vertices, so counts are |Hom| * |G|^3 = 32.
  auto m = mcg_mapping_torus(McgGenerator::SxyRotation, 2);
  CHECK(flat_coloring_count(m, z2.group) == 32);

  // shear: y-cycle maps to x+y, forcing x = 0; |Hom| = 4
  auto n = mcg_mapping_torus(McgGenerator::TxyShear, 2);
  CHECK(flat_coloring_count(n, z2.group) == 32);
}

TEST_CASE("cylinder rep is an exact projector with matching traces") {
  for (const char* name : {"z2_4d", "z2z2_p112"}) {
    DWModel m = build_model(builtin_model(name));
    const long n = m.group.size() * m.group.size() * m.group.size();

    CylinderRep P = cylinder_rep(m, 3, {0, 1, 2});
    CHECK(P.state_count == n);
    Cyc trP = Cyc::zero();
    for (long g = 0; g < n; ++g) {
      // projector: diagonal image, entries 0 or 1
      if (P.image[g] >= 0) CHECK(P.image[g] == g);
      CHECK((P.entry[g] == Cyc::zero() || P.entry[g] == Cyc::one()));
      if (P.image[g] == g) trP += P.entry[g];
    }
    CHECK(trP == partition_function(kuhn_torus(4, 1), m));

    CylinderRep S = cylinder_rep(m, 3, {1, 2, 0});
    Cyc trS = Cyc::zero();
    for (long g = 0; g < n; ++g)
      if (S.image[g] == g) trS += S.entry[g];
    CHECK(trS == partition_function(mcg_mapping_torus(McgGenerator::SxyzCycle, 3), m));
  }
}

TEST_CASE("deterministic across parallel widths") {
  DWModel tw = build_model(builtin_model("z2cube_p123"));
  auto t3 = kuhn_torus(3, 1);
  StateSumOptions w1;
  w1.threads = 1;
  StateSumOptions w4;
  w4.threads = 4;
  Cyc a = partition_function(t3, tw, w1);
  Cyc b = partition_function(t3, tw, w4);
  CHECK(a == b);
  CHECK(a.str() == b.str());
}
