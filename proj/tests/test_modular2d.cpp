#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "qsurg/model_spec.hpp"
#include "qsurg/modular2d.hpp"

using namespace qsurg;

namespace {

const std::vector<std::string> k2dModels = {
    "trivial2d", "z2_toric", "z2_double_semion", "z2z2_p12", "z2cube_p123"};

ModularData2D& data_for(const std::string& name) {
  static std::map<std::string, ModularData2D> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache
             .emplace(name,
                      compute_modular2d(build_model(builtin_model(name))))
             .first;
  return it->second;
}

}  // namespace

TEST_CASE("label counts equal the three-torus state sum") {
  std::map<std::string, long> expect = {{"trivial2d", 1},
                                        {"z2_toric", 4},
                                        {"z2_double_semion", 4},
                                        {"z2z2_p12", 16},
                                        {"z2cube_p123", 22}};
  for (const auto& name : k2dModels) {
    auto& md = data_for(name);
    Cyc zt3 = partition_function(kuhn_torus(3, 1), md.model);
    CHECK_MESSAGE(Cyc::from_int(md.size()) == zt3, name);
    CHECK_MESSAGE(md.size() == expect[name], name);
  }
}

TEST_CASE("triple-twist model has eight abelian and fourteen doubled labels") {
  auto& md = data_for("z2cube_p123");
  long d1 = 0, d2 = 0;
  for (const auto& l : md.labels) {
    if (l.dim == 1) ++d1;
    if (l.dim == 2) ++d2;
    CHECK((l.dim == 1 || l.dim == 2));
    if (l.flux == md.model.group.zero()) CHECK(l.dim == 1);
  }
  CHECK(d1 == 8);
  CHECK(d2 == 14);
}

TEST_CASE("toric S and T match the standard tables") {
  auto& md = data_for("z2_toric");
  REQUIRE(md.size() == 4);
  Cyc h = Cyc::from_rational(Rat(1, 2));
  CMat want = {{h, h, h, h}, {h, h, -h, -h}, {h, -h, h, -h}, {h, -h, -h, h}};
  CHECK(cmat_equal(md.S, want));
  CHECK(md.Tdiag[0] == Cyc::one());
  CHECK(md.Tdiag[1] == Cyc::one());
  CHECK(md.Tdiag[2] == Cyc::one());
  CHECK(md.Tdiag[3] == -Cyc::one());
}

TEST_CASE("double semion spins are the fourth roots") {
  auto& md = data_for("z2_double_semion");
  REQUIRE(md.size() == 4);
  Cyc i = Cyc::root_of_unity(1, 4);
  auto count = [&](const Cyc& v) {
    long c = 0;
    for (const auto& t : md.Tdiag)
      if (t == v) ++c;
    return c;
  };
  CHECK(count(Cyc::one()) == 2);
  CHECK(count(i) == 1);
  CHECK(count(-i) == 1);
  CHECK(md.Tdiag[0] == Cyc::one());
}

TEST_CASE("modular consistency for every builtin model") {
  for (const auto& name : k2dModels) {
    auto& md = data_for(name);
    long n = md.size();
    CHECK_MESSAGE(cmat_is_identity(cmat_mul(md.S, cmat_dagger(md.S))), name);
    CHECK(md.Tdiag[0] == Cyc::one());
    for (long i = 0; i < n; ++i)
      CHECK(md.Tdiag[i] * md.Tdiag[i].conj() == Cyc::one());
    CMat S2 = cmat_mul(md.S, md.S);
    CHECK_MESSAGE(cmat_is_permutation(S2), name);
    CMat ST = md.S;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) ST[i][j] = md.S[i][j] * md.Tdiag[j];
    CMat ST3 = cmat_mul(cmat_mul(ST, ST), ST);
    CHECK_MESSAGE(cmat_equal(ST3, S2), name);
    for (long j = 0; j < n; ++j)
      CHECK(md.S[0][j] ==
            Cyc::from_rational(Rat(md.labels[j].dim, md.model.group.size())));
  }
}

TEST_CASE("fusion tensor properties") {
  for (const auto& name : k2dModels) {
    auto& md = data_for(name);
    long n = md.size();
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b)
        CHECK(md.N[a][0][b] == (a == b ? 1 : 0));
    bool assoc = true;
    for (long a = 0; a < n && assoc; ++a)
      for (long b = 0; b < n && assoc; ++b)
        for (long c = 0; c < n && assoc; ++c)
          for (long d = 0; d < n && assoc; ++d) {
            long lhs = 0, rhs = 0;
            for (long e = 0; e < n; ++e) {
              lhs += md.N[e][a][b] * md.N[d][e][c];
              rhs += md.N[e][b][c] * md.N[d][a][e];
            }
            if (lhs != rhs) assoc = false;
          }
    CHECK_MESSAGE(assoc, name);
    for (long a = 0; a < n; ++a) {
      long vac_channels = 0;
      for (long b = 0; b < n; ++b) vac_channels += md.N[0][a][b];
      CHECK(vac_channels == 1);  // unique conjugate label
    }
  }
}

TEST_CASE("toric fusion realizes the electric-magnetic pair") {
  auto& md = data_for("z2_toric");
  // order: 1, e, m, f
  CHECK(md.N[3][1][2] == 1);  // e x m = f
  CHECK(md.N[0][3][3] == 1);  // f x f = 1
  CHECK(md.N[0][1][2] == 0);
}

TEST_CASE("doubled labels fuse with matching dimension count") {
  auto& md = data_for("z2cube_p123");
  long n = md.size();
  for (long a = 0; a < n; ++a) {
    long abar = -1;
    for (long b = 0; b < n; ++b)
      if (md.N[0][a][b] == 1) abar = b;
    REQUIRE(abar >= 0);
    long dim_channels = 0;
    for (long c = 0; c < n; ++c)
      dim_channels += md.N[c][a][abar] * md.labels[c].dim;
    CHECK(dim_channels == md.labels[a].dim * md.labels[abar].dim);
  }
}

TEST_CASE("mapping torus traces match the algebraic traces") {
  for (const auto& name : k2dModels) {
    auto& md = data_for(name);
    Cyc trS = cmat_trace(md.S);
    Cyc trT = Cyc::zero();
    for (const auto& t : md.Tdiag) trT += t;
    Cyc zS = mcg_trace(McgGenerator::SxyRotation, 2, md.model);
    Cyc zT = mcg_trace(McgGenerator::TxyShear, 2, md.model);
    std::string whereS = name + " S-trace";
    std::string whereT = name + " T-trace";
    CHECK_MESSAGE(trS == zS, whereS);
    CHECK_MESSAGE(trT == zT, whereT);
  }
}

TEST_CASE("toric code trace values") {
  auto& md = data_for("z2_toric");
  CHECK(cmat_trace(md.S) == Cyc::from_int(2));
  Cyc trT = Cyc::zero();
  for (const auto& t : md.Tdiag) trT += t;
  CHECK(trT == Cyc::from_int(2));
}

TEST_CASE("borromean table is flat for untwisted models") {
  auto& md = data_for("z2_toric");
  auto t3 = t3_line_table(md);
  auto br = borromean_from_t3(md, t3);
  Cyc want = Cyc::from_rational(Rat(1, 2));
  for (const auto& v : br) CHECK(v == want);

  auto& triv = data_for("trivial2d");
  auto br0 = borromean_from_t3(triv, t3_line_table(triv));
  REQUIRE(br0.size() == 1);
  CHECK(br0[0] == Cyc::one());
}

TEST_CASE("triple twist shows up in the borromean table") {
  auto& tw = data_for("z2cube_p123");
  ModelSpec plain;
  plain.name = "z2cube_plain";
  plain.orders = {2, 2, 2};
  plain.twist.dimension = 3;
  ModularData2D un = compute_modular2d(build_model(plain));

  auto t3_tw = t3_line_table(tw);
  auto t3_un = t3_line_table(un);

  // the charge-line tables are indexed by shared characters and must differ
  const AbelianGroup& G = tw.model.group;
  bool line_differs = false;
  for (long m1 = 0; m1 < G.size() && !line_differs; ++m1)
    for (long m2 = 0; m2 < G.size() && !line_differs; ++m2)
      for (long m3 = 0; m3 < G.size() && !line_differs; ++m3) {
        long a1 = tw.pure_charge_label(m1), a2 = tw.pure_charge_label(m2),
             a3 = tw.pure_charge_label(m3);
        long b1 = un.pure_charge_label(m1), b2 = un.pure_charge_label(m2),
             b3 = un.pure_charge_label(m3);
        REQUIRE(a1 >= 0);
        REQUIRE(b1 >= 0);
        Cyc vt = t3_tw[triple_index(tw.size(), a1, a2, a3)];
        Cyc vu = t3_un[triple_index(un.size(), b1, b2, b3)];
        if (vt != vu) line_differs = true;
      }
  CHECK(line_differs);

  // the untwisted ring table is constant; the twisted one leaves that value
  auto br_tw = borromean_from_t3(tw, t3_tw);
  auto br_un = borromean_from_t3(un, t3_un);
  Cyc flat = br_un[0];
  for (const auto& v : br_un) CHECK(v == flat);
  bool ring_differs = false;
  for (const auto& v : br_tw)
    if (v != flat) ring_differs = true;
  CHECK(ring_differs);
}

TEST_CASE("charge-line table rotates back through S") {
  auto& md = data_for("z2z2_p12");
  auto t3 = t3_line_table(md);
  auto br = borromean_from_t3(md, t3);
  long n = md.size();
  CVec cur = br;
  for (int slot = 0; slot < 3; ++slot) {
    CVec next(n * n * n, Cyc::zero());
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        for (long k = 0; k < n; ++k) {
          Cyc& acc = next[triple_index(n, i, j, k)];
          long a = slot == 0 ? i : slot == 1 ? j : k;
          for (long t = 0; t < n; ++t) {
            long src = slot == 0   ? triple_index(n, t, j, k)
                       : slot == 1 ? triple_index(n, i, t, k)
                                   : triple_index(n, i, j, t);
            if (md.S[a][t].is_zero() || cur[src].is_zero()) continue;
            acc += md.S[a][t] * cur[src];
          }
        }
    cur = std::move(next);
  }
  for (long idx = 0; idx < n * n * n; ++idx) CHECK(cur[idx] == t3[idx]);
}
