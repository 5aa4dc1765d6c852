#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "qsurg/builders.hpp"
#include "qsurg/complex.hpp"

using namespace qsurg;

TEST_CASE("boundary of the 4-simplex is a valid 3-sphere") {
  DeltaComplex s3 = sphere(3);
  CHECK(s3.cells().size() == 5);
  auto v = s3.validate();
  CHECK(v.pass);
  CHECK(v.euler == 0);
  CHECK(v.f_vector == std::vector<long>{5, 10, 10, 5});
}

TEST_CASE("boundary of the 5-simplex") {
  DeltaComplex s4 = sphere(4);
  CHECK(s4.vertex_count() == 6);
  CHECK(s4.cells().size() == 6);
  auto v = s4.validate();
  CHECK(v.pass);
  CHECK(v.euler == 2);
}

TEST_CASE("one-vertex torus triangulations") {
  DeltaComplex t2 = kuhn_torus(2, 1);
  auto v2 = t2.validate();
  CHECK(v2.pass);
  CHECK(v2.f_vector == std::vector<long>{1, 3, 2});
  CHECK(v2.euler == 0);

  DeltaComplex t3 = kuhn_torus(3, 1);
  auto v3 = t3.validate();
  CHECK(v3.pass);
  CHECK(t3.cells().size() == 6);
  CHECK(v3.f_vector == std::vector<long>{1, 7, 12, 6});
  CHECK(v3.euler == 0);

  DeltaComplex t4 = kuhn_torus(4, 1);
  auto v4 = t4.validate();
  CHECK(v4.pass);
  CHECK(t4.cells().size() == 24);
  CHECK(t4.vertex_count() == 1);
  CHECK(v4.euler == 0);
}

TEST_CASE("grid torus") {
  DeltaComplex t2 = kuhn_torus(2, 2);
  auto v = t2.validate();
  CHECK(v.pass);
  CHECK(t2.vertex_count() == 4);
  CHECK(t2.cells().size() == 8);
  CHECK(v.euler == 0);
}

TEST_CASE("deleting a cell exposes a face") {
  DeltaComplex s3 = sphere(3);
  DeltaComplex broken(3, 5, "broken");
  for (int e = 0; e < s3.edge_count(); ++e) {
    auto [t, h] = s3.edge_endpoints(e);
    broken.add_edge(t, h);
  }
  for (size_t i = 0; i + 1 < s3.cells().size(); ++i)
    broken.add_cell(s3.cells()[i]);
  auto v = broken.validate();
  CHECK(!v.pass);
  CHECK(v.message.find("facet") != std::string::npos);
}

TEST_CASE("products validate with multiplicative euler characteristic") {
  auto s2xs1 = product(sphere(2), circle(), "S2xS1");
  CHECK(s2xs1.validate().pass);
  CHECK(s2xs1.validate().euler == 0);

  auto s3xs1 = product(sphere(3), circle(), "S3xS1");
  CHECK(s3xs1.validate().pass);
  CHECK(s3xs1.validate().euler == 0);

  auto s2xs2 = product(sphere(2), sphere(2), "S2xS2");
  CHECK(s2xs2.validate().pass);
  CHECK(s2xs2.validate().euler == 4);

  auto s2xt2 = product(sphere(2), kuhn_torus(2, 1), "S2xT2");
  CHECK(s2xt2.validate().pass);
  CHECK(s2xt2.validate().euler == 0);

  auto t2xs1 = product(kuhn_torus(2, 1), circle(), "T2xS1");
  CHECK(t2xs1.validate().pass);
  CHECK(t2xs1.cells().size() == 6);
}

TEST_CASE("crosscut torus and its quarter turn") {
  DeltaComplex cc = crosscut_torus();
  auto v = cc.validate();
  CHECK(v.pass);
  CHECK(v.f_vector == std::vector<long>{4, 12, 8});
  CHECK(v.euler == 0);
  Automorphism r = crosscut_quarter_turn(cc);
  // automorphism maps cells to cells: image face keys must all exist
  std::set<std::vector<int>> keys;
  std::vector<int> all{0, 1, 2};
  for (const auto& c : cc.cells()) keys.insert(cc.face_key(c, all));
  for (const auto& c : cc.cells()) {
    DeltaComplex::Cell img;
    img.sign = c.sign;
    for (int w : c.verts) img.verts.push_back(r.vertex_image[w]);
    for (int e : c.edges) img.edges.push_back(r.edge_image[e]);
    CHECK(keys.count(cc.face_key(img, all)) == 1);
  }
}

TEST_CASE("mapping tori of the catalog generators validate") {
  auto t3 = mcg_mapping_torus(McgGenerator::Id, 2);
  CHECK(t3.validate().pass);
  CHECK(t3.validate().euler == 0);

  auto msxy = mcg_mapping_torus(McgGenerator::SxyRotation, 2);
  CHECK(msxy.validate().pass);
  CHECK(msxy.validate().euler == 0);

  auto mtxy = mcg_mapping_torus(McgGenerator::TxyShear, 2);
  CHECK(mtxy.validate().pass);
  CHECK(mtxy.validate().euler == 0);

  auto t4 = mcg_mapping_torus(McgGenerator::Id, 3);
  CHECK(t4.validate().pass);
  CHECK(t4.cells().size() == 24);

  auto msxyz = mcg_mapping_torus(McgGenerator::SxyzCycle, 3);
  CHECK(msxyz.validate().pass);
  CHECK(msxyz.validate().euler == 0);

  auto mtxy3 = mcg_mapping_torus(McgGenerator::TxyShear, 3);
  CHECK(mtxy3.validate().pass);
  CHECK(mtxy3.validate().euler == 0);
}

TEST_CASE("matrix dispatch for mapping tori") {
  CHECK(mapping_torus(2, {{1, 0}, {0, 1}}).validate().pass);
  CHECK(mapping_torus(2, {{0, -1}, {1, 0}}).validate().pass);
  CHECK(mapping_torus(2, {{1, 1}, {0, 1}}).validate().pass);
  CHECK(mapping_torus(3, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}).validate().pass);
  CHECK_THROWS(mapping_torus(2, {{2, 1}, {1, 1}}));
}

TEST_CASE("builtin catalog validates with the expected euler numbers") {
  std::map<std::string, long> chi = {
      {"S2", 2},    {"S3", 0},    {"S4", 2},    {"T2", 0},    {"T3", 0},
      {"T4", 0},    {"S2xS1", 0}, {"S3xS1", 0}, {"S2xS2", 4}, {"S2xT2", 0}};
  for (const auto& name : builtin_complex_names()) {
    auto c = builtin_complex(name);
    auto v = c.validate();
    std::string why = name + ": " + v.message;
    CHECK_MESSAGE(v.pass, why);
    CHECK_MESSAGE(v.euler == chi[name], name);
  }
  CHECK(builtin_complex("S4").vertex_count() == 6);
  CHECK(builtin_complex("S4").cells().size() == 6);
}

TEST_CASE("text round trip is byte exact") {
  for (const auto& name : builtin_complex_names()) {
    auto c = builtin_complex(name);
    std::string t = c.to_text();
    auto back = DeltaComplex::from_text(t);
    CHECK(back.to_text() == t);
    CHECK(back.validate().pass);
  }
  auto mt = mcg_mapping_torus(McgGenerator::TxyShear, 2);
  auto back = DeltaComplex::from_text(mt.to_text());
  CHECK(back.to_text() == mt.to_text());
}

TEST_CASE("disjoint union keeps both pieces") {
  auto two = disjoint_union(sphere(2), sphere(2));
  auto v = two.validate();
  CHECK(v.pass);
  CHECK(v.euler == 4);
}

TEST_CASE("orientation reversal still validates") {
  auto s3 = sphere(3).reversed();
  CHECK(s3.validate().pass);
}
