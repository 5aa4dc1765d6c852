#include "qsurg/builders.hpp"

#include "qsurg/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qsurg {

namespace {

void require_valid(const DeltaComplex& c, bool closed, const std::string& who) {
  auto v = c.validate(closed);
  if (!v.pass)
    throw std::runtime_error("builder " + who + " produced invalid complex: " +
                             v.message);
}

int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

}  // namespace

DeltaComplex sphere(int n) {
  int nv = n + 2;
  DeltaComplex out(n, nv, "S" + std::to_string(n));
  std::map<std::pair<int, int>, int> edges;
  auto edge_id = [&](int u, int v) {
    auto key = std::make_pair(u, v);
    auto it = edges.find(key);
    if (it != edges.end()) return it->second;
    int id = out.add_edge(u, v);
    edges[key] = id;
    return id;
  };
  for (int omit = 0; omit < nv; ++omit) {
    DeltaComplex::Cell c;
    for (int i = 0; i < nv; ++i)
      if (i != omit) c.verts.push_back(i);
    c.sign = omit % 2 == 0 ? 1 : -1;
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        c.edges.push_back(edge_id(c.verts[i], c.verts[j]));
    out.add_cell(std::move(c));
  }
  require_valid(out, true, "sphere");
  return out;
}

namespace {

DeltaComplex kuhn_torus_impl(int d, int N,
                             std::map<std::pair<int, long>, int>* edge_table) {
  long nv = 1;
  for (int i = 0; i < d; ++i) nv *= N;
  DeltaComplex out(d, static_cast<int>(nv),
                   "T" + std::to_string(d) + (N > 1 ? "g" + std::to_string(N)
                                                    : std::string()));
  auto vindex = [&](const std::vector<int>& p) {
    long idx = 0;
    for (int i = 0; i < d; ++i) idx = idx * N + ((p[i] % N + N) % N);
    return static_cast<int>(idx);
  };
  std::map<std::pair<int, long>, int> edges;
  auto edge_id = [&](int tail_vertex, long mask, int head_vertex) {
    auto key = std::make_pair(tail_vertex, mask);
    auto it = edges.find(key);
    if (it != edges.end()) return it->second;
    int id = out.add_edge(tail_vertex, head_vertex);
    edges[key] = id;
    return id;
  };

  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> base(d, 0);
  long cells = nv;
  for (long b = 0; b < cells; ++b) {
    long rem = b;
    for (int i = d - 1; i >= 0; --i) {
      base[i] = static_cast<int>(rem % N);
      rem /= N;
    }
    std::vector<int> p = perm;
    std::sort(p.begin(), p.end());
    do {
      DeltaComplex::Cell c;
      std::vector<std::vector<int>> pts(d + 1, base);
      for (int i = 1; i <= d; ++i) {
        pts[i] = pts[i - 1];
        pts[i][p[i - 1]] += 1;
      }
      for (int i = 0; i <= d; ++i) c.verts.push_back(vindex(pts[i]));
      c.sign = perm_sign(p);
      for (int i = 0; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) {
          long mask = 0;
          for (int t = i; t < j; ++t) mask |= 1L << p[t];
          c.edges.push_back(edge_id(c.verts[i], mask, c.verts[j]));
        }
      out.add_cell(std::move(c));
    } while (std::next_permutation(p.begin(), p.end()));
  }
  if (edge_table) *edge_table = edges;
  require_valid(out, true, "kuhn_torus");
  return out;
}

}  // namespace

DeltaComplex kuhn_torus(int d, int grid) {
  return kuhn_torus_impl(d, grid, nullptr);
}

DeltaComplex circle() {
  DeltaComplex c = kuhn_torus(1, 1);
  c.set_name("S1");
  return c;
}

DeltaComplex interval() {
  DeltaComplex out(1, 2, "I");
  int e = out.add_edge(0, 1);
  DeltaComplex::Cell c;
  c.verts = {0, 1};
  c.sign = 1;
  c.edges = {e};
  out.add_cell(std::move(c));
  return out;
}

Product ez_product(const DeltaComplex& a, const DeltaComplex& b,
                   const std::string& name) {
  int p = a.dim(), q = b.dim();
  Product out;
  out.cx = DeltaComplex(p + q, 0, name);

  std::map<std::pair<int, int>, int> vmap;
  auto vertex_id = [&](int va, int vb) {
    auto key = std::make_pair(va, vb);
    auto it = vmap.find(key);
    if (it != vmap.end()) return it->second;
    int id = static_cast<int>(out.vertex_pair.size());
    out.vertex_pair.emplace_back(va, vb);
    vmap[key] = id;
    return id;
  };
  std::map<std::tuple<bool, int, bool, int>, int> emap;
  auto edge_id = [&](bool ae, int aid, bool be, int bid, int tail, int head) {
    auto key = std::make_tuple(ae, aid, be, bid);
    auto it = emap.find(key);
    if (it != emap.end()) return it->second;
    int id = out.cx.add_edge(tail, head);
    out.edge_src.push_back({ae, aid, be, bid});
    emap[key] = id;
    return id;
  };

  // provisional vertex count fixed after interning; build cells first in a
  // staging list, then install.  DeltaComplex needs vertex_count up front,
  // so stage everything.
  struct StagedCell {
    std::vector<int> verts;
    int sign;
    std::vector<int> edges;
  };
  std::vector<StagedCell> staged;

  std::vector<int> choose(p + q, 0);
  for (const auto& ca : a.cells()) {
    for (const auto& cb : b.cells()) {
      // iterate over subsets of {0..p+q-1} of size p (positions of a-steps)
      std::vector<int> steps(p + q, 0);  // 1 = a-step, 0 = b-step
      std::fill(steps.begin(), steps.begin() + p, 1);
      std::sort(steps.begin(), steps.end());
      do {
        // path nodes
        std::vector<std::pair<int, int>> node(p + q + 1);
        node[0] = {0, 0};
        for (int t = 0; t < p + q; ++t) {
          node[t + 1] = node[t];
          if (steps[t])
            node[t + 1].first += 1;
          else
            node[t + 1].second += 1;
        }
        int inv = 0;
        for (int s = 0; s < p + q; ++s)
          for (int t = s + 1; t < p + q; ++t)
            if (!steps[s] && steps[t]) ++inv;

        StagedCell sc;
        sc.sign = ca.sign * cb.sign * (inv % 2 == 0 ? 1 : -1);
        for (int t = 0; t <= p + q; ++t)
          sc.verts.push_back(
              vertex_id(ca.verts[node[t].first], cb.verts[node[t].second]));
        for (int t1 = 0; t1 <= p + q; ++t1)
          for (int t2 = t1 + 1; t2 <= p + q; ++t2) {
            auto [i1, j1] = node[t1];
            auto [i2, j2] = node[t2];
            bool ae = i1 != i2, be = j1 != j2;
            int aid = ae ? a.cell_edge(ca, i1, i2) : ca.verts[i1];
            int bid = be ? b.cell_edge(cb, j1, j2) : cb.verts[j1];
            sc.edges.push_back(
                edge_id(ae, aid, be, bid, sc.verts[t1], sc.verts[t2]));
          }
        staged.push_back(std::move(sc));
      } while (std::next_permutation(steps.begin(), steps.end()));
    }
  }

  DeltaComplex cx(p + q, static_cast<int>(out.vertex_pair.size()), name);
  for (int e = 0; e < out.cx.edge_count(); ++e) {
    auto [t, h] = out.cx.edge_endpoints(e);
    cx.add_edge(t, h);
  }
  for (auto& sc : staged) {
    DeltaComplex::Cell c;
    c.verts = std::move(sc.verts);
    c.sign = sc.sign;
    c.edges = std::move(sc.edges);
    cx.add_cell(std::move(c));
  }
  out.cx = std::move(cx);
  return out;
}

DeltaComplex product(const DeltaComplex& a, const DeltaComplex& b,
                     const std::string& name) {
  if (a.dim() + b.dim() > 4)
    throw std::runtime_error("product dimension exceeds 4");
  auto pr = ez_product(a, b, name);
  require_valid(pr.cx, true, "product");
  return pr.cx;
}

DeltaComplex disjoint_union(const DeltaComplex& a, const DeltaComplex& b) {
  if (a.dim() != b.dim())
    throw std::runtime_error("disjoint union needs equal dimensions");
  DeltaComplex out(a.dim(), a.vertex_count() + b.vertex_count(),
                   a.name() + "+" + b.name());
  for (int e = 0; e < a.edge_count(); ++e) {
    auto [t, h] = a.edge_endpoints(e);
    out.add_edge(t, h);
  }
  for (int e = 0; e < b.edge_count(); ++e) {
    auto [t, h] = b.edge_endpoints(e);
    out.add_edge(t + a.vertex_count(), h + a.vertex_count());
  }
  for (const auto& c : a.cells()) out.add_cell(c);
  for (const auto& c : b.cells()) {
    DeltaComplex::Cell d = c;
    for (auto& w : d.verts) w += a.vertex_count();
    for (auto& e : d.edges) e += a.edge_count();
    out.add_cell(std::move(d));
  }
  return out;
}

DeltaComplex mapping_torus_of_automorphism(const DeltaComplex& k,
                                           const Automorphism& phi,
                                           const std::string& name) {
  auto pr = ez_product(k, interval(), name + "-prism");
  const DeltaComplex& P = pr.cx;

  // provenance lookups
  std::map<std::pair<int, int>, int> vert_of;
  for (size_t i = 0; i < pr.vertex_pair.size(); ++i)
    vert_of[pr.vertex_pair[i]] = static_cast<int>(i);
  std::map<std::tuple<bool, int, bool, int>, int> edge_of;
  for (size_t i = 0; i < pr.edge_src.size(); ++i) {
    const auto& s = pr.edge_src[i];
    edge_of[{s.a_is_edge, s.a_id, s.b_is_edge, s.b_id}] = static_cast<int>(i);
  }

  std::vector<int> vmap(P.vertex_count());
  std::iota(vmap.begin(), vmap.end(), 0);
  std::vector<int> emap(P.edge_count());
  std::iota(emap.begin(), emap.end(), 0);

  for (int v = 0; v < k.vertex_count(); ++v) {
    int top = vert_of.at({v, 1});
    int bot = vert_of.at({phi.vertex_image[v], 0});
    vmap[top] = bot;
  }
  for (int e = 0; e < k.edge_count(); ++e) {
    auto it = edge_of.find({true, e, false, 1});
    if (it == edge_of.end()) continue;  // edge absent from top copy: impossible
    int bot = edge_of.at({true, phi.edge_image[e], false, 0});
    emap[it->second] = bot;
  }

  DeltaComplex out = P.quotient(vmap, emap, name);
  require_valid(out, true, "mapping_torus(" + name + ")");
  return out;
}

DeltaComplex crosscut_torus() {
  // vertices: 0 corner, 1 x-midpoint, 2 y-midpoint, 3 center
  DeltaComplex out(2, 4, "T2cc");
  const int O = 0, Mx = 1, My = 2, C = 3;
  int hx1 = out.add_edge(O, Mx), hx2 = out.add_edge(O, Mx);
  int hy1 = out.add_edge(O, My), hy2 = out.add_edge(O, My);
  int dSW = out.add_edge(O, C), dSE = out.add_edge(O, C);
  int dNE = out.add_edge(O, C), dNW = out.add_edge(O, C);
  int mS = out.add_edge(Mx, C), mE = out.add_edge(My, C);
  int mN = out.add_edge(Mx, C), mW = out.add_edge(My, C);
  struct T {
    int mid;
    int cm, cc, mc;
    int sign;
  };
  const T tris[8] = {
      {Mx, hx1, dSW, mS, +1}, {Mx, hx2, dSE, mS, -1},
      {My, hy1, dSE, mE, +1}, {My, hy2, dNE, mE, -1},
      {Mx, hx2, dNE, mN, +1}, {Mx, hx1, dNW, mN, -1},
      {My, hy2, dNW, mW, +1}, {My, hy1, dSW, mW, -1},
  };
  for (const auto& t : tris) {
    DeltaComplex::Cell c;
    c.verts = {O, t.mid, C};
    c.sign = t.sign;
    c.edges = {t.cm, t.cc, t.mc};
    out.add_cell(std::move(c));
  }
  require_valid(out, true, "crosscut_torus");
  return out;
}

Automorphism crosscut_quarter_turn(const DeltaComplex& cc) {
  // (x,y) -> (-y,x); edge ids as laid out in crosscut_torus()
  Automorphism a;
  a.vertex_image = {0, 2, 1, 3};  // O, Mx->My, My->Mx, C
  //            hx1 hx2 hy1 hy2 dSW dSE dNE dNW mS mE mN mW
  a.edge_image = {2, 3, 1, 0, 5, 6, 7, 4, 9, 10, 11, 8};
  if (cc.edge_count() != static_cast<int>(a.edge_image.size()))
    throw std::runtime_error("crosscut automorphism shape mismatch");
  return a;
}

namespace {

// reconstruct (tail vertex, axis mask) -> edge id for a kuhn torus
std::map<std::pair<int, long>, int> kuhn_edge_masks(const DeltaComplex& t,
                                                    int d, int N) {
  std::map<std::pair<int, long>, int> table;
  std::map<std::pair<int, long>, int>* out = &table;
  // rebuild with the same deterministic construction to recover the table
  auto rebuilt = kuhn_torus_impl(d, N, out);
  if (rebuilt.edge_count() != t.edge_count())
    throw std::runtime_error("kuhn edge table mismatch");
  return table;
}

}  // namespace

Automorphism kuhn_axis_permutation(const DeltaComplex& t,
                                   const std::vector<int>& perm) {
  int d = t.dim();
  auto table = kuhn_edge_masks(t, d, 1);
  Automorphism a;
  a.vertex_image = {0};
  a.edge_image.assign(t.edge_count(), -1);
  for (const auto& [key, id] : table) {
    long mask = key.second, im = 0;
    for (int i = 0; i < d; ++i)
      if (mask & (1L << i)) im |= 1L << perm[i];
    a.edge_image[id] = table.at({0, im});
  }
  return a;
}

DeltaComplex shear_mapping_torus_2d() {
  const int N = 2, d = 2;
  std::map<std::pair<int, long>, int> ktab;
  DeltaComplex K = kuhn_torus_impl(d, N, &ktab);
  auto kv = [&](int i, int j) {
    return ((i % N + N) % N) * N + ((j % N + N) % N);
  };
  auto kedge = [&](int i, int j, long mask) {
    return ktab.at({kv(i, j), mask});
  };
  const long MX = 1, MY = 2, MD = 3;  // axis masks: x = bit0, y = bit1
  // wait: axis 0 has mask 1<<0; in kuhn_torus_impl axis t gets bit p[t]; the
  // first coordinate is axis 0.  x := axis 0, y := axis 1.

  auto pr = ez_product(K, interval(), "nil3-slab");
  DeltaComplex P = pr.cx;

  std::map<std::pair<int, int>, int> vert_of;
  for (size_t i = 0; i < pr.vertex_pair.size(); ++i)
    vert_of[pr.vertex_pair[i]] = static_cast<int>(i);
  std::map<std::tuple<bool, int, bool, int>, int> edge_of;
  for (size_t i = 0; i < pr.edge_src.size(); ++i) {
    const auto& s = pr.edge_src[i];
    edge_of[{s.a_is_edge, s.a_id, s.b_is_edge, s.b_id}] = static_cast<int>(i);
  }
  auto tv = [&](int i, int j) { return vert_of.at({kv(i, j), 1}); };
  auto bv = [&](int i, int j) { return vert_of.at({kv(i, j), 0}); };
  auto te = [&](int i, int j, long mask) {
    return edge_of.at({true, kedge(i, j, mask), false, 1});
  };
  auto be = [&](int i, int j, long mask) {
    return edge_of.at({true, kedge(i, j, mask), false, 0});
  };

  // new long diagonals n(i,j): top v(i-1,j) -> top v(i+1,j+1)
  std::map<std::pair<int, int>, int> nedge;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      nedge[{i, j}] = P.add_edge(tv(i - 1, j), tv(i + 1, j + 1));

  // one flip tetrahedron per y-edge of the top surface
  for (int sgn_try = 0; sgn_try < 2; ++sgn_try) {
    DeltaComplex Q = P;
    int s = sgn_try == 0 ? 1 : -1;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        DeltaComplex::Cell c;
        c.verts = {tv(i - 1, j), tv(i, j), tv(i, j + 1), tv(i + 1, j + 1)};
        c.sign = s;
        c.edges = {te(i - 1, j, MX), te(i - 1, j, MD), nedge.at({i, j}),
                   te(i, j, MY),     te(i, j, MD),     te(i, j + 1, MX)};
        Q.add_cell(std::move(c));
      }
    // seam: (x,1) ~ (x - y, y, 0)
    std::vector<int> vmap(Q.vertex_count());
    std::iota(vmap.begin(), vmap.end(), 0);
    std::vector<int> emap(Q.edge_count());
    std::iota(emap.begin(), emap.end(), 0);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        vmap[tv(i, j)] = bv(i - j, j);
        emap[te(i, j, MX)] = be(i - j, j, MX);
        emap[te(i, j, MD)] = be(i - j, j, MY);
        emap[nedge.at({i, j})] = be(i - 1 - j, j, MD);
      }
    DeltaComplex out = Q.quotient(vmap, emap, "nil3");
    auto v = out.validate(true);
    if (v.pass) return out;
    if (sgn_try == 1)
      throw std::runtime_error("shear mapping torus failed validation: " +
                               v.message);
  }
  throw std::runtime_error("unreachable");
}

DeltaComplex mcg_mapping_torus(McgGenerator g, int fiber_dim) {
  switch (g) {
    case McgGenerator::Id: {
      DeltaComplex K = kuhn_torus(fiber_dim, 1);
      Automorphism id;
      id.vertex_image = {0};
      id.edge_image.resize(K.edge_count());
      std::iota(id.edge_image.begin(), id.edge_image.end(), 0);
      return mapping_torus_of_automorphism(
          K, id, "MT-id-T" + std::to_string(fiber_dim));
    }
    case McgGenerator::SxyRotation: {
      DeltaComplex cc = crosscut_torus();
      DeltaComplex m2 =
          mapping_torus_of_automorphism(cc, crosscut_quarter_turn(cc), "MT-Sxy");
      if (fiber_dim == 2) return m2;
      if (fiber_dim == 3) return product(m2, circle(), "MT-Sxy-T3");
      break;
    }
    case McgGenerator::TxyShear: {
      DeltaComplex m2 = shear_mapping_torus_2d();
      if (fiber_dim == 2) return m2;
      if (fiber_dim == 3) return product(m2, circle(), "MT-Txy-T3");
      break;
    }
    case McgGenerator::SxyzCycle: {
      if (fiber_dim != 3) break;
      DeltaComplex K = kuhn_torus(3, 1);
      // (x,y,z) -> (z,x,y): axis i image perm[i] with e_x->e_y, e_y->e_z,
      // e_z->e_x
      Automorphism rho = kuhn_axis_permutation(K, {1, 2, 0});
      return mapping_torus_of_automorphism(K, rho, "MT-Sxyz");
    }
  }
  throw std::runtime_error("unsupported mapping torus generator/dimension");
}

DeltaComplex mapping_torus(int fiber_dim,
                           const std::vector<std::vector<long>>& m) {
  int d = fiber_dim;
  if (static_cast<int>(m.size()) != d)
    throw std::runtime_error("monodromy matrix has wrong size");
  auto is_identity = [&] {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (m[i][j] != (i == j ? 1 : 0)) return false;
    return true;
  };
  auto as_permutation = [&]() -> std::vector<int> {
    std::vector<int> perm(d, -1);
    for (int j = 0; j < d; ++j) {
      int ones = 0;
      for (int i = 0; i < d; ++i) {
        if (m[i][j] == 1) {
          perm[j] = i;
          ++ones;
        } else if (m[i][j] != 0) {
          return {};
        }
      }
      if (ones != 1) return {};
    }
    return perm;
  };
  if (is_identity()) return mcg_mapping_torus(McgGenerator::Id, d);
  if (d == 2 && m == std::vector<std::vector<long>>{{0, -1}, {1, 0}})
    return mcg_mapping_torus(McgGenerator::SxyRotation, 2);
  if (d == 2 && m == std::vector<std::vector<long>>{{1, 1}, {0, 1}})
    return mcg_mapping_torus(McgGenerator::TxyShear, 2);
  if (d == 3 && m == std::vector<std::vector<long>>{{1, 1, 0}, {0, 1, 0},
                                                    {0, 0, 1}})
    return mcg_mapping_torus(McgGenerator::TxyShear, 3);
  auto perm = as_permutation();
  if (!perm.empty()) {
    DeltaComplex K = kuhn_torus(d, 1);
    Automorphism rho = kuhn_axis_permutation(K, perm);
    return mapping_torus_of_automorphism(K, rho, "MT-perm");
  }
  throw cap_exceeded("monodromy not in the supported catalog");
}

DeltaComplex builtin_complex(const std::string& name) {
  if (name == "S2") return sphere(2);
  if (name == "S3") return sphere(3);
  if (name == "S4") return sphere(4);
  if (name == "T2") return kuhn_torus(2, 1);
  if (name == "T3") return kuhn_torus(3, 1);
  if (name == "T4") return kuhn_torus(4, 1);
  if (name == "S2xS1") return product(sphere(2), circle(), "S2xS1");
  if (name == "S3xS1") return product(sphere(3), circle(), "S3xS1");
  if (name == "S2xS2") return product(sphere(2), sphere(2), "S2xS2");
  if (name == "S2xT2") return product(sphere(2), kuhn_torus(2, 1), "S2xT2");
  throw std::runtime_error("unknown builtin complex: " + name);
}

std::vector<std::string> builtin_complex_names() {
  return {"S2", "S3", "S4", "T2", "T3", "T4", "S2xS1", "S3xS1", "S2xS2",
          "S2xT2"};
}

}  // namespace qsurg
