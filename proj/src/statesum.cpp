#include "qsurg/statesum.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>

namespace qsurg {

namespace {

struct Solver {
  const DeltaComplex& cx;
  const AbelianGroup& G;
  long L;  // phase modulus for all accumulated exponents
  const CocycleTable* omega;  // may be null for pure counting
  long omega_scale = 1;       // L / omega.phase_order
  std::vector<std::array<int, 3>> tris;
  std::vector<std::vector<int>> tris_of_edge;
  std::vector<int> order;  // free-edge trial order
  std::vector<std::pair<std::vector<std::pair<int, int>>, long>> lines;
  long long node_cap;
  long long nodes = 0;

  std::vector<long> vals;
  std::vector<int> trail;
  std::vector<long long> counts;   // exponent class -> #solutions
  long long solution_count = 0;
  std::function<void(const std::vector<long>&)> on_solution;

  Solver(const DeltaComplex& cx_, const AbelianGroup& G_, long L_,
         const CocycleTable* w, long long cap)
      : cx(cx_), G(G_), L(L_), omega(w), node_cap(cap) {
    tris = triangle_constraints(cx);
    tris_of_edge.assign(cx.edge_count(), {});
    for (size_t t = 0; t < tris.size(); ++t)
      for (int k = 0; k < 3; ++k)
        tris_of_edge[tris[t][k]].push_back(static_cast<int>(t));
    if (omega) omega_scale = L / omega->phase_order();
    vals.assign(cx.edge_count(), -1);
    counts.assign(L, 0);
    order.resize(cx.edge_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return tris_of_edge[a].size() > tris_of_edge[b].size();
    });
  }

  bool assign(int e, long v, std::vector<int>& queue) {
    if (vals[e] >= 0) return vals[e] == v;
    vals[e] = v;
    trail.push_back(e);
    queue.push_back(e);
    return true;
  }

  // returns false on contradiction
  bool propagate(std::vector<int>& queue) {
    while (!queue.empty()) {
      int e = queue.back();
      queue.pop_back();
      for (int ti : tris_of_edge[e]) {
        const auto& t = tris[ti];
        long a = vals[t[0]], b = vals[t[1]], c = vals[t[2]];
        int known = (a >= 0) + (b >= 0) + (c >= 0);
        if (known < 2) continue;
        if (known == 3) {
          if (G.add(a, b) != c) return false;
          continue;
        }
        if (a < 0) {
          if (!assign(t[0], G.add(c, G.neg(b)), queue)) return false;
        } else if (b < 0) {
          if (!assign(t[1], G.add(G.neg(a), c), queue)) return false;
        } else {
          if (!assign(t[2], G.add(a, b), queue)) return false;
        }
      }
    }
    return true;
  }

  void emit() {
    ++solution_count;
    long e = 0;
    if (omega) {
      int d = cx.dim();
      std::vector<long> args(d);
      for (const auto& cell : cx.cells()) {
        for (int i = 0; i < d; ++i)
          args[i] = vals[cx.cell_edge(cell, i, i + 1)];
        long w = omega->exponent(args) * omega_scale % L;
        e = (e + (cell.sign > 0 ? w : (L - w) % L)) % L;
      }
    }
    for (const auto& [path, cexp_unit] : lines) {
      long hol = G.zero();
      for (auto [edge, dir] : path)
        hol = dir > 0 ? G.add(hol, vals[edge]) : G.add(hol, G.neg(vals[edge]));
      // cexp_unit carries the character index; evaluate scaled to L
      long k = G.char_exponent(cexp_unit, hol) * (L / G.exponent()) % L;
      e = (e + k) % L;
    }
    counts[e] += 1;
    if (on_solution) on_solution(vals);
  }

  void dfs() {
    if (++nodes > node_cap) throw cap_exceeded("state sum search cap");
    int pick = -1;
    for (int e : order)
      if (vals[e] < 0) {
        pick = e;
        break;
      }
    if (pick < 0) {
      emit();
      return;
    }
    for (long v = 0; v < G.size(); ++v) {
      size_t mark = trail.size();
      std::vector<int> queue;
      if (assign(pick, v, queue) && propagate(queue)) dfs();
      while (trail.size() > mark) {
        vals[trail.back()] = -1;
        trail.pop_back();
      }
    }
  }

  void run_with_clamps(const std::vector<long>& clamps) {
    std::vector<int> queue;
    for (int e = 0; e < cx.edge_count(); ++e)
      if (e < static_cast<int>(clamps.size()) && clamps[e] >= 0) {
        if (!assign(e, clamps[e], queue)) return;
      }
    if (!propagate(queue)) return;
    dfs();
  }
};

// spanning forest tree edges (non-self-loop) and component count
std::pair<std::vector<int>, int> spanning_forest(const DeltaComplex& cx) {
  std::vector<int> parent(cx.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> tree;
  for (int e = 0; e < cx.edge_count(); ++e) {
    auto [t, h] = cx.edge_endpoints(e);
    int rt = find(t), rh = find(h);
    if (rt == rh) continue;
    parent[rt] = rh;
    tree.push_back(e);
  }
  int comps = 0;
  for (int v = 0; v < cx.vertex_count(); ++v)
    if (find(v) == v) ++comps;
  return {tree, comps};
}

long total_phase_order(const DWModel& model) {
  return lcm_long(model.omega.phase_order(), model.group.exponent());
}

Cyc assemble(const std::vector<long long>& counts, long L) {
  Cyc z = Cyc::zero();
  for (long k = 0; k < L; ++k) {
    if (counts[k] == 0) continue;
    z += Cyc::from_rational(Rat(static_cast<long>(counts[k]))) *
         Cyc::root_of_unity(k, L);
  }
  return z;
}

void check_closed_lines(const DeltaComplex& cx,
                        const std::vector<ChargeLine>& lines) {
  for (const auto& line : lines) {
    if (line.path.empty()) throw open_path_error();
    int start = -1, cur = -1;
    for (auto [e, dir] : line.path) {
      auto [t, h] = cx.edge_endpoints(e);
      int from = dir > 0 ? t : h;
      int to = dir > 0 ? h : t;
      if (start < 0) {
        start = from;
        cur = from;
      }
      if (cur != from) throw open_path_error();
      cur = to;
    }
    if (cur != start) throw open_path_error();
  }
}

Cyc weighted_sum_gauge_fixed(const DeltaComplex& cx, const DWModel& model,
                             const std::vector<ChargeLine>& lines,
                             const StateSumOptions& opt, int* comps_out) {
  long L = total_phase_order(model);
  auto [tree, comps] = spanning_forest(cx);
  if (comps_out) *comps_out = comps;

  std::vector<long> clamps(cx.edge_count(), -1);
  for (int e : tree) clamps[e] = model.group.zero();

  // branch over the first free edge for parallel width; integer count merge
  // keeps the result independent of the schedule
  Solver probe(cx, model.group, L, &model.omega, opt.node_cap);
  for (const auto& line : lines) probe.lines.push_back({line.path, line.character});
  std::vector<int> queue;
  bool feasible = true;
  for (int e = 0; e < cx.edge_count(); ++e)
    if (clamps[e] >= 0 && feasible)
      feasible = probe.assign(e, clamps[e], queue);
  if (feasible) feasible = probe.propagate(queue);
  if (!feasible) return Cyc::zero();
  int first_free = -1;
  for (int e : probe.order)
    if (probe.vals[e] < 0) {
      first_free = e;
      break;
    }

  std::vector<long long> counts(L, 0);
  if (first_free < 0) {
    probe.emit();
    counts = probe.counts;
  } else if (opt.threads <= 1) {
    probe.dfs();
    counts = probe.counts;
  } else {
    std::vector<std::future<std::vector<long long>>> futs;
    for (long v = 0; v < model.group.size(); ++v) {
      futs.push_back(std::async(std::launch::async, [&, v] {
        Solver s(cx, model.group, L, &model.omega, opt.node_cap);
        for (const auto& line : lines) s.lines.push_back({line.path, line.character});
        std::vector<long> c2 = clamps;
        c2[first_free] = v;
        s.run_with_clamps(c2);
        return s.counts;
      }));
    }
    for (auto& f : futs) {
      auto c = f.get();
      for (long k = 0; k < L; ++k) counts[k] += c[k];
    }
  }
  return assemble(counts, L);
}

}  // namespace

Cyc partition_function(const DeltaComplex& cx, const DWModel& model,
                       const StateSumOptions& opt) {
  if (model.dimension() != cx.dim())
    throw std::runtime_error("cocycle degree does not match complex dimension");
  int comps = 0;
  Cyc s = weighted_sum_gauge_fixed(cx, model, {}, opt, &comps);
  Rat norm(1);
  for (int i = 0; i < comps; ++i) norm /= model.group.size();
  return s * Cyc::from_rational(norm);
}

Cyc partition_with_charge_lines(const DeltaComplex& cx, const DWModel& model,
                                const std::vector<ChargeLine>& lines,
                                const StateSumOptions& opt) {
  if (model.dimension() != cx.dim())
    throw std::runtime_error("cocycle degree does not match complex dimension");
  check_closed_lines(cx, lines);
  int comps = 0;
  Cyc s = weighted_sum_gauge_fixed(cx, model, lines, opt, &comps);
  Rat norm(1);
  for (int i = 0; i < comps; ++i) norm /= model.group.size();
  return s * Cyc::from_rational(norm);
}

mpz_class flat_coloring_count(const DeltaComplex& cx, const AbelianGroup& G,
                              const StateSumOptions& opt) {
  long L = G.exponent();
  auto [tree, comps] = spanning_forest(cx);
  Solver s(cx, G, L, nullptr, opt.node_cap);
  std::vector<long> clamps(cx.edge_count(), -1);
  for (int e : tree) clamps[e] = G.zero();
  s.run_with_clamps(clamps);
  mpz_class gauge = 1;
  for (int i = 0; i < cx.vertex_count() - comps; ++i) gauge *= G.size();
  return gauge * mpz_class(static_cast<long>(s.solution_count));
}

void for_each_flat_coloring(
    const DeltaComplex& cx, const AbelianGroup& G,
    const std::function<void(const std::vector<long>&)>& fn, long long cap) {
  auto [tree, comps] = spanning_forest(cx);
  std::vector<char> is_root(cx.vertex_count(), 1);
  // gauge vertices: all but one root per component
  {
    std::vector<int> parent(cx.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int e : tree) {
      auto [t, h] = cx.edge_endpoints(e);
      parent[find(t)] = find(h);
    }
    for (int v = 0; v < cx.vertex_count(); ++v) is_root[v] = find(v) == v;
  }
  std::vector<int> gauge_verts;
  for (int v = 0; v < cx.vertex_count(); ++v)
    if (!is_root[v]) gauge_verts.push_back(v);

  std::vector<long> clamps(cx.edge_count(), -1);
  for (int e : tree) clamps[e] = G.zero();

  std::vector<std::vector<long>> base_solutions;
  Solver s(cx, G, G.exponent(), nullptr, cap);
  s.on_solution = [&](const std::vector<long>& v) {
    base_solutions.push_back(v);
  };
  s.run_with_clamps(clamps);

  // expand gauge copies
  long long total = static_cast<long long>(base_solutions.size());
  for (size_t i = 0; i < gauge_verts.size(); ++i) total *= G.size();
  if (total > cap) throw cap_exceeded("flat coloring enumeration cap");

  std::vector<long> t(gauge_verts.size(), 0);
  std::vector<long> vertex_shift(cx.vertex_count(), G.zero());
  std::function<void(size_t)> loop = [&](size_t gi) {
    if (gi == gauge_verts.size()) {
      for (const auto& sol : base_solutions) {
        std::vector<long> g(sol);
        for (int e = 0; e < cx.edge_count(); ++e) {
          auto [tl, hd] = cx.edge_endpoints(e);
          g[e] = G.add(G.add(G.neg(vertex_shift[tl]), sol[e]),
                       vertex_shift[hd]);
        }
        fn(g);
      }
      return;
    }
    for (long v = 0; v < G.size(); ++v) {
      vertex_shift[gauge_verts[gi]] = v;
      loop(gi + 1);
    }
    vertex_shift[gauge_verts[gi]] = G.zero();
  };
  loop(0);
}

mpz_class gsd(const DeltaComplex& spatial, const DWModel& model,
              const StateSumOptions& opt) {
  DeltaComplex st = product(spatial, circle(), spatial.name() + "xS1");
  Cyc z = partition_function(st, model, opt);
  if (!z.is_nonneg_integer())
    throw std::runtime_error("ground state count is not a nonnegative integer: " +
                             z.str());
  return z.integer_value();
}

Cyc mcg_trace(McgGenerator g, int fiber_dim, const DWModel& model,
              const StateSumOptions& opt) {
  DeltaComplex mt = mcg_mapping_torus(g, fiber_dim);
  return partition_function(mt, model, opt);
}

Cyc clamped_weight_sum(const DeltaComplex& cx, const DWModel& model,
                       const std::vector<long>& clamps,
                       const std::vector<ChargeLine>& lines,
                       const StateSumOptions& opt) {
  long L = total_phase_order(model);
  Solver s(cx, model.group, L, &model.omega, opt.node_cap);
  for (const auto& line : lines) s.lines.push_back({line.path, line.character});
  s.run_with_clamps(clamps);
  return assemble(s.counts, L);
}

CylinderRep cylinder_rep(const DWModel& model, int fiber_dim,
                         const std::vector<int>& axis_perm) {
  const AbelianGroup& G = model.group;
  DeltaComplex fiber = kuhn_torus(fiber_dim, 1);
  auto pr = ez_product(fiber, interval(), "cyl");
  const DeltaComplex& P = pr.cx;

  // locate bottom/top copies of fiber edges and the vertical edge
  std::map<std::tuple<bool, int, bool, int>, int> edge_of;
  for (size_t i = 0; i < pr.edge_src.size(); ++i) {
    const auto& s = pr.edge_src[i];
    edge_of[{s.a_is_edge, s.a_id, s.b_is_edge, s.b_id}] = static_cast<int>(i);
  }
  // fiber axis edge ids via displacement masks; cells enumerate the axis
  // permutations in lexicographic order, so masks can be read back off
  std::map<std::pair<int, long>, int> table;
  {
    // deterministic rebuild, must agree with `fiber`
    // masks: edge from tail along axes in mask
    // reconstruct by walking cells of `fiber` in construction order:
    // cells are permutations in lexicographic order of the axis sequence.
    std::vector<int> axes(fiber_dim);
    std::iota(axes.begin(), axes.end(), 0);
    size_t ci = 0;
    std::vector<int> p = axes;
    std::sort(p.begin(), p.end());
    do {
      const auto& cell = fiber.cells()[ci++];
      for (int i = 0; i <= fiber_dim; ++i)
        for (int j = i + 1; j <= fiber_dim; ++j) {
          long mask = 0;
          for (int t = i; t < j; ++t) mask |= 1L << p[t];
          table[{0, mask}] = fiber.cell_edge(cell, i, j);
        }
    } while (std::next_permutation(p.begin(), p.end()));
  }

  auto top_edge = [&](long mask) {
    return edge_of.at({true, table.at({0, mask}), false, 1});
  };
  int vertical = edge_of.at({false, 0, true, 0});

  long states = 1;
  for (int i = 0; i < fiber_dim; ++i) states *= G.size();

  CylinderRep rep;
  rep.state_count = states;
  rep.image.assign(states, -1);
  rep.entry.assign(states, Cyc::zero());

  long L = total_phase_order(model);
  std::vector<long> g(fiber_dim);
  for (long col = 0; col < states; ++col) {
    long rem = col;
    for (int i = fiber_dim - 1; i >= 0; --i) {
      g[i] = rem % G.size();
      rem /= G.size();
    }
    std::vector<long long> counts(L, 0);
    long image_row = -1;
    for (long h = 0; h < G.size(); ++h) {
      std::vector<long> clamps(P.edge_count(), -1);
      // bottom coloring: edge value = sum of axis values over the mask
      for (const auto& [key, eid] : table) {
        long mask = key.second;
        long val = G.zero();
        for (int i = 0; i < fiber_dim; ++i)
          if (mask & (1L << i)) val = G.add(val, g[i]);
        clamps[edge_of.at({true, eid, false, 0})] = val;
      }
      clamps[vertical] = h;
      Solver s(P, G, L, &model.omega, 100'000'000);
      std::vector<long> solved;
      s.on_solution = [&](const std::vector<long>& v) { solved = v; };
      s.run_with_clamps(clamps);
      if (s.solution_count == 0) continue;
      if (s.solution_count != 1)
        throw std::runtime_error("cylinder coloring not unique");
      for (long k = 0; k < L; ++k) counts[k] += s.counts[k];
      if (image_row < 0) {
        // the seam identifies top edge e with bottom edge perm(e); the next
        // layer's axis-i holonomy sits at the top edge of axis perm^{-1}(i)
        std::vector<long> gp(fiber_dim);
        for (int i = 0; i < fiber_dim; ++i) {
          int src = 0;
          for (int j = 0; j < fiber_dim; ++j)
            if (axis_perm[j] == i) src = j;
          gp[i] = solved[top_edge(1L << src)];
        }
        long row = 0;
        for (int i = 0; i < fiber_dim; ++i) row = row * G.size() + gp[i];
        image_row = row;
      }
    }
    Cyc sum = assemble(counts, L);
    sum = sum * Cyc::from_rational(Rat(1, G.size()));
    rep.image[col] = image_row;
    rep.entry[col] = sum;
  }
  return rep;
}

std::vector<ChargeLine> axis_charge_lines(const DeltaComplex& kuhn_t,
                                          int fiber_dim,
                                          const std::vector<long>& characters) {
  // axis i edge of the one-vertex torus: reconstruct mask table as above
  std::map<long, int> axis_edge;
  {
    std::vector<int> p(fiber_dim);
    std::iota(p.begin(), p.end(), 0);
    size_t ci = 0;
    std::sort(p.begin(), p.end());
    do {
      const auto& cell = kuhn_t.cells()[ci++];
      for (int i = 0; i <= fiber_dim; ++i)
        for (int j = i + 1; j <= fiber_dim; ++j) {
          long mask = 0;
          for (int t = i; t < j; ++t) mask |= 1L << p[t];
          if (__builtin_popcountl(mask) == 1)
            axis_edge[mask] = kuhn_t.cell_edge(cell, i, j);
        }
    } while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<ChargeLine> lines;
  for (size_t i = 0; i < characters.size(); ++i) {
    ChargeLine l;
    l.path = {{axis_edge.at(1L << i), 1}};
    l.character = characters[i];
    lines.push_back(std::move(l));
  }
  return lines;
}

}  // namespace qsurg
