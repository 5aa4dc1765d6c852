#include "qsurg/modular2d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsurg {

Cyc Anyon::chi(long g) const {
  long pos = regular.position_of(g);
  if (pos < 0) return Cyc::zero();
  return Cyc::from_int(dim) * Cyc::root_of_unity(phi[pos], phase_mod);
}

Cyc Anyon::phase(long g) const {
  long pos = regular.position_of(g);
  if (pos < 0) throw std::runtime_error("charge not defined at this element");
  return Cyc::root_of_unity(phi[pos], phase_mod);
}

long ModularData2D::pure_charge_label(long character) const {
  for (long i = 0; i < size(); ++i)
    if (character_of_label(i) == character) return i;
  return -1;
}

long ModularData2D::character_of_label(long label) const {
  const Anyon& a = labels[label];
  const AbelianGroup& G = model.group;
  if (a.flux != G.zero()) return -1;
  if (a.regular.size() != G.size()) return -1;
  for (long m = 0; m < G.size(); ++m) {
    bool match = true;
    for (long g = 0; g < G.size() && match; ++g) {
      Cyc want = Cyc::root_of_unity(G.char_exponent(m, g), G.exponent());
      if (a.phase(g) != want) match = false;
    }
    if (match) return m;
  }
  return -1;
}

namespace {

// projective characters of Z for a symmetric 2-cocycle given by exponents
// eps(b, c) = zeta_L^{eps_exp(b, c)}; returns |Z| tables of phi exponents in
// units of 1/M with M = L * exponent(Z)
struct ChargeFamily {
  long M = 1;
  std::vector<std::vector<long>> tables;  // per charge, per element position
};

ChargeFamily projective_characters(
    const AbelianGroup& G, const SubgroupBasis& Z, long L,
    const std::function<long(long, long)>& eps_exp) {
  ChargeFamily out;
  long expZ = 1;
  for (long m : Z.gen_orders) expZ = std::lcm(expZ, m);
  long M = L * expZ;
  out.M = M;

  long r = static_cast<long>(Z.generators.size());
  std::vector<long> phi0(Z.size(), 0);
  if (r > 0) {
    // root choice per generator: phi_j^{m_j} cancels the accumulated
    // cocycle along the cyclic chain of g_j
    std::vector<long> xj(r, 0);
    for (long j = 0; j < r; ++j) {
      long mj = Z.gen_orders[j];
      long acc = 0;  // in L-units
      long cur = G.zero();
      for (long u = 1; u < mj; ++u) {
        cur = G.add(cur, Z.generators[j]);
        acc = (acc + eps_exp(cur, Z.generators[j])) % L;
      }
      long rho = (L - acc) % L;
      xj[j] = rho * (expZ / mj) % M;
    }
    // fill by stepping one generator at a time through exponent tuples
    std::vector<long> done(Z.size(), 0);
    done[Z.position_of(G.zero())] = 1;
    long total = Z.size();
    for (long code = 1; code < total; ++code) {
      long rem = code;
      std::vector<long> k(r);
      for (long j = r - 1; j >= 0; --j) {
        k[j] = rem % Z.gen_orders[j];
        rem /= Z.gen_orders[j];
      }
      long j0 = 0;
      while (k[j0] == 0) ++j0;
      std::vector<long> prev = k;
      prev[j0] -= 1;
      auto elem_of = [&](const std::vector<long>& t) {
        long e = G.zero();
        for (long j = 0; j < r; ++j)
          for (long c = 0; c < t[j]; ++c) e = G.add(e, Z.generators[j]);
        return e;
      };
      long pe = elem_of(prev), ce = elem_of(k);
      long ppos = Z.position_of(pe), cpos = Z.position_of(ce);
      phi0[cpos] =
          (phi0[ppos] + xj[j0] + eps_exp(pe, Z.generators[j0]) * (M / L)) % M;
      done[cpos] = 1;
    }
    for (long v : done)
      if (!v) throw std::runtime_error("projective character fill incomplete");
  }

  // phi(b) phi(c) eps(b,c) = phi(b+c) must hold exactly
  for (long bi = 0; bi < Z.size(); ++bi)
    for (long ci = 0; ci < Z.size(); ++ci) {
      long b = Z.elements[bi], c = Z.elements[ci];
      long lhs = (phi0[bi] + phi0[ci] + eps_exp(b, c) * (M / L)) % M;
      long rhs = phi0[Z.position_of(G.add(b, c))];
      if (lhs != rhs)
        throw std::runtime_error(
            "projective character construction inconsistent");
    }

  // all solutions: phi0 twisted by the linear characters of Z
  for (long m = 0; m < Z.size(); ++m) {
    std::vector<long> mm(r);
    long rem = m;
    for (long j = r - 1; j >= 0; --j) {
      mm[j] = rem % Z.gen_orders[j];
      rem /= Z.gen_orders[j];
    }
    std::vector<long> tab(Z.size());
    for (long i = 0; i < Z.size(); ++i) {
      long chi = 0;
      for (long j = 0; j < r; ++j) {
        long kj = Z.exponents[i][j];
        chi = (chi + mm[j] * kj % Z.gen_orders[j] * (M / Z.gen_orders[j])) % M;
      }
      tab[i] = (phi0[i] + chi) % M;
    }
    out.tables.push_back(std::move(tab));
  }
  return out;
}

}  // namespace

std::vector<Anyon> anyons(const DWModel& model2d) {
  const AbelianGroup& G = model2d.group;
  if (model2d.omega.degree() != 3)
    throw std::runtime_error("anyons need a dimension-3 model");
  std::vector<Anyon> out;
  for (long a = 0; a < G.size(); ++a) {
    CocycleTable eps = slant(model2d.omega, a);
    long L = eps.phase_order();
    auto eps_exp = [&eps](long b, long c) { return eps.exponent({b, c}); };
    std::vector<long> regular;
    for (long b = 0; b < G.size(); ++b) {
      bool sym = true;
      for (long c = 0; c < G.size() && sym; ++c)
        if (eps_exp(b, c) != eps_exp(c, b)) sym = false;
      if (sym) regular.push_back(b);
    }
    SubgroupBasis Z = subgroup_basis(G, regular);
    long quotient = G.size() / Z.size();
    long dim = std::lround(std::sqrt(static_cast<double>(quotient)));
    if (G.size() % Z.size() != 0 || dim * dim != quotient)
      throw std::runtime_error("label dimension is not integral at flux " +
                               G.tuple_str(a));
    auto fam = projective_characters(G, Z, L, eps_exp);
    for (const auto& tab : fam.tables) {
      Anyon lab;
      lab.flux = a;
      lab.regular = Z;
      lab.phase_mod = fam.M;
      lab.phi = tab;
      lab.dim = dim;
      out.push_back(std::move(lab));
    }
  }
  return out;
}

ModularData2D compute_modular2d(const DWModel& model2d) {
  ModularData2D md;
  md.model = model2d;
  md.labels = anyons(model2d);
  const AbelianGroup& G = model2d.group;
  long n = md.size();

  Cyc inv_g = Cyc::from_rational(Rat(1, G.size()));
  md.S.assign(n, CVec(n, Cyc::zero()));
  for (long i = 0; i < n; ++i)
    for (long j = i; j < n; ++j) {
      const Anyon& x = md.labels[i];
      const Anyon& y = md.labels[j];
      Cyc v = inv_g * x.chi(y.flux).conj() * y.chi(x.flux).conj();
      md.S[i][j] = v;
      md.S[j][i] = v;  // symmetric in the two labels by inspection
    }

  md.Tdiag.assign(n, Cyc::zero());
  for (long i = 0; i < n; ++i) {
    const Anyon& x = md.labels[i];
    if (!x.charge_defined_at(x.flux))
      throw std::runtime_error("flux not inside its own regular subgroup");
    md.Tdiag[i] = x.phase(x.flux);
  }

  // fusion through the inverse transform of the row-wise products
  CMat Sinv = cmat_inverse(md.S);
  md.N.assign(n, std::vector<std::vector<long>>(n, std::vector<long>(n, 0)));
  for (long a = 0; a < n; ++a)
    for (long b = a; b < n; ++b) {
      CVec v(n, Cyc::zero());
      for (long r = 0; r < n; ++r) {
        if (md.S[r][0].is_zero())
          throw std::runtime_error("vanishing vacuum column in S");
        v[r] = md.S[r][a] * md.S[r][b] / md.S[r][0];
      }
      CVec nn = cmat_apply(Sinv, v);
      for (long c = 0; c < n; ++c) {
        if (!nn[c].is_nonneg_integer())
          throw std::runtime_error(
              "fusion coefficient not a nonnegative integer at (" +
              std::to_string(c) + "," + std::to_string(a) + "," +
              std::to_string(b) + "): " + nn[c].str());
        long val = nn[c].integer_value().get_si();
        md.N[c][a][b] = val;
        md.N[c][b][a] = val;
      }
    }
  return md;
}

long triple_index(long n, long i, long j, long k) {
  return (i * n + j) * n + k;
}

CVec t3_line_table(const ModularData2D& md, const StateSumOptions& opt) {
  long n = md.size();
  DeltaComplex t3 = kuhn_torus(3, 1);

  std::vector<long> chr(n, -1);
  for (long i = 0; i < n; ++i) chr[i] = md.character_of_label(i);

  std::map<std::tuple<long, long, long>, Cyc> cache;
  CVec table(n * n * n, Cyc::zero());
  for (long i = 0; i < n; ++i) {
    if (chr[i] < 0) continue;
    for (long j = 0; j < n; ++j) {
      if (chr[j] < 0) continue;
      for (long k = 0; k < n; ++k) {
        if (chr[k] < 0) continue;
        auto key = std::make_tuple(chr[i], chr[j], chr[k]);
        auto it = cache.find(key);
        if (it == cache.end()) {
          auto lines = axis_charge_lines(t3, 3, {chr[i], chr[j], chr[k]});
          it = cache
                   .emplace(key, partition_with_charge_lines(t3, md.model,
                                                             lines, opt))
                   .first;
        }
        table[triple_index(n, i, j, k)] = it->second;
      }
    }
  }
  return table;
}

CVec borromean_from_t3(const ModularData2D& md, const CVec& t3) {
  long n = md.size();
  CMat Sinv = cmat_inverse(md.S);
  CVec cur = t3;
  // T3[s'] = sum_s S_{s'_1 s_1} S_{s'_2 s_2} S_{s'_3 s_3} BR[s]; undo one
  // slot at a time
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
            if (Sinv[a][t].is_zero() || cur[src].is_zero()) continue;
            acc += Sinv[a][t] * cur[src];
          }
        }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace qsurg
