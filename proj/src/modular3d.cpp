#include "qsurg/modular3d.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <set>

namespace qsurg {

namespace {

long flatten3(long g0, long g1, long g2, long n) {
  return (g0 * n + g1) * n + g2;
}

// sparse column-major product a*b
SparseCols sparse_mul(const SparseCols& a, const SparseCols& b) {
  SparseCols out(b.size());
  for (size_t j = 0; j < b.size(); ++j) {
    std::map<long, Cyc> acc;
    for (const auto& [k, v] : b[j])
      for (const auto& [i, w] : a[k]) {
        auto it = acc.find(i);
        if (it == acc.end())
          acc.emplace(i, w * v);
        else
          it->second += w * v;
      }
    for (auto& [i, v] : acc)
      if (!v.is_zero()) out[j].emplace_back(i, std::move(v));
  }
  return out;
}

bool sparse_is_identity(const SparseCols& a) {
  for (size_t j = 0; j < a.size(); ++j) {
    long ones = 0;
    for (const auto& [i, v] : a[j]) {
      if (v.is_zero()) continue;
      if (i != static_cast<long>(j) || v != Cyc::one()) return false;
      ++ones;
    }
    if (ones != 1) return false;
  }
  return true;
}

SparseCols sparse_dagger(const SparseCols& a) {
  SparseCols out(a.size());
  for (size_t j = 0; j < a.size(); ++j)
    for (const auto& [i, v] : a[j]) out[i].emplace_back(j, v.conj());
  return out;
}

}  // namespace

long Data3p1D::label_index(long sector, long anyon) const {
  return sector_offset[sector] + anyon;
}

const Anyon& Data3p1D::anyon_of(long label) const {
  const StringRef& r = strings[label];
  return sectors[r.sector].anyons[r.anyon];
}

long Data3p1D::flux_of(long label) const { return sector_of(label); }

long Data3p1D::sector_of(long label) const {
  return sectors[strings[label].sector].flux;
}

long Data3p1D::particle_label(long character) const {
  const AbelianGroup& G = model.group;
  for (long i = sector_offset[0]; i < sector_offset[1]; ++i) {
    const Anyon& a = anyon_of(i);
    if (a.flux != G.zero()) continue;
    bool match = true;
    for (long g = 0; g < G.size() && match; ++g) {
      Cyc want =
          Cyc::root_of_unity(G.char_exponent(character, g), G.exponent());
      if (a.phase(g) != want) match = false;
    }
    if (match) return i;
  }
  throw std::runtime_error("particle label not found");
}

Cyc Data3p1D::link_s2s1(long mu, long sigma_character) const {
  if (std::find(s2_labels.begin(), s2_labels.end(), mu) == s2_labels.end())
    throw std::runtime_error("link table needs a shrinkable pure-flux label");
  const AbelianGroup& G = model.group;
  long k = G.char_exponent(sigma_character, flux_of(mu));
  return z_s4 * Cyc::root_of_unity(k, G.exponent());
}

namespace {

// charge function of a label: dim * phi^{+-1} on the regular subgroup
CVec charge_function(const AbelianGroup& G, const Anyon& a, bool conj) {
  CVec w(G.size(), Cyc::zero());
  for (long i = 0; i < a.regular.size(); ++i) {
    long c = a.regular.elements[i];
    Cyc ph = Cyc::root_of_unity(a.phi[i], a.phase_mod);
    if (conj) ph = ph.conj();
    w[c] = Cyc::from_int(a.dim) * ph;
  }
  return w;
}

}  // namespace

const std::vector<std::pair<long, long>>& Data3p1D::fuse(long mu1,
                                                         long mu2) const {
  auto key = std::make_pair(mu1, mu2);
  auto it = fusion_memo.find(key);
  if (it != fusion_memo.end()) return it->second;

  const AbelianGroup& G = model.group;
  const Anyon& x = anyon_of(mu1);
  const Anyon& y = anyon_of(mu2);
  long b3 = G.add(sector_of(mu1), sector_of(mu2));
  long a3 = G.add(x.flux, y.flux);

  CVec wx = charge_function(G, x, conj_weights);
  CVec wy = charge_function(G, y, conj_weights);
  CVec p(G.size(), Cyc::zero());
  for (long c = 0; c < G.size(); ++c)
    if (!wx[c].is_zero() && !wy[c].is_zero()) p[c] = wx[c] * wy[c];

  std::vector<std::pair<long, long>> out;
  CVec recon(G.size(), Cyc::zero());
  const SectorTheory& target = sectors[b3];
  for (long t = 0; t < static_cast<long>(target.anyons.size()); ++t) {
    const Anyon& nu = target.anyons[t];
    if (nu.flux != a3) continue;
    CVec wn = charge_function(G, nu, conj_weights);
    Cyc inner = Cyc::zero();
    for (long c = 0; c < G.size(); ++c)
      if (!wn[c].is_zero() && !p[c].is_zero()) inner += wn[c].conj() * p[c];
    Cyc f = inner / Cyc::from_int(nu.dim * nu.dim * nu.regular.size());
    if (f.is_zero()) continue;
    if (!f.is_nonneg_integer())
      throw std::runtime_error("worldsheet fusion not integral: " + f.str());
    long mult = f.integer_value().get_si();
    long label = label_index(b3, t);
    out.emplace_back(label, mult);
    for (long c = 0; c < G.size(); ++c)
      if (!wn[c].is_zero()) recon[c] += Cyc::from_int(mult) * wn[c];
  }
  for (long c = 0; c < G.size(); ++c)
    if (recon[c] != p[c])
      throw std::runtime_error(
          "worldsheet fusion does not close on the charge functions");
  return fusion_memo.emplace(key, std::move(out)).first->second;
}

CVec Data3p1D::chain_row(long mu1) const {
  long nn = n();
  // u(eta) = sum_{eta'} S[eta'][eta] L[eta']
  CVec u(nn, Cyc::zero());
  for (long eta = 0; eta < nn; ++eta)
    for (const auto& [row, v] : S_xyz[eta])
      if (!ltri_base[row].is_zero()) u[eta] += v * ltri_base[row];
  // y(zeta') = sum_eta F^eta_{mu1 zeta'} u(eta)
  CVec y(nn, Cyc::zero());
  for (long zp = 0; zp < nn; ++zp)
    for (const auto& [eta, mult] : fuse(mu1, zp))
      if (!u[eta].is_zero()) y[zp] += Cyc::from_int(mult) * u[eta];
  // X(zeta) = sum_{zeta'} Sinv[zeta'][zeta] y(zeta')
  CVec X(nn, Cyc::zero());
  for (long z = 0; z < nn; ++z)
    for (const auto& [zp, v] : S_inv[z])
      if (!y[zp].is_zero()) X[z] += v * y[zp];
  return X;
}

Cyc Data3p1D::ltri(long mu3, long mu2, long mu1) const {
  long nn = n();
  CVec u(nn, Cyc::zero());
  for (long eta = 0; eta < nn; ++eta)
    for (const auto& [row, v] : S_xyz[eta])
      if (!ltri_base[row].is_zero()) u[eta] += v * ltri_base[row];
  CVec v1(nn, Cyc::zero());
  for (long g = 0; g < nn; ++g)
    for (const auto& [eta, mult] : fuse(mu1, g))
      if (!u[eta].is_zero()) v1[g] += Cyc::from_int(mult) * u[eta];
  CVec v2(nn, Cyc::zero());
  for (long g = 0; g < nn; ++g)
    for (const auto& [gp, val] : S_inv[g])
      if (!v1[gp].is_zero()) v2[g] += val * v1[gp];
  CVec v3(nn, Cyc::zero());
  for (long g = 0; g < nn; ++g)
    for (const auto& [gp, val] : S_inv[g])
      if (!v2[gp].is_zero()) v3[g] += val * v2[gp];
  CVec v4(nn, Cyc::zero());
  for (long m3p = 0; m3p < nn; ++m3p)
    for (const auto& [gamma, mult] : fuse(mu2, m3p))
      if (!v3[gamma].is_zero()) v4[m3p] += Cyc::from_int(mult) * v3[gamma];
  Cyc out = Cyc::zero();
  for (const auto& [m3p, val] : S_xyz[mu3])
    if (!v4[m3p].is_zero()) out += val * v4[m3p];
  return out;
}

CMat Data3p1D::s_dense() const {
  long nn = n();
  CMat m(nn, CVec(nn, Cyc::zero()));
  for (long j = 0; j < nn; ++j)
    for (const auto& [i, v] : S_xyz[j]) m[i][j] = v;
  return m;
}


long Data3p1D::OpFrame::mul(const AbelianGroup& G, long x, long y) const {
  long a1 = x / (gsize * gsize), m2 = (x / gsize) % gsize, m3 = x % gsize;
  long b1 = y / (gsize * gsize), n2 = (y / gsize) % gsize, n3 = y % gsize;
  return index(G.add(a1, b1), G.add(m2, n2), G.add(m3, n3));
}

std::vector<std::pair<long, Cyc>> Data3p1D::OpFrame::column(
    const AbelianGroup& G, long label) const {
  long a = label / (gsize * gsize), m2 = (label / gsize) % gsize,
       m3 = label % gsize;
  std::vector<std::pair<long, Cyc>> col;
  Cyc inv_g = Cyc::from_rational(Rat(1, gsize));
  for (long hy = 0; hy < gsize; ++hy)
    for (long hz = 0; hz < gsize; ++hz) {
      long g = (a * gsize + hy) * gsize + hz;
      if (!physical[g]) continue;
      long e = (G.char_exponent(m2, hy) + G.char_exponent(m3, hz)) %
               G.exponent();
      col.emplace_back(g, inv_g * Cyc::root_of_unity(e, G.exponent()));
    }
  return col;
}

const std::map<long, Cyc>& Data3p1D::OpFrame::s_row(const AbelianGroup& G,
                                                    long i) const {
  auto it = row_memo.find(i);
  if (it != row_memo.end()) return it->second;
  // w = R^dag applied to the bra state: w[g] = conj(entry[g]) B_i[image[g]]
  auto bi = column(G, i);
  std::map<long, Cyc> bi_map(bi.begin(), bi.end());
  std::map<long, Cyc> w;
  for (long g = 0; g < static_cast<long>(physical.size()); ++g) {
    if (rot_entry[g].is_zero()) continue;
    auto itb = bi_map.find(rot_image[g]);
    if (itb == bi_map.end()) continue;
    w[g] = rot_entry[g].conj() * itb->second;
  }
  // S[i][j] = <w, B_j>: read the plane Fourier coefficients off w
  std::map<long, Cyc> row;
  Cyc inv_g = Cyc::from_rational(Rat(1, gsize));
  std::set<long> planes;
  for (const auto& [g, v] : w) planes.insert(g / (gsize * gsize));
  for (long a : planes) {
    for (long m2 = 0; m2 < gsize; ++m2)
      for (long m3 = 0; m3 < gsize; ++m3) {
        Cyc acc = Cyc::zero();
        for (const auto& [g, v] : w) {
          if (g / (gsize * gsize) != a) continue;
          long hy = (g / gsize) % gsize, hz = g % gsize;
          long e = (G.char_exponent(m2, hy) + G.char_exponent(m3, hz)) %
                   G.exponent();
          acc += v.conj() * inv_g * Cyc::root_of_unity(e, G.exponent());
        }
        if (!acc.is_zero()) row[index(a, m2, m3)] = acc.conj();
      }
  }
  return row_memo.emplace(i, std::move(row)).first->second;
}

CVec Data3p1D::OpFrame::u_vector(const AbelianGroup& G) const {
  // sum_eta' L(eta') S[eta'][eta]: the bra collapses to the scaled support
  // indicator by the tight-frame property
  CVec u(count, Cyc::zero());
  std::set<long> supp(base_support.begin(), base_support.end());
  for (long eta = 0; eta < count; ++eta) {
    Cyc acc = Cyc::zero();
    for (const auto& [g, c] : column(G, eta)) {
      if (rot_entry[g].is_zero()) continue;
      if (supp.count(rot_image[g])) acc += rot_entry[g] * c;
    }
    u[eta] = support_scale * acc;
  }
  return u;
}

std::map<long, Cyc> Data3p1D::op_chain_entries(long mu1,
                                               const std::vector<long>& zetas,
                                               const CVec& u) const {
  const AbelianGroup& G = model.group;
  std::map<long, Cyc> X;
  for (long z : zetas) {
    if (X.count(z)) continue;
    Cyc acc = Cyc::zero();
    for (const auto& [zp, sval] : op.s_row(G, z)) {
      Cyc uz = u[op.mul(G, mu1, zp)];
      if (!uz.is_zero()) acc += sval.conj() * uz;
    }
    X[z] = acc;
  }
  return X;
}

Cyc Data3p1D::op_ltri(long mu3, long mu2, long mu1) const {
  const AbelianGroup& G = model.group;
  long N = op.count;
  CVec u = op.u_vector(G);
  CVec v1(N, Cyc::zero());
  for (long g = 0; g < N; ++g) v1[g] = u[op.mul(G, mu1, g)];
  // two inverse rotations: Sinv[x][y] = conj(S[y][x])
  CVec v2(N, Cyc::zero());
  for (long y = 0; y < N; ++y)
    for (const auto& [x, sval] : op.s_row(G, y))
      if (!v1[x].is_zero()) v2[y] += sval.conj() * v1[x];
  CVec v3(N, Cyc::zero());
  for (long y = 0; y < N; ++y)
    for (const auto& [x, sval] : op.s_row(G, y))
      if (!v2[x].is_zero()) v3[y] += sval.conj() * v2[x];
  CVec v4(N, Cyc::zero());
  for (long g = 0; g < N; ++g) v4[g] = v3[op.mul(G, mu2, g)];
  // forward factor S[m3p][mu3] read off the rows
  Cyc out = Cyc::zero();
  for (long m3p = 0; m3p < N; ++m3p) {
    if (v4[m3p].is_zero()) continue;
    const auto& r = op.s_row(G, m3p);
    auto it = r.find(mu3);
    if (it != r.end()) out += it->second * v4[m3p];
  }
  return out;
}

namespace {
struct PhaseTimer {
  const char* tag;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  explicit PhaseTimer(const char* t) : tag(t) {}
  ~PhaseTimer() {
    if (getenv("QSURG_TRACE"))
      fprintf(stderr, "[%s] %ldms\n", tag,
              (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count());
  }
};
}  // namespace

Data3p1D compute_modular3d(const DWModel& model4d, const StateSumOptions& opt) {
  if (model4d.omega.degree() != 4)
    throw std::runtime_error("compute_modular3d needs a dimension-4 model");
  const AbelianGroup& G = model4d.group;
  long gs = G.size();

  Data3p1D d;
  d.model = model4d;

  PhaseTimer t_total("compute_modular3d");
  {
  PhaseTimer t_sec("sectors");
  for (long b = 0; b < gs; ++b) {
    SectorTheory sec;
    sec.flux = b;
    CocycleTable wb = slant(model4d.omega, b);
    auto chk = check_cocycle(wb);
    if (!chk.pass)
      throw std::runtime_error("sector slant fails the cocycle condition");
    sec.model2d = DWModel{model4d.name + "/sec" + std::to_string(b), G, wb};
    sec.anyons = anyons(sec.model2d);
    d.sectors.push_back(std::move(sec));
  }
  }
  d.sector_offset.assign(gs + 1, 0);
  for (long b = 0; b < gs; ++b) {
    d.sector_offset[b] = d.n();
    for (long t = 0; t < static_cast<long>(d.sectors[b].anyons.size()); ++t)
      d.strings.push_back({b, t});
  }
  d.sector_offset[gs] = d.n();
  long nn = d.n();

  PhaseTimer* t_cyl = new PhaseTimer("cylinders");
  CylinderRep P = cylinder_rep(model4d, 3, {0, 1, 2});
  CylinderRep Rfwd = cylinder_rep(model4d, 3, {1, 2, 0});
  CylinderRep Rbwd = cylinder_rep(model4d, 3, {2, 0, 1});
  delete t_cyl;
  long trP = 0;
  std::vector<char> physical(P.state_count, 0);
  for (long g = 0; g < P.state_count; ++g) {
    if (P.image[g] != g && !P.entry[g].is_zero())
      throw std::runtime_error("cylinder projector is not diagonal");
    if (P.entry[g] == Cyc::one()) {
      physical[g] = 1;
      ++trP;
    } else if (!P.entry[g].is_zero()) {
      throw std::runtime_error("cylinder projector entry not 0/1");
    }
  }
  if (trP != nn)
    throw std::runtime_error(
        "sector label count disagrees with the cylinder projector rank");

  // frame search: slot assignment and weight conjugation are fixed by
  // requiring the physical blocks to match the regular subgroups, the
  // rotated basis to close, and the rotation to cube to the identity
  const int perms[6][3] = {{1, 2, 0}, {2, 1, 0}, {0, 1, 2},
                           {0, 2, 1}, {1, 0, 2}, {2, 0, 1}};
  std::string last_err = "no frame candidate examined";
  bool found = false;
  for (int ri = 0; ri < 2 && !found; ++ri)
  for (int pi = 0; pi < 6 && !found; ++pi)
    for (int cj = 0; cj < 2 && !found; ++cj) {
      const CylinderRep& R = ri == 0 ? Rfwd : Rbwd;
      d.flux_slot = perms[pi][0];
      d.charge_slot = perms[pi][1];
      d.sector_slot = perms[pi][2];
      d.conj_weights = cj == 1;
      d.fusion_memo.clear();
      try {
        auto flat_of = [&](long a, long c, long b) {
          long g[3];
          g[d.flux_slot] = a;
          g[d.charge_slot] = c;
          g[d.sector_slot] = b;
          return flatten3(g[0], g[1], g[2], gs);
        };
        for (long lab = 0; lab < nn; ++lab) {
          const Anyon& an = d.anyon_of(lab);
          long b = d.sector_of(lab);
          std::vector<long> C;
          for (long c = 0; c < gs; ++c)
            if (physical[flat_of(an.flux, c, b)]) C.push_back(c);
          if (C != an.regular.elements)
            throw std::runtime_error("physical block mismatch");
        }
        d.basis.assign(nn, {});
        for (long lab = 0; lab < nn; ++lab) {
          const Anyon& an = d.anyon_of(lab);
          long b = d.sector_of(lab);
          Cyc norm = Cyc::one() / Cyc::sqrt_of_unsigned(an.regular.size());
          Data3p1D::BCol col;
          for (long i = 0; i < an.regular.size(); ++i) {
            long c = an.regular.elements[i];
            Cyc ph = Cyc::root_of_unity(an.phi[i], an.phase_mod);
            if (d.conj_weights) ph = ph.conj();
            col.colorings.push_back(flat_of(an.flux, c, b));
            col.coeff.push_back(norm * ph);
          }
          d.basis[lab] = std::move(col);
        }
        std::map<std::pair<long, long>, std::vector<long>> block_labels;
        for (long lab = 0; lab < nn; ++lab)
          block_labels[{d.anyon_of(lab).flux, d.sector_of(lab)}].push_back(lab);
        auto slots_of = [&](long flat) {
          long g2 = flat % gs, g1 = (flat / gs) % gs, g0 = flat / (gs * gs);
          long g[3] = {g0, g1, g2};
          return std::make_pair(g[d.flux_slot], g[d.sector_slot]);
        };
        d.S_xyz.assign(nn, {});
        for (long j = 0; j < nn; ++j) {
          std::map<long, Cyc> v;
          for (size_t t = 0; t < d.basis[j].colorings.size(); ++t) {
            long g = d.basis[j].colorings[t];
            if (R.image[g] < 0 || R.entry[g].is_zero()) continue;
            Cyc add = R.entry[g] * d.basis[j].coeff[t];
            auto itv = v.find(R.image[g]);
            if (itv == v.end())
              v.emplace(R.image[g], std::move(add));
            else
              itv->second += add;
          }
          std::map<long, Cyc> recon;
          std::set<std::pair<long, long>> blocks;
          for (const auto& [g, val] : v)
            if (!val.is_zero()) blocks.insert(slots_of(g));
          for (const auto& blk : blocks) {
            auto itb = block_labels.find(blk);
            if (itb == block_labels.end())
              throw std::runtime_error("rotated column hits an empty block");
            for (long lab : itb->second) {
              Cyc coeff = Cyc::zero();
              for (size_t t = 0; t < d.basis[lab].colorings.size(); ++t) {
                auto itv = v.find(d.basis[lab].colorings[t]);
                if (itv != v.end())
                  coeff += d.basis[lab].coeff[t].conj() * itv->second;
              }
              if (coeff.is_zero()) continue;
              d.S_xyz[j].emplace_back(lab, coeff);
              for (size_t t = 0; t < d.basis[lab].colorings.size(); ++t)
                recon[d.basis[lab].colorings[t]] +=
                    coeff * d.basis[lab].coeff[t];
            }
          }
          for (const auto& [g, val] : v)
            if (recon[g] != val)
              throw std::runtime_error("rotated column escapes the basis");
          for (const auto& [g, val] : recon)
            if (!val.is_zero() && v.find(g) == v.end())
              throw std::runtime_error("rotated column escapes the basis");
        }
        PhaseTimer t_cube("cube+unitary");
        SparseCols S2 = sparse_mul(d.S_xyz, d.S_xyz);
        SparseCols S3 = sparse_mul(S2, d.S_xyz);
        if (!sparse_is_identity(S3))
          throw std::runtime_error("rotation does not cube to the identity");
        d.S_inv = sparse_dagger(d.S_xyz);
        if (!sparse_is_identity(sparse_mul(d.S_inv, d.S_xyz)))
          throw std::runtime_error("rotation is not unitary");

        // base vector: the complement kills the two holonomies along the
        // removed worldsheet, leaving the linking axis free
        d.z_s4 = partition_function(sphere(4), model4d, opt);
        {
          std::set<long> support;
          for (long a = 0; a < gs; ++a) {
            long g = flatten3(a, G.zero(), G.zero(), gs);
            if (physical[g]) support.insert(g);
          }
          CVec raw(nn, Cyc::zero());
          for (long lab = 0; lab < nn; ++lab) {
            const auto& col = d.basis[lab];
            for (size_t t = 0; t < col.colorings.size(); ++t)
              if (support.count(col.colorings[t])) raw[lab] += col.coeff[t];
          }
          if (raw[0].is_zero())
            throw std::runtime_error("complement vacuum misses the empty label");
          Cyc scale = d.z_s4 / raw[0];
          d.ltri_base.assign(nn, Cyc::zero());
          for (long lab = 0; lab < nn; ++lab)
            d.ltri_base[lab] = scale * raw[lab];
        }

        found = true;
      } catch (const std::exception& e) {
        last_err = e.what();
        if (getenv("QSURG_TRACE"))
          fprintf(stderr, "frame %d%d%d conj%d rot%d: %s\n", d.flux_slot,
                  d.charge_slot, d.sector_slot, cj, ri, e.what());
      }
    }
  if (!found)
    throw std::runtime_error(
        "no frame convention satisfies the oracle constraints: " + last_err);
  d.fusion_memo.clear();

  // diagonal spins from the sector blocks
  d.T_xy.assign(nn, Cyc::zero());
  for (long lab = 0; lab < nn; ++lab) {
    const Anyon& an = d.anyon_of(lab);
    Cyc ph = an.phase(an.flux);
    d.T_xy[lab] = d.conj_weights ? ph.conj() : ph;
  }

  // shrinkable pure-flux labels: bare linked flux, trivial everything else
  d.s2_labels.assign(gs, -1);
  for (long a = 0; a < gs; ++a) {
    for (long t = 0; t < static_cast<long>(d.sectors[a].anyons.size()); ++t) {
      const Anyon& an = d.sectors[a].anyons[t];
      if (an.flux != G.zero()) continue;
      bool trivial = true;
      for (long i = 0; i < an.regular.size() && trivial; ++i)
        if (an.phi[i] % an.phase_mod != 0) trivial = false;
      if (trivial) {
        d.s2_labels[a] = d.label_index(a, t);
        break;
      }
    }
    if (d.s2_labels[a] < 0)
      throw std::runtime_error("missing pure-flux label");
  }

  // operator frame
  {
    PhaseTimer t_op("op-frame");
    d.op.gsize = gs;
    d.op.count = gs * gs * gs;
    d.op.physical.assign(physical.begin(), physical.end());
    d.op.rot_image.assign(Rfwd.image.begin(), Rfwd.image.end());
    d.op.rot_entry = Rfwd.entry;
    d.op.rot_preimage.assign(d.op.count, -1);
    for (long g = 0; g < d.op.count; ++g)
      if (Rfwd.image[g] >= 0) d.op.rot_preimage[Rfwd.image[g]] = g;
    d.op.z_s4 = d.z_s4;
    for (long a = 0; a < gs; ++a) {
      long g = flatten3(a, G.zero(), G.zero(), gs);
      if (physical[g]) d.op.base_support.push_back(g);
    }
    // L over operator labels: overlap of the column against the support,
    // scaled so the empty label carries the sphere value
    CVec raw(d.op.count, Cyc::zero());
    std::set<long> supp(d.op.base_support.begin(), d.op.base_support.end());
    for (long j = 0; j < d.op.count; ++j)
      for (const auto& [g, c] : d.op.column(G, j))
        if (supp.count(g)) raw[j] += c;
    if (raw[0].is_zero())
      throw std::runtime_error("operator frame misses the empty label");
    d.op.support_scale = d.z_s4 / raw[0];
    d.op.L.assign(d.op.count, Cyc::zero());
    for (long j = 0; j < d.op.count; ++j)
      d.op.L[j] = d.op.support_scale * raw[j];
  }
  return d;
}

}  // namespace qsurg
