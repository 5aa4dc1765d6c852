#include "qsurg/cocycle.hpp"

#include <numeric>
#include <stdexcept>

namespace qsurg {

CocycleTable::CocycleTable(AbelianGroup g, int degree, long phase_order,
                           Evaluator eval, long dense_cap_entries)
    : group_(std::move(g)), degree_(degree), order_(phase_order),
      eval_(std::move(eval)) {
  double entries = 1;
  for (int i = 0; i < degree_; ++i) entries *= group_.size();
  if (entries <= static_cast<double>(dense_cap_entries)) {
    long n = static_cast<long>(entries);
    values_.resize(n);
    std::vector<long> args(degree_);
    for (long idx = 0; idx < n; ++idx) {
      long rem = idx;
      for (int i = degree_ - 1; i >= 0; --i) {
        args[i] = rem % group_.size();
        rem /= group_.size();
      }
      values_[idx] = static_cast<int32_t>(eval_(args));
    }
  }
}

long CocycleTable::flatten(const std::vector<long>& args) const {
  long idx = 0;
  for (int i = 0; i < degree_; ++i) idx = idx * group_.size() + args[i];
  return idx;
}

long CocycleTable::exponent(const std::vector<long>& args) const {
  if (!values_.empty()) return values_[flatten(args)];
  long e = eval_(args) % order_;
  return e < 0 ? e + order_ : e;
}

Cyc CocycleTable::value(const std::vector<long>& args) const {
  return Cyc::root_of_unity(exponent(args), order_);
}

CocycleTable CocycleTable::with_dense_cap(long cap) const {
  return CocycleTable(group_, degree_, order_, eval_, cap);
}

void normalize_twist(const AbelianGroup& g, TwistSpec& twist) {
  for (auto& term : twist.terms) {
    size_t want = 0;
    switch (term.kind) {
      case TwistTerm::Kind::PairI_II: want = 2; break;
      case TwistTerm::Kind::TripleLow: want = 3; break;
      case TwistTerm::Kind::TripleHigh: want = 3; break;
      case TwistTerm::Kind::Quad: want = 4; break;
    }
    if (term.indices.size() != want)
      throw std::runtime_error("twist term has wrong index count");
    for (long i : term.indices)
      if (i < 1 || i > g.rank())
        throw std::runtime_error("twist index out of range");
    // p lives mod gcd of the involved factor orders
    long m = 0;
    if (term.kind == TwistTerm::Kind::TripleHigh) {
      // p_{IJK} mod N_{IJK}
      m = std::gcd(std::gcd(g.orders()[term.indices[0] - 1],
                            g.orders()[term.indices[1] - 1]),
                   g.orders()[term.indices[2] - 1]);
    } else {
      m = 0;
      for (long i : term.indices) m = std::gcd(m, g.orders()[i - 1]);
    }
    term.p %= m;
    if (term.p < 0) term.p += m;
  }
  // distinctness where the kind needs it
  for (auto& term : twist.terms) {
    if (term.kind == TwistTerm::Kind::TripleLow ||
        term.kind == TwistTerm::Kind::Quad) {
      auto idx = term.indices;
      std::sort(idx.begin(), idx.end());
      if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw std::runtime_error("twist term requires distinct indices");
    }
  }
}

namespace {

long phase_order_of(const AbelianGroup& g, const TwistSpec& twist) {
  long L = 1;
  for (const auto& term : twist.terms) {
    long den = 1;
    const auto& N = g.orders();
    switch (term.kind) {
      case TwistTerm::Kind::PairI_II:
        den = N[term.indices[0] - 1] * N[term.indices[1] - 1];
        break;
      case TwistTerm::Kind::TripleLow:
        den = std::gcd(std::gcd(N[term.indices[0] - 1], N[term.indices[1] - 1]),
                       N[term.indices[2] - 1]);
        break;
      case TwistTerm::Kind::TripleHigh:
        den = std::gcd(N[term.indices[0] - 1], N[term.indices[1] - 1]) *
              N[term.indices[2] - 1];
        break;
      case TwistTerm::Kind::Quad: {
        long m = 0;
        for (long i : term.indices) m = std::gcd(m, N[i - 1]);
        den = m;
        break;
      }
    }
    L = std::lcm(L, den);
  }
  return L;
}

// exponent contributed by one term, in units of 1/L
long term_exponent(const AbelianGroup& g, const TwistTerm& term, long L,
                   const std::vector<long>& args) {
  const auto& N = g.orders();
  auto comp = [&](int arg, long ind1based) {
    return g.component(args[arg], ind1based - 1);
  };
  switch (term.kind) {
    case TwistTerm::Kind::PairI_II: {
      long I = term.indices[0], J = term.indices[1];
      long wrap = comp(1, J) + comp(2, J) >= N[J - 1] ? N[J - 1] : 0;
      // p/(N_I N_J) * a_I * wrap
      return term.p * comp(0, I) % L * (wrap / N[J - 1]) % L *
             (L / N[I - 1]) % L;
    }
    case TwistTerm::Kind::TripleLow: {
      long i = term.indices[0], j = term.indices[1], k = term.indices[2];
      long m = std::gcd(std::gcd(N[i - 1], N[j - 1]), N[k - 1]);
      return term.p * comp(0, i) % L * comp(1, j) % L * comp(2, k) % L *
             (L / m) % L;
    }
    case TwistTerm::Kind::TripleHigh: {
      long I = term.indices[0], J = term.indices[1], K = term.indices[2];
      long nij = std::gcd(N[I - 1], N[J - 1]);
      long wrap = comp(2, K) + comp(3, K) >= N[K - 1] ? 1 : 0;
      // p/(N_IJ N_K) * a_I b_J * (N_K * wrap)
      return term.p * comp(0, I) % L * comp(1, J) % L * wrap % L *
             (L / nij) % L;
    }
    case TwistTerm::Kind::Quad: {
      long m = 0;
      for (long i : term.indices) m = std::gcd(m, N[i - 1]);
      long v = term.p;
      for (int s = 0; s < 4; ++s) v = v * comp(s, term.indices[s]) % L;
      return v * (L / m) % L;
    }
  }
  return 0;
}

CocycleTable build_from_twist(const AbelianGroup& g, TwistSpec twist,
                              int degree, long dense_cap) {
  normalize_twist(g, twist);
  for (const auto& term : twist.terms) {
    bool ok = false;
    if (degree == 3)
      ok = term.kind == TwistTerm::Kind::PairI_II ||
           term.kind == TwistTerm::Kind::TripleLow;
    else
      ok = term.kind == TwistTerm::Kind::TripleHigh ||
           term.kind == TwistTerm::Kind::Quad;
    if (!ok) throw std::runtime_error("twist term kind does not fit degree");
  }
  long L = phase_order_of(g, twist);
  auto eval = [g, twist, L](const std::vector<long>& args) -> long {
    long e = 0;
    for (const auto& term : twist.terms)
      e = (e + term_exponent(g, term, L, args)) % L;
    return e;
  };
  return CocycleTable(g, degree, L, eval, dense_cap);
}

}  // namespace

CocycleTable build_cocycle_2p1d(const AbelianGroup& g, TwistSpec twist,
                                long dense_cap) {
  if (twist.dimension != 3)
    throw std::runtime_error("expected dimension-3 twist");
  return build_from_twist(g, std::move(twist), 3, dense_cap);
}

CocycleTable build_cocycle_3p1d(const AbelianGroup& g, TwistSpec twist,
                                long dense_cap) {
  if (twist.dimension != 4)
    throw std::runtime_error("expected dimension-4 twist");
  return build_from_twist(g, std::move(twist), 4, dense_cap);
}

CocycleCheck check_cocycle(const CocycleTable& t, long enumeration_cap) {
  const AbelianGroup& G = t.group();
  int n = t.degree();
  double tuples = 1;
  for (int i = 0; i <= n; ++i) tuples *= G.size();
  if (tuples > static_cast<double>(enumeration_cap))
    throw cap_exceeded("cocycle check tuple count exceeds cap");

  long total = static_cast<long>(tuples);
  long L = t.phase_order();
  std::vector<long> g(n + 1), sub(n);
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    for (int i = n; i >= 0; --i) {
      g[i] = rem % G.size();
      rem /= G.size();
    }
    // inhomogeneous coboundary: front, fused pairs with alternating sign, back
    long e = 0;
    for (int i = 0; i < n; ++i) sub[i] = g[i + 1];
    e += t.exponent(sub);
    for (int i = 1; i <= n; ++i) {
      for (int j = 0, k = 0; j <= n; ++j) {
        if (j == i) continue;
        sub[k] = (j == i - 1) ? G.add(g[i - 1], g[i]) : g[j];
        ++k;
      }
      long v = t.exponent(sub);
      e += (i % 2 == 1) ? L - v : v;
    }
    for (int i = 0; i < n; ++i) sub[i] = g[i];
    long back = t.exponent(sub);
    e += (n + 1) % 2 == 1 ? L - back : back;
    if (e % L != 0) return {false, g};
  }
  return {true, {}};
}

CocycleTable slant(const CocycleTable& t, long a, long dense_cap) {
  int n = t.degree();
  if (n < 2) throw std::runtime_error("slant needs degree >= 2");
  CocycleTable base = t;
  long L = t.phase_order();
  auto eval = [base, a, n, L](const std::vector<long>& args) -> long {
    std::vector<long> full(n);
    long e = 0;
    for (int slot = 0; slot < n; ++slot) {
      for (int j = 0, k = 0; j < n; ++j) {
        if (j == slot) {
          full[j] = a;
        } else {
          full[j] = args[k++];
        }
      }
      long v = base.exponent(full);
      e = (e + ((slot % 2 == 0) ? v : L - v)) % L;
    }
    return e;
  };
  return CocycleTable(t.group(), n - 1, L, eval, dense_cap);
}

}  // namespace qsurg
