#include "qsurg/complex.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qsurg {

int DeltaComplex::pair_index(int i, int j, int dim) {
  // pairs (0,1),(0,2),...,(0,dim),(1,2),... lexicographic
  int idx = 0;
  for (int a = 0; a < i; ++a) idx += dim - a;
  return idx + (j - i - 1);
}

int DeltaComplex::cell_edge(const Cell& c, int i, int j) const {
  return c.edges[pair_index(i, j, dim_)];
}

int DeltaComplex::add_edge(int tail, int head) {
  edge_verts_.emplace_back(tail, head);
  return static_cast<int>(edge_verts_.size()) - 1;
}

int DeltaComplex::add_cell(Cell c) {
  if (static_cast<int>(c.verts.size()) != dim_ + 1)
    throw std::runtime_error("cell has wrong vertex count");
  size_t npairs = static_cast<size_t>(dim_ + 1) * dim_ / 2;
  if (c.edges.size() != npairs)
    throw std::runtime_error("cell has wrong edge count");
  cells_.push_back(std::move(c));
  return static_cast<int>(cells_.size()) - 1;
}

std::vector<int> DeltaComplex::face_key(const Cell& c,
                                        const std::vector<int>& pos) const {
  std::vector<int> key;
  key.reserve(pos.size() + pos.size() * pos.size());
  for (int p : pos) key.push_back(c.verts[p]);
  key.push_back(-1);  // separator between vertex part and edge part
  for (size_t a = 0; a < pos.size(); ++a)
    for (size_t b = a + 1; b < pos.size(); ++b)
      key.push_back(cell_edge(c, pos[a], pos[b]));
  return key;
}

namespace {

void subsets_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(pick);
      return;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

DeltaComplex::Validation DeltaComplex::validate(bool closed) const {
  Validation v;
  v.f_vector.assign(dim_ + 1, 0);

  std::set<int> used_verts;
  for (const auto& c : cells_) {
    if (c.sign != 1 && c.sign != -1) {
      v.message = "cell with orientation sign not in {+1,-1}";
      return v;
    }
    for (int w : c.verts) {
      if (w < 0 || w >= vertex_count_) {
        v.message = "vertex id out of range";
        return v;
      }
      used_verts.insert(w);
    }
    for (int i = 0; i <= dim_; ++i)
      for (int j = i + 1; j <= dim_; ++j) {
        int e = cell_edge(c, i, j);
        if (e < 0 || e >= edge_count()) {
          v.message = "edge id out of range";
          return v;
        }
        if (edge_verts_[e] != std::make_pair(c.verts[i], c.verts[j])) {
          v.message = "edge endpoints disagree with cell vertex order";
          return v;
        }
      }
  }
  v.f_vector[0] = vertex_count_;
  if (dim_ >= 1) v.f_vector[1] = edge_count();

  // intermediate ranks via face keys
  for (int k = 2; k < dim_; ++k) {
    std::set<std::vector<int>> keys;
    for (const auto& c : cells_) {
      subsets_of_size(dim_ + 1, k + 1, [&](const std::vector<int>& pos) {
        keys.insert(face_key(c, pos));
      });
    }
    v.f_vector[k] = static_cast<long>(keys.size());
  }
  if (dim_ >= 2) {
    std::set<std::vector<int>> tops;
    std::vector<int> all(dim_ + 1);
    for (int i = 0; i <= dim_; ++i) all[i] = i;
    for (const auto& c : cells_) {
      if (!tops.insert(face_key(c, all)).second) {
        v.message = "duplicate top simplex";
        return v;
      }
    }
    v.f_vector[dim_] = static_cast<long>(cells_.size());
  } else {
    v.f_vector[dim_] = static_cast<long>(cells_.size());
  }

  v.euler = 0;
  for (int k = 0; k <= dim_; ++k)
    v.euler += (k % 2 == 0 ? 1 : -1) * v.f_vector[k];

  // codim-1 incidences: exactly two per facet with cancelling orientations
  if (closed && dim_ >= 1) {
    std::map<std::vector<int>, std::pair<int, int>> fac;  // key -> count, signsum
    std::map<std::vector<int>, std::string> where;
    for (size_t ci = 0; ci < cells_.size(); ++ci) {
      const auto& c = cells_[ci];
      for (int omit = 0; omit <= dim_; ++omit) {
        std::vector<int> pos;
        for (int i = 0; i <= dim_; ++i)
          if (i != omit) pos.push_back(i);
        auto key = face_key(c, pos);
        int induced = c.sign * ((omit % 2 == 0) ? 1 : -1);
        auto& slot = fac[key];
        slot.first += 1;
        slot.second += induced;
        where[key] = "cell " + std::to_string(ci) + " omit " +
                     std::to_string(omit);
      }
    }
    for (const auto& [key, slot] : fac) {
      if (slot.first != 2) {
        v.message = "facet not shared by exactly two cells (" +
                    std::to_string(slot.first) + " at " + where[key] + ")";
        return v;
      }
      if (slot.second != 0) {
        v.message = "orientation mismatch at facet (" + where[key] + ")";
        return v;
      }
    }
  }

  if (static_cast<int>(used_verts.size()) != vertex_count_) {
    v.message = "unused vertex ids present";
    return v;
  }

  v.pass = true;
  return v;
}

std::string DeltaComplex::to_text() const {
  std::ostringstream os;
  os << "dim " << dim_ << "; vertices " << vertex_count_ << "; edges "
     << edge_count() << "; name " << (name_.empty() ? "-" : name_) << ";\n";
  for (const auto& [t, h] : edge_verts_) os << "e " << t << " " << h << "\n";
  for (const auto& c : cells_) {
    os << "s";
    for (int w : c.verts) os << " " << w;
    os << " " << (c.sign > 0 ? "+1" : "-1");
    for (int e : c.edges) os << " " << e;
    os << "\n";
  }
  return os.str();
}

DeltaComplex DeltaComplex::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty complex file");
  int dim = 0, nv = 0, ne = 0;
  char namebuf[256] = {0};
  if (std::sscanf(line.c_str(), "dim %d; vertices %d; edges %d; name %255[^;];",
                  &dim, &nv, &ne, namebuf) < 3)
    throw std::runtime_error("bad complex header: " + line);
  std::string name(namebuf);
  if (name == "-") name.clear();
  DeltaComplex out(dim, nv, name);
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "e") {
      int t, h;
      ls >> t >> h;
      out.add_edge(t, h);
    } else if (tag == "s") {
      Cell c;
      c.verts.resize(dim + 1);
      for (int i = 0; i <= dim; ++i) ls >> c.verts[i];
      ls >> c.sign;
      size_t npairs = static_cast<size_t>(dim + 1) * dim / 2;
      c.edges.resize(npairs);
      for (size_t i = 0; i < npairs; ++i) ls >> c.edges[i];
      if (!ls) throw std::runtime_error("bad simplex line: " + line);
      out.add_cell(std::move(c));
    } else {
      throw std::runtime_error("bad complex line: " + line);
    }
  }
  if (out.edge_count() != ne)
    throw std::runtime_error("edge count mismatch in complex file");
  return out;
}

DeltaComplex DeltaComplex::reversed() const {
  DeltaComplex out = *this;
  for (auto& c : out.cells_) c.sign = -c.sign;
  out.name_ = name_ + "~rev";
  return out;
}

DeltaComplex DeltaComplex::quotient(const std::vector<int>& vertex_map,
                                    const std::vector<int>& edge_map,
                                    std::string name) const {
  // resolve chains old -> new (maps need not be idempotent)
  auto resolve = [](std::vector<int> m) {
    for (size_t i = 0; i < m.size(); ++i) {
      int x = static_cast<int>(i);
      while (m[x] != x) x = m[x];
      m[i] = x;
    }
    return m;
  };
  std::vector<int> vm = resolve(vertex_map);
  std::vector<int> em = resolve(edge_map);

  // compact vertices
  std::vector<int> vnew(vertex_count_, -1);
  int nv = 0;
  for (int i = 0; i < vertex_count_; ++i)
    if (vm[i] == i) vnew[i] = nv++;
  std::vector<int> enew(edge_count(), -1);
  int ne = 0;
  for (int i = 0; i < edge_count(); ++i)
    if (em[i] == i) enew[i] = ne++;

  DeltaComplex out(dim_, nv, std::move(name));
  for (int i = 0; i < edge_count(); ++i) {
    if (em[i] != i) continue;
    auto [t, h] = edge_verts_[i];
    out.add_edge(vnew[vm[t]], vnew[vm[h]]);
  }
  for (const auto& c : cells_) {
    Cell d;
    d.sign = c.sign;
    d.verts.reserve(c.verts.size());
    for (int w : c.verts) d.verts.push_back(vnew[vm[w]]);
    d.edges.reserve(c.edges.size());
    for (int e : c.edges) d.edges.push_back(enew[em[e]]);
    out.add_cell(std::move(d));
  }
  return out;
}

std::vector<std::array<int, 3>> triangle_constraints(const DeltaComplex& c) {
  std::set<std::array<int, 3>> seen;
  std::vector<std::array<int, 3>> out;
  for (const auto& cell : c.cells()) {
    for (int i = 0; i <= c.dim(); ++i)
      for (int j = i + 1; j <= c.dim(); ++j)
        for (int k = j + 1; k <= c.dim(); ++k) {
          std::array<int, 3> t = {c.cell_edge(cell, i, j),
                                  c.cell_edge(cell, j, k),
                                  c.cell_edge(cell, i, k)};
          if (seen.insert(t).second) out.push_back(t);
        }
  }
  return out;
}

}  // namespace qsurg
