#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsurg {

/// Ordered triangulation with branching structure.  Simplices carry their
/// vertex ids in branching order plus an explicit id for every edge between
/// two of their positions; tori and mapping tori identify faces that vertex
/// tuples alone cannot distinguish, so edges are first-class.  Faces of every
/// intermediate rank are keyed by their (vertex tuple, edge tuple) signature.
class DeltaComplex {
 public:
  struct Cell {
    std::vector<int> verts;  // size dim+1, branching order, repeats allowed
    int sign = 1;            // orientation vs. the global one
    std::vector<int> edges;  // ids for position pairs (i<j), lex order
  };

  DeltaComplex() = default;
  DeltaComplex(int dim, int vertex_count, std::string name)
      : dim_(dim), vertex_count_(vertex_count), name_(std::move(name)) {}

  int dim() const { return dim_; }
  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edge_verts_.size()); }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  std::pair<int, int> edge_endpoints(int e) const { return edge_verts_[e]; }

  int add_edge(int tail, int head);
  int add_cell(Cell c);

  static int pair_index(int i, int j, int dim);  // i < j, positions
  int cell_edge(const Cell& c, int i, int j) const;

  /// signature of the face of `c` spanned by the given positions (ascending)
  std::vector<int> face_key(const Cell& c, const std::vector<int>& pos) const;

  struct Validation {
    bool pass = false;
    std::string message;            // first failure, empty if pass
    std::vector<long> f_vector;     // counts by rank 0..dim
    long euler = 0;
  };
  Validation validate(bool closed = true) const;

  std::string to_text() const;
  static DeltaComplex from_text(const std::string& text);

  DeltaComplex reversed() const;  // all orientation signs flipped

  /// Identify vertices/edges according to old-id -> new-id maps (entries may
  /// map to themselves).  Unused ids are compacted away.
  DeltaComplex quotient(const std::vector<int>& vertex_map,
                        const std::vector<int>& edge_map,
                        std::string name) const;

 private:
  int dim_ = 0;
  int vertex_count_ = 0;
  std::vector<std::pair<int, int>> edge_verts_;
  std::vector<Cell> cells_;
  std::string name_;
};

/// Deduplicated triangle constraints (e01, e12, e02) over all cells;
/// a flat coloring g satisfies g[e01] + g[e12] = g[e02] on each.
std::vector<std::array<int, 3>> triangle_constraints(const DeltaComplex& c);

}  // namespace qsurg
