#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgestab/family.hpp"

namespace edgestab {

/// One member of the edge set: a permutation sigma puts column j's pattern cell at row
/// sigma[j]; pattern cells range over a chosen edge, every other cell sits at a chosen
/// vertex. Indices are zero-based.
struct EdgeConfiguration {
  int n = 0;
  std::uint64_t index = 0;
  std::vector<int> sigma;
  std::vector<int> vertex_choice;  // row-major, -1 on pattern cells
  std::vector<int> edge_choice;    // per column
  PolyMatrix cells;                // vertex polynomials; pattern cells hold their edge's p0
  std::vector<EdgeSegment> edges;  // per column
  std::vector<int> param_columns;  // columns whose edge is not degenerate; lambda follows this order

  int k() const noexcept { return static_cast<int>(param_columns.size()); }
  bool is_pattern(int row, int col) const noexcept { return sigma[static_cast<std::size_t>(col)] == row; }
};

/// All permutations of {0..n-1}: even ones in lexicographic order, then odd ones in
/// lexicographic order. For n = 3 this is id, (2 3 1), (3 1 2), (1 3 2), (2 1 3), (3 2 1).
std::vector<std::vector<int>> permutations(int n);

struct EnumerationOptions {
  bool dedup = false;  // collapse duplicate/degenerate edges and duplicate vertices per cell
};

/// Random-access view of the configuration stream. Order: permutation (as in
/// permutations()), then a mixed-radix counter over cells in column-major order with
/// cell (0,0) the fastest digit. Pattern-cell digits select an edge, others a vertex.
class ConfigEnumerator {
 public:
  explicit ConfigEnumerator(const MatrixFamily& fam, EnumerationOptions opts = {});

  std::uint64_t size() const noexcept { return total_; }
  EdgeConfiguration at(std::uint64_t index) const;
  const std::vector<std::vector<int>>& sigmas() const noexcept { return sigmas_; }
  int n() const noexcept { return n_; }

  class iterator {
   public:
    using value_type = EdgeConfiguration;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const ConfigEnumerator* owner, std::uint64_t pos) : owner_(owner), pos_(pos) {}
    EdgeConfiguration operator*() const { return owner_->at(pos_); }
    iterator& operator++() {
      ++pos_;
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++pos_;
      return t;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.pos_ == b.pos_; }

   private:
    const ConfigEnumerator* owner_ = nullptr;
    std::uint64_t pos_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, total_}; }

 private:
  int n_;
  std::vector<std::vector<Polynomial>> vertices_;  // per cell, row-major
  std::vector<std::vector<EdgeSegment>> edges_;    // per cell, row-major
  std::vector<std::vector<int>> sigmas_;
  std::vector<std::uint64_t> offsets_;  // first index of each permutation block, plus total
  std::uint64_t total_ = 0;
};

inline ConfigEnumerator enumerate_configs(const MatrixFamily& fam, EnumerationOptions opts = {}) {
  return ConfigEnumerator(fam, opts);
}

/// Stream length of enumerate_configs. Throws SizeLimit if it does not fit in 64 bits.
std::uint64_t count_configs(const MatrixFamily& fam, EnumerationOptions opts = {});

/// Pattern cells at lambda * p1 + (1 - lambda) * p0 (lambda indexed like param_columns),
/// every other cell at its vertex. Throws DimensionMismatch when lambda.size() != k.
PolyMatrix instantiate(const EdgeConfiguration& cfg, std::span<const double> lambda);

/// A family with a single cell on an edge and every other cell fixed.
struct ReducedFamily {
  PolyMatrix cells;  // the edge cell holds edge.p0
  int edge_row = 0;
  int edge_col = 0;
  EdgeSegment edge;
  std::vector<int> vertex_choice;  // row-major, -1 on the edge cell and on fixed cells

  PolyMatrix at(double lambda) const;
  bool same_members(const ReducedFamily& other) const;
};

/// Column reduction: every cell outside `col` must be fixed. For each row i the cell
/// (i, col) runs over its edges while the other cells of the column take every vertex
/// combination. Families with identical member sets are reported once.
/// Throws NotSingleColumnFamily.
std::vector<ReducedFamily> reduce_column(const MatrixFamily& fam, int col);

/// Row reduction on cells (row, i) and (row, j), the only uncertain cells: one cell at a
/// vertex while the other runs over an edge, in both roles. Identical member sets are
/// reported once. Throws NotTwoCellFamily.
std::vector<ReducedFamily> reduce_row(const MatrixFamily& fam, int row, int i, int j);

}  // namespace edgestab
