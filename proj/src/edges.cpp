#include "edgestab/edges.hpp"

#include <algorithm>
#include <numeric>

#include "edgestab/error.hpp"

namespace edgestab {

namespace {

bool is_even(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inversions;
  return inversions % 2 == 0;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::SizeLimit, "configuration count overflows 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::SizeLimit, "configuration count overflows 64 bits");
  return r;
}

std::vector<Polynomial> unique_polys(std::vector<Polynomial> v) {
  std::vector<Polynomial> out;
  for (auto& p : v)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  return out;
}

}  // namespace

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> even;
  std::vector<std::vector<int>> odd;
  do {
    (is_even(p) ? even : odd).push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  even.insert(even.end(), odd.begin(), odd.end());
  return even;
}

ConfigEnumerator::ConfigEnumerator(const MatrixFamily& fam, EnumerationOptions opts) : n_(fam.n) {
  if (fam.n <= 0 || fam.entries.size() != static_cast<std::size_t>(fam.n * fam.n))
    throw Error(ErrorCode::DimensionMismatch, "family grid is not n x n");
  for (const Entry& e : fam.entries) {
    auto verts = entry_vertices(e);
    auto edges = entry_edges(e);
    if (opts.dedup) {
      verts = unique_polys(std::move(verts));
      edges = distinct_edges(edges);
    }
    vertices_.push_back(std::move(verts));
    edges_.push_back(std::move(edges));
  }
  sigmas_ = permutations(n_);
  offsets_.reserve(sigmas_.size() + 1);
  offsets_.push_back(0);
  for (const auto& sigma : sigmas_) {
    std::uint64_t block = 1;
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i) {
        const auto cell = static_cast<std::size_t>(i * n_ + j);
        block = checked_mul(block, sigma[static_cast<std::size_t>(j)] == i ? edges_[cell].size()
                                                                          : vertices_[cell].size());
      }
    offsets_.push_back(checked_add(offsets_.back(), block));
  }
  total_ = offsets_.back();
}

EdgeConfiguration ConfigEnumerator::at(std::uint64_t index) const {
  if (index >= total_) throw Error(ErrorCode::DimensionMismatch, "configuration index out of range");
  const auto block = static_cast<std::size_t>(
      std::upper_bound(offsets_.begin(), offsets_.end(), index) - offsets_.begin() - 1);
  std::uint64_t rem = index - offsets_[block];

  EdgeConfiguration cfg;
  cfg.n = n_;
  cfg.index = index;
  cfg.sigma = sigmas_[block];
  cfg.vertex_choice.assign(static_cast<std::size_t>(n_ * n_), -1);
  cfg.edge_choice.assign(static_cast<std::size_t>(n_), 0);
  cfg.cells = PolyMatrix(n_);
  cfg.edges.resize(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      const auto cell = static_cast<std::size_t>(i * n_ + j);
      if (cfg.sigma[static_cast<std::size_t>(j)] == i) {
        const auto radix = edges_[cell].size();
        const auto digit = static_cast<std::size_t>(rem % radix);
        rem /= radix;
        cfg.edge_choice[static_cast<std::size_t>(j)] = static_cast<int>(digit);
        cfg.edges[static_cast<std::size_t>(j)] = edges_[cell][digit];
        cfg.cells(i, j) = edges_[cell][digit].p0;
      } else {
        const auto radix = vertices_[cell].size();
        const auto digit = static_cast<std::size_t>(rem % radix);
        rem /= radix;
        cfg.vertex_choice[cell] = static_cast<int>(digit);
        cfg.cells(i, j) = vertices_[cell][digit];
      }
    }
  }
  for (int j = 0; j < n_; ++j)
    if (!cfg.edges[static_cast<std::size_t>(j)].degenerate()) cfg.param_columns.push_back(j);
  return cfg;
}

std::uint64_t count_configs(const MatrixFamily& fam, EnumerationOptions opts) {
  return ConfigEnumerator(fam, opts).size();
}

PolyMatrix instantiate(const EdgeConfiguration& cfg, std::span<const double> lambda) {
  if (lambda.size() != static_cast<std::size_t>(cfg.k()))
    throw Error(ErrorCode::DimensionMismatch, "lambda has " + std::to_string(lambda.size()) +
                                                  " entries, configuration has k=" + std::to_string(cfg.k()));
  PolyMatrix m = cfg.cells;
  for (std::size_t p = 0; p < lambda.size(); ++p) {
    const int j = cfg.param_columns[p];
    const int i = cfg.sigma[static_cast<std::size_t>(j)];
    m(i, j) = cfg.edges[static_cast<std::size_t>(j)].at(lambda[p]);
  }
  return m;
}

PolyMatrix ReducedFamily::at(double lambda) const {
  PolyMatrix m = cells;
  m(edge_row, edge_col) = edge.at(lambda);
  return m;
}

bool ReducedFamily::same_members(const ReducedFamily& other) const {
  const PolyMatrix a0 = at(0.0), a1 = at(1.0);
  const PolyMatrix b0 = other.at(0.0), b1 = other.at(1.0);
  if (a0 == a1 || b0 == b1) return a0 == a1 && b0 == b1 && a0 == b0;
  return (a0 == b0 && a1 == b1) || (a0 == b1 && a1 == b0);
}

namespace {

void push_distinct(std::vector<ReducedFamily>& out, ReducedFamily f) {
  for (const auto& g : out)
    if (g.same_members(f)) return;
  out.push_back(std::move(f));
}

Polynomial fixed_value(const Entry& e) { return entry_vertices(e).front(); }

}  // namespace

std::vector<ReducedFamily> reduce_column(const MatrixFamily& fam, int col) {
  const int n = fam.n;
  if (col < 0 || col >= n) throw Error(ErrorCode::DimensionMismatch, "column index out of range");
  PolyMatrix base(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j != col && !is_fixed(fam.at(i, j)))
        throw Error(ErrorCode::NotSingleColumnFamily,
                    "cell (" + std::to_string(i) + "," + std::to_string(j) + ") is uncertain");
      base(i, j) = fixed_value(fam.at(i, j));
    }

  std::vector<std::vector<Polynomial>> column_vertices;
  for (int i = 0; i < n; ++i) column_vertices.push_back(entry_vertices(fam.at(i, col)));

  std::vector<ReducedFamily> out;
  for (int row = 0; row < n; ++row) {
    for (const auto& edge : entry_edges(fam.at(row, col))) {
      // odometer over the other cells of the column
      std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
      for (;;) {
        ReducedFamily f;
        f.cells = base;
        f.edge_row = row;
        f.edge_col = col;
        f.edge = edge;
        f.vertex_choice.assign(static_cast<std::size_t>(n * n), -1);
        for (int i = 0; i < n; ++i) {
          if (i == row) continue;
          f.cells(i, col) = column_vertices[static_cast<std::size_t>(i)][digit[static_cast<std::size_t>(i)]];
          f.vertex_choice[static_cast<std::size_t>(i * n + col)] = static_cast<int>(digit[static_cast<std::size_t>(i)]);
        }
        f.cells(row, col) = edge.p0;
        push_distinct(out, std::move(f));

        int i = 0;
        for (; i < n; ++i) {
          if (i == row) continue;
          auto& d = digit[static_cast<std::size_t>(i)];
          if (++d < column_vertices[static_cast<std::size_t>(i)].size()) break;
          d = 0;
        }
        if (i == n) break;
      }
    }
  }
  return out;
}

std::vector<ReducedFamily> reduce_row(const MatrixFamily& fam, int row, int i, int j) {
  const int n = fam.n;
  if (row < 0 || row >= n || i < 0 || i >= n || j < 0 || j >= n || i == j)
    throw Error(ErrorCode::DimensionMismatch, "row reduction needs two distinct cells in range");
  PolyMatrix base(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const bool designated = r == row && (c == i || c == j);
      if (!designated && !is_fixed(fam.at(r, c)))
        throw Error(ErrorCode::NotTwoCellFamily,
                    "cell (" + std::to_string(r) + "," + std::to_string(c) + ") is uncertain");
      base(r, c) = fixed_value(fam.at(r, c));
    }

  std::vector<ReducedFamily> out;
  auto emit = [&](int vertex_col, int edge_col) {
    const auto verts = entry_vertices(fam.at(row, vertex_col));
    const auto edges = entry_edges(fam.at(row, edge_col));
    for (std::size_t v = 0; v < verts.size(); ++v)
      for (const auto& edge : edges) {
        ReducedFamily f;
        f.cells = base;
        f.cells(row, vertex_col) = verts[v];
        f.cells(row, edge_col) = edge.p0;
        f.edge_row = row;
        f.edge_col = edge_col;
        f.edge = edge;
        f.vertex_choice.assign(static_cast<std::size_t>(n * n), -1);
        f.vertex_choice[static_cast<std::size_t>(row * n + vertex_col)] = static_cast<int>(v);
        push_distinct(out, std::move(f));
      }
  };
  emit(i, j);
  emit(j, i);
  return out;
}

}  // namespace edgestab
