#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "edgestab/poly.hpp"
#include "edgestab/region.hpp"

namespace edgestab {

/// conv{vertices}. A single vertex is a fixed entry.
struct PolytopeEntry {
  std::vector<Polynomial> vertices;
};

/// Coefficientwise box: lower[l] <= q_l <= upper[l].
struct IntervalEntry {
  std::vector<double> lower;
  std::vector<double> upper;
};

using Entry = std::variant<PolytopeEntry, IntervalEntry>;

/// The segment lambda * p1 + (1 - lambda) * p0, lambda in [0, 1].
struct EdgeSegment {
  Polynomial p0;
  Polynomial p1;

  bool degenerate() const { return p0 == p1; }
  Polynomial at(double lambda) const { return lerp(p0, p1, lambda); }

  friend bool operator==(const EdgeSegment&, const EdgeSegment&) = default;
};

/// Square matrix of polynomials, row-major.
struct PolyMatrix {
  int n = 0;
  std::vector<Polynomial> cells;

  PolyMatrix() = default;
  PolyMatrix(int size, std::vector<Polynomial> c) : n(size), cells(std::move(c)) {}
  explicit PolyMatrix(int size) : n(size), cells(static_cast<std::size_t>(size * size)) {}

  const Polynomial& operator()(int row, int col) const { return cells[static_cast<std::size_t>(row * n + col)]; }
  Polynomial& operator()(int row, int col) { return cells[static_cast<std::size_t>(row * n + col)]; }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;
};

enum class FamilyMode { Polytope, Interval, Mixed };

std::string_view to_string(FamilyMode mode);

struct MatrixFamily {
  int n = 0;
  std::vector<Entry> entries;  // row-major n*n
  Region region;

  const Entry& at(int row, int col) const { return entries[static_cast<std::size_t>(row * n + col)]; }
  Entry& at(int row, int col) { return entries[static_cast<std::size_t>(row * n + col)]; }

  FamilyMode mode() const;
};

struct Diagnostic {
  enum class Kind { EmptyEntry, DuplicateVertex, BoundOrder, BoundLength, GridShape, MixedMode };
  Kind kind;
  int row = -1;
  int col = -1;
  std::string message;
};

std::string_view to_string(Diagnostic::Kind kind);

/// Structural checks; an empty result means well-formed. Mixed grids are reported only
/// when `require_uniform` is set (the interval and polytope drivers need one kind).
std::vector<Diagnostic> validate(const MatrixFamily& fam, bool require_uniform = false);

/// c1..c4 of the interval entry (lower/upper alternation with period four).
std::array<Polynomial, 4> kharitonov_vertices(const IntervalEntry& e);

/// Segments (c1,c2), (c2,c4), (c4,c3), (c3,c1).
std::array<EdgeSegment, 4> kharitonov_edges(const IntervalEntry& e);

/// All unordered vertex pairs; empty when there is one vertex.
std::vector<EdgeSegment> polytope_edges(const PolytopeEntry& e);

/// Drops exact duplicates (ordered endpoints) and degenerate segments whose point is an
/// endpoint of a remaining segment. Order of first occurrence is kept.
std::vector<EdgeSegment> distinct_edges(std::span<const EdgeSegment> edges);

/// Vertex set the edge machinery draws from: polytope vertices, or the four Kharitonov
/// polynomials of an interval entry.
std::vector<Polynomial> entry_vertices(const Entry& e);

/// Edge set the edge machinery draws from: polytope_edges (a single degenerate segment
/// for a fixed entry), or the four Kharitonov edges.
std::vector<EdgeSegment> entry_edges(const Entry& e);

bool is_fixed(const Entry& e);

/// True when `p` lies in the entry: a convex combination of polytope vertices (solved as a
/// small nonnegative least-squares problem), or coefficientwise inside an interval box.
bool entry_contains(const Entry& e, const Polynomial& p, double tol = 1e-9);

}  // namespace edgestab
