#include "edgestab/family.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "edgestab/error.hpp"

namespace edgestab {

std::string_view to_string(FamilyMode mode) {
  switch (mode) {
    case FamilyMode::Polytope: return "polytope";
    case FamilyMode::Interval: return "interval";
    case FamilyMode::Mixed: return "mixed";
  }
  return "mixed";
}

std::string_view to_string(Diagnostic::Kind kind) {
  switch (kind) {
    case Diagnostic::Kind::EmptyEntry: return "empty_entry";
    case Diagnostic::Kind::DuplicateVertex: return "duplicate_vertex";
    case Diagnostic::Kind::BoundOrder: return "bound_order";
    case Diagnostic::Kind::BoundLength: return "bound_length";
    case Diagnostic::Kind::GridShape: return "grid_shape";
    case Diagnostic::Kind::MixedMode: return "mixed_mode";
  }
  return "unknown";
}

FamilyMode MatrixFamily::mode() const {
  bool poly = false;
  bool interval = false;
  for (const auto& e : entries) {
    if (std::holds_alternative<PolytopeEntry>(e))
      poly = true;
    else
      interval = true;
  }
  if (poly && interval) return FamilyMode::Mixed;
  return interval ? FamilyMode::Interval : FamilyMode::Polytope;
}

std::vector<Diagnostic> validate(const MatrixFamily& fam, bool require_uniform) {
  std::vector<Diagnostic> out;
  if (fam.n <= 0 || fam.entries.size() != static_cast<std::size_t>(fam.n) * static_cast<std::size_t>(fam.n)) {
    out.push_back({Diagnostic::Kind::GridShape, -1, -1,
                   "grid holds " + std::to_string(fam.entries.size()) + " cells for n=" + std::to_string(fam.n)});
    return out;
  }
  for (int i = 0; i < fam.n; ++i) {
    for (int j = 0; j < fam.n; ++j) {
      const Entry& e = fam.at(i, j);
      if (const auto* p = std::get_if<PolytopeEntry>(&e)) {
        if (p->vertices.empty()) {
          out.push_back({Diagnostic::Kind::EmptyEntry, i, j, "polytope entry has no vertices"});
          continue;
        }
        for (std::size_t a = 0; a < p->vertices.size(); ++a)
          for (std::size_t b = a + 1; b < p->vertices.size(); ++b)
            if (p->vertices[a] == p->vertices[b])
              out.push_back({Diagnostic::Kind::DuplicateVertex, i, j,
                             "vertices " + std::to_string(a) + " and " + std::to_string(b) + " coincide"});
      } else {
        const auto& iv = std::get<IntervalEntry>(e);
        if (iv.lower.empty()) {
          out.push_back({Diagnostic::Kind::EmptyEntry, i, j, "interval entry has no coefficients"});
          continue;
        }
        if (iv.lower.size() != iv.upper.size()) {
          out.push_back({Diagnostic::Kind::BoundLength, i, j, "lower and upper differ in length"});
          continue;
        }
        for (std::size_t l = 0; l < iv.lower.size(); ++l)
          if (!(iv.lower[l] <= iv.upper[l]))
            out.push_back({Diagnostic::Kind::BoundOrder, i, j,
                           "coefficient " + std::to_string(l) + ": lower exceeds upper"});
      }
    }
  }
  if (require_uniform && fam.mode() == FamilyMode::Mixed)
    out.push_back({Diagnostic::Kind::MixedMode, -1, -1, "grid mixes polytope and interval entries"});
  return out;
}

std::array<Polynomial, 4> kharitonov_vertices(const IntervalEntry& e) {
  if (e.lower.size() != e.upper.size())
    throw Error(ErrorCode::DimensionMismatch, "interval bounds differ in length");
  for (std::size_t l = 0; l < e.lower.size(); ++l)
    if (!(e.lower[l] <= e.upper[l]))
      throw Error(ErrorCode::BoundOrderViolation, "coefficient " + std::to_string(l));

  // per-vertex pick of upper bound for l mod 4
  static constexpr bool kUpper[4][4] = {
      {false, false, true, true},
      {false, true, true, false},
      {true, false, false, true},
      {true, true, false, false},
  };
  std::array<Polynomial, 4> out;
  for (int k = 0; k < 4; ++k) {
    std::vector<double> c(e.lower.size());
    for (std::size_t l = 0; l < c.size(); ++l) c[l] = kUpper[k][l % 4] ? e.upper[l] : e.lower[l];
    out[static_cast<std::size_t>(k)] = Polynomial(std::move(c));
  }
  return out;
}

std::array<EdgeSegment, 4> kharitonov_edges(const IntervalEntry& e) {
  const auto c = kharitonov_vertices(e);
  return {EdgeSegment{c[0], c[1]}, EdgeSegment{c[1], c[3]}, EdgeSegment{c[3], c[2]},
          EdgeSegment{c[2], c[0]}};
}

std::vector<EdgeSegment> polytope_edges(const PolytopeEntry& e) {
  std::vector<EdgeSegment> out;
  const auto& v = e.vertices;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) out.push_back({v[a], v[b]});
  return out;
}

std::vector<EdgeSegment> distinct_edges(std::span<const EdgeSegment> edges) {
  std::vector<EdgeSegment> unique;
  for (const auto& e : edges)
    if (std::find(unique.begin(), unique.end(), e) == unique.end()) unique.push_back(e);

  std::vector<EdgeSegment> out;
  for (const auto& e : unique) {
    if (e.degenerate()) {
      const bool covered = std::any_of(unique.begin(), unique.end(), [&](const EdgeSegment& o) {
        return !o.degenerate() && (o.p0 == e.p0 || o.p1 == e.p0);
      });
      if (covered) continue;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<Polynomial> entry_vertices(const Entry& e) {
  if (const auto* p = std::get_if<PolytopeEntry>(&e)) return p->vertices;
  const auto k = kharitonov_vertices(std::get<IntervalEntry>(e));
  return {k.begin(), k.end()};
}

std::vector<EdgeSegment> entry_edges(const Entry& e) {
  if (const auto* p = std::get_if<PolytopeEntry>(&e)) {
    auto edges = polytope_edges(*p);
    if (edges.empty() && !p->vertices.empty()) edges.push_back({p->vertices[0], p->vertices[0]});
    return edges;
  }
  const auto k = kharitonov_edges(std::get<IntervalEntry>(e));
  return {k.begin(), k.end()};
}

bool is_fixed(const Entry& e) {
  if (const auto* p = std::get_if<PolytopeEntry>(&e)) return p->vertices.size() <= 1;
  const auto& iv = std::get<IntervalEntry>(e);
  return iv.lower == iv.upper;
}

bool entry_contains(const Entry& e, const Polynomial& p, double tol) {
  if (const auto* iv = std::get_if<IntervalEntry>(&e)) {
    if (p.degree() >= static_cast<int>(iv->lower.size()) && !p.is_zero()) return false;
    for (std::size_t l = 0; l < iv->lower.size(); ++l) {
      const double slack = tol * std::max(1.0, std::max(std::abs(iv->lower[l]), std::abs(iv->upper[l])));
      if (p[l] < iv->lower[l] - slack || p[l] > iv->upper[l] + slack) return false;
    }
    return true;
  }
  const auto& verts = std::get<PolytopeEntry>(e).vertices;
  const std::size_t m = verts.size();
  std::size_t rows = p.coeffs().size();
  double scale = p.max_abs_coeff();
  for (const auto& v : verts) {
    rows = std::max(rows, v.coeffs().size());
    scale = std::max(scale, v.max_abs_coeff());
  }
  scale = std::max(scale, 1.0);
  // small supports only: enumerate every vertex subset and solve the equality-constrained system
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t{1} << i)) idx.push_back(i);
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows + 1), static_cast<Eigen::Index>(idx.size()));
    Eigen::VectorXd b(static_cast<Eigen::Index>(rows + 1));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < idx.size(); ++c) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = verts[idx[c]][r];
      b(static_cast<Eigen::Index>(r)) = p[r];
    }
    for (std::size_t c = 0; c < idx.size(); ++c) a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(c)) = scale;
    b(static_cast<Eigen::Index>(rows)) = scale;
    const Eigen::VectorXd w = a.colPivHouseholderQr().solve(b);
    if ((a * w - b).norm() > tol * scale * static_cast<double>(rows + 1)) continue;
    if (w.minCoeff() >= -tol) return true;
  }
  return false;
}

}  // namespace edgestab
