#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgestab/det.hpp"
#include "edgestab/edges.hpp"
#include "edgestab/family.hpp"
#include "edgestab/region.hpp"

namespace edgestab {

enum class Status { RobustlyStable = 0, Unstable = 1, Degenerate = 2, Inconclusive = 3 };

std::string_view to_string(Status status);

/// Unstable > Degenerate > Inconclusive > RobustlyStable.
int severity(Status status) noexcept;

/// A root counts as on the boundary (hence not strictly inside D) when its signed
/// margin is at most this times max(1, |z|).
inline constexpr double kRootBoundaryTol = 1e-9;

bool root_inside(const Region& r, Complex z) noexcept;

struct Witness {
  std::uint64_t config_index = 0;
  std::vector<double> lambda;
  Polynomial determinant;
  Complex root;
  double root_margin = 0.0;
};

struct Verdict {
  Status status = Status::RobustlyStable;
  /// Stable: smallest relative hull (or root) margin seen. Unstable: the witness root margin.
  double margin = 0.0;
  std::optional<Witness> witness;
  std::string reason;
};

struct Tolerances {
  int boundary_grid = 512;
  int refine_depth = 40;
  int box_depth = 12;
  double zero_margin = 1e-7;
  double degree_eps = 1e-9;
  std::uint64_t max_sweep_steps = 200000;

  /// Throws ValidationFailure when a field is not positive.
  void check() const;
};

/// Every root of p strictly inside r. Throws ZeroPolynomial.
Verdict point_stable(const Polynomial& p, const Region& r);

/// Routh array sign changes in the first column. Throws IndeterminateRouthRow when a
/// whole row vanishes and ZeroLeadingCoefficient for the zero polynomial.
int routh_sign_changes(const Polynomial& p);

/// Hurwitz test by the Routh array; a vanishing first-column entry or row means not stable.
bool hurwitz_algebraic(const Polynomial& p);

/// Stability of lambda * p1 + (1 - lambda) * p0 over lambda in [0,1], by tracking where
/// the crossing parameter -p0(s)/(p1(s) - p0(s)) becomes real along the boundary.
Verdict segment_stable(const EdgeSegment& seg, const Region& r, const Tolerances& tol = {});

/// Stability of {D(s, lambda) : lambda in [0,1]^k} by zero exclusion on the boundary
/// with convex-hull certificates and longest-axis subdivision of the lambda box.
Verdict box_stable(const ParametricDeterminant& pd, const Region& r, const Tolerances& tol = {});

struct ConfigSummary {
  std::uint64_t index = 0;
  Status status = Status::RobustlyStable;
  double margin = 0.0;
  std::string reason;
};

struct AnalysisOptions {
  int jobs = 1;
  bool dedup = false;
};

struct FamilyAnalysis {
  Verdict verdict;
  std::uint64_t config_count = 0;
  /// Configurations in index order; when a configuration is Unstable the list stops there.
  std::vector<ConfigSummary> summaries;
  std::optional<EdgeConfiguration> witness_config;
};

inline constexpr int kMaxDriverSize = 8;

/// Verdict for one configuration of the edge set.
Verdict check_configuration(const EdgeConfiguration& cfg, const Region& r, const Tolerances& tol);

/// Polytope families: every configuration of the edge set must be stable.
/// Throws ValidationFailure or SizeLimit (n > 8).
FamilyAnalysis analyze_family(const MatrixFamily& fam, const Tolerances& tol = {},
                              const AnalysisOptions& opts = {});

/// Interval families over the Hurwitz half-plane, using Kharitonov vertex and edge sets.
/// Throws RegionNotHurwitz, ValidationFailure or SizeLimit.
FamilyAnalysis analyze_interval(const MatrixFamily& fam, const Tolerances& tol = {},
                                const AnalysisOptions& opts = {});

}  // namespace edgestab
