#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edgestab/edges.hpp"
#include "edgestab/family.hpp"
#include "edgestab/region.hpp"

namespace edgestab {

/// A member of the full family: per cell (row-major) either convex weights over the
/// polytope vertices or the coefficient values of an interval entry.
struct Member {
  std::vector<std::vector<double>> params;

  friend bool operator==(const Member&, const Member&) = default;
};

PolyMatrix realize(const MatrixFamily& fam, const Member& m);

struct MemberEvaluation {
  double margin = 0.0;  // smallest signed root margin; -inf for a singular member
  Complex root{0.0, 0.0};
  Polynomial determinant;
};

MemberEvaluation evaluate_member(const MatrixFamily& fam, const Member& m);

/// Member of the full family reproducing `lambda` on the configuration.
Member member_from_configuration(const MatrixFamily& fam, const EdgeConfiguration& cfg,
                                 std::span<const double> lambda);

enum class SampleScheme { Grid, Random };

struct SampleReport {
  enum class Outcome { StableAtAllSamples, UnstableSampleFound };

  std::uint64_t samples = 0;
  double worst_margin = 0.0;
  Member worst_member;
  Complex worst_root{0.0, 0.0};
  Outcome outcome = Outcome::StableAtAllSamples;
};

std::string_view to_string(SampleReport::Outcome outcome);

/// Dense sampling of the whole family. Grid: simplex lattices on polytope cells and
/// uniform grids on interval coefficients at the finest resolution that fits `budget`
/// (resolution 1, the vertex set, always included). Random: Dirichlet(1,..,1) weights and
/// uniform coefficients. Deterministic for a given seed. Throws ValidationFailure.
SampleReport sample_family(const MatrixFamily& fam, SampleScheme scheme, std::uint64_t budget,
                           std::uint64_t seed);

struct CounterexampleRecord {
  Member member;
  MemberEvaluation evaluation;
};

/// Randomized local descent on the root margin around `hint`. Returns the best member
/// when its margin is negative.
std::optional<CounterexampleRecord> find_counterexample_near(const MatrixFamily& fam, const Member& hint,
                                                             std::uint64_t budget, std::uint64_t seed = 1);

}  // namespace edgestab
