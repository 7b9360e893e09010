#include <doctest.h>

#include <set>

#include "edgestab/det.hpp"
#include "edgestab/io.hpp"
#include "edgestab/oracle.hpp"
#include "edgestab/stab.hpp"
#include "support.hpp"

using namespace edgestab;

TEST_CASE("fixed family has one sample") {
  const auto fam = testsupport::polytope_family(2, {{Polynomial{2, 1}}, {Polynomial{0.5}}, {Polynomial{0.1}}, {Polynomial{3, 1}}});
  const auto rep = sample_family(fam, SampleScheme::Grid, 1000, 1);
  CHECK(rep.samples == 1);
  const Polynomial d = Polynomial{2, 1} * Polynomial{3, 1} - Polynomial{0.05};
  CHECK(rep.worst_margin == doctest::Approx(testsupport::root_margin(d, Region::hurwitz())));
  CHECK(sample_family(fam, SampleScheme::Random, 1000, 1).samples == 1);
}

TEST_CASE("grid scheme visits every vertex matrix") {
  auto fam = parse_family(EDGESTAB_FIXTURES "/sec5.json").family;
  std::get<PolytopeEntry>(fam.at(2, 2)).vertices[0] = Polynomial{-1, 1};
  const auto rep = sample_family(fam, SampleScheme::Grid, 1, 1);  // budget below the vertex count
  CHECK(rep.samples >= 512);
  CHECK(rep.outcome == SampleReport::Outcome::UnstableSampleFound);
  CHECK(rep.worst_margin < 0);
  CHECK(evaluate_member(fam, rep.worst_member).margin == doctest::Approx(rep.worst_margin));
}

TEST_CASE("random scheme on the stable fixture") {
  const auto fam = parse_family(EDGESTAB_FIXTURES "/sec5.json").family;
  const auto rep = sample_family(fam, SampleScheme::Random, 10000, 7);
  CHECK(rep.samples == 10000);
  CHECK(rep.outcome == SampleReport::Outcome::StableAtAllSamples);
  CHECK(rep.worst_margin > 0);
  const auto again = sample_family(fam, SampleScheme::Random, 10000, 7);
  CHECK(again.worst_margin == rep.worst_margin);
  CHECK(again.worst_member == rep.worst_member);
}

TEST_CASE("random members belong to the family") {
  testsupport::Rng rng(12);
  const auto fam = testsupport::random_polytope_family(rng, 2, 3, 2, -2, 2);
  const auto rep = sample_family(fam, SampleScheme::Random, 50, 3);
  const auto m = realize(fam, rep.worst_member);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(entry_contains(fam.at(r, c), m(r, c), 1e-7));
}

TEST_CASE("member_from_configuration reproduces the instantiated matrix") {
  testsupport::Rng rng(4);
  const auto fam = testsupport::random_polytope_family(rng, 3, 2, 2, -3, 3);
  const ConfigEnumerator configs(fam);
  for (int t = 0; t < 20; ++t) {
    const auto cfg = configs.at(rng.next() % configs.size());
    std::vector<double> lam(static_cast<std::size_t>(cfg.k()));
    for (auto& x : lam) x = rng.uniform(0, 1);
    const auto member = member_from_configuration(fam, cfg, lam);
    const auto a = realize(fam, member), b = instantiate(cfg, lam);
    for (std::size_t i = 0; i < a.cells.size(); ++i) CHECK(testsupport::rel_diff(a.cells[i], b.cells[i]) < 1e-12);
  }
}

TEST_CASE("counterexample search") {
  auto planted = parse_family(EDGESTAB_FIXTURES "/sec5.json").family;
  std::get<PolytopeEntry>(planted.at(0, 0)).vertices[1] = Polynomial{-0.5, 1};
  const auto res = analyze_family(planted);
  REQUIRE(res.verdict.status == Status::Unstable);
  const auto hint = member_from_configuration(planted, *res.witness_config, res.verdict.witness->lambda);

  // a hint that is already unstable comes back unchanged
  const auto same = find_counterexample_near(planted, hint, 100);
  REQUIRE(same);
  CHECK(same->member == hint);
  CHECK(same->evaluation.margin < 0);

  // a stable hint next to the planted vertex: the search finds the unstable corner region
  Member near = hint;
  near.params[0] = {0.9, 0.1};
  CHECK(evaluate_member(planted, near).margin > 0);
  const auto found = find_counterexample_near(planted, near, 2000);
  REQUIRE(found);
  CHECK(found->evaluation.margin < 0);

  const auto stable = parse_family(EDGESTAB_FIXTURES "/sec5.json").family;
  Member fabricated = hint;
  CHECK_FALSE(find_counterexample_near(stable, fabricated, 500));
}

TEST_CASE("interval families sample coefficients inside their boxes") {
  MatrixFamily fam;
  fam.n = 1;
  fam.entries.emplace_back(IntervalEntry{{1, 3, 5}, {2, 4, 6}});
  const auto grid = sample_family(fam, SampleScheme::Grid, 100, 1);
  CHECK(grid.samples >= 8);
  CHECK(grid.outcome == SampleReport::Outcome::StableAtAllSamples);
  const auto m = realize(fam, grid.worst_member);
  CHECK(entry_contains(fam.at(0, 0), m(0, 0)));
}
