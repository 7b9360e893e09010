#include <doctest.h>

#include <cmath>
#include <numbers>

#include "edgestab/det.hpp"
#include "edgestab/edges.hpp"
#include "edgestab/error.hpp"
#include "edgestab/region.hpp"
#include "support.hpp"

using namespace edgestab;

TEST_CASE("contains") {
  auto c = contains(Region::hurwitz(), {-1, 0});
  CHECK(c.inside);
  CHECK(c.margin == doctest::Approx(1.0));
  c = contains(Region::hurwitz(), {0, 1});
  CHECK_FALSE(c.inside);
  CHECK(c.margin == doctest::Approx(0.0));
  c = contains(Region::disk({0, 0}, 1), {0.5, 0});
  CHECK(c.inside);
  CHECK(c.margin == doctest::Approx(0.5));
  c = contains(Region::shifted(-0.5), {-0.2, 3});
  CHECK_FALSE(c.inside);
  CHECK(c.margin == doctest::Approx(-0.3));
}

TEST_CASE("boundary parameterization") {
  CHECK(std::abs(boundary(Region::hurwitz(), 0).s) == doctest::Approx(0.0));
  const auto b = boundary(Region::disk({0, 0}, 1), std::numbers::pi);
  CHECK(b.s.real() == doctest::Approx(-1.0));
  CHECK(b.s.imag() == doctest::Approx(0.0).epsilon(1e-12));
  const auto h = boundary(Region::shifted(-0.5), 2);
  CHECK(h.s.real() == doctest::Approx(-0.5));
  CHECK(h.s.imag() == doctest::Approx(2.0));
  CHECK(h.ds == Complex(0, 1));
  CHECK_THROWS_AS(Region::disk({0, 0}, -1), Error);
}

TEST_CASE("sweep range") {
  const auto disk = sweep_range(Region::disk({0.1, 0}, 0.9), Polynomial{1, 1});
  CHECK(disk.lo == 0.0);
  CHECK(disk.hi == doctest::Approx(2 * std::numbers::pi));
  const auto hp = sweep_range(Region::hurwitz(), Polynomial{1, 1});
  CHECK(hp.lo == 0.0);
  CHECK(hp.hi == doctest::Approx(2.0));
}

TEST_CASE("sweep range bounds the roots of sampled members") {
  testsupport::Rng rng(31);
  int checked = 0;
  while (checked < 20) {
    auto fam = testsupport::random_polytope_family(rng, 2, 2, 2, -5, 5);
    const ConfigEnumerator configs(fam);
    const auto cfg = configs.at(rng.next() % configs.size());
    if (cfg.k() != 2) continue;
    const auto pd = det_parametric(cfg);
    SweepRange range{};
    try {
      range = sweep_range(Region::hurwitz(), pd);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegreeDrop);
      continue;
    }
    ++checked;
    for (int s = 0; s < 50; ++s) {
      const std::vector<double> lam{rng.uniform(0, 1), rng.uniform(0, 1)};
      const auto p = pd.at(lam);
      for (const auto& z : roots(p)) CHECK(std::abs(z) <= range.hi * (1 + 1e-9));
    }
  }
}

TEST_CASE("sweep range reports a straddling leading coefficient") {
  // D(s, lambda) = (2 lambda - 1) s + 1
  const ParametricDeterminant pd(1, {Polynomial{1, -1}, Polynomial{0, 2}});
  CHECK_THROWS_WITH_AS(sweep_range(Region::hurwitz(), pd), doctest::Contains("DegreeDrop"), Error);
}
