#include <doctest.h>

#include <algorithm>
#include <set>

#include "edgestab/edges.hpp"
#include "edgestab/error.hpp"
#include "edgestab/io.hpp"
#include "support.hpp"

using namespace edgestab;

namespace {

MatrixFamily two_by_two_m2() {
  return testsupport::polytope_family(2, {{Polynomial{1, 1}, Polynomial{2, 1}},
                                          {Polynomial{0.1}, Polynomial{0.2}},
                                          {Polynomial{-0.1}, Polynomial{0.3}},
                                          {Polynomial{3, 1}, Polynomial{4, 2}}});
}

std::uint64_t factorial(int n) { return n <= 1 ? 1 : static_cast<std::uint64_t>(n) * factorial(n - 1); }

int parity(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2;
}

// Coefficient keys of every reduced family's member at lam (cells padded to four coefficients).
std::set<std::vector<double>> members_at(const std::vector<ReducedFamily>& fams, double lam) {
  std::set<std::vector<double>> out;
  for (const auto& f : fams) {
    std::vector<double> key;
    for (const auto& c : f.at(lam).cells)
      for (int l = 0; l < 4; ++l) key.push_back(c[static_cast<std::size_t>(l)]);
    out.insert(key);
  }
  return out;
}

}  // namespace

TEST_CASE("permutation order") {
  const auto p3 = permutations(3);
  REQUIRE(p3.size() == 6);
  const std::vector<std::vector<int>> expected{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  CHECK(p3 == expected);
  for (int n = 1; n <= 5; ++n) {
    const auto ps = permutations(n);
    CHECK(ps.size() == factorial(n));
    CHECK(std::set<std::vector<int>>(ps.begin(), ps.end()).size() == ps.size());
    // evens first, each block in lexicographic order
    const auto split = std::find_if(ps.begin(), ps.end(), [](const auto& p) { return parity(p) == 1; });
    CHECK(std::all_of(split, ps.end(), [](const auto& p) { return parity(p) == 1; }));
    CHECK(std::is_sorted(ps.begin(), split));
    CHECK(std::is_sorted(split, ps.end()));
  }
}

TEST_CASE("counts match the closed form and the stream length") {
  const auto sec5 = parse_family(EDGESTAB_FIXTURES "/sec5.json").family;
  CHECK(count_configs(sec5) == 384);  // 3! * C(2,2)^3 * 2^6
  std::uint64_t streamed = 0;
  for (const auto& cfg : enumerate_configs(sec5)) {
    (void)cfg;
    ++streamed;
  }
  CHECK(streamed == 384);
  CHECK(enumerate_configs(sec5).sigmas() == permutations(3));

  const auto one = testsupport::polytope_family(1, {{Polynomial{1, 1}, Polynomial{2, 1}}});
  CHECK(count_configs(one) == 1);
  CHECK(count_configs(two_by_two_m2()) == 8);

  MatrixFamily iv;
  iv.n = 2;
  for (int c = 0; c < 4; ++c) iv.entries.emplace_back(IntervalEntry{{1, 1}, {2, 2}});
  CHECK(count_configs(iv) == 512);  // 2! * 4^2 * 4^2
  std::uint64_t n = 0;
  for (auto it = enumerate_configs(iv).begin(); it != enumerate_configs(iv).end(); ++it) ++n;
  CHECK(n == 512);

  // m = 3 everywhere, n = 2: 2! * 3^2 * 3^2
  const auto m3 = testsupport::polytope_family(
      2, std::vector<std::vector<Polynomial>>(4, {Polynomial{1}, Polynomial{2}, Polynomial{3}}));
  CHECK(count_configs(m3) == 162);
}

TEST_CASE("configurations are well formed") {
  testsupport::Rng rng(41);
  const auto fam = testsupport::random_polytope_family(rng, 3, 2, 2, -5, 5);
  const ConfigEnumerator configs(fam);
  std::set<std::vector<int>> seen;
  for (std::uint64_t i = 0; i < configs.size(); ++i) {
    const auto cfg = configs.at(i);
    CHECK(cfg.index == i);
    std::vector<int> s = cfg.sigma;
    std::sort(s.begin(), s.end());
    CHECK(s == std::vector<int>{0, 1, 2});
    CHECK(cfg.edge_choice.size() == 3);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK((cfg.vertex_choice[r * 3 + c] < 0) == cfg.is_pattern(r, c));
    std::vector<int> key = cfg.sigma;
    key.insert(key.end(), cfg.vertex_choice.begin(), cfg.vertex_choice.end());
    key.insert(key.end(), cfg.edge_choice.begin(), cfg.edge_choice.end());
    seen.insert(key);
  }
  CHECK(seen.size() == configs.size());
  CHECK_THROWS_AS(configs.at(configs.size()), Error);
}

TEST_CASE("instantiate") {
  const ConfigEnumerator configs(two_by_two_m2());
  const auto cfg = configs.at(0);
  REQUIRE(cfg.k() == 2);
  const std::vector<double> zeros{0, 0}, ones{1, 1}, half{0.5, 0.5};
  const auto m0 = instantiate(cfg, zeros), m1 = instantiate(cfg, ones), mh = instantiate(cfg, half);
  for (int c = 0; c < 2; ++c) {
    const int r = cfg.sigma[c];
    CHECK(m0(r, c) == cfg.edges[c].p0);
    CHECK(m1(r, c) == cfg.edges[c].p1);
    CHECK(mh(r, c) == lerp(cfg.edges[c].p0, cfg.edges[c].p1, 0.5));
    CHECK(m0(1 - r, c) == mh(1 - r, c));
  }
  CHECK(m0(0, 0) == Polynomial{1, 1});
  CHECK(m1(0, 0) == Polynomial{2, 1});
  CHECK(mh(0, 0) == Polynomial{1.5, 1});
  const std::vector<double> wrong{0.5};
  CHECK_THROWS_AS(instantiate(cfg, wrong), Error);
}

TEST_CASE("dedup enumerates fewer configurations with the same member set") {
  // duplicate vertex in one cell
  auto fam = two_by_two_m2();
  std::get<PolytopeEntry>(fam.at(0, 1)).vertices = {Polynomial{0.1}, Polynomial{0.1}};
  const auto full = count_configs(fam);
  const auto reduced = count_configs(fam, {true});
  CHECK(reduced < full);
  std::set<std::vector<double>> a, b;
  auto collect = [](const ConfigEnumerator& e, std::set<std::vector<double>>& out) {
    for (const auto& cfg : e) {
      for (double l0 : {0.0, 0.3, 1.0})
        for (double l1 : {0.0, 0.6, 1.0}) {
          std::vector<double> lam;
          for (int j = 0; j < cfg.k(); ++j) lam.push_back(j == 0 ? l0 : l1);
          const auto m = instantiate(cfg, lam);
          std::vector<double> key;
          for (const auto& c : m.cells)
            for (int l = 0; l < 3; ++l) key.push_back(c[static_cast<std::size_t>(l)]);
          out.insert(key);
        }
    }
  };
  collect(ConfigEnumerator(fam), a);
  collect(ConfigEnumerator(fam, {true}), b);
  CHECK(a == b);
}

TEST_CASE("reduce_column") {
  // column 0 uncertain, column 1 fixed
  const auto fam = testsupport::polytope_family(2, {{Polynomial{1, 1}, Polynomial{2, 1}},
                                                    {Polynomial{0.5}},
                                                    {Polynomial{0.1}, Polynomial{0.3}},
                                                    {Polynomial{3, 1}}});
  const auto red = reduce_column(fam, 0);
  CHECK(red.size() == 4);
  for (const auto& f : red) CHECK(f.edge_col == 0);

  // independent listing: rows {0,1} on the edge, the other row at either vertex
  std::set<std::vector<double>> expected;
  const std::vector<std::vector<Polynomial>> col{{Polynomial{1, 1}, Polynomial{2, 1}},
                                                 {Polynomial{0.1}, Polynomial{0.3}}};
  for (double lam : {0.0, 0.25, 1.0}) {
    for (int er = 0; er < 2; ++er)
      for (int v = 0; v < 2; ++v) {
        PolyMatrix m(2);
        m(0, 1) = Polynomial{0.5};
        m(1, 1) = Polynomial{3, 1};
        m(er, 0) = lerp(col[er][0], col[er][1], lam);
        m(1 - er, 0) = col[1 - er][v];
        std::vector<double> key;
        for (const auto& c : m.cells)
          for (int l = 0; l < 4; ++l) key.push_back(c[static_cast<std::size_t>(l)]);
        expected.insert(key);
      }
  }
  std::set<std::vector<double>> got;
  for (double lam : {0.0, 0.25, 1.0})
    for (const auto& k : members_at(red, lam)) got.insert(k);
  CHECK(got == expected);

  CHECK_THROWS_AS(reduce_column(two_by_two_m2(), 0), Error);

  const auto fixed = testsupport::polytope_family(2, {{Polynomial{1}}, {Polynomial{2}}, {Polynomial{3}}, {Polynomial{4}}});
  const auto fr = reduce_column(fixed, 1);
  REQUIRE(fr.size() == 1);
  CHECK(fr[0].edge.degenerate());

  const auto one = testsupport::polytope_family(1, {{Polynomial{1, 1}, Polynomial{2, 1}, Polynomial{1, 2}}});
  const auto r1 = reduce_column(one, 0);
  CHECK(r1.size() == 3);
}

TEST_CASE("reduce_row") {
  const auto fam = testsupport::polytope_family(2, {{Polynomial{1, 1}, Polynomial{2, 1}},
                                                    {Polynomial{0.1}, Polynomial{0.3}},
                                                    {Polynomial{0.2}},
                                                    {Polynomial{3, 1}}});
  const auto red = reduce_row(fam, 0, 0, 1);
  CHECK(red.size() == 4);

  // one cell fixed: same families as the column reduction on the other cell
  const auto half = testsupport::polytope_family(2, {{Polynomial{1, 1}, Polynomial{2, 1}},
                                                     {Polynomial{0.1}},
                                                     {Polynomial{0.2}},
                                                     {Polynomial{3, 1}}});
  const auto rr = reduce_row(half, 0, 0, 1);
  const auto rc = reduce_column(half, 0);
  REQUIRE(rr.size() == rc.size());
  for (const auto& f : rr)
    CHECK(std::any_of(rc.begin(), rc.end(), [&](const ReducedFamily& g) { return g.same_members(f); }));

  const auto fixed = testsupport::polytope_family(2, {{Polynomial{1}}, {Polynomial{2}}, {Polynomial{3}}, {Polynomial{4}}});
  const auto fr = reduce_row(fixed, 0, 0, 1);
  REQUIRE(fr.size() == 1);
  CHECK(fr[0].edge.degenerate());

  CHECK_THROWS_AS(reduce_row(two_by_two_m2(), 0, 0, 1), Error);
}
