#include <doctest.h>

#include <cmath>
#include <limits>

#include "edgestab/error.hpp"
#include "edgestab/io.hpp"

using namespace edgestab;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_family_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::SchemaError;
}

}  // namespace

TEST_CASE("parse the 3x3 fixture") {
  const auto p = parse_family(EDGESTAB_FIXTURES "/sec5.json");
  CHECK(p.family.n == 3);
  CHECK(p.family.mode() == FamilyMode::Polytope);
  for (const auto& e : p.family.entries) CHECK(std::get<PolytopeEntry>(e).vertices.size() == 2);
  CHECK(p.digest.size() == 16);
}

TEST_CASE("parse a single interval cell") {
  const auto p = parse_family_text(R"({"type":"interval","lower":[1,3,5],"upper":[2,4,6]})");
  REQUIRE(p.family.n == 1);
  const auto& e = std::get<IntervalEntry>(p.family.at(0, 0));
  CHECK(e.lower == std::vector<double>{1, 3, 5});
  CHECK(e.upper == std::vector<double>{2, 4, 6});
  const auto file = parse_family(EDGESTAB_FIXTURES "/interval_1x1.json");
  CHECK(std::get<IntervalEntry>(file.family.at(0, 0)).lower == e.lower);
}

TEST_CASE("schema errors") {
  CHECK(code_of(R"({"entries":[[{"vertices":[[1]]},{"vertices":[[1]]}],[{"vertices":[[1]]}]]})") ==
        ErrorCode::SchemaError);
  CHECK(code_of("{not json") == ErrorCode::SchemaError);
  CHECK(code_of(R"({"entries":[[{"vertices":"x"}]]})") == ErrorCode::SchemaError);
  CHECK(code_of(R"({"n":2,"entries":[[{"vertices":[[1]]}]]})") == ErrorCode::SchemaError);
  CHECK(code_of(R"({"entries":[[{"lower":[2],"upper":[1]}]]})") == ErrorCode::ValidationFailure);
  CHECK(code_of(R"({"entries":[[{"vertices":[[1,1],[1,1]]}]]})") == ErrorCode::ValidationFailure);
  CHECK_THROWS_AS(parse_family(EDGESTAB_FIXTURES "/missing.json"), Error);
  // structural problems pass through when checking is off
  CHECK_NOTHROW(parse_family_text(R"({"entries":[[{"lower":[2],"upper":[1]}]]})", false));
}

TEST_CASE("regions and tolerances") {
  CHECK(parse_region_spec("hurwitz") == Region::hurwitz());
  CHECK(parse_region_spec("shifted:-0.5") == Region::shifted(-0.5));
  CHECK(parse_region_spec("disk:0.1,0,0.9") == Region::disk({0.1, 0}, 0.9));
  CHECK_THROWS_AS(parse_region_spec("sector:1"), Error);
  for (const auto& r : {Region::hurwitz(), Region::shifted(-2), Region::disk({0.5, -0.5}, 2)})
    CHECK(region_from_json(region_to_json(r)) == r);

  const auto p = parse_family_text(
      R"({"region":{"type":"shifted","sigma":-0.1},"tolerances":{"boundary_grid":64,"box_depth":5},"entries":[[{"vertices":[[1,1]]}]]})");
  CHECK(p.family.region == Region::shifted(-0.1));
  CHECK(p.has_tolerances);
  CHECK(p.tolerances.boundary_grid == 64);
  CHECK(p.tolerances.box_depth == 5);
  CHECK(p.tolerances.refine_depth == Tolerances{}.refine_depth);
}

TEST_CASE("non-finite numbers survive the report encoding") {
  CHECK(read_number(number(1.5)) == 1.5);
  CHECK(std::isinf(read_number(number(std::numeric_limits<double>::infinity()))));
  CHECK(read_number(number(-std::numeric_limits<double>::infinity())) < 0);
  CHECK(std::isnan(read_number(number(std::nan("")))));
}

TEST_CASE("report round trip") {
  const auto parsed = parse_family(EDGESTAB_FIXTURES "/vertex_insufficient.json");
  const auto analysis = analyze_family(parsed.family, parsed.tolerances);
  auto report = make_report(analysis, parsed.family, parsed.tolerances, parsed.digest);
  CHECK(report.status == Status::Unstable);
  REQUIRE(report.witness);
  CHECK(report.witness->sigma.size() == 2);
  CHECK(report.witness->lambda.size() == 2);
  const auto j = to_json(report);
  CHECK(report_from_json(j) == report);
  CHECK(report_from_json(nlohmann::json::parse(j.dump())) == report);
  CHECK_FALSE(j.contains("wall_time_s"));
  report.wall_time_s = 0.25;
  CHECK(report_from_json(to_json(report)) == report);
}
