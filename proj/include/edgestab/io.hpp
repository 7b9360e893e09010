#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgestab/family.hpp"
#include "edgestab/oracle.hpp"
#include "edgestab/stab.hpp"

namespace edgestab {

struct ParsedFamily {
  MatrixFamily family;
  Tolerances tolerances;  // defaults overlaid with the file's {tolerances} block
  bool has_tolerances = false;
  std::string digest;  // FNV-1a 64 of the raw bytes, hex
};

/// Reads a family description. Cells are {"vertices": [[c0, c1, ...], ...]} or
/// {"lower": [...], "upper": [...]}; a file holding a single cell is a 1x1 family.
/// Throws SchemaError (with the offending field path or line), and ValidationFailure when
/// `check` is set and validate() reports a problem.
ParsedFamily parse_family(const std::filesystem::path& path, bool check = true);
ParsedFamily parse_family_text(const std::string& text, bool check = true);

Region parse_region_spec(const std::string& spec);  // hurwitz | shifted:<sigma> | disk:<re>,<im>,<r>

nlohmann::json region_to_json(const Region& r);
Region region_from_json(const nlohmann::json& j);

struct WitnessBlock {
  std::uint64_t config_index = 0;
  std::vector<int> sigma;          // one-line notation, 1-based
  std::vector<int> vertex_choice;  // row-major, -1 on pattern cells
  std::vector<int> edge_choice;
  std::vector<std::vector<double>> edge_p0;  // per column
  std::vector<std::vector<double>> edge_p1;
  std::vector<double> lambda;                // per column (0 on degenerate edges)
  std::vector<double> determinant;
  double root_re = 0.0;
  double root_im = 0.0;
  double root_margin = 0.0;

  friend bool operator==(const WitnessBlock&, const WitnessBlock&) = default;
};

struct AnalysisReport {
  std::string tool_version;
  std::string input_digest;
  std::string mode;
  Region region;
  std::uint64_t config_count = 0;
  std::vector<ConfigSummary> summaries;
  Status status = Status::RobustlyStable;
  double margin = 0.0;
  std::string reason;
  std::optional<WitnessBlock> witness;
  Tolerances tolerances;
  std::optional<double> wall_time_s;

  friend bool operator==(const AnalysisReport& a, const AnalysisReport& b);
};

std::string_view tool_version();

AnalysisReport make_report(const FamilyAnalysis& analysis, const MatrixFamily& fam, const Tolerances& tol,
                           const std::string& digest);

nlohmann::json to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SampleReport& r);

/// Finite doubles as numbers; inf/-inf/nan as strings so the output stays valid JSON.
nlohmann::json number(double x);
double read_number(const nlohmann::json& j);

}  // namespace edgestab
