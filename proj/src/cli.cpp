#include "edgestab/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <string>

#include "edgestab/edges.hpp"
#include "edgestab/error.hpp"
#include "edgestab/io.hpp"
#include "edgestab/oracle.hpp"
#include "edgestab/stab.hpp"

namespace edgestab {

namespace {

int exit_code(Status s) {
  switch (s) {
    case Status::RobustlyStable: return kExitStable;
    case Status::Unstable: return kExitUnstable;
    case Status::Degenerate: return kExitDegenerate;
    case Status::Inconclusive: return kExitInconclusive;
  }
  return kExitInternal;
}

bool input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::SchemaError:
    case ErrorCode::ValidationFailure:
    case ErrorCode::RegionNotHurwitz:
    case ErrorCode::SizeLimit:
    case ErrorCode::BoundOrderViolation:
      return true;
    default:
      return false;
  }
}

struct TolFlags {
  std::optional<int> grid;
  std::optional<int> refine_depth;
  std::optional<int> box_depth;
  std::optional<double> zero_margin;
  std::optional<double> degree_eps;

  void add(CLI::App* cmd) {
    cmd->add_option("--grid", grid, "Initial boundary sample count");
    cmd->add_option("--refine-depth", refine_depth, "Maximum bisection depth along the boundary");
    cmd->add_option("--box-depth", box_depth, "Maximum lambda-box subdivision depth");
    cmd->add_option("--zero-margin", zero_margin, "Relative hull-exclusion margin");
    cmd->add_option("--degree-eps", degree_eps, "Relative leading-coefficient floor");
  }

  Tolerances apply(Tolerances t) const {
    if (grid) t.boundary_grid = *grid;
    if (refine_depth) t.refine_depth = *refine_depth;
    if (box_depth) t.box_depth = *box_depth;
    if (zero_margin) t.zero_margin = *zero_margin;
    if (degree_eps) t.degree_eps = *degree_eps;
    return t;
  }
};

void emit(const nlohmann::json& j, const std::string& report_path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (report_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(report_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::SchemaError, report_path + ": cannot write report");
  f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust D-stability analysis of uncertain polynomial matrices"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  std::string file;
  std::string region_spec;
  std::string report_path;
  TolFlags tol_flags;
  int jobs = 1;
  bool dedup = false;
  bool timing = false;

  auto* analyze = app.add_subcommand("analyze", "Decide robust stability through the edge set");
  analyze->add_option("file", file, "Family description (JSON)")->required();
  analyze->add_option("--region", region_spec, "hurwitz | shifted:<sigma> | disk:<re>,<im>,<radius>");
  analyze->add_option("--report", report_path, "Write the report here instead of stdout");
  analyze->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  analyze->add_flag("--dedup", dedup, "Skip duplicate and degenerate edges");
  analyze->add_flag("--timing", timing, "Include wall time in the report");
  tol_flags.add(analyze);

  std::string scheme = "random";
  std::uint64_t budget = 10000;
  std::uint64_t seed = 1;
  auto* oracle = app.add_subcommand("oracle", "Sample the full family");
  oracle->add_option("file", file, "Family description (JSON)")->required();
  oracle->add_option("--region", region_spec, "hurwitz | shifted:<sigma> | disk:<re>,<im>,<radius>");
  oracle->add_option("--scheme", scheme, "grid | random")->check(CLI::IsMember({"grid", "random"}));
  oracle->add_option("--budget", budget, "Sample budget");
  oracle->add_option("--seed", seed, "Random seed");
  oracle->add_option("--report", report_path, "Write the report here instead of stdout");

  bool count_only = false;
  std::uint64_t limit = 0;
  auto* enumerate = app.add_subcommand("enumerate", "Count or list edge-set configurations");
  enumerate->add_option("file", file, "Family description (JSON)")->required();
  enumerate->add_flag("--count-only", count_only, "Print the configuration count only");
  enumerate->add_option("--limit", limit, "List at most this many configurations (0 = all)");
  enumerate->add_flag("--dedup", dedup, "Skip duplicate and degenerate edges");

  auto* validate_cmd = app.add_subcommand("validate", "Check a family description");
  validate_cmd->add_option("file", file, "Family description (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << tool_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*validate_cmd) {
      ParsedFamily parsed = parse_family(file, false);
      const auto diags = validate(parsed.family, true);
      auto list = nlohmann::json::array();
      for (const auto& d : diags) {
        nlohmann::json item{{"kind", to_string(d.kind)}, {"message", d.message}};
        if (d.row >= 0) {
          item["row"] = d.row;
          item["col"] = d.col;
        }
        list.push_back(std::move(item));
      }
      out << nlohmann::json{{"valid", diags.empty()},
                            {"n", parsed.family.n},
                            {"mode", to_string(parsed.family.mode())},
                            {"region", region_to_json(parsed.family.region)},
                            {"diagnostics", list}}
                 .dump(2)
          << "\n";
      return diags.empty() ? 0 : kExitInput;
    }

    ParsedFamily parsed = parse_family(file);
    MatrixFamily& fam = parsed.family;
    if (!region_spec.empty()) fam.region = parse_region_spec(region_spec);

    if (*enumerate) {
      const ConfigEnumerator configs(fam, {dedup});
      if (count_only) {
        out << configs.size() << "\n";
        return 0;
      }
      nlohmann::json j;
      j["configuration_count"] = configs.size();
      nlohmann::json sigmas = nlohmann::json::array();
      for (const auto& s : configs.sigmas()) {
        std::vector<int> one(s.begin(), s.end());
        for (int& x : one) ++x;
        sigmas.push_back(one);
      }
      j["permutations"] = std::move(sigmas);
      nlohmann::json list = nlohmann::json::array();
      const std::uint64_t shown = limit == 0 ? configs.size() : std::min(limit, configs.size());
      for (std::uint64_t i = 0; i < shown; ++i) {
        const auto cfg = configs.at(i);
        std::vector<int> sigma(cfg.sigma);
        for (int& x : sigma) ++x;
        list.push_back({{"index", i}, {"sigma", sigma}, {"edge_choice", cfg.edge_choice},
                        {"vertex_choice", cfg.vertex_choice}, {"k", cfg.k()}});
      }
      j["configurations"] = std::move(list);
      out << j.dump(2) << "\n";
      return 0;
    }

    if (*oracle) {
      const SampleReport rep = sample_family(fam, scheme == "grid" ? SampleScheme::Grid : SampleScheme::Random,
                                             budget, seed);
      emit(to_json(rep), report_path, out);
      return rep.outcome == SampleReport::Outcome::StableAtAllSamples ? kExitStable : kExitUnstable;
    }

    // analyze
    const Tolerances tol = tol_flags.apply(parsed.tolerances);
    tol.check();
    const auto start = std::chrono::steady_clock::now();
    const AnalysisOptions opts{jobs, dedup};
    const FamilyAnalysis analysis =
        fam.mode() == FamilyMode::Interval ? analyze_interval(fam, tol, opts) : analyze_family(fam, tol, opts);
    AnalysisReport report = make_report(analysis, fam, tol, parsed.digest);
    if (timing)
      report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(to_json(report), report_path, out);
    return exit_code(report.status);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return input_error(e.code()) ? kExitInput : kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace edgestab
