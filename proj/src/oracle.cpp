#include "edgestab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "edgestab/det.hpp"
#include "edgestab/error.hpp"
#include "edgestab/stab.hpp"

namespace edgestab {

std::string_view to_string(SampleReport::Outcome outcome) {
  return outcome == SampleReport::Outcome::StableAtAllSamples ? "StableAtAllSamples" : "UnstableSampleFound";
}

PolyMatrix realize(const MatrixFamily& fam, const Member& m) {
  if (m.params.size() != fam.entries.size())
    throw Error(ErrorCode::DimensionMismatch, "member does not cover every cell");
  PolyMatrix out(fam.n);
  for (std::size_t c = 0; c < fam.entries.size(); ++c) {
    const auto& w = m.params[c];
    if (const auto* p = std::get_if<PolytopeEntry>(&fam.entries[c])) {
      if (w.size() != p->vertices.size()) throw Error(ErrorCode::DimensionMismatch, "weight count");
      std::size_t len = 1;
      for (const auto& v : p->vertices) len = std::max(len, v.coeffs().size());
      std::vector<double> acc(len, 0.0);
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t l = 0; l < p->vertices[i].coeffs().size(); ++l) acc[l] += w[i] * p->vertices[i].coeffs()[l];
      out.cells[c] = Polynomial(std::move(acc));
    } else {
      out.cells[c] = Polynomial(w);
    }
  }
  return out;
}

MemberEvaluation evaluate_member(const MatrixFamily& fam, const Member& m) {
  MemberEvaluation ev;
  ev.determinant = det_matrix(realize(fam, m));
  if (ev.determinant.is_zero()) {
    ev.margin = -std::numeric_limits<double>::infinity();
    ev.root = boundary(fam.region, 0.0).s;
    return ev;
  }
  ev.margin = std::numeric_limits<double>::infinity();
  for (const Complex z : roots(ev.determinant)) {
    const double mg = contains(fam.region, z).margin;
    if (mg < ev.margin) {
      ev.margin = mg;
      ev.root = z;
    }
  }
  return ev;
}

static bool member_unstable(const MemberEvaluation& ev, const Region& r) {
  if (std::isinf(ev.margin)) return ev.margin < 0;
  return !root_inside(r, ev.root);
}

Member member_from_configuration(const MatrixFamily& fam, const EdgeConfiguration& cfg,
                                 std::span<const double> lambda) {
  if (lambda.size() != static_cast<std::size_t>(cfg.k()))
    throw Error(ErrorCode::DimensionMismatch, "lambda length differs from k");
  std::vector<double> column_lambda(static_cast<std::size_t>(cfg.n), 0.0);
  for (std::size_t p = 0; p < lambda.size(); ++p)
    column_lambda[static_cast<std::size_t>(cfg.param_columns[p])] = lambda[p];

  Member m;
  m.params.resize(fam.entries.size());
  for (int i = 0; i < cfg.n; ++i) {
    for (int j = 0; j < cfg.n; ++j) {
      const auto c = static_cast<std::size_t>(i * cfg.n + j);
      const bool pattern = cfg.is_pattern(i, j);
      const EdgeSegment& e = cfg.edges[static_cast<std::size_t>(j)];
      const double l = column_lambda[static_cast<std::size_t>(j)];
      if (const auto* p = std::get_if<PolytopeEntry>(&fam.entries[c])) {
        auto index_of = [&](const Polynomial& q) {
          const auto it = std::find(p->vertices.begin(), p->vertices.end(), q);
          if (it == p->vertices.end()) throw Error(ErrorCode::DimensionMismatch, "configuration does not match family");
          return static_cast<std::size_t>(it - p->vertices.begin());
        };
        std::vector<double> w(p->vertices.size(), 0.0);
        if (pattern) {
          w[index_of(e.p0)] += 1.0 - l;
          w[index_of(e.p1)] += l;
        } else {
          w[index_of(cfg.cells(i, j))] = 1.0;
        }
        m.params[c] = std::move(w);
      } else {
        const auto& iv = std::get<IntervalEntry>(fam.entries[c]);
        const Polynomial q = pattern ? e.at(l) : cfg.cells(i, j);
        std::vector<double> coeffs(iv.lower.size());
        for (std::size_t t = 0; t < coeffs.size(); ++t) coeffs[t] = std::clamp(q[t], iv.lower[t], iv.upper[t]);
        m.params[c] = std::move(coeffs);
      }
    }
  }
  return m;
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // bit-level construction keeps draws identical across standard libraries
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

void compositions(int total, std::size_t parts, std::vector<double>& cur, std::vector<std::vector<double>>& out,
                  int resolution) {
  if (cur.size() + 1 == parts) {
    cur.push_back(static_cast<double>(total) / resolution);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = total; a >= 0; --a) {
    cur.push_back(static_cast<double>(a) / resolution);
    compositions(total - a, parts, cur, out, resolution);
    cur.pop_back();
  }
}

std::vector<std::vector<double>> cell_lattice(const Entry& e, int resolution) {
  std::vector<std::vector<double>> out;
  if (const auto* p = std::get_if<PolytopeEntry>(&e)) {
    std::vector<double> cur;
    compositions(resolution, p->vertices.size(), cur, out, resolution);
    return out;
  }
  const auto& iv = std::get<IntervalEntry>(e);
  out.push_back({});
  for (std::size_t l = 0; l < iv.lower.size(); ++l) {
    std::vector<std::vector<double>> next;
    const int steps = iv.lower[l] == iv.upper[l] ? 0 : resolution;
    for (const auto& prefix : out)
      for (int t = 0; t <= steps; ++t) {
        auto v = prefix;
        v.push_back(steps == 0 ? iv.lower[l] : iv.lower[l] + (iv.upper[l] - iv.lower[l]) * t / steps);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

double lattice_size(const MatrixFamily& fam, int resolution) {
  double total = 1.0;
  for (const auto& e : fam.entries) {
    if (const auto* p = std::get_if<PolytopeEntry>(&e)) {
      // C(resolution + m - 1, m - 1)
      double c = 1.0;
      const auto m = p->vertices.size();
      for (std::size_t i = 1; i < m; ++i) c = c * static_cast<double>(resolution + static_cast<int>(i)) / static_cast<double>(i);
      total *= c;
    } else {
      const auto& iv = std::get<IntervalEntry>(e);
      for (std::size_t l = 0; l < iv.lower.size(); ++l)
        if (iv.lower[l] != iv.upper[l]) total *= resolution + 1;
    }
  }
  return total;
}

Member random_member(const MatrixFamily& fam, Rng& rng) {
  Member m;
  m.params.reserve(fam.entries.size());
  for (const auto& e : fam.entries) {
    if (const auto* p = std::get_if<PolytopeEntry>(&e)) {
      std::vector<double> w(p->vertices.size());
      double sum = 0.0;
      for (double& x : w) {
        x = -std::log(1.0 - rng.uniform());
        sum += x;
      }
      for (double& x : w) x = sum > 0 ? x / sum : 1.0 / static_cast<double>(w.size());
      m.params.push_back(std::move(w));
    } else {
      const auto& iv = std::get<IntervalEntry>(e);
      std::vector<double> q(iv.lower.size());
      for (std::size_t l = 0; l < q.size(); ++l) q[l] = iv.lower[l] + (iv.upper[l] - iv.lower[l]) * rng.uniform();
      m.params.push_back(std::move(q));
    }
  }
  return m;
}

bool all_fixed(const MatrixFamily& fam) {
  return std::all_of(fam.entries.begin(), fam.entries.end(), [](const Entry& e) { return is_fixed(e); });
}

struct Tracker {
  SampleReport report;
  const MatrixFamily& fam;

  void add(const Member& m) {
    const MemberEvaluation ev = evaluate_member(fam, m);
    if (report.samples == 0 || ev.margin < report.worst_margin) {
      report.worst_margin = ev.margin;
      report.worst_member = m;
      report.worst_root = ev.root;
    }
    if (member_unstable(ev, fam.region)) report.outcome = SampleReport::Outcome::UnstableSampleFound;
    ++report.samples;
  }
};

}  // namespace

SampleReport sample_family(const MatrixFamily& fam, SampleScheme scheme, std::uint64_t budget, std::uint64_t seed) {
  const auto diags = validate(fam);
  if (!diags.empty()) throw Error(ErrorCode::ValidationFailure, diags.front().message);
  Tracker t{{}, fam};
  if (all_fixed(fam) || budget == 0) {
    Member m;
    for (const auto& e : fam.entries) {
      if (const auto* p = std::get_if<PolytopeEntry>(&e)) {
        std::vector<double> w(p->vertices.size(), 0.0);
        w[0] = 1.0;
        m.params.push_back(std::move(w));
      } else {
        m.params.push_back(std::get<IntervalEntry>(e).lower);
      }
    }
    t.add(m);
    return t.report;
  }

  if (scheme == SampleScheme::Random) {
    Rng rng(seed);
    for (std::uint64_t i = 0; i < budget; ++i) t.add(random_member(fam, rng));
    return t.report;
  }

  int resolution = 1;
  while (resolution < 256 && lattice_size(fam, resolution + 1) <= static_cast<double>(budget)) ++resolution;
  std::vector<std::vector<std::vector<double>>> lattices;
  for (const auto& e : fam.entries) lattices.push_back(cell_lattice(e, resolution));

  std::vector<std::size_t> digit(lattices.size(), 0);
  const std::uint64_t cap = std::max<std::uint64_t>(budget, static_cast<std::uint64_t>(lattice_size(fam, 1)));
  for (std::uint64_t drawn = 0; drawn < cap; ++drawn) {
    Member m;
    for (std::size_t c = 0; c < lattices.size(); ++c) m.params.push_back(lattices[c][digit[c]]);
    t.add(m);
    std::size_t c = 0;
    for (; c < digit.size(); ++c) {
      if (++digit[c] < lattices[c].size()) break;
      digit[c] = 0;
    }
    if (c == digit.size()) break;
  }
  return t.report;
}

namespace {

/// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double>& w) {
  std::vector<double> u = w;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0;
  double tau = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) tau = t;
  }
  for (double& x : w) x = std::max(0.0, x - tau);
}

}  // namespace

std::optional<CounterexampleRecord> find_counterexample_near(const MatrixFamily& fam, const Member& hint,
                                                             std::uint64_t budget, std::uint64_t seed) {
  CounterexampleRecord best{hint, evaluate_member(fam, hint)};
  if (best.evaluation.margin < 0) return best;

  std::vector<std::size_t> uncertain;
  for (std::size_t c = 0; c < fam.entries.size(); ++c)
    if (!is_fixed(fam.entries[c])) uncertain.push_back(c);
  if (uncertain.empty()) return std::nullopt;

  Rng rng(seed);
  double radius = 0.05;
  for (std::uint64_t it = 0; it < budget; ++it) {
    Member trial = best.member;
    // perturb one cell, occasionally all of them
    const bool all = rng.uniform() < 0.2;
    const std::size_t pick = uncertain[rng.below(uncertain.size())];
    for (std::size_t c : uncertain) {
      if (!all && c != pick) continue;
      auto& w = trial.params[c];
      if (const auto* p = std::get_if<PolytopeEntry>(&fam.entries[c])) {
        (void)p;
        for (double& x : w) x += radius * rng.normal();
        project_simplex(w);
      } else {
        const auto& iv = std::get<IntervalEntry>(fam.entries[c]);
        for (std::size_t l = 0; l < w.size(); ++l) {
          const double width = iv.upper[l] - iv.lower[l];
          w[l] = std::clamp(w[l] + radius * width * rng.normal(), iv.lower[l], iv.upper[l]);
        }
      }
    }
    const MemberEvaluation ev = evaluate_member(fam, trial);
    if (ev.margin < best.evaluation.margin) {
      best = {std::move(trial), ev};
      radius = std::min(0.5, radius * 1.5);
    } else {
      radius = std::max(1e-7, radius * 0.9);
    }
  }
  if (best.evaluation.margin < 0) return best;
  return std::nullopt;
}

}  // namespace edgestab
