#include "edgestab/stab.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <numbers>
#include <cmath>
#include <limits>
#include <thread>

#include "edgestab/error.hpp"
#include "edgestab/hull.hpp"
#include "edgestab/simd.hpp"

namespace edgestab {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::RobustlyStable: return "RobustlyStable";
    case Status::Unstable: return "Unstable";
    case Status::Degenerate: return "Degenerate";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

int severity(Status status) noexcept {
  switch (status) {
    case Status::RobustlyStable: return 0;
    case Status::Inconclusive: return 1;
    case Status::Degenerate: return 2;
    case Status::Unstable: return 3;
  }
  return 1;
}

bool root_inside(const Region& r, Complex z) noexcept {
  return contains(r, z).margin > kRootBoundaryTol * std::max(1.0, std::abs(z));
}

void Tolerances::check() const {
  if (boundary_grid <= 0 || refine_depth <= 0 || box_depth <= 0 || !(zero_margin > 0.0) ||
      !(degree_eps > 0.0) || max_sweep_steps == 0)
    throw Error(ErrorCode::ValidationFailure, "tolerances must be positive");
}

// ---------------------------------------------------------------- point tests

namespace {

struct RootScan {
  double margin = std::numeric_limits<double>::infinity();
  Complex worst{0.0, 0.0};
  bool stable = true;
};

RootScan scan_roots(const Polynomial& p, const Region& r) {
  RootScan out;
  for (const Complex z : roots(p)) {
    const double m = contains(r, z).margin;
    if (m < out.margin) {
      out.margin = m;
      out.worst = z;
    }
    if (!root_inside(r, z)) out.stable = false;
  }
  return out;
}

}  // namespace

Verdict point_stable(const Polynomial& p, const Region& r) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "point test of the zero polynomial");
  const RootScan scan = scan_roots(p, r);
  Verdict v;
  v.margin = scan.margin;
  if (scan.stable) {
    v.status = Status::RobustlyStable;
    v.reason = "all_roots_inside";
    return v;
  }
  v.status = Status::Unstable;
  v.reason = "root_outside";
  v.witness = Witness{0, {}, p, scan.worst, scan.margin};
  return v;
}

namespace {

struct RouthOutcome {
  int sign_changes = 0;
  bool zero_pivot = false;
};

RouthOutcome routh(const Polynomial& poly) {
  if (poly.is_zero()) throw Error(ErrorCode::ZeroLeadingCoefficient, "Routh array of the zero polynomial");
  std::vector<double> c = poly.coeffs();
  if (c.back() < 0)
    for (double& x : c) x = -x;
  const int n = poly.degree();
  RouthOutcome out;
  if (n == 0) return out;

  const std::size_t width = static_cast<std::size_t>(n / 2 + 1);
  std::vector<double> prev(width, 0.0), cur(width, 0.0);
  for (int i = n, j = 0; i >= 0; i -= 2, ++j) prev[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(i)];
  for (int i = n - 1, j = 0; i >= 0; i -= 2, ++j) cur[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(i)];

  constexpr double kRelZero = 1e-12;
  double first_prev = prev[0];
  auto row_scale = [](const std::vector<double>& row) {
    double m = 0.0;
    for (double x : row) m = std::max(m, std::abs(x));
    return m;
  };
  for (int row = 1; row <= n; ++row) {
    const double scale = std::max(row_scale(prev), row_scale(cur));
    if (row_scale(cur) <= kRelZero * scale)
      throw Error(ErrorCode::IndeterminateRouthRow, "row " + std::to_string(row) + " vanishes");
    if (std::abs(cur[0]) <= kRelZero * scale) {
      out.zero_pivot = true;
      cur[0] = kRelZero * scale;  // epsilon replacement keeps the array going for the count
    }
    if ((cur[0] > 0) != (first_prev > 0)) ++out.sign_changes;
    first_prev = cur[0];
    if (row == n) break;
    std::vector<double> next(width, 0.0);
    for (std::size_t j = 0; j + 1 < width; ++j)
      next[j] = (cur[0] * prev[j + 1] - prev[0] * cur[j + 1]) / cur[0];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

}  // namespace

int routh_sign_changes(const Polynomial& p) { return routh(p).sign_changes; }

bool hurwitz_algebraic(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroLeadingCoefficient, "Hurwitz test of the zero polynomial");
  if (p.degree() == 0) return true;
  const double sign = p.leading() > 0 ? 1.0 : -1.0;
  for (double x : p.coeffs())
    if (!(sign * x > 0)) return false;
  try {
    const RouthOutcome o = routh(p);
    return o.sign_changes == 0 && !o.zero_pivot;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IndeterminateRouthRow) return false;
    throw;
  }
}

// ---------------------------------------------------------------- shared sweep helpers

namespace {

/// Bound on |d/dtheta q(s(theta), .)| for every polynomial whose s^l coefficient is at most
/// coeff_max[l] in magnitude, over theta in [theta, theta + h].
double lipschitz(const Region& r, std::span<const double> coeff_max, double theta, double h) {
  double radius = 0.0;
  double speed = 1.0;
  if (r.kind == Region::Kind::Disk) {
    radius = std::abs(r.center) + r.radius;
    speed = r.radius;
  } else {
    radius = std::abs(r.sigma) + std::abs(theta) + h;
  }
  double sum = 0.0;
  double pw = 1.0;
  for (std::size_t l = 1; l < coeff_max.size(); ++l) {
    sum += static_cast<double>(l) * coeff_max[l] * pw;
    pw *= radius;
  }
  return speed * sum;
}

double min_margin_of(const Polynomial& p, const Region& r, Complex* worst = nullptr) {
  if (p.is_zero()) return -std::numeric_limits<double>::infinity();
  const RootScan s = scan_roots(p, r);
  if (worst) *worst = s.worst;
  return s.margin;
}

/// Pattern search on lambda in [0,1]^k lowering the smallest root margin; used to move a
/// boundary-touching witness to a member with a root strictly outside when one is near.
std::vector<double> deepen_witness(const std::function<Polynomial(std::span<const double>)>& member,
                                   const Region& r, std::vector<double> lambda) {
  double best = min_margin_of(member(lambda), r);
  int evals = 0;
  for (double step = 1e-2; step >= 1e-7 && evals < 400; step *= 0.3) {
    bool improved = true;
    while (improved && evals < 400) {
      improved = false;
      for (std::size_t j = 0; j < lambda.size(); ++j) {
        for (double dir : {-1.0, 1.0}) {
          auto trial = lambda;
          trial[j] = std::clamp(trial[j] + dir * step, 0.0, 1.0);
          if (trial[j] == lambda[j]) continue;
          ++evals;
          const double m = min_margin_of(member(trial), r);
          if (m < best) {
            best = m;
            lambda = std::move(trial);
            improved = true;
          }
        }
      }
    }
  }
  return lambda;
}

Verdict unstable_at(const Polynomial& p, const Region& r, std::vector<double> lambda, std::string reason) {
  Verdict v;
  v.status = Status::Unstable;
  v.reason = std::move(reason);
  Witness w;
  w.lambda = std::move(lambda);
  w.determinant = p;
  if (p.is_zero()) {
    w.root = boundary(r, 0.0).s;
    w.root_margin = -std::numeric_limits<double>::infinity();
  } else {
    w.root_margin = min_margin_of(p, r, &w.root);
  }
  v.margin = w.root_margin;
  v.witness = std::move(w);
  return v;
}

Verdict inconclusive(double margin, std::string reason) {
  Verdict v;
  v.status = Status::Inconclusive;
  v.margin = margin;
  v.reason = std::move(reason);
  return v;
}

Verdict degenerate(std::string reason) {
  Verdict v;
  v.status = Status::Degenerate;
  v.margin = 0.0;
  v.reason = std::move(reason);
  return v;
}

bool member_on_or_outside(const Polynomial& p, const Region& r) {
  if (p.is_zero()) return true;
  for (const Complex z : roots(p))
    if (!root_inside(r, z)) return true;
  return false;
}

}  // namespace

// ---------------------------------------------------------------- segment test

namespace {

class SegmentScan {
 public:
  SegmentScan(const EdgeSegment& seg, const Region& r, const Tolerances& tol)
      : seg_(seg), delta_(sub(seg.p1, seg.p0)), region_(r), tol_(tol) {
    const std::size_t powers = std::max(seg.p0.coeffs().size(), seg.p1.coeffs().size());
    coeff_max_.resize(powers);
    for (std::size_t l = 0; l < powers; ++l) coeff_max_[l] = std::max(std::abs(seg.p0[l]), std::abs(seg.p1[l]));
  }

  struct Sample {
    double theta;
    Complex a;  // p0(s)
    Complex b;  // p1(s) - p0(s)
    double g;   // Im(a * conj(b)); zero where the crossing parameter is real
    double dist;
    double scale;
  };

  Sample sample(double theta, Complex a, Complex b) const {
    Sample s{theta, a, b, (a * std::conj(b)).imag(), origin_segment_distance(a, a + b),
             std::max(std::abs(a), std::abs(a + b))};
    return s;
  }

  Sample sample(double theta) const {
    const Complex z = boundary(region_, theta).s;
    return sample(theta, seg_.p0(z), delta_(z));
  }

  Verdict run(double lo, double hi) {
    const int grid = tol_.boundary_grid;
    std::vector<double> re(static_cast<std::size_t>(grid) + 1), im(re.size());
    std::vector<double> thetas(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      thetas[i] = lo + (hi - lo) * static_cast<double>(i) / grid;
      const Complex z = boundary(region_, thetas[i]).s;
      re[i] = z.real();
      im[i] = z.imag();
    }
    std::vector<double> a_re(re.size()), a_im(re.size()), b_re(re.size()), b_im(re.size());
    simd::horner_points(seg_.p0.coeffs(), re, im, a_re, a_im);
    simd::horner_points(delta_.coeffs(), re, im, b_re, b_im);

    std::vector<Sample> samples;
    samples.reserve(re.size());
    for (std::size_t i = 0; i < re.size(); ++i)
      samples.push_back(sample(thetas[i], {a_re[i], a_im[i]}, {b_re[i], b_im[i]}));

    for (const auto& s : samples) note(s);
    for (std::size_t i = 0; i + 1 < samples.size() && !crossing_; ++i) interval(samples[i], samples[i + 1], 0);

    if (crossing_) return confirm();
    if (near_) return inconclusive(margin_, "near_crossing");
    Verdict v;
    v.status = Status::RobustlyStable;
    v.margin = margin_;
    v.reason = "no_boundary_crossing";
    return v;
  }

 private:
  void note(const Sample& s) {
    if (s.scale > 0) margin_ = std::min(margin_, s.dist / s.scale);
    if (s.dist <= 1e-13 * s.scale) {
      // value segment passes through zero at a sampled boundary point
      const double len2 = std::norm(s.b);
      const double lambda = len2 > 0 ? std::clamp(-(s.a * std::conj(s.b)).real() / len2, 0.0, 1.0) : 0.0;
      record(s.theta, lambda);
    }
  }

  void record(double theta, double lambda) {
    if (!crossing_) {
      crossing_ = true;
      cross_theta_ = theta;
      cross_lambda_ = lambda;
    }
  }

  void interval(const Sample& a, const Sample& b, int depth) {
    if (crossing_) return;
    if ((a.g < 0 && b.g > 0) || (a.g > 0 && b.g < 0)) {
      // bisect the sign change of Im(lambda(theta))
      Sample lo = a, hi = b;
      for (int it = 0; it < tol_.refine_depth; ++it) {
        const Sample mid = sample(0.5 * (lo.theta + hi.theta));
        if (mid.g == 0.0) {
          lo = hi = mid;
          break;
        }
        ((mid.g < 0) == (lo.g < 0) ? lo : hi) = mid;
      }
      const Sample at = std::abs(lo.g) < std::abs(hi.g) ? lo : hi;
      const double len2 = std::norm(at.b);
      if (len2 > 0) {
        const double lambda = -(at.a * std::conj(at.b)).real() / len2;
        if (lambda >= 0.0 && lambda <= 1.0) {
          record(at.theta, lambda);
          return;
        }
        if (lambda >= -tol_.zero_margin && lambda <= 1.0 + tol_.zero_margin) near_ = true;
      }
    }
    const double h = b.theta - a.theta;
    const double lip = lipschitz(region_, coeff_max_, a.theta, h);
    if (std::max(a.dist, b.dist) > lip * h) return;
    if (depth >= tol_.refine_depth) {
      near_ = true;
      return;
    }
    const Sample mid = sample(0.5 * (a.theta + b.theta));
    note(mid);
    interval(a, mid, depth + 1);
    interval(mid, b, depth + 1);
  }

  Verdict confirm() {
    const Polynomial at = seg_.at(cross_lambda_);
    if (!member_on_or_outside(at, region_)) return inconclusive(margin_, "unconfirmed_crossing");
    auto member = [&](std::span<const double> l) { return seg_.at(l[0]); };
    auto lambda = deepen_witness(member, region_, {cross_lambda_});
    return unstable_at(seg_.at(lambda[0]), region_, lambda, "boundary_crossing");
  }

  const EdgeSegment& seg_;
  Polynomial delta_;
  const Region& region_;
  const Tolerances& tol_;
  std::vector<double> coeff_max_;
  double margin_ = std::numeric_limits<double>::infinity();
  bool crossing_ = false;
  bool near_ = false;
  double cross_theta_ = 0.0;
  double cross_lambda_ = 0.0;
};

}  // namespace

Verdict segment_stable(const EdgeSegment& seg, const Region& r, const Tolerances& tol) {
  tol.check();
  if (seg.degenerate()) {
    if (seg.p0.is_zero()) return unstable_at(seg.p0, r, {0.0}, "zero_polynomial");
    return point_stable(seg.p0, r);
  }
  if (seg.p0.is_zero()) return unstable_at(seg.p0, r, {0.0}, "zero_polynomial");
  if (seg.p1.is_zero()) return unstable_at(seg.p1, r, {1.0}, "zero_polynomial");
  for (double lambda : {0.0, 1.0}) {
    const Polynomial p = lambda == 0.0 ? seg.p0 : seg.p1;
    if (member_on_or_outside(p, r)) return unstable_at(p, r, {lambda}, "unstable_vertex");
  }
  const double cmax = std::max(seg.p0.max_abs_coeff(), seg.p1.max_abs_coeff());
  if (seg.p0.degree() != seg.p1.degree() || (seg.p0.leading() > 0) != (seg.p1.leading() > 0) ||
      std::min(std::abs(seg.p0.leading()), std::abs(seg.p1.leading())) < tol.degree_eps * cmax)
    return degenerate("degree_drop");

  double hi = 2.0 * std::numbers::pi;
  if (r.is_half_plane()) {
    const int d = seg.p0.degree();
    double num = 0.0;
    for (int l = 0; l < d; ++l)
      num = std::max({num, std::abs(seg.p0[static_cast<std::size_t>(l)]), std::abs(seg.p1[static_cast<std::size_t>(l)])});
    hi = 1.0 + num / std::min(std::abs(seg.p0.leading()), std::abs(seg.p1.leading()));
  }
  SegmentScan scan(seg, r, tol);
  return scan.run(0.0, hi);
}

// ---------------------------------------------------------------- box test

namespace {

class BoxSweep {
 public:
  BoxSweep(const ParametricDeterminant& pd, const Region& r, const Tolerances& tol)
      : pd_(pd), region_(r), tol_(tol), count_(pd.terms().size()) {
    const auto box = coefficient_box(pd);
    coeff_max_.resize(box.size());
    for (std::size_t l = 0; l < box.size(); ++l) coeff_max_[l] = std::max(std::abs(box[l].lo), std::abs(box[l].hi));
    term_re_.resize(count_);
    term_im_.resize(count_);
  }

  Verdict run(double lo, double hi) {
    const double h_grid = (hi - lo) / tol_.boundary_grid;
    double theta = lo;
    std::uint64_t steps = 0;
    for (;;) {
      if (++steps > tol_.max_sweep_steps) return inconclusive(margin_, "sweep_step_budget");
      const Exclusion ex = exclude_at(theta);
      if (ex.stuck) return search_witness(theta, ex.center);
      margin_ = std::min(margin_, ex.rel);
      if (theta >= hi) break;
      const double lip = lipschitz(region_, coeff_max_, theta, h_grid);
      double h = h_grid;
      if (lip > 0) h = std::min(h, 0.5 * ex.dist / lip);
      if (h < 1e-12 * std::max(1.0, hi - lo)) return search_witness(theta, ex.center);
      theta = std::min(hi, theta + h);
    }
    Verdict v;
    v.status = Status::RobustlyStable;
    v.margin = margin_;
    v.reason = "zero_excluded";
    return v;
  }

 private:
  struct Exclusion {
    double dist = std::numeric_limits<double>::infinity();  // absolute, min over leaves
    double rel = std::numeric_limits<double>::infinity();
    bool stuck = false;
    std::vector<double> center;  // leaf with the smallest distance (or the stuck leaf)
  };

  Exclusion exclude_at(double theta) {
    const Complex s = boundary(region_, theta).s;
    pd_.evaluate_terms(s, term_re_, term_im_);
    const int k = pd_.k();
    std::vector<double> lo(static_cast<std::size_t>(k), 0.0), hi(static_cast<std::size_t>(k), 1.0);
    // scale from the full-box vertex values
    std::vector<double> vr = term_re_, vi = term_im_;
    subset_sums(vr);
    subset_sums(vi);
    scale_ = 0.0;
    for (std::size_t v = 0; v < count_; ++v) scale_ = std::max(scale_, std::hypot(vr[v], vi[v]));
    Exclusion ex;
    recurse(lo, hi, 0, ex);
    if (scale_ > 0 && !ex.stuck) ex.rel = ex.dist / scale_;
    return ex;
  }

  void recurse(std::vector<double>& lo, std::vector<double>& hi, int depth, Exclusion& ex) {
    if (ex.stuck) return;
    const int k = pd_.k();
    std::vector<double> re = term_re_, im = term_im_;
    // substitute lambda_j = lo_j + (hi_j - lo_j) mu_j, then sum over mu in {0,1}^k
    for (int j = 0; j < k; ++j) {
      const std::size_t bit = std::size_t{1} << j;
      const double w = hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)];
      const double base = lo[static_cast<std::size_t>(j)];
      for (std::size_t mask = 0; mask < count_; ++mask) {
        if (!(mask & bit)) continue;
        re[mask ^ bit] += base * re[mask];
        im[mask ^ bit] += base * im[mask];
        re[mask] *= w;
        im[mask] *= w;
      }
    }
    subset_sums(re);
    subset_sums(im);
    std::vector<Complex> pts(count_);
    for (std::size_t v = 0; v < count_; ++v) pts[v] = {re[v], im[v]};
    const double d = origin_hull_distance(pts);
    if (d >= tol_.zero_margin * scale_ && d > 0) {
      if (d < ex.dist) {
        ex.dist = d;
        ex.center.resize(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j)
          ex.center[static_cast<std::size_t>(j)] = 0.5 * (lo[static_cast<std::size_t>(j)] + hi[static_cast<std::size_t>(j)]);
      }
      return;
    }
    if (depth >= tol_.box_depth || k == 0) {
      ex.stuck = true;
      ex.center.resize(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j)
        ex.center[static_cast<std::size_t>(j)] = 0.5 * (lo[static_cast<std::size_t>(j)] + hi[static_cast<std::size_t>(j)]);
      return;
    }
    int axis = 0;
    for (int j = 1; j < k; ++j)
      if (hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)] >
          hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)])
        axis = j;
    const auto ax = static_cast<std::size_t>(axis);
    const double mid = 0.5 * (lo[ax] + hi[ax]);
    const double saved_hi = hi[ax];
    hi[ax] = mid;
    recurse(lo, hi, depth + 1, ex);
    hi[ax] = saved_hi;
    const double saved_lo = lo[ax];
    lo[ax] = mid;
    recurse(lo, hi, depth + 1, ex);
    lo[ax] = saved_lo;
  }

  /// Gauss-Newton on (lambda, theta) for D(s(theta), lambda) = 0, lambda kept in the box.
  Verdict search_witness(double theta, std::vector<double> lambda) {
    const int k = pd_.k();
    lambda.resize(static_cast<std::size_t>(k), 0.5);
    auto value = [&](const std::vector<double>& l, double t) { return pd_.evaluate(boundary(region_, t).s, l); };
    for (int it = 0; it < 60; ++it) {
      const BoundaryPoint bp = boundary(region_, theta);
      const Polynomial p = pd_.at(lambda);
      const Complex f = p(bp.s);
      if (std::abs(f) <= 1e-15 * std::max(scale_, 1e-300)) break;
      // columns: d/dlambda_j (exact, affine), d/dtheta
      std::vector<Complex> jac(static_cast<std::size_t>(k) + 1);
      for (int j = 0; j < k; ++j) {
        auto l1 = lambda, l0 = lambda;
        l1[static_cast<std::size_t>(j)] = 1.0;
        l0[static_cast<std::size_t>(j)] = 0.0;
        jac[static_cast<std::size_t>(j)] = value(l1, theta) - value(l0, theta);
      }
      jac[static_cast<std::size_t>(k)] = p.derivative()(bp.s) * bp.ds;
      // min-norm step: dx = -J^T (J J^T)^{-1} F with J real 2 x (k+1)
      double a11 = 0, a12 = 0, a22 = 0;
      for (const Complex c : jac) {
        a11 += c.real() * c.real();
        a12 += c.real() * c.imag();
        a22 += c.imag() * c.imag();
      }
      const double det = a11 * a22 - a12 * a12;
      if (!(std::abs(det) > 1e-300)) break;
      const double y1 = (a22 * f.real() - a12 * f.imag()) / det;
      const double y2 = (-a12 * f.real() + a11 * f.imag()) / det;
      for (int j = 0; j < k; ++j) {
        const Complex c = jac[static_cast<std::size_t>(j)];
        lambda[static_cast<std::size_t>(j)] =
            std::clamp(lambda[static_cast<std::size_t>(j)] - (c.real() * y1 + c.imag() * y2), 0.0, 1.0);
      }
      const Complex c = jac[static_cast<std::size_t>(k)];
      theta -= c.real() * y1 + c.imag() * y2;
    }
    const Polynomial at = pd_.at(lambda);
    if (!member_on_or_outside(at, region_)) return inconclusive(margin_, "near_crossing");
    auto member = [&](std::span<const double> l) { return pd_.at(l); };
    lambda = deepen_witness(member, region_, lambda);
    return unstable_at(pd_.at(lambda), region_, lambda, "boundary_crossing");
  }

  const ParametricDeterminant& pd_;
  const Region& region_;
  const Tolerances& tol_;
  std::size_t count_;
  std::vector<double> coeff_max_;
  std::vector<double> term_re_, term_im_;
  double scale_ = 0.0;
  double margin_ = std::numeric_limits<double>::infinity();
};

}  // namespace

Verdict box_stable(const ParametricDeterminant& pd, const Region& r, const Tolerances& tol) {
  tol.check();
  const int k = pd.k();
  // corners first, in mask order; corner 0 is the anchor
  for (std::size_t mask = 0; mask < pd.terms().size(); ++mask) {
    std::vector<double> lambda(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) lambda[static_cast<std::size_t>(j)] = (mask >> j) & 1 ? 1.0 : 0.0;
    const Polynomial p = pd.at(lambda);
    if (member_on_or_outside(p, r)) return unstable_at(p, r, lambda, "unstable_vertex");
  }
  if (k == 0) return point_stable(pd.terms()[0], r);

  SweepRange range{};
  try {
    range = sweep_range(r, pd, tol.degree_eps);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegreeDrop) return degenerate("degree_drop");
    throw;
  }
  BoxSweep sweep(pd, r, tol);
  return sweep.run(range.lo, range.hi);
}

// ---------------------------------------------------------------- drivers

Verdict check_configuration(const EdgeConfiguration& cfg, const Region& r, const Tolerances& tol) {
  Verdict v = box_stable(det_parametric(cfg), r, tol);
  if (v.witness) v.witness->config_index = cfg.index;
  return v;
}

namespace {

FamilyAnalysis run_driver(const MatrixFamily& fam, const Tolerances& tol, const AnalysisOptions& opts) {
  tol.check();
  const ConfigEnumerator configs(fam, {opts.dedup});
  const std::uint64_t total = configs.size();

  std::vector<std::optional<Verdict>> results(total);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> first_unstable{std::numeric_limits<std::uint64_t>::max()};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t idx = next.fetch_add(1);
      if (idx >= total) return;
      if (idx > first_unstable.load()) continue;
      try {
        Verdict v = check_configuration(configs.at(idx), fam.region, tol);
        if (v.status == Status::Unstable) {
          std::uint64_t cur = first_unstable.load();
          while (idx < cur && !first_unstable.compare_exchange_weak(cur, idx)) {
          }
        }
        results[idx] = std::move(v);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        first_unstable.store(0);
      }
    }
  };
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  FamilyAnalysis out;
  out.config_count = total;
  const std::uint64_t stop = first_unstable.load();
  const std::uint64_t end = stop == std::numeric_limits<std::uint64_t>::max() ? total : stop + 1;
  Verdict agg;
  agg.status = Status::RobustlyStable;
  agg.margin = std::numeric_limits<double>::infinity();
  agg.reason = total == 0 ? "empty_edge_set" : "all_configurations_stable";
  for (std::uint64_t i = 0; i < end; ++i) {
    const Verdict& v = *results[i];
    out.summaries.push_back({i, v.status, v.margin, v.reason});
    agg.margin = std::min(agg.margin, v.margin);
    if (severity(v.status) > severity(agg.status)) {
      agg.status = v.status;
      agg.reason = v.reason;
      if (v.witness) agg.witness = v.witness;
    }
  }
  if (agg.status == Status::Unstable) {
    agg.margin = agg.witness->root_margin;
    out.witness_config = configs.at(agg.witness->config_index);
  }
  out.verdict = std::move(agg);
  return out;
}

void require_valid(const MatrixFamily& fam) {
  const auto diags = validate(fam, true);
  if (!diags.empty()) throw Error(ErrorCode::ValidationFailure, diags.front().message);
  if (fam.n > kMaxDriverSize)
    throw Error(ErrorCode::SizeLimit, "n=" + std::to_string(fam.n) + " exceeds the driver limit of " +
                                          std::to_string(kMaxDriverSize));
}

}  // namespace

FamilyAnalysis analyze_family(const MatrixFamily& fam, const Tolerances& tol, const AnalysisOptions& opts) {
  require_valid(fam);
  if (fam.mode() != FamilyMode::Polytope)
    throw Error(ErrorCode::ValidationFailure, "polytope driver needs polytope entries");
  return run_driver(fam, tol, opts);
}

FamilyAnalysis analyze_interval(const MatrixFamily& fam, const Tolerances& tol, const AnalysisOptions& opts) {
  if (fam.region.kind != Region::Kind::HurwitzHalfPlane)
    throw Error(ErrorCode::RegionNotHurwitz, "interval driver is defined for the Hurwitz half-plane only");
  require_valid(fam);
  if (fam.mode() != FamilyMode::Interval)
    throw Error(ErrorCode::ValidationFailure, "interval driver needs interval entries");
  return run_driver(fam, tol, opts);
}

}  // namespace edgestab
