#include "curvecross/intersection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "curvecross/error.hpp"

namespace curvecross {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMinVertices = 64;
constexpr std::size_t kMaxVertices = std::size_t{1} << 22;
// Largest Newton step, in radians, taken in one iteration.
constexpr double kMaxNewtonStep = 0.5;

double orient(PlanePoint a, PlanePoint b, PlanePoint c) { return cross(b - a, c - a); }

bool opposite_strict(double u, double v) { return (u > 0.0 && v < 0.0) || (u < 0.0 && v > 0.0); }

struct Crossing {
  bool proper = false;
  double s = 0.0;  // fraction along p1p2
  double t = 0.0;  // fraction along q1q2
};

Crossing proper_crossing(PlanePoint p1, PlanePoint p2, PlanePoint q1, PlanePoint q2) {
  const double o1 = orient(p1, p2, q1);
  const double o2 = orient(p1, p2, q2);
  const double o3 = orient(q1, q2, p1);
  const double o4 = orient(q1, q2, p2);
  if (!opposite_strict(o1, o2) || !opposite_strict(o3, o4)) return {};
  return {true, o3 / (o3 - o4), o1 / (o1 - o2)};
}

// Closest point of segment ab to p, as a fraction along ab.
double closest_fraction(PlanePoint p, PlanePoint a, PlanePoint b) {
  const Vec2 d = b - a;
  const double len2 = d.x * d.x + d.y * d.y;
  if (len2 == 0.0) return 0.0;
  const Vec2 w = p - a;
  return std::clamp((w.x * d.x + w.y * d.y) / len2, 0.0, 1.0);
}

struct NearPoint {
  double distance = 0.0;
  double s = 0.0;
  double t = 0.0;
};

NearPoint segment_distance(PlanePoint p1, PlanePoint p2, PlanePoint q1, PlanePoint q2) {
  auto lerp = [](PlanePoint a, PlanePoint b, double u) { return a + u * (b - a); };
  NearPoint best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  auto consider = [&](double s, double t) {
    const double d = norm(lerp(p1, p2, s) - lerp(q1, q2, t));
    if (d < best.distance) best = {d, s, t};
  };
  consider(0.0, closest_fraction(p1, q1, q2));
  consider(1.0, closest_fraction(p2, q1, q2));
  consider(closest_fraction(q1, p1, p2), 0.0);
  consider(closest_fraction(q2, p1, p2), 1.0);
  return best;
}

// Uniform polyline with m vertices at phi_k = 2 pi k / m. Harmonics are read
// from a table of cos/sin(2 pi i / m) so every vertex is evaluated exactly at
// its grid angle.
std::vector<PlanePoint> polyline(const TrigCurve& c, std::size_t m) {
  std::vector<double> cos_table(m), sin_table(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double angle = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
    cos_table[i] = std::cos(angle);
    sin_table[i] = std::sin(angle);
  }
  std::vector<PlanePoint> pts(m);
  const auto xa = c.xa(), xb = c.xb(), ya = c.ya(), yb = c.yb();
  for (std::size_t k = 0; k < m; ++k) {
    PlanePoint p{xa[0], ya[0]};
    std::size_t idx = 0;
    for (std::size_t j = 1; j <= c.degree(); ++j) {
      idx += k;
      if (idx >= m) idx -= m;
      const double cj = cos_table[idx], sj = sin_table[idx];
      p.x += xa[j] * cj + xb[j - 1] * sj;
      p.y += ya[j] * cj + yb[j - 1] * sj;
    }
    pts[k] = p;
  }
  return pts;
}

std::size_t vertex_count(const TrigCurve& c, double seg_target) {
  const double wanted = std::ceil(kTwoPi * lipschitz_bound(c) / seg_target);
  if (!(wanted <= static_cast<double>(kMaxVertices))) {
    throw PreconditionError("curve is too long for the requested segment length");
  }
  return std::max(kMinVertices, static_cast<std::size_t>(wanted));
}

struct Seed {
  double phi;
  double psi;
  bool from_crossing;
};

// Uniform grid over the bounding box of both polylines; reports every pair of
// segments whose eps-expanded boxes share a cell, each pair exactly once.
class SegmentGrid {
 public:
  SegmentGrid(const std::vector<PlanePoint>& a, const std::vector<PlanePoint>& b, double cell, double eps)
      : a_(a), eps_(eps) {
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
    double hi_x = -lo_x, hi_y = -lo_x;
    for (const auto* pts : {&a, &b}) {
      for (const auto& p : *pts) {
        lo_x = std::min(lo_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_x = std::max(hi_x, p.x);
        hi_y = std::max(hi_y, p.y);
      }
    }
    origin_ = {lo_x - eps, lo_y - eps};
    const double extent = std::max(hi_x - lo_x, hi_y - lo_y) + 2.0 * eps;
    // Cells never shrink below the requested size; very large boxes get
    // coarser cells instead of a huge grid.
    cell_ = std::max(cell, extent / 512.0);
    nx_ = static_cast<std::size_t>((hi_x - lo_x + 2.0 * eps) / cell_) + 1;
    ny_ = static_cast<std::size_t>((hi_y - lo_y + 2.0 * eps) / cell_) + 1;

    start_.assign(nx_ * ny_ + 1, 0);
    const std::size_t m = a_.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Range r = range_of(a_[i], a_[(i + 1) % m], eps_);
      for (std::size_t y = r.y0; y <= r.y1; ++y)
        for (std::size_t x = r.x0; x <= r.x1; ++x) ++start_[y * nx_ + x + 1];
    }
    for (std::size_t c = 0; c < nx_ * ny_; ++c) start_[c + 1] += start_[c];
    items_.resize(start_.back());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < m; ++i) {
      const Range r = range_of(a_[i], a_[(i + 1) % m], eps_);
      for (std::size_t y = r.y0; y <= r.y1; ++y)
        for (std::size_t x = r.x0; x <= r.x1; ++x) items_[fill[y * nx_ + x]++] = static_cast<std::uint32_t>(i);
    }
  }

  template <typename Visit>
  void for_each_candidate(const std::vector<PlanePoint>& b, Visit&& visit) const {
    const std::size_t ma = a_.size(), mb = b.size();
    for (std::size_t j = 0; j < mb; ++j) {
      const Range rb = range_of(b[j], b[(j + 1) % mb], 0.0);
      for (std::size_t y = rb.y0; y <= rb.y1; ++y) {
        for (std::size_t x = rb.x0; x <= rb.x1; ++x) {
          const std::size_t cellid = y * nx_ + x;
          for (std::size_t k = start_[cellid]; k < start_[cellid + 1]; ++k) {
            const std::size_t i = items_[k];
            const Range ra = range_of(a_[i], a_[(i + 1) % ma], eps_);
            // Visit only from the first cell both ranges share.
            if (x != std::max(ra.x0, rb.x0) || y != std::max(ra.y0, rb.y0)) continue;
            visit(i, j);
          }
        }
      }
    }
  }

 private:
  struct Range {
    std::size_t x0, x1, y0, y1;
  };

  std::size_t clamp_index(double v, std::size_t n) const {
    const double c = std::floor(v / cell_);
    if (c <= 0.0) return 0;
    return std::min(n - 1, static_cast<std::size_t>(c));
  }

  Range range_of(PlanePoint p, PlanePoint q, double pad) const {
    return {clamp_index(std::min(p.x, q.x) - pad - origin_.x, nx_),
            clamp_index(std::max(p.x, q.x) + pad - origin_.x, nx_),
            clamp_index(std::min(p.y, q.y) - pad - origin_.y, ny_),
            clamp_index(std::max(p.y, q.y) + pad - origin_.y, ny_)};
  }

  const std::vector<PlanePoint>& a_;
  double eps_;
  PlanePoint origin_;
  double cell_ = 1.0;
  std::size_t nx_ = 1, ny_ = 1;
  std::vector<std::size_t> start_;
  std::vector<std::uint32_t> items_;
};

IntersectionResult constant_case(const TrigCurve& f, const TrigCurve& g, const CountingConfig& cfg) {
  IntersectionResult result;
  result.min_abs_det = std::numeric_limits<double>::infinity();
  const double scale = point_radius_bound(f.degree(), cfg.metric);
  if (f.is_constant() && g.is_constant()) {
    result.degenerate = norm(evaluate(f, 0.0) - evaluate(g, 0.0)) <= 1e-12 * scale;
    return result;
  }
  // One constant curve: a moving curve passes through a fixed point only on a
  // measure-zero set, so the answer is 0 unless it comes too close to call.
  const TrigCurve& moving = f.is_constant() ? g : f;
  const PlanePoint fixed = evaluate(f.is_constant() ? f : g, 0.0);
  const std::size_t m = vertex_count(moving, cfg.resolved_seg_target(f.degree()));
  const auto pts = polyline(moving, m);
  const double dphi = kTwoPi / static_cast<double>(m);
  const double sag = curvature_speed_bound(moving) * dphi * dphi / 8.0;
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m; ++k) {
    const PlanePoint a = pts[k], b = pts[(k + 1) % m];
    const double u = closest_fraction(fixed, a, b);
    closest = std::min(closest, norm(a + u * (b - a) - fixed));
  }
  result.degenerate = closest <= 2.0 * sag + 1e-9 * scale;
  return result;
}

}  // namespace

void CountingConfig::validate() const {
  if (seg_target < 0.0 || !(newton_tol > 0.0) || !(dedupe_radius > 0.0) || max_newton_iters <= 0 ||
      !(degeneracy_threshold > 0.0)) {
    throw PreconditionError("counting configuration values must be positive");
  }
}

double CountingConfig::resolved_seg_target(std::size_t degree) const {
  return seg_target > 0.0 ? seg_target : 0.02 * point_radius_bound(degree, metric);
}

double torus_distance(std::pair<double, double> a, std::pair<double, double> b) {
  auto circ = [](double u, double v) {
    const double d = std::abs(wrap_angle(u) - wrap_angle(v));
    return std::min(d, kTwoPi - d);
  };
  return std::hypot(circ(a.first, b.first), circ(a.second, b.second));
}

bool segment_proper_cross(PlanePoint p1, PlanePoint p2, PlanePoint q1, PlanePoint q2) {
  if (p1 == p2 || q1 == q2) throw PreconditionError("segment has zero length");
  return proper_crossing(p1, p2, q1, q2).proper;
}

NewtonOutcome newton_refine(const TrigCurve& f, const TrigCurve& g, double phi0, double psi0,
                            const CountingConfig& cfg) {
  if (f.degree() != g.degree()) throw PreconditionError("curves have different degrees");
  const double residual_limit = 10.0 * cfg.newton_tol * point_radius_bound(f.degree(), cfg.metric);

  NewtonOutcome out;
  out.phi = phi0;
  out.psi = psi0;
  out.best_residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < cfg.max_newton_iters; ++it) {
    const CurveJet jf = evaluate_jet(f, out.phi);
    const CurveJet jg = evaluate_jet(g, out.psi);
    const Vec2 residual = jf.point - jg.point;
    out.residual = norm(residual);
    out.best_residual = std::min(out.best_residual, out.residual);
    // J = [f'(phi), -g'(psi)]
    const double j11 = jf.velocity.x, j12 = -jg.velocity.x;
    const double j21 = jf.velocity.y, j22 = -jg.velocity.y;
    out.det = j11 * j22 - j12 * j21;
    if (!(std::abs(out.det) >= cfg.degeneracy_threshold)) {
      out.status = NewtonStatus::singular;
      return out;
    }
    double dphi = (j22 * residual.x - j12 * residual.y) / out.det;
    double dpsi = (-j21 * residual.x + j11 * residual.y) / out.det;
    const double step = std::hypot(dphi, dpsi);
    if (step > kMaxNewtonStep) {
      dphi *= kMaxNewtonStep / step;
      dpsi *= kMaxNewtonStep / step;
    }
    out.phi -= dphi;
    out.psi -= dpsi;
    if (step <= cfg.newton_tol) {
      out.iterations = it;
      out.phi = wrap_angle(out.phi);
      out.psi = wrap_angle(out.psi);
      const CurveJet ef = evaluate_jet(f, out.phi);
      const CurveJet eg = evaluate_jet(g, out.psi);
      out.residual = norm(ef.point - eg.point);
      out.best_residual = std::min(out.best_residual, out.residual);
      out.det = cross(ef.velocity, -1.0 * eg.velocity);
      if (std::abs(out.det) < cfg.degeneracy_threshold) {
        out.status = NewtonStatus::singular;
      } else {
        out.status = out.residual <= residual_limit ? NewtonStatus::converged : NewtonStatus::max_iterations;
      }
      return out;
    }
  }
  out.iterations = cfg.max_newton_iters;
  out.status = NewtonStatus::max_iterations;
  return out;
}

IntersectionResult count_intersections(const TrigCurve& f, const TrigCurve& g, const CountingConfig& cfg) {
  if (f.degree() != g.degree()) throw PreconditionError("curves have different degrees");
  cfg.validate();
  if (f.is_constant() || g.is_constant()) return constant_case(f, g, cfg);

  const std::size_t n = f.degree();
  const double scale = point_radius_bound(n, cfg.metric);
  const double seg = cfg.resolved_seg_target(n);
  const std::size_t mf = vertex_count(f, seg), mg = vertex_count(g, seg);
  const auto pf = polyline(f, mf), pg = polyline(g, mg);
  const double dphi = kTwoPi / static_cast<double>(mf), dpsi = kTwoPi / static_cast<double>(mg);

  // Chords deviate from their arcs by at most |c''|max h^2 / 8; segment pairs
  // closer than both deviations combined may hide a crossing.
  const double near_eps = 2.0 * (curvature_speed_bound(f) * dphi * dphi + curvature_speed_bound(g) * dpsi * dpsi) / 8.0 +
                          1e-12 * scale;

  std::vector<Seed> seeds;
  SegmentGrid grid(pf, pg, seg, near_eps);
  grid.for_each_candidate(pg, [&](std::size_t i, std::size_t j) {
    const PlanePoint p1 = pf[i], p2 = pf[(i + 1) % mf];
    const PlanePoint q1 = pg[j], q2 = pg[(j + 1) % mg];
    const double phi_i = dphi * static_cast<double>(i), psi_j = dpsi * static_cast<double>(j);
    if (const Crossing c = proper_crossing(p1, p2, q1, q2); c.proper) {
      seeds.push_back({phi_i + c.s * dphi, psi_j + c.t * dpsi, true});
      return;
    }
    if (const NearPoint near = segment_distance(p1, p2, q1, q2); near.distance <= near_eps) {
      seeds.push_back({phi_i + near.s * dphi, psi_j + near.t * dpsi, false});
    }
  });

  IntersectionResult result;
  result.min_abs_det = std::numeric_limits<double>::infinity();
  const double near_miss_limit = 1e-6 * scale;
  for (const Seed& s : seeds) {
    const NewtonOutcome root = newton_refine(f, g, s.phi, s.psi, cfg);
    if (!root.converged()) {
      if (s.from_crossing || root.best_residual <= near_miss_limit) result.degenerate = true;
      continue;
    }
    const std::pair<double, double> sol{root.phi, root.psi};
    const bool seen = std::any_of(result.solutions.begin(), result.solutions.end(),
                                  [&](const auto& other) { return torus_distance(other, sol) < cfg.dedupe_radius; });
    if (seen) continue;
    result.solutions.push_back(sol);
    result.min_abs_det = std::min(result.min_abs_det, std::abs(root.det));
  }

  std::sort(result.solutions.begin(), result.solutions.end());
  result.count = result.solutions.size();
  if (result.count % 2 == 1 || result.count > 4 * n * n) result.degenerate = true;
  if (result.min_abs_det < cfg.degeneracy_threshold) result.degenerate = true;
  return result;
}

BruteForceCount brute_force_count(const TrigCurve& f, const TrigCurve& g, std::size_t vertices) {
  if (vertices < 256) throw PreconditionError("brute_force_count requires M >= 256");
  if (f.degree() != g.degree()) throw PreconditionError("curves have different degrees");
  std::size_t counts[3] = {0, 0, 0};
  for (int level = 0; level < 3; ++level) {
    const std::size_t m = vertices << level;
    const auto pf = polyline(f, m), pg = polyline(g, m);
    std::size_t count = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const PlanePoint p1 = pf[i], p2 = pf[(i + 1) % m];
      if (p1 == p2) continue;
      const double lo_x = std::min(p1.x, p2.x), hi_x = std::max(p1.x, p2.x);
      const double lo_y = std::min(p1.y, p2.y), hi_y = std::max(p1.y, p2.y);
      for (std::size_t j = 0; j < m; ++j) {
        const PlanePoint q1 = pg[j], q2 = pg[(j + 1) % m];
        if (q1 == q2) continue;
        if (std::max(q1.x, q2.x) < lo_x || std::min(q1.x, q2.x) > hi_x || std::max(q1.y, q2.y) < lo_y ||
            std::min(q1.y, q2.y) > hi_y) {
          continue;
        }
        if (segment_proper_cross(p1, p2, q1, q2)) ++count;
      }
    }
    counts[level] = count;
  }
  return {counts[0], counts[0] == counts[1] && counts[1] == counts[2]};
}

}  // namespace curvecross
