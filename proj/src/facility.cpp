#include "recmech/facility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace recmech {

double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

FacilityInstance::FacilityInstance(std::vector<Point2> pts) : points(std::move(pts)) {
  if (points.empty()) throw std::invalid_argument("FacilityInstance: no points");
  for (const Point2& p : points)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("FacilityInstance: non-finite coordinate");
}

double egalitarian_cost(const FacilityInstance& inst, Point2 a) {
  double worst = 0.0;
  for (const Point2& z : inst.points) worst = std::max(worst, dist(z, a));
  return worst;
}

double utilitarian_cost(const FacilityInstance& inst, Point2 a) {
  double total = 0.0;
  for (const Point2& z : inst.points) total += dist(z, a);
  return total;
}

double minmax_p(std::span<const double> xs, double a_hat) {
  if (xs.empty()) throw std::invalid_argument("minmax_p: empty input");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return std::clamp(a_hat, *lo, *hi);
}

double median_of(std::vector<double> values, TieBreak tb) {
  if (values.empty()) throw std::invalid_argument("median_of: empty input");
  const std::size_t n = values.size();
  std::size_t k = (n % 2 == 1) ? n / 2 : (tb == TieBreak::Low ? n / 2 - 1 : n / 2);
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k),
                   values.end());
  return values[k];
}

Point2 mbb_point(const FacilityInstance& inst, Point2 a_hat) {
  std::vector<double> xs(inst.size()), ys(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    xs[i] = inst.points[i].x;
    ys[i] = inst.points[i].y;
  }
  return {minmax_p(xs, a_hat.x), minmax_p(ys, a_hat.y)};
}

MechanismOutcome<Point2> mbb(const FacilityInstance& inst, Point2 a_hat) {
  const Point2 out = mbb_point(inst, a_hat);

  MechanismOutcome<Point2> res;
  res.alternative = out;
  res.payments.assign(inst.size(), 0.0);
  const auto [center, radius] = opt_egalitarian(inst);
  (void)center;
  res.report = make_report(Objective::Minimize, egalitarian_cost(inst, out), radius,
                           egalitarian_cost(inst, a_hat));
  return res;
}

Point2 coordinatewise_median(const FacilityInstance& inst, TieBreak tb) {
  std::vector<double> xs(inst.size()), ys(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    xs[i] = inst.points[i].x;
    ys[i] = inst.points[i].y;
  }
  return {median_of(std::move(xs), tb), median_of(std::move(ys), tb)};
}

Point2 cmp_point(const FacilityInstance& inst, Point2 a_hat, const CmpConfig& cfg) {
  if (cfg.lambda < 0.0 || cfg.lambda >= 1.0)
    throw std::invalid_argument("cmp: lambda must lie in [0,1)");
  const std::size_t copies =
      static_cast<std::size_t>(std::floor(cfg.lambda * static_cast<double>(inst.size())));

  std::vector<double> xs, ys;
  xs.reserve(inst.size() + copies);
  ys.reserve(inst.size() + copies);
  for (const Point2& z : inst.points) {
    xs.push_back(z.x);
    ys.push_back(z.y);
  }
  xs.insert(xs.end(), copies, a_hat.x);
  ys.insert(ys.end(), copies, a_hat.y);
  return {median_of(std::move(xs), cfg.tie_break),
          median_of(std::move(ys), cfg.tie_break)};
}

MechanismOutcome<Point2> cmp(const FacilityInstance& inst, Point2 a_hat,
                             const CmpConfig& cfg) {
  const Point2 out = cmp_point(inst, a_hat, cfg);

  MechanismOutcome<Point2> res;
  res.alternative = out;
  res.payments.assign(inst.size(), 0.0);
  const auto [center, opt] = opt_utilitarian(inst);
  (void)center;
  res.report = make_report(Objective::Minimize, utilitarian_cost(inst, out), opt,
                           utilitarian_cost(inst, a_hat));
  return res;
}

namespace {

struct Circle {
  Point2 center{};
  double r2 = 0.0;  // squared radius
};

bool contains(const Circle& c, Point2 p) {
  const double dx = p.x - c.center.x;
  const double dy = p.y - c.center.y;
  return dx * dx + dy * dy <= c.r2 * (1.0 + 1e-12) + 1e-30;
}

Circle circle_from(Point2 a, Point2 b) {
  const Point2 c{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return {c, 0.25 * (dx * dx + dy * dy)};
}

Circle circle_from(Point2 a, Point2 b, Point2 c) {
  const double d =
      2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  if (std::abs(d) < 1e-300) {
    // collinear support set: the widest pair already encloses the third point
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)})
      if (cand.r2 > best.r2) best = cand;
    return best;
  }
  const double a2 = a.x * a.x + a.y * a.y;
  const double b2 = b.x * b.x + b.y * b.y;
  const double c2 = c.x * c.x + c.y * c.y;
  const Point2 center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                      (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
  const double dx = a.x - center.x;
  const double dy = a.y - center.y;
  return {center, dx * dx + dy * dy};
}

// enclosing circle of pts[0..count) with q on the boundary
Circle mec_with_one(std::span<const Point2> pts, std::size_t count, Point2 q) {
  Circle c{q, 0.0};
  for (std::size_t i = 0; i < count; ++i) {
    if (contains(c, pts[i])) continue;
    c = circle_from(q, pts[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (contains(c, pts[j])) continue;
      c = circle_from(q, pts[i], pts[j]);
    }
  }
  return c;
}

}  // namespace

std::pair<Point2, double> opt_egalitarian(const FacilityInstance& inst) {
  // deterministic input order keeps repeated runs bit-identical
  std::span<const Point2> pts(inst.points);
  Circle c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!contains(c, pts[i])) c = mec_with_one(pts, i, pts[i]);
  return {c.center, std::sqrt(c.r2)};
}

WeiszfeldError::WeiszfeldError(Point2 last)
    : std::runtime_error("opt_utilitarian: Weiszfeld iteration did not converge"),
      last_iterate(last) {}

namespace {

constexpr double kWeiszfeldStep = 1e-12;
constexpr int kWeiszfeldCap = 100000;

// Unit-vector pull of all points distinct from `p`; returns (sum, multiplicity
// of points coinciding with p).
std::pair<Point2, std::size_t> pull_at(const FacilityInstance& inst, Point2 p) {
  Point2 sum{0.0, 0.0};
  std::size_t coincident = 0;
  for (const Point2& z : inst.points) {
    const double d = dist(z, p);
    if (d < 1e-12) {
      ++coincident;
      continue;
    }
    sum.x += (z.x - p.x) / d;
    sum.y += (z.y - p.y) / d;
  }
  return {sum, coincident};
}

}  // namespace

std::pair<Point2, double> opt_utilitarian(const FacilityInstance& inst) {
  Point2 cur{0.0, 0.0};
  for (const Point2& z : inst.points) {
    cur.x += z.x;
    cur.y += z.y;
  }
  cur.x /= static_cast<double>(inst.size());
  cur.y /= static_cast<double>(inst.size());

  for (int iter = 0; iter < kWeiszfeldCap; ++iter) {
    const auto [pull, coincident] = pull_at(inst, cur);
    if (coincident > 0) {
      // Landed on an input point: it is optimal iff the pull of the remaining
      // points does not exceed the coincident mass (subgradient condition).
      const double pull_norm = std::hypot(pull.x, pull.y);
      if (pull_norm <= static_cast<double>(coincident) + 1e-12)
        return {cur, utilitarian_cost(inst, cur)};
      // otherwise step off along the descent direction and continue
      cur.x += 1e-9 * pull.x / pull_norm;
      cur.y += 1e-9 * pull.y / pull_norm;
      continue;
    }
    // Convergence toward an input point is sublinear, so the step-size test
    // alone may never trigger.  Once the iterate drifts close to a point,
    // check the subgradient condition there and snap if it certifies
    // optimality.
    const Point2* nearest = nullptr;
    double nearest_d = 1e-6;
    for (const Point2& z : inst.points) {
      const double d = dist(z, cur);
      if (d < nearest_d) {
        nearest_d = d;
        nearest = &z;
      }
    }
    if (nearest != nullptr) {
      const auto [vpull, vcoincident] = pull_at(inst, *nearest);
      if (std::hypot(vpull.x, vpull.y) <=
          static_cast<double>(vcoincident) + 1e-12)
        return {*nearest, utilitarian_cost(inst, *nearest)};
    }
    Point2 next{0.0, 0.0};
    double weight = 0.0;
    for (const Point2& z : inst.points) {
      const double w = 1.0 / dist(z, cur);
      next.x += w * z.x;
      next.y += w * z.y;
      weight += w;
    }
    next.x /= weight;
    next.y /= weight;
    if (dist(next, cur) < kWeiszfeldStep)
      return {next, utilitarian_cost(inst, next)};
    cur = next;
  }
  throw WeiszfeldError(cur);
}

double eta(const FacilityInstance& inst, Point2 a_hat, FacilityObjective objective) {
  if (objective == FacilityObjective::Egalitarian) {
    const auto [opt_point, opt] = opt_egalitarian(inst);
    if (opt <= 0.0) throw std::domain_error("eta: zero optimum");
    return dist(opt_point, a_hat) / opt;
  }
  const auto [opt_point, opt] = opt_utilitarian(inst);
  if (opt <= 0.0) throw std::domain_error("eta: zero optimum");
  return static_cast<double>(inst.size()) * dist(opt_point, a_hat) / opt;
}

}  // namespace recmech
