#include "drpa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace drpa {

SurplusCurve SurplusCurve::from_production(const ProductionCurve& curve) {
  SurplusCurve s;
  s.cost_cap = curve.cost_cap;
  s.points.reserve(curve.samples.size());
  for (const auto& p : curve.samples) s.points.push_back({p.cost, p.output - p.cost});
  return s;
}

SurplusCurve::Point extremal_point(const SurplusCurve& curve, double dir_cost,
                                   double dir_surplus, double eps_tie) {
  if (curve.points.empty()) throw std::invalid_argument("extremal_point: empty curve");

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : curve.points)
    best = std::max(best, dir_cost * p.cost + dir_surplus * p.surplus);

  // Favorable tie-break: larger principal payoff (larger cost + surplus =
  // larger output), then lower cost.
  const SurplusCurve::Point* pick = nullptr;
  for (const auto& p : curve.points) {
    double v = dir_cost * p.cost + dir_surplus * p.surplus;
    if (v < best - eps_tie) continue;
    if (!pick) {
      pick = &p;
      continue;
    }
    double g_new = p.cost + p.surplus;
    double g_old = pick->cost + pick->surplus;
    if (g_new > g_old + eps_tie) {
      pick = &p;
    } else if (std::abs(g_new - g_old) <= eps_tie && p.cost < pick->cost - eps_tie) {
      pick = &p;
    }
  }
  return *pick;
}

std::vector<SurplusCurve::Point> upper_hull_points(const SurplusCurve& curve) {
  std::vector<SurplusCurve::Point> pts = curve.points;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.surplus > b.surplus;
  });
  // Drop duplicate costs, keep the higher surplus.
  std::vector<SurplusCurve::Point> uniq;
  for (const auto& p : pts) {
    if (!uniq.empty() && std::abs(p.cost - uniq.back().cost) <= 1e-15) continue;
    uniq.push_back(p);
  }
  if (uniq.size() <= 2) return uniq;

  auto cross = [](const SurplusCurve::Point& o, const SurplusCurve::Point& a,
                  const SurplusCurve::Point& b) {
    return (a.cost - o.cost) * (b.surplus - o.surplus) -
           (a.surplus - o.surplus) * (b.cost - o.cost);
  };
  std::vector<SurplusCurve::Point> hull;
  for (const auto& p : uniq) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

SurplusCurve concave_envelope(const SurplusCurve& curve) {
  if (curve.points.empty()) throw std::invalid_argument("concave_envelope: empty curve");
  auto hull = upper_hull_points(curve);

  SurplusCurve env;
  env.cost_cap = curve.cost_cap;
  env.points.reserve(curve.points.size());
  std::size_t seg = 0;
  for (const auto& p : curve.points) {
    while (seg + 1 < hull.size() && hull[seg + 1].cost < p.cost) ++seg;
    double s;
    if (seg + 1 >= hull.size() || p.cost <= hull[seg].cost) {
      s = hull[std::min(seg, hull.size() - 1)].surplus;
    } else {
      double t = (p.cost - hull[seg].cost) / (hull[seg + 1].cost - hull[seg].cost);
      s = hull[seg].surplus + t * (hull[seg + 1].surplus - hull[seg].surplus);
    }
    env.points.push_back({p.cost, std::max(s, p.surplus)});
  }
  return env;
}

namespace {

std::size_t nearest_index(const ProductionCurve& curve, double c) {
  const auto& s = curve.samples;
  if (s.empty()) throw std::invalid_argument("derivative: empty curve");
  if (c < s.front().cost - 1e-9 || c > s.back().cost + 1e-9)
    throw std::invalid_argument("derivative: cost outside curve domain");
  std::size_t best = 0;
  double dist = std::abs(s[0].cost - c);
  for (std::size_t i = 1; i < s.size(); ++i) {
    double d = std::abs(s[i].cost - c);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return best;
}

double derivative_at(const ProductionCurve& curve, std::size_t i) {
  const auto& s = curve.samples;
  if (s.size() < 2) throw std::invalid_argument("derivative: need at least two samples");
  if (i == 0) return (s[1].output - s[0].output) / (s[1].cost - s[0].cost);
  if (i + 1 == s.size())
    return (s[i].output - s[i - 1].output) / (s[i].cost - s[i - 1].cost);
  return (s[i + 1].output - s[i - 1].output) / (s[i + 1].cost - s[i - 1].cost);
}

}  // namespace

double derivative(const ProductionCurve& curve, double c) {
  return derivative_at(curve, nearest_index(curve, c));
}

InverseDerivative inverse_derivative(const ProductionCurve& curve, double v) {
  const auto& s = curve.samples;
  if (s.size() < 3) throw std::invalid_argument("inverse_derivative: need at least 3 samples");

  std::vector<double> d(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) d[i] = derivative_at(curve, i);

  constexpr double kMonotoneSlack = 1e-9;
  double spread = *std::max_element(d.begin(), d.end()) -
                  *std::min_element(d.begin(), d.end());
  if (spread <= kMonotoneSlack) throw std::runtime_error("inverse of g' undefined");

  const bool increasing = d.back() > d.front();
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (increasing ? d[i + 1] < d[i] - kMonotoneSlack : d[i + 1] > d[i] + kMonotoneSlack)
      throw std::runtime_error("inverse of g' undefined");
  }

  double lo = std::min(d.front(), d.back());
  double hi = std::max(d.front(), d.back());
  InverseDerivative result;
  if (v < lo || v > hi) {
    result.clamped = true;
    // Nearer endpoint of the derivative range.
    bool at_front = increasing ? (v < lo) : (v > hi);
    result.cost = at_front ? s.front().cost : s.back().cost;
    return result;
  }

  // Bisection on the grid, then settle on the neighbor minimizing |g' - v|.
  std::size_t a = 0, b = d.size() - 1;
  while (b - a > 1) {
    std::size_t m = (a + b) / 2;
    bool go_right = increasing ? (d[m] < v) : (d[m] > v);
    if (go_right)
      a = m;
    else
      b = m;
  }
  result.cost = (std::abs(d[a] - v) <= std::abs(d[b] - v)) ? s[a].cost : s[b].cost;
  return result;
}

}  // namespace drpa
