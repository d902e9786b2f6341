#include "collapse/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "collapse/error.hpp"

namespace collapse {

namespace {

constexpr double kAnchorTolerance = 1e-9;

// (b - a) x (c - b); negative for a right (concave) turn.
double turn(const Vertex& a, const Vertex& b, const Vertex& c) {
  return (b.epsilon - a.epsilon) * (c.delta - b.delta) - (b.delta - a.delta) * (c.epsilon - b.epsilon);
}

double distance(const Vertex& a, const Vertex& b) { return std::hypot(b.epsilon - a.epsilon, b.delta - a.delta); }

// Distance of b from the line through a and c.
double offset_from_chord(const Vertex& a, const Vertex& b, const Vertex& c) {
  const double len = distance(a, c);
  if (len == 0.0) return distance(a, b);
  return std::abs(turn(a, b, c)) / len;
}

double point_segment_distance(const Vertex& v, const Vertex& a, const Vertex& b) {
  const double dx = b.epsilon - a.epsilon;
  const double dy = b.delta - a.delta;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((v.epsilon - a.epsilon) * dx + (v.delta - a.delta) * dy) / len2, 0.0, 1.0);
  return std::hypot(v.epsilon - (a.epsilon + t * dx), v.delta - (a.delta + t * dy));
}

[[noreturn]] void reject(const std::string& why) { throw Error(Errc::invalid_region, why); }

}  // namespace

CollapsePoint::CollapsePoint(double eps, double del) : epsilon(eps), delta(del) {
  if (!(0.0 <= epsilon && epsilon < delta && delta <= 1.0)) {
    std::ostringstream os;
    os << "need 0 <= epsilon < delta <= 1, got (" << epsilon << ", " << delta << ")";
    throw Error(Errc::invalid_argument, os.str());
  }
}

ModeCollapseRegion ModeCollapseRegion::from_vertices(std::vector<Vertex> vertices) {
  if (vertices.size() < 2) reject("need at least the two anchor vertices");
  for (const Vertex& v : vertices) {
    if (!std::isfinite(v.epsilon) || !std::isfinite(v.delta)) reject("non-finite vertex");
  }
  const Vertex& first = vertices.front();
  const Vertex& last = vertices.back();
  if (std::abs(first.epsilon) > kAnchorTolerance || std::abs(first.delta) > kAnchorTolerance) {
    reject("first vertex must be (0,0)");
  }
  if (std::abs(last.epsilon - 1.0) > kAnchorTolerance || std::abs(last.delta - 1.0) > kAnchorTolerance) {
    reject("last vertex must be (1,1)");
  }
  vertices.front() = {0.0, 0.0};
  vertices.back() = {1.0, 1.0};

  std::vector<Vertex> out;
  out.reserve(vertices.size());
  for (const Vertex& v : vertices) {
    if (!out.empty()) {
      const Vertex& prev = out.back();
      if (v.epsilon < prev.epsilon - kGeometryTolerance || v.delta < prev.delta - kGeometryTolerance) {
        reject("boundary must be nondecreasing in both coordinates");
      }
      if (distance(prev, v) <= kGeometryTolerance) {
        if (out.size() > 1) out.back() = v;
        continue;
      }
    }
    while (out.size() >= 2 && offset_from_chord(out[out.size() - 2], out.back(), v) <= kGeometryTolerance) {
      out.pop_back();
    }
    out.push_back(v);
  }
  out.back() = {1.0, 1.0};
  if (out.size() < 2) reject("degenerate boundary");

  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].delta < out[i].epsilon - kGeometryTolerance) reject("vertex below the diagonal");
    if (i + 2 < out.size() && turn(out[i], out[i + 1], out[i + 2]) > 0.0) reject("boundary is not concave");
  }
  return ModeCollapseRegion(std::move(out));
}

ModeCollapseRegion ModeCollapseRegion::diagonal() { return ModeCollapseRegion({{0.0, 0.0}, {1.0, 1.0}}); }

ModeCollapseRegion ModeCollapseRegion::full() { return ModeCollapseRegion({{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}); }

ModeCollapseRegion region_from_pair(const DistributionPair& pair) {
  struct Atom {
    double p;
    double q;
    double ratio;
  };
  std::vector<Atom> atoms;
  atoms.reserve(pair.size());
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const double p = pair.p()[i];
    const double q = pair.q()[i];
    if (p == 0.0 && q == 0.0) continue;
    atoms.push_back({p, q, q == 0.0 ? std::numeric_limits<double>::infinity() : p / q});
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.ratio > b.ratio; });

  std::vector<Vertex> vertices{{0.0, 0.0}};
  double eps = 0.0;
  double del = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    eps += atoms[i].q;
    del += atoms[i].p;
    // Equal ratios form one segment.
    if (i + 1 < atoms.size() && atoms[i + 1].ratio == atoms[i].ratio) continue;
    vertices.push_back({std::min(eps, 1.0), std::min(del, 1.0)});
  }
  return ModeCollapseRegion::from_vertices(std::move(vertices));
}

double tv_from_region(const ModeCollapseRegion& region) {
  double best = 0.0;
  for (const Vertex& v : region.vertices()) best = std::max(best, v.delta - v.epsilon);
  return best;
}

double boundary_delta_at(const ModeCollapseRegion& region, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(Errc::invalid_argument, "epsilon must lie in [0, 1]");
  }
  const auto vs = region.vertices();
  // Last vertex with vertex.epsilon <= epsilon.
  const auto it = std::upper_bound(vs.begin(), vs.end(), epsilon,
                                   [](double e, const Vertex& v) { return e < v.epsilon; });
  const auto i = static_cast<std::size_t>(std::distance(vs.begin(), it)) - 1;
  if (i + 1 >= vs.size()) return vs.back().delta;
  const Vertex& a = vs[i];
  const Vertex& b = vs[i + 1];
  const double t = (epsilon - a.epsilon) / (b.epsilon - a.epsilon);
  return a.delta + t * (b.delta - a.delta);
}

bool has_mode_collapse(const ModeCollapseRegion& region, const CollapsePoint& point) {
  return boundary_delta_at(region, point.epsilon) >= point.delta - kGeometryTolerance;
}

bool has_mode_augmentation(const DistributionPair& pair, const CollapsePoint& point) {
  return has_mode_collapse(region_from_pair(pair.swapped()), point);
}

bool has_mode_augmentation(const ModeCollapseRegion& region, const CollapsePoint& point) {
  return boundary_delta_at(region, 1.0 - point.delta) >= 1.0 - point.epsilon - kGeometryTolerance;
}

bool region_contains(const ModeCollapseRegion& outer, const ModeCollapseRegion& inner) {
  return std::all_of(inner.vertices().begin(), inner.vertices().end(), [&](const Vertex& v) {
    return v.delta <= boundary_delta_at(outer, std::clamp(v.epsilon, 0.0, 1.0)) + kGeometryTolerance;
  });
}

DistributionPair canonical_pair_from_region(const ModeCollapseRegion& region) {
  const auto vs = region.vertices();
  std::vector<double> p;
  std::vector<double> q;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    p.push_back(vs[i + 1].delta - vs[i].delta);
    q.push_back(vs[i + 1].epsilon - vs[i].epsilon);
  }
  return collapse::make_pair(p, q);
}

ModeCollapseRegion upper_hull(std::span<const Vertex> points) {
  std::vector<Vertex> pts{{0.0, 0.0}, {1.0, 1.0}};
  for (const Vertex& v : points) {
    if (!std::isfinite(v.epsilon) || !std::isfinite(v.delta)) continue;
    const Vertex c{std::clamp(v.epsilon, 0.0, 1.0), std::clamp(v.delta, 0.0, 1.0)};
    if (c.delta < c.epsilon) continue;
    pts.push_back(c);
  }
  std::sort(pts.begin(), pts.end(), [](const Vertex& a, const Vertex& b) {
    return a.epsilon < b.epsilon || (a.epsilon == b.epsilon && a.delta < b.delta);
  });
  std::vector<Vertex> hull;
  for (const Vertex& v : pts) {
    while (hull.size() >= 2 && turn(hull[hull.size() - 2], hull.back(), v) >= 0.0) hull.pop_back();
    hull.push_back(v);
  }
  // Drop anything sorted after (1,1) is impossible after clamping; the chain
  // starts at (0,0) because it is the lexicographic minimum.
  return ModeCollapseRegion::from_vertices(std::move(hull));
}

namespace {

double distance_to_region(const Vertex& v, const ModeCollapseRegion& region) {
  if (v.delta <= boundary_delta_at(region, std::clamp(v.epsilon, 0.0, 1.0)) + kGeometryTolerance &&
      v.delta >= v.epsilon - kGeometryTolerance) {
    return 0.0;
  }
  const auto vs = region.vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) best = std::min(best, point_segment_distance(v, vs[i], vs[i + 1]));
  return best;
}

}  // namespace

double hausdorff_distance(const ModeCollapseRegion& a, const ModeCollapseRegion& b) {
  double h = 0.0;
  for (const Vertex& v : a.vertices()) h = std::max(h, distance_to_region(v, b));
  for (const Vertex& v : b.vertices()) h = std::max(h, distance_to_region(v, a));
  return h;
}

}  // namespace collapse
