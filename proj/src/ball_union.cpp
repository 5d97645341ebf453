#include "kpc/ball_union.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace kpc {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kMergeTol = 1e-9;

double wrap2pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y;
}

bool angle_in_window(double theta, double start, double len, double tol = 1e-12) {
  return wrap2pi(theta - start) <= len + tol;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string pair_msg(const char* what, int i, int j) {
  return std::string(what) + " (disks " + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

BallConfiguration make_config(Surface s, std::vector<Disk> disks) {
  for (const Disk& d : disks)
    if (d.center.surface != s) throw Error(Err::mixed_surfaces, "disk center on wrong surface");
  return BallConfiguration{s, std::move(disks)};
}

bool contains(Surface s, const std::vector<Disk>& disks, const Point& p) {
  for (const Disk& d : disks)
    if (distance(s, d.center, p) - d.radius <= kEpsPred) return true;
  return false;
}

bool contains(const BallConfiguration& config, const Point& p) {
  return contains(config.surface, config.disks, p);
}

BallPolytope validate(const BallConfiguration& config, bool allow_shared_corners) {
  const Surface s = config.surface;
  const int k = static_cast<int>(config.disks.size());
  if (k == 0) throw Error(Err::invalid_disk, "empty configuration");
  for (int i = 0; i < k; ++i) {
    const Disk& d = config.disks[i];
    if (d.center.surface != s) throw Error(Err::mixed_surfaces, "disk " + std::to_string(i));
    if (!(d.radius > kEpsPred)) throw Error(Err::zero_radius, "disk " + std::to_string(i));
    if (s == Surface::spherical && d.radius >= kPi - kEpsPred)
      throw Error(Err::invalid_radius, "disk " + std::to_string(i));
  }

  // pairwise degeneracies on the original disks
  std::vector<std::vector<double>> cdist(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const double d = distance(s, config.disks[i].center, config.disks[j].center);
      cdist[i][j] = cdist[j][i] = d;
      const double ri = config.disks[i].radius, rj = config.disks[j].radius;
      if (d <= kEpsPred && std::abs(ri - rj) <= kEpsPred)
        throw Error(Err::coincident_circles, pair_msg("coincident circles", i, j));
      if (s == Surface::spherical && kPi - d <= kEpsPred && std::abs(ri + rj - kPi) <= kEpsPred)
        throw Error(Err::coincident_circles, pair_msg("coincident circles", i, j));
      if (std::abs(d - (ri + rj)) <= kEpsPred)
        throw Error(Err::tangent_circles, pair_msg("externally tangent circles", i, j));
      if (std::abs(d - std::abs(ri - rj)) <= kEpsPred)
        throw Error(Err::tangent_circles, pair_msg("internally tangent circles", i, j));
      if (s == Surface::spherical && std::abs(d - (kTwoPi - ri - rj)) <= kEpsPred)
        throw Error(Err::tangent_circles, pair_msg("tangent circles", i, j));
    }

  BallPolytope poly;
  poly.surface = s;
  poly.original = config;

  // drop disks contained in a single other disk
  std::vector<bool> dropped(k, false);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || dropped[i]) continue;
      const double d = cdist[i][j];
      if (d + config.disks[i].radius <= config.disks[j].radius) {
        dropped[i] = true;
        poly.dropped_redundant.push_back(i);
      }
    }
  for (int i = 0; i < k; ++i)
    if (!dropped[i]) {
      poly.disks.push_back(config.disks[i]);
      poly.effective_index.push_back(i);
    }
  const int n = static_cast<int>(poly.disks.size());
  for (int i = 0; i < n; ++i)
    poly.frames.push_back(circle_frame(s, poly.disks[i].center, poly.disks[i].radius));

  // intersection points, merged into corner clusters
  struct Cluster {
    Point point;
    std::vector<std::pair<int, double>> events;  // (effective disk, angle on its circle)
  };
  std::vector<Cluster> clusters;
  auto register_event = [&](const Point& p, int disk) {
    int ci = -1;
    for (int m = 0; m < static_cast<int>(clusters.size()); ++m)
      if (same_point(clusters[m].point, p, kMergeTol)) {
        ci = m;
        break;
      }
    if (ci < 0) {
      clusters.push_back(Cluster{p, {}});
      ci = static_cast<int>(clusters.size()) - 1;
    }
    Cluster& c = clusters[ci];
    for (const auto& ev : c.events)
      if (ev.first == disk) return;  // same circle through an already known cluster point
    c.events.emplace_back(disk, poly.frames[disk].angle_of(p));
  };

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const CircleIntersection x = circle_intersections(s, poly.disks[i], poly.disks[j]);
      if (x.tangent) throw Error(Err::tangent_circles, pair_msg("tangent circles", i, j));
      for (const Point& p : x.points) {
        register_event(p, i);
        register_event(p, j);
      }
    }
  if (!allow_shared_corners)
    for (const Cluster& c : clusters)
      if (c.events.size() >= 3) {
        std::string disks_str;
        for (const auto& ev : c.events) disks_str += " " + std::to_string(ev.first);
        throw Error(Err::corner_on_third_circle,
                    "an intersection point lies on circles" + disks_str);
      }

  // sub-arcs per circle, kept when not covered by another disk
  auto covered = [&](const Point& p, int skip) {
    for (int j = 0; j < n; ++j) {
      if (j == skip) continue;
      const double slack = distance(s, poly.disks[j].center, p) - poly.disks[j].radius;
      if (slack < -kEpsPred) return true;
      if (std::abs(slack) <= kEpsPred)
        throw Error(Err::corner_on_third_circle,
                    "arc sample within tolerance of circle " + std::to_string(j));
    }
    return false;
  };

  struct Germ {
    int arc;
    bool starts;  // arc starts at the cluster (otherwise ends there)
  };
  std::vector<std::vector<Germ>> germs(clusters.size());

  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> events;  // (angle, cluster)
    for (int m = 0; m < static_cast<int>(clusters.size()); ++m)
      for (const auto& ev : clusters[m].events)
        if (ev.first == i) events.emplace_back(wrap2pi(ev.second), m);
    if (events.empty()) {
      const Point probe = poly.frames[i].point_at(0.123456);
      if (!covered(probe, i)) {
        poly.arcs.push_back(BoundaryArc{i, -1, -1, 0.0, kTwoPi, true});
      }
      continue;
    }
    std::sort(events.begin(), events.end());
    const int ne = static_cast<int>(events.size());
    for (int m = 0; m < ne; ++m) {
      const double a0 = events[m].first;
      const double a1 = events[(m + 1) % ne].first;
      double len = wrap2pi(a1 - a0);
      if (m == ne - 1 && ne == 1) len = kTwoPi;
      if (len <= 2.0 * kMergeTol)
        throw Error(Err::corner_on_third_circle,
                    "near-coincident corners on circle " + std::to_string(i));
      const Point mid = poly.frames[i].point_at(a0 + 0.5 * len);
      if (covered(mid, i)) continue;
      const int arc = static_cast<int>(poly.arcs.size());
      poly.arcs.push_back(BoundaryArc{i, events[m].second, events[(m + 1) % ne].second, a0, len, false});
      germs[events[m].second].push_back(Germ{arc, true});
      germs[events[(m + 1) % ne].second].push_back(Germ{arc, false});
    }
  }

  // corners: clusters with exactly one incoming and one outgoing surviving arc
  std::vector<int> corner_of_cluster(clusters.size(), -1);
  std::vector<int> next_arc_at_cluster(clusters.size(), -1);
  for (int m = 0; m < static_cast<int>(clusters.size()); ++m) {
    const auto& g = germs[m];
    if (g.empty()) continue;  // crossing fully inside the union
    int ins = 0, outs = 0, in_arc = -1, out_arc = -1;
    for (const Germ& gm : g) {
      if (gm.starts) {
        ++outs;
        out_arc = gm.arc;
      } else {
        ++ins;
        in_arc = gm.arc;
      }
    }
    if (ins != 1 || outs != 1)
      throw Error(Err::corner_on_third_circle,
                  "boundary not a manifold at a corner cluster (" + std::to_string(ins) + " in, " +
                      std::to_string(outs) + " out)");
    const int ci = static_cast<int>(poly.corners.size());
    poly.corners.push_back(
        Corner{clusters[m].point, poly.arcs[in_arc].disk_index, poly.arcs[out_arc].disk_index});
    corner_of_cluster[m] = ci;
    next_arc_at_cluster[m] = out_arc;
  }
  for (BoundaryArc& a : poly.arcs) {
    if (a.full_circle) continue;
    a.start_corner = corner_of_cluster[a.start_corner];
    a.end_corner = corner_of_cluster[a.end_corner];
    if (a.start_corner < 0 || a.end_corner < 0)
      throw Error(Err::internal_error, "arc endpoint is not a corner");
  }

  // chain arcs into boundary cycles
  std::vector<int> cluster_of_corner(poly.corners.size(), -1);
  for (int m = 0; m < static_cast<int>(clusters.size()); ++m)
    if (corner_of_cluster[m] >= 0) cluster_of_corner[corner_of_cluster[m]] = m;
  std::vector<bool> used(poly.arcs.size(), false);
  for (int a = 0; a < static_cast<int>(poly.arcs.size()); ++a) {
    if (used[a]) continue;
    if (poly.arcs[a].full_circle) {
      poly.cycles.push_back({a});
      used[a] = true;
      continue;
    }
    std::vector<int> cyc;
    int cur = a;
    while (!used[cur]) {
      used[cur] = true;
      cyc.push_back(cur);
      cur = next_arc_at_cluster[cluster_of_corner[poly.arcs[cur].end_corner]];
    }
    if (cur != a) throw Error(Err::internal_error, "boundary cycle does not close");
    poly.cycles.push_back(std::move(cyc));
  }

  // overlap components of the effective disks
  UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (distance(s, poly.disks[i].center, poly.disks[j].center) <
          poly.disks[i].radius + poly.disks[j].radius)
        uf.unite(i, j);
  poly.disk_component.assign(n, -1);
  int ncomp = 0;
  for (int i = 0; i < n; ++i) {
    const int root = uf.find(i);
    if (poly.disk_component[root] < 0) poly.disk_component[root] = ncomp++;
    poly.disk_component[i] = poly.disk_component[root];
  }
  poly.component_count = ncomp;

  if (poly.arcs.empty()) {
    if (s != Surface::spherical)
      throw Error(Err::internal_error, "union without boundary off the sphere");
    poly.covers_sphere = true;
  } else if (s == Surface::spherical) {
    // a component whose disks contribute no boundary would cover the sphere,
    // which cannot coexist with another component
    std::vector<bool> has_arc(ncomp, false);
    for (const BoundaryArc& a : poly.arcs) has_arc[poly.disk_component[a.disk_index]] = true;
    for (int c = 0; c < ncomp; ++c)
      if (!has_arc[c]) throw Error(Err::internal_error, "boundaryless spherical component");
  }

  poly.validated = true;
  return poly;
}

namespace {

double turning_angle(const BallPolytope& poly, int arc_in, int arc_out, const Point& at) {
  const BoundaryArc& ain = poly.arcs[arc_in];
  const BoundaryArc& aout = poly.arcs[arc_out];
  const CircleFrame& fin = poly.frames[ain.disk_index];
  const CircleFrame& fout = poly.frames[aout.disk_index];
  const Vec3 t_in = fin.unit_tangent_at(ain.theta_start + ain.theta_len);
  const Vec3 t_out = fout.unit_tangent_at(aout.theta_start);
  return signed_angle(poly.surface, at, t_in, t_out);
}

}  // namespace

double union_area(const BallPolytope& poly) {
  if (!poly.validated) throw Error(Err::unvalidated_input, "union_area");
  if (poly.covers_sphere) return 4.0 * kPi;
  const Surface s = poly.surface;

  if (s == Surface::euclidean) {
    double total = 0.0;
    for (const auto& cyc : poly.cycles) {
      double acc = 0.0;
      for (const int ai : cyc) {
        const BoundaryArc& a = poly.arcs[ai];
        const CircleFrame& f = poly.frames[a.disk_index];
        const double r = f.radius;
        const Point pa = f.point_at(a.theta_start);
        const Point pb = f.point_at(a.theta_start + a.theta_len);
        const double cx = f.center.v[0], cy = f.center.v[1];
        acc += 0.5 * (cx * (pb.v[1] - pa.v[1]) - cy * (pb.v[0] - pa.v[0]) + r * r * a.theta_len);
      }
      total += acc;
    }
    return total;
  }

  // Gauss-Bonnet per overlap component: kappa * area = 2 pi chi - sum k_g len - sum turning
  const double kappa = curvature(s);
  std::vector<double> interior(poly.component_count, 0.0);  // k_g + turning terms
  std::vector<int> cycles_per_component(poly.component_count, 0);
  for (const auto& cyc : poly.cycles) {
    const int comp = poly.disk_component[poly.arcs[cyc.front()].disk_index];
    ++cycles_per_component[comp];
    double acc = 0.0;
    for (std::size_t m = 0; m < cyc.size(); ++m) {
      const BoundaryArc& a = poly.arcs[cyc[m]];
      const CircleFrame& f = poly.frames[a.disk_index];
      acc += circle_geodesic_curvature(s, f.radius) * f.speed() * a.theta_len;
      if (!a.full_circle) {
        const int nxt = cyc[(m + 1) % cyc.size()];
        acc += turning_angle(poly, cyc[m], nxt, poly.corners[a.end_corner].point);
      }
    }
    interior[comp] += acc;
  }
  double total = 0.0;
  for (int c = 0; c < poly.component_count; ++c) {
    const double chi = 2.0 - cycles_per_component[c];
    total += (2.0 * kPi * chi - interior[c]) / kappa;
  }
  return total;
}

TopologyReport topology(const BallPolytope& poly) {
  if (!poly.validated) throw Error(Err::unvalidated_input, "topology");
  TopologyReport rep;
  if (poly.covers_sphere) {
    rep.component_count = 1;
    rep.hole_count = 0;
    rep.euler_characteristic = 2;
    rep.simply_connected = true;
    return rep;
  }
  rep.component_count = poly.component_count;
  std::vector<int> cycles_per_component(poly.component_count, 0);
  for (const auto& cyc : poly.cycles)
    ++cycles_per_component[poly.disk_component[poly.arcs[cyc.front()].disk_index]];
  int chi = 0;
  for (int c = 0; c < poly.component_count; ++c) chi += 2 - cycles_per_component[c];
  rep.euler_characteristic = chi;
  rep.hole_count = rep.component_count - chi;
  rep.simply_connected = rep.component_count == 1 && rep.hole_count == 0;
  return rep;
}

double intersection_area_sphere(const BallConfiguration& config) {
  if (config.surface != Surface::spherical)
    throw Error(Err::non_spherical_surface, "intersection_area_sphere");
  std::vector<Disk> complements;
  complements.reserve(config.disks.size());
  for (const Disk& d : config.disks) {
    const Point anti = Point::embedded(Surface::spherical, -1.0 * d.center.v);
    complements.push_back(make_disk(anti, kPi - d.radius));
  }
  const BallPolytope poly = validate(make_config(Surface::spherical, complements));
  return 4.0 * kPi - union_area(poly);
}

double distance_to_boundary(const BallPolytope& poly, const Point& p) {
  if (!poly.validated) throw Error(Err::unvalidated_input, "distance_to_boundary");
  if (poly.covers_sphere) throw Error(Err::covers_whole_surface, "no boundary");
  double best = std::numeric_limits<double>::infinity();
  for (const BoundaryArc& a : poly.arcs) {
    const CircleFrame& f = poly.frames[a.disk_index];
    const double dc = distance(poly.surface, f.center, p);
    if (dc <= kEpsModel) {
      best = std::min(best, f.radius);
      continue;
    }
    const double theta = f.angle_of_direction(p);
    if (angle_in_window(theta, a.theta_start, a.theta_len))
      best = std::min(best, std::abs(dc - f.radius));
  }
  for (const Corner& c : poly.corners) best = std::min(best, distance(poly.surface, c.point, p));
  return best;
}

std::vector<BoundaryContact> boundary_contacts(const BallPolytope& poly, const Point& p,
                                               double slack) {
  std::vector<std::pair<double, Point>> cands;
  for (const BoundaryArc& a : poly.arcs) {
    const CircleFrame& f = poly.frames[a.disk_index];
    const double dc = distance(poly.surface, f.center, p);
    if (dc <= kEpsModel) {
      // the whole arc is equidistant from its center
      cands.emplace_back(f.radius, f.point_at(a.theta_start));
      cands.emplace_back(f.radius, f.point_at(a.theta_start + 0.5 * a.theta_len));
      cands.emplace_back(f.radius, f.point_at(a.theta_start + a.theta_len));
      continue;
    }
    const double theta = f.angle_of_direction(p);
    if (angle_in_window(theta, a.theta_start, a.theta_len))
      cands.emplace_back(std::abs(dc - f.radius), f.point_at(theta));
  }
  for (const Corner& c : poly.corners)
    cands.emplace_back(distance(poly.surface, c.point, p), c.point);

  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : cands) best = std::min(best, c.first);
  std::vector<BoundaryContact> out;
  for (const auto& c : cands) {
    if (c.first > best + slack) continue;
    bool dup = false;
    for (const BoundaryContact& o : out)
      if (same_point(o.point, c.second, kMergeTol)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(BoundaryContact{c.second, c.first});
  }
  return out;
}

bool maximal_ball_at(const BallPolytope& poly, const Point& p, double* radius_out) {
  if (!contains(poly.surface, poly.disks, p)) return false;
  const double rho = distance_to_boundary(poly, p);
  if (radius_out) *radius_out = rho;
  if (rho <= kEpsPred) return false;
  const std::vector<BoundaryContact> contacts = boundary_contacts(poly, p, kEpsPred);
  if (contacts.size() < 2) return false;
  // at least two contact directions separated by more than the angular
  // tolerance: the largest cyclic gap must leave room for a second direction
  std::vector<double> angles;
  const CircleFrame probe = circle_frame(poly.surface, p, 1.0);  // tangent frame at p
  angles.reserve(contacts.size());
  for (const BoundaryContact& c : contacts) angles.push_back(probe.angle_of_direction(c.point));
  std::sort(angles.begin(), angles.end());
  double max_gap = angles.front() + 2.0 * kPi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i)
    max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
  return max_gap < 2.0 * kPi - kEpsAngle;
}

}  // namespace kpc
