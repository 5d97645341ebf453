#include "kpc/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "kpc/rng.hpp"

namespace kpc {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * kPi;

Point point_from_coords(Surface s, const std::vector<double>& c, const std::string& path) {
  if (s == Surface::euclidean) {
    if (c.size() != 2) throw Error(Err::invalid_disk, path + ": expected 2 coordinates");
    return Point::planar(c[0], c[1]);
  }
  if (c.size() != 3) throw Error(Err::invalid_disk, path + ": expected 3 coordinates");
  try {
    return Point::embedded(s, Vec3{c[0], c[1], c[2]});
  } catch (const Error& e) {
    throw Error(Err::invalid_disk, path + ": " + e.what());
  }
}

std::vector<double> coords_of(const Point& p) {
  if (p.surface == Surface::euclidean) return {p.x(), p.y()};
  return {p.x(), p.y(), p.z()};
}

std::vector<double> number_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw Error(Err::syntax_error, path + ": expected an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw Error(Err::syntax_error, path + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

void append_point(std::string& out, const Point& p) {
  out += '[';
  const std::vector<double> c = coords_of(p);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += format_number(c[i]);
  }
  out += ']';
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Scene parse_scene(const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(Err::syntax_error, e.what());
  }
  if (!j.is_object()) throw Error(Err::syntax_error, "/: expected an object");
  Scene scene;
  if (!j.contains("surface") || !j["surface"].is_string())
    throw Error(Err::syntax_error, "/surface: missing or not a string");
  scene.surface = surface_from_name(j["surface"].get<std::string>());
  if (j.contains("label")) scene.label = j["label"].get<std::string>();
  if (j.contains("seed")) scene.seed = j["seed"].get<std::uint64_t>();
  if (!j.contains("disks") || !j["disks"].is_array() || j["disks"].empty())
    throw Error(Err::syntax_error, "/disks: missing or empty");
  int idx = 0;
  for (const auto& dj : j["disks"]) {
    const std::string path = "/disks/" + std::to_string(idx++);
    if (!dj.is_object() || !dj.contains("center") || !dj.contains("radius"))
      throw Error(Err::invalid_disk, path + ": needs center and radius");
    const Point c = point_from_coords(scene.surface, number_array(dj["center"], path + "/center"),
                                      path + "/center");
    const double r = dj["radius"].get<double>();
    if (!(r > 0.0)) throw Error(Err::invalid_disk, path + "/radius: must be positive");
    if (scene.surface == Surface::spherical && r >= kPi)
      throw Error(Err::invalid_disk, path + "/radius: must be < pi");
    scene.disks.push_back(Disk{c, r});
  }
  if (j.contains("contraction")) {
    const json& cj = j["contraction"];
    const std::string type = cj.value("type", "");
    if (type == "folds") {
      scene.contraction_kind = ContractionKind::folds;
      int li = 0;
      for (const auto& lj : cj["lines"]) {
        const std::string path = "/contraction/lines/" + std::to_string(li++);
        if (!lj.is_array() || lj.size() != 2)
          throw Error(Err::syntax_error, path + ": expected a pair of points");
        scene.fold_lines.emplace_back(
            point_from_coords(scene.surface, number_array(lj[0], path + "/0"), path + "/0"),
            point_from_coords(scene.surface, number_array(lj[1], path + "/1"), path + "/1"));
      }
    } else if (type == "pointmap") {
      scene.contraction_kind = ContractionKind::pointmap;
      scene.pointmap.surface = scene.surface;
      int pi = 0;
      for (const auto& pj : cj["pairs"]) {
        const std::string path = "/contraction/pairs/" + std::to_string(pi++);
        if (!pj.is_array() || pj.size() != 2)
          throw Error(Err::syntax_error, path + ": expected a pair of points");
        scene.pointmap.pairs.emplace_back(
            point_from_coords(scene.surface, number_array(pj[0], path + "/0"), path + "/0"),
            point_from_coords(scene.surface, number_array(pj[1], path + "/1"), path + "/1"));
      }
    } else {
      throw Error(Err::syntax_error, "/contraction/type: expected folds or pointmap");
    }
  }
  if (j.contains("selections")) {
    for (const auto& [name, sj] : j["selections"].items()) {
      SceneSelection sel;
      if (sj.contains("vertices"))
        for (const auto& v : sj["vertices"]) sel.vertices.push_back(v.get<int>());
      if (sj.contains("edges"))
        for (const auto& e : sj["edges"]) sel.edges.push_back(e.get<int>());
      scene.selections[name] = sel;
    }
  }
  return scene;
}

std::string serialize_scene(const Scene& scene) {
  std::string out = "{\"version\":1";
  out += ",\"label\":\"" + scene.label + "\"";
  out += ",\"seed\":" + std::to_string(scene.seed);
  out += ",\"surface\":\"" + std::string(surface_name(scene.surface)) + "\"";
  out += ",\"disks\":[";
  for (std::size_t i = 0; i < scene.disks.size(); ++i) {
    if (i) out += ',';
    out += "{\"center\":";
    append_point(out, scene.disks[i].center);
    out += ",\"radius\":" + format_number(scene.disks[i].radius) + "}";
  }
  out += ']';
  if (scene.contraction_kind == ContractionKind::folds) {
    out += ",\"contraction\":{\"type\":\"folds\",\"lines\":[";
    for (std::size_t i = 0; i < scene.fold_lines.size(); ++i) {
      if (i) out += ',';
      out += '[';
      append_point(out, scene.fold_lines[i].first);
      out += ',';
      append_point(out, scene.fold_lines[i].second);
      out += ']';
    }
    out += "]}";
  } else if (scene.contraction_kind == ContractionKind::pointmap) {
    out += ",\"contraction\":{\"type\":\"pointmap\",\"pairs\":[";
    for (std::size_t i = 0; i < scene.pointmap.pairs.size(); ++i) {
      if (i) out += ',';
      out += '[';
      append_point(out, scene.pointmap.pairs[i].first);
      out += ',';
      append_point(out, scene.pointmap.pairs[i].second);
      out += ']';
    }
    out += "]}";
  }
  if (!scene.selections.empty()) {
    out += ",\"selections\":{";
    bool first = true;
    for (const auto& [name, sel] : scene.selections) {
      if (!first) out += ',';
      first = false;
      out += "\"" + name + "\":{\"vertices\":[";
      for (std::size_t i = 0; i < sel.vertices.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(sel.vertices[i]);
      }
      out += "],\"edges\":[";
      for (std::size_t i = 0; i < sel.edges.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(sel.edges[i]);
      }
      out += "]}";
    }
    out += '}';
  }
  out += '}';
  return out;
}

BallConfiguration scene_config(const Scene& scene) {
  return make_config(scene.surface, scene.disks);
}

PiecewiseIsometry scene_folds(const Scene& scene) {
  if (scene.contraction_kind != ContractionKind::folds)
    throw Error(Err::invalid_map, "scene has no fold contraction");
  PiecewiseIsometry f = identity_contraction(scene.surface);
  // fold specs compose right to left: the last line acts first
  for (auto it = scene.fold_lines.rbegin(); it != scene.fold_lines.rend(); ++it)
    f.stages.push_back(line_through(scene.surface, it->first, it->second));
  return f;
}

Scene jitter_scene(const Scene& scene, std::uint64_t seed) {
  Scene out = scene;
  Rng rng(derive_seed(seed, "jitter", 0));
  for (Disk& d : out.disks) d.radius += 1e-7 * (2.0 * rng.uniform() - 1.0);
  return out;
}

namespace {

Point surface_origin(Surface s) {
  switch (s) {
    case Surface::euclidean: return Point::planar(0.0, 0.0);
    case Surface::spherical: return Point::embedded(s, Vec3{0, 0, 1});
    case Surface::hyperbolic: return Point::embedded(s, Vec3{0, 0, 1});
  }
  throw Error(Err::internal_error, "surface_origin");
}

Point point_at_polar(Surface s, const Point& from, double theta, double dist) {
  const CircleFrame f = circle_frame(s, from, 1.0);
  const Vec3 dir = std::cos(theta) * f.e1 + std::sin(theta) * f.e2;
  return geodesic_point(s, from, dir, dist);
}

// Generic-position margins: far from tangency and containment, corners well
// separated and off third circles, every disk keeps a visible arc.
bool generic_margins(Surface s, const std::vector<Disk>& disks) {
  constexpr double m_tan = 0.08;
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      const double d = distance(s, disks[i].center, disks[j].center);
      const double ri = disks[i].radius, rj = disks[j].radius;
      if (d < m_tan) return false;
      if (std::abs(d - (ri + rj)) < m_tan) return false;
      if (std::abs(d - std::abs(ri - rj)) < m_tan) return false;
      if (s == Surface::spherical && std::abs(d - (kTwoPi - ri - rj)) < m_tan) return false;
    }
  return true;
}

bool generic_polytope(const BallPolytope& poly) {
  constexpr double corner_sep = 0.25;
  constexpr double third_circle = 0.07;
  constexpr double min_arc = 0.5;
  for (std::size_t i = 0; i < poly.corners.size(); ++i)
    for (std::size_t j = i + 1; j < poly.corners.size(); ++j)
      if (distance(poly.surface, poly.corners[i].point, poly.corners[j].point) < corner_sep)
        return false;
  for (const Corner& c : poly.corners)
    for (int k = 0; k < static_cast<int>(poly.disks.size()); ++k) {
      if (k == c.circle_a || k == c.circle_b) continue;
      if (std::abs(distance(poly.surface, poly.disks[k].center, c.point) -
                   poly.disks[k].radius) < third_circle)
        return false;
    }
  std::vector<double> widest(poly.disks.size(), 0.0);
  for (const BoundaryArc& a : poly.arcs)
    widest[a.disk_index] = std::max(widest[a.disk_index], a.theta_len);
  for (const double w : widest)
    if (w < min_arc) return false;
  return !poly.covers_sphere && poly.dropped_redundant.empty();
}

std::pair<double, double> radius_range(Surface s) {
  switch (s) {
    case Surface::euclidean: return {0.65, 1.25};
    case Surface::spherical: return {0.45, 0.95};
    case Surface::hyperbolic: return {0.5, 1.1};
  }
  return {0.65, 1.25};
}

bool try_ring_scene(Surface s, int k, Rng& rng, std::vector<Disk>& out) {
  const Point origin = surface_origin(s);
  const double ring_r = rng.uniform(1.1, 1.5);
  const double slot = kTwoPi / k;
  std::vector<Disk> disks;
  for (int i = 0; i < k; ++i) {
    const double theta = slot * i + rng.uniform(-0.12, 0.12);
    const double chord = 2.0 * ring_r * std::sin(0.5 * slot);
    const double r = std::min(rng.uniform(0.62, 0.85) * chord, ring_r - 0.3);
    if (r < 0.2) return false;
    disks.push_back(Disk{point_at_polar(s, origin, theta, ring_r), r});
  }
  out = std::move(disks);
  return true;
}

}  // namespace

Scene random_scene(Surface s, int k, std::uint64_t seed, SceneWant want) {
  if (k < 1 || k > 10) throw Error(Err::generation_failure, "disk count out of range");
  Rng rng(derive_seed(seed, "random_scene", 0));
  const auto [rmin, rmax] = radius_range(s);
  constexpr int kMaxAttempts = 10000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Disk> disks;
    if (want == SceneWant::one_hole) {
      if (k < 4) throw Error(Err::generation_failure, "one-hole scenes need at least 4 disks");
      if (!try_ring_scene(s, k, rng, disks)) continue;
    } else {
      disks.push_back(Disk{surface_origin(s), rng.uniform(rmin, rmax)});
      bool placed = true;
      for (int i = 1; i < k; ++i) {
        const Disk& anchor = disks[rng.uniform_int(disks.size())];
        const double r = rng.uniform(rmin, rmax);
        const double lo = std::max(std::abs(r - anchor.radius) + 0.22, 0.25);
        const double hi = r + anchor.radius - 0.22;
        if (hi <= lo) {
          placed = false;
          break;
        }
        const Point c =
            point_at_polar(s, anchor.center, rng.uniform(0.0, kTwoPi), rng.uniform(lo, hi));
        if (s != Surface::spherical && distance(s, surface_origin(s), c) > 3.0) {
          placed = false;
          break;
        }
        disks.push_back(Disk{c, r});
      }
      if (!placed) continue;
    }
    if (!generic_margins(s, disks)) continue;
    BallPolytope poly;
    try {
      poly = validate(make_config(s, disks));
    } catch (const Error&) {
      continue;
    }
    if (!generic_polytope(poly)) continue;
    const TopologyReport topo = topology(poly);
    if (want == SceneWant::simply_connected && !topo.simply_connected) continue;
    if (want == SceneWant::one_hole &&
        !(topo.component_count == 1 && topo.hole_count == 1)) continue;
    if (topo.component_count != 1) continue;
    // the central set itself must be generic: well separated vertices keep
    // downstream arrangements of maximal balls away from degeneracies
    try {
      const CentralComplex cc = central_set(poly);
      bool separated = true;
      for (std::size_t a = 0; a < cc.vertices.size() && separated; ++a)
        for (std::size_t b = a + 1; b < cc.vertices.size(); ++b)
          if (distance(s, cc.vertices[a].point, cc.vertices[b].point) < 0.05) {
            separated = false;
            break;
          }
      if (!separated) continue;
    } catch (const Error&) {
      continue;
    }
    Scene scene;
    scene.surface = s;
    scene.disks = std::move(disks);
    scene.seed = seed;
    scene.label = "random-" + std::string(surface_name(s)) + "-" + std::to_string(seed);
    return scene;
  }
  throw Error(Err::generation_failure, "no valid scene found");
}

PiecewiseIsometry random_folds(const Scene& scene, int count, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "random_folds", 1));
  const Surface s = scene.surface;
  PiecewiseIsometry f = identity_contraction(s);
  const Point origin = scene.disks.empty() ? surface_origin(s) : scene.disks.front().center;
  for (int i = 0; i < count; ++i) {
    const Point p = point_at_polar(s, origin, rng.uniform(0.0, kTwoPi), rng.uniform(0.2, 2.2));
    const Point q = point_at_polar(s, p, rng.uniform(0.0, kTwoPi), 1.0);
    f.stages.push_back(line_through(s, p, q));
  }
  return f;
}

namespace {

// planar drawing coordinates: identity, orthographic, or Klein projection
bool project(const Point& p, double* x, double* y) {
  switch (p.surface) {
    case Surface::euclidean:
      *x = p.x();
      *y = p.y();
      return true;
    case Surface::spherical:
      *x = p.x();
      *y = p.y();
      return p.z() >= 0.0;
    case Surface::hyperbolic:
      *x = p.x() / p.z();
      *y = p.y() / p.z();
      return true;
  }
  return false;
}

}  // namespace

std::string svg_export(const Scene& scene, const CentralComplex* cc) {
  const Surface s = scene.surface;
  double minx = 1e30, maxx = -1e30, miny = 1e30, maxy = -1e30;
  auto grow = [&](double x, double y) {
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  };
  std::vector<std::vector<std::pair<double, double>>> disk_paths;
  for (const Disk& d : scene.disks) {
    const CircleFrame f = circle_frame(s, d.center, d.radius);
    std::vector<std::pair<double, double>> path;
    constexpr int kSamples = 96;
    for (int i = 0; i <= kSamples; ++i) {
      double x, y;
      if (project(f.point_at(kTwoPi * i / kSamples), &x, &y)) {
        path.emplace_back(x, y);
        grow(x, y);
      }
    }
    disk_paths.push_back(std::move(path));
  }
  if (minx > maxx) {
    minx = miny = -1.0;
    maxx = maxy = 1.0;
  }
  const double pad = 0.1 * std::max(maxx - minx, maxy - miny) + 0.05;
  minx -= pad;
  maxx += pad;
  miny -= pad;
  maxy += pad;
  const double scale = 480.0 / std::max(maxx - minx, maxy - miny);
  auto px = [&](double x) { return (x - minx) * scale; };
  auto py = [&](double y) { return (maxy - y) * scale; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << format_number((maxx - minx) * scale) << "\" height=\"" << format_number((maxy - miny) * scale)
      << "\">\n";
  if (s == Surface::hyperbolic) {
    svg << "<circle cx=\"" << format_number(px(0)) << "\" cy=\"" << format_number(py(0))
        << "\" r=\"" << format_number(scale) << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
  }
  for (std::size_t i = 0; i < disk_paths.size(); ++i) {
    const auto& path = disk_paths[i];
    if (s == Surface::euclidean) {
      svg << "<circle class=\"disk\" cx=\"" << format_number(px(scene.disks[i].center.x()))
          << "\" cy=\"" << format_number(py(scene.disks[i].center.y())) << "\" r=\""
          << format_number(scene.disks[i].radius * scale)
          << "\" fill=\"#9ecae1\" fill-opacity=\"0.45\" stroke=\"#3182bd\"/>\n";
    } else if (!path.empty()) {
      svg << "<path class=\"disk\" d=\"M";
      for (std::size_t m = 0; m < path.size(); ++m) {
        if (m) svg << " L";
        svg << format_number(px(path[m].first)) << " " << format_number(py(path[m].second));
      }
      svg << "\" fill=\"#9ecae1\" fill-opacity=\"0.45\" stroke=\"#3182bd\"/>\n";
    }
  }
  if (cc) {
    for (int e = 0; e < static_cast<int>(cc->edges.size()); ++e) {
      svg << "<polyline class=\"edge\" points=\"";
      constexpr int kSamples = 32;
      for (int i = 0; i <= kSamples; ++i) {
        double x, y;
        if (!project(cc->edge_point(e, static_cast<double>(i) / kSamples), &x, &y)) continue;
        svg << format_number(px(x)) << "," << format_number(py(y)) << " ";
      }
      svg << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    }
    for (const CsVertex& v : cc->vertices) {
      double x, y;
      if (!project(v.point, &x, &y)) continue;
      svg << "<circle class=\"vertex\" cx=\"" << format_number(px(x)) << "\" cy=\""
          << format_number(py(y)) << "\" r=\"3\" fill=\"#d62728\"/>\n";
    }
    for (const Corner& c : cc->polytope.corners) {
      double x, y;
      if (!project(c.point, &x, &y)) continue;
      svg << "<circle class=\"corner\" cx=\"" << format_number(px(x)) << "\" cy=\""
          << format_number(py(y)) << "\" r=\"2.5\" fill=\"#2ca02c\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace kpc
