#include "kpc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kpc {

double curvature(Surface s) {
  switch (s) {
    case Surface::euclidean: return 0.0;
    case Surface::spherical: return 1.0;
    case Surface::hyperbolic: return -1.0;
  }
  return 0.0;
}

const char* surface_name(Surface s) {
  switch (s) {
    case Surface::euclidean: return "euclidean";
    case Surface::spherical: return "spherical";
    case Surface::hyperbolic: return "hyperbolic";
  }
  return "?";
}

Surface surface_from_name(const std::string& name) {
  if (name == "euclidean") return Surface::euclidean;
  if (name == "spherical") return Surface::spherical;
  if (name == "hyperbolic") return Surface::hyperbolic;
  throw Error(Err::unknown_surface, "unknown surface \"" + name + "\"");
}

const char* err_name(Err e) {
  switch (e) {
    case Err::invalid_point: return "InvalidPoint";
    case Err::invalid_radius: return "InvalidRadius";
    case Err::ambiguous_geodesic: return "AmbiguousGeodesic";
    case Err::degenerate_coincident: return "DegenerateCoincident";
    case Err::no_circumcenter: return "NoCircumcenter";
    case Err::degenerate_bisector: return "DegenerateBisector";
    case Err::tangent_circles: return "TangentCircles";
    case Err::coincident_circles: return "CoincidentCircles";
    case Err::corner_on_third_circle: return "CornerOnThirdCircle";
    case Err::zero_radius: return "ZeroRadius";
    case Err::unvalidated_input: return "UnvalidatedInput";
    case Err::non_spherical_surface: return "NonSphericalSurface";
    case Err::disconnected_union: return "DisconnectedUnion";
    case Err::degenerate_voronoi: return "DegenerateVoronoi";
    case Err::location_off_complex: return "LocationOffComplex";
    case Err::point_outside_union: return "PointOutsideUnion";
    case Err::empty_subcomplex: return "EmptySubcomplex";
    case Err::invalid_map: return "InvalidMap";
    case Err::mixed_surfaces: return "MixedSurfaces";
    case Err::point_outside_cells: return "PointOutsideCells";
    case Err::coverage_gap: return "CoverageGap";
    case Err::window_too_small: return "WindowTooSmall";
    case Err::not_a_contraction: return "NotAContraction";
    case Err::validation_failure: return "ValidationFailure";
    case Err::not_a_cover: return "NotACover";
    case Err::not_a_tree: return "NotATree";
    case Err::refinement_failure: return "RefinementFailure";
    case Err::syntax_error: return "SyntaxError";
    case Err::unknown_surface: return "UnknownSurface";
    case Err::invalid_disk: return "InvalidDisk";
    case Err::generation_failure: return "GenerationFailure";
    case Err::io_error: return "IoError";
    case Err::covers_whole_surface: return "CoversWholeSurface";
    case Err::internal_error: return "InternalError";
  }
  return "Error";
}

Point Point::embedded(Surface s, const Vec3& raw) {
  switch (s) {
    case Surface::euclidean: {
      if (!std::isfinite(raw[0]) || !std::isfinite(raw[1]))
        throw Error(Err::invalid_point, "non-finite planar coordinates");
      return Point{s, {raw[0], raw[1], 1.0}};
    }
    case Surface::spherical: {
      const double n = norm(raw);
      if (!(n > kEpsModel) || !std::isfinite(n))
        throw Error(Err::invalid_point, "cannot normalize onto the sphere");
      if (std::abs(n - 1.0) <= 1e-14) return Point{s, raw};  // keep exact round trips
      return Point{s, (1.0 / n) * raw};
    }
    case Surface::hyperbolic: {
      const double q = mdot(raw, raw);
      if (!(q < -kEpsModel) || raw[2] <= 0.0 || !std::isfinite(q))
        throw Error(Err::invalid_point, "not a future-timelike vector");
      if (std::abs(q + 1.0) <= 1e-14 * (1.0 + dot(raw, raw))) return Point{s, raw};
      return Point{s, (1.0 / std::sqrt(-q)) * raw};
    }
  }
  throw Error(Err::invalid_point, "bad surface");
}

bool same_point(const Point& a, const Point& b, double tol) {
  return std::abs(a.v[0] - b.v[0]) <= tol && std::abs(a.v[1] - b.v[1]) <= tol &&
         std::abs(a.v[2] - b.v[2]) <= tol;
}

bool lex_less(const Point& a, const Point& b) {
  if (a.v[0] != b.v[0]) return a.v[0] < b.v[0];
  if (a.v[1] != b.v[1]) return a.v[1] < b.v[1];
  return a.v[2] < b.v[2];
}

Disk make_disk(const Point& center, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw Error(Err::invalid_radius, "radius must be a finite non-negative real");
  if (center.surface == Surface::spherical && radius >= kPi)
    throw Error(Err::invalid_radius, "spherical radius must be < pi");
  return Disk{center, radius};
}

double max_distance(Surface s) {
  return s == Surface::spherical ? kPi : std::numeric_limits<double>::infinity();
}

double distance(Surface s, const Point& p, const Point& q) {
  if (p.surface != s || q.surface != s)
    throw Error(Err::invalid_point, "point not on the requested surface");
  switch (s) {
    case Surface::euclidean:
      return std::hypot(q.v[0] - p.v[0], q.v[1] - p.v[1]);
    case Surface::spherical:
      return std::atan2(norm(cross(p.v, q.v)), dot(p.v, q.v));
    case Surface::hyperbolic: {
      // 4 sinh^2(d/2) = <p-q, p-q>, well-conditioned near zero
      const Vec3 w = p.v - q.v;
      return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, mdot(w, w))));
    }
  }
  return 0.0;
}

Vec3 direction(Surface s, const Point& p, const Point& q) {
  switch (s) {
    case Surface::euclidean: {
      const Vec3 d{q.v[0] - p.v[0], q.v[1] - p.v[1], 0.0};
      const double n = norm(d);
      if (n <= kEpsModel) throw Error(Err::invalid_point, "direction of a zero segment");
      return (1.0 / n) * d;
    }
    case Surface::spherical: {
      const Vec3 w = q.v - dot(p.v, q.v) * p.v;  // project q onto the tangent plane at p
      const double n = norm(w);
      if (n <= kEpsModel) {
        if (dot(p.v, q.v) < 0.0)
          throw Error(Err::ambiguous_geodesic, "antipodal points have no unique geodesic");
        throw Error(Err::invalid_point, "direction of a zero segment");
      }
      return (1.0 / n) * w;
    }
    case Surface::hyperbolic: {
      const Vec3 w = q.v + mdot(p.v, q.v) * p.v;
      const double n2 = mdot(w, w);
      if (n2 <= kEpsModel * kEpsModel)
        throw Error(Err::invalid_point, "direction of a zero segment");
      return (1.0 / std::sqrt(n2)) * w;
    }
  }
  throw Error(Err::internal_error, "direction: bad surface");
}

Point geodesic_point(Surface s, const Point& p, const Vec3& t, double arc) {
  switch (s) {
    case Surface::euclidean:
      return Point{s, {p.v[0] + arc * t[0], p.v[1] + arc * t[1], 1.0}};
    case Surface::spherical:
      return Point::embedded(s, std::cos(arc) * p.v + std::sin(arc) * t);
    case Surface::hyperbolic:
      return Point::embedded(s, std::cosh(arc) * p.v + std::sinh(arc) * t);
  }
  throw Error(Err::internal_error, "geodesic_point: bad surface");
}

Point geodesic_eval(Surface s, const Point& p, const Point& q, double t) {
  const double d = distance(s, p, q);
  if (d <= kEpsModel) return p;
  if (s == Surface::spherical && kPi - d <= kEpsPred)
    throw Error(Err::ambiguous_geodesic, "antipodal endpoints");
  return geodesic_point(s, p, direction(s, p, q), t * d);
}

double disk_area(Surface s, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(Err::invalid_radius, "bad radius");
  switch (s) {
    case Surface::euclidean: return kPi * r * r;
    case Surface::spherical:
      if (r >= kPi) throw Error(Err::invalid_radius, "spherical radius must be < pi");
      return 2.0 * kPi * (1.0 - std::cos(r));
    case Surface::hyperbolic: return 2.0 * kPi * (std::cosh(r) - 1.0);
  }
  return 0.0;
}

double circle_circumference(Surface s, double r) {
  switch (s) {
    case Surface::euclidean: return 2.0 * kPi * r;
    case Surface::spherical: return 2.0 * kPi * std::sin(r);
    case Surface::hyperbolic: return 2.0 * kPi * std::sinh(r);
  }
  return 0.0;
}

double circle_geodesic_curvature(Surface s, double r) {
  switch (s) {
    case Surface::euclidean: return 1.0 / r;
    case Surface::spherical: return std::cos(r) / std::sin(r);
    case Surface::hyperbolic: return std::cosh(r) / std::sinh(r);
  }
  return 0.0;
}

double tangent_dot(Surface s, const Vec3& a, const Vec3& b) {
  return s == Surface::hyperbolic ? mdot(a, b) : dot(a, b);
}

Vec3 tangent_normalize(Surface s, const Vec3& a) {
  const double n2 = tangent_dot(s, a, a);
  if (n2 <= 0.0) throw Error(Err::internal_error, "degenerate tangent vector");
  return (1.0 / std::sqrt(n2)) * a;
}

Point GeodesicLine::eval(double arc) const { return geodesic_point(surface, base, tangent, arc); }

double GeodesicLine::coord(const Point& p) const {
  switch (surface) {
    case Surface::euclidean:
      return (p.v[0] - base.v[0]) * tangent[0] + (p.v[1] - base.v[1]) * tangent[1];
    case Surface::spherical:
      return std::atan2(dot(p.v, tangent), dot(p.v, base.v));
    case Surface::hyperbolic:
      return std::asinh(mdot(p.v, tangent));
  }
  return 0.0;
}

Vec3 GeodesicLine::normal() const {
  switch (surface) {
    case Surface::euclidean:
      return {-tangent[1], tangent[0], 0.0};
    case Surface::spherical:
      return cross(base.v, tangent);
    case Surface::hyperbolic:
      return mcross(base.v, tangent);
  }
  return {0, 0, 0};
}

double GeodesicLine::side(const Point& p) const {
  const Vec3 n = normal();
  switch (surface) {
    case Surface::euclidean:
      return (p.v[0] - base.v[0]) * n[0] + (p.v[1] - base.v[1]) * n[1];
    case Surface::spherical:
      return dot(p.v, n);
    case Surface::hyperbolic:
      return mdot(p.v, n);
  }
  return 0.0;
}

GeodesicLine line_through(Surface s, const Point& p, const Point& q) {
  return GeodesicLine{s, p, direction(s, p, q)};
}

GeodesicLine bisector(Surface s, const Point& a, const Point& b) {
  const double d = distance(s, a, b);
  if (d <= kEpsPred) throw Error(Err::degenerate_bisector, "coincident points");
  if (s == Surface::spherical && kPi - d <= kEpsPred)
    throw Error(Err::degenerate_bisector, "antipodal points");
  const Point mid = geodesic_eval(s, a, b, 0.5);
  const Vec3 along = direction(s, mid, b);
  Vec3 perp;
  switch (s) {
    case Surface::euclidean: perp = Vec3{-along[1], along[0], 0.0}; break;
    case Surface::spherical: perp = cross(mid.v, along); break;
    case Surface::hyperbolic: perp = tangent_normalize(s, mcross(mid.v, along)); break;
  }
  return GeodesicLine{s, mid, perp};
}

Point reflect(Surface s, const GeodesicLine& line, const Point& p) {
  const Vec3 n = line.normal();
  switch (s) {
    case Surface::euclidean: {
      const double sd = (p.v[0] - line.base.v[0]) * n[0] + (p.v[1] - line.base.v[1]) * n[1];
      return Point{s, {p.v[0] - 2.0 * sd * n[0], p.v[1] - 2.0 * sd * n[1], 1.0}};
    }
    case Surface::spherical:
      return Point::embedded(s, p.v - (2.0 * dot(p.v, n)) * n);
    case Surface::hyperbolic:
      return Point::embedded(s, p.v - (2.0 * mdot(p.v, n)) * n);
  }
  throw Error(Err::internal_error, "reflect: bad surface");
}

Point Isometry::apply(const Point& p) const {
  Vec3 r;
  for (int i = 0; i < 3; ++i)
    r[i] = m[i][0] * p.v[0] + m[i][1] * p.v[1] + m[i][2] * p.v[2];
  return Point::embedded(surface, r);
}

Vec3 Isometry::apply_linear(const Vec3& t) const {
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = m[i][0] * t[0] + m[i][1] * t[1] + m[i][2] * t[2];
  return r;
}

Isometry identity_isometry(Surface s) {
  Isometry iso;
  iso.surface = s;
  return iso;
}

Isometry reflection_isometry(Surface s, const GeodesicLine& line) {
  Isometry iso;
  iso.surface = s;
  const Vec3 n = line.normal();
  switch (s) {
    case Surface::euclidean: {
      const double c = n[0] * line.base.v[0] + n[1] * line.base.v[1];
      iso.m = {{{1 - 2 * n[0] * n[0], -2 * n[0] * n[1], 2 * c * n[0]},
                {-2 * n[0] * n[1], 1 - 2 * n[1] * n[1], 2 * c * n[1]},
                {0, 0, 1}}};
      break;
    }
    case Surface::spherical: {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          iso.m[i][j] = (i == j ? 1.0 : 0.0) - 2.0 * n[i] * n[j];
      break;
    }
    case Surface::hyperbolic: {
      const Vec3 jn{n[0], n[1], -n[2]};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          iso.m[i][j] = (i == j ? 1.0 : 0.0) - 2.0 * n[i] * jn[j];
      break;
    }
  }
  return iso;
}

Isometry compose(const Isometry& a, const Isometry& b) {
  if (a.surface != b.surface) throw Error(Err::mixed_surfaces, "isometry surfaces differ");
  Isometry r;
  r.surface = a.surface;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += a.m[i][k] * b.m[k][j];
      r.m[i][j] = acc;
    }
  return r;
}

bool isometry_close(const Isometry& a, const Isometry& b, double tol) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (std::abs(a.m[i][j] - b.m[i][j]) > tol) return false;
  return true;
}

namespace {

// Tangency classification shared by all three surfaces: compares the center
// distance against the external/internal tangency configurations.
bool near_tangent(Surface s, double d, double r1, double r2) {
  if (std::abs(d - (r1 + r2)) <= kEpsPred) return true;
  if (std::abs(d - std::abs(r1 - r2)) <= kEpsPred) return true;
  if (s == Surface::spherical && std::abs(d - (2.0 * kPi - r1 - r2)) <= kEpsPred) return true;
  return false;
}

}  // namespace

CircleIntersection circle_intersections(Surface s, const Disk& a, const Disk& b) {
  const double d = distance(s, a.center, b.center);
  if (d <= kEpsPred && std::abs(a.radius - b.radius) <= kEpsPred)
    throw Error(Err::degenerate_coincident, "identical circles");
  if (s == Surface::spherical && kPi - d <= kEpsPred &&
      std::abs(a.radius + b.radius - kPi) <= kEpsPred)
    throw Error(Err::degenerate_coincident, "identical circles (antipodal centers)");

  CircleIntersection out;
  const bool tangent = near_tangent(s, d, a.radius, b.radius);
  if (d <= kEpsPred || (s == Surface::spherical && kPi - d <= kEpsPred)) {
    // concentric (or antipodally concentric): no transversal intersection
    return out;
  }

  switch (s) {
    case Surface::euclidean: {
      const double r1 = a.radius, r2 = b.radius;
      const Vec3 axis = b.center.v - a.center.v;
      const double along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
      if (tangent) {
        out.tangent = true;
        out.points.push_back(Point{s, a.center.v + (along / d) * axis});
        out.points.back().v[2] = 1.0;
        return out;
      }
      const double h2 = r1 * r1 - along * along;
      if (h2 <= 0.0) return out;
      const double h = std::sqrt(h2);
      const Vec3 perp{-axis[1] / d, axis[0] / d, 0.0};
      Vec3 foot = a.center.v + (along / d) * axis;
      foot[2] = 1.0;
      out.points.push_back(Point{s, foot + h * perp});
      out.points.push_back(Point{s, foot - h * perp});
      return out;
    }
    case Surface::spherical: {
      const double g = dot(a.center.v, b.center.v);
      const double det = 1.0 - g * g;
      const double alpha = (std::cos(a.radius) - g * std::cos(b.radius)) / det;
      const double beta = (std::cos(b.radius) - g * std::cos(a.radius)) / det;
      const Vec3 w = alpha * a.center.v + beta * b.center.v;
      const Vec3 n = cross(a.center.v, b.center.v);
      if (tangent) {
        out.tangent = true;
        out.points.push_back(Point::embedded(s, w));
        return out;
      }
      const double s2 = (1.0 - dot(w, w)) / dot(n, n);
      if (s2 <= 0.0) return out;
      const double sc = std::sqrt(s2);
      out.points.push_back(Point::embedded(s, w + sc * n));
      out.points.push_back(Point::embedded(s, w - sc * n));
      return out;
    }
    case Surface::hyperbolic: {
      const double g = mdot(a.center.v, b.center.v);  // = -cosh d
      const double det = 1.0 - g * g;
      // solve [-1 g; g -1] [alpha; beta] = [-cosh r1; -cosh r2]
      const double c1 = std::cosh(a.radius), c2 = std::cosh(b.radius);
      const double alpha = (c1 + g * c2) / det;
      const double beta = (c2 + g * c1) / det;
      const Vec3 w = alpha * a.center.v + beta * b.center.v;
      const Vec3 n = mcross(a.center.v, b.center.v);
      if (tangent) {
        out.tangent = true;
        out.points.push_back(Point::embedded(s, w));
        return out;
      }
      const double s2 = (-1.0 - mdot(w, w)) / mdot(n, n);
      if (s2 <= 0.0) return out;
      const double sc = std::sqrt(s2);
      out.points.push_back(Point::embedded(s, w + sc * n));
      out.points.push_back(Point::embedded(s, w - sc * n));
      return out;
    }
  }
  throw Error(Err::internal_error, "circle_intersections: bad surface");
}

std::vector<Point> equidistant_point(Surface s, const Point& a, const Point& b, const Point& c) {
  if (same_point(a, b) || same_point(b, c) || same_point(a, c))
    throw Error(Err::no_circumcenter, "points not pairwise distinct");
  switch (s) {
    case Surface::euclidean: {
      const double ax = a.v[0], ay = a.v[1], bx = b.v[0], by = b.v[1], cx = c.v[0], cy = c.v[1];
      const double d0x = bx - ax, d0y = by - ay, d1x = cx - ax, d1y = cy - ay;
      const double den = 2.0 * (d0x * d1y - d0y * d1x);
      const double scale = std::hypot(d0x, d0y) * std::hypot(d1x, d1y);
      if (std::abs(den) <= 1e-12 * scale)
        throw Error(Err::no_circumcenter, "collinear points");
      const double q0 = d0x * d0x + d0y * d0y, q1 = d1x * d1x + d1y * d1y;
      const double ux = (d1y * q0 - d0y * q1) / den;
      const double uy = (d0x * q1 - d1x * q0) / den;
      return {Point::planar(ax + ux, ay + uy)};
    }
    case Surface::spherical: {
      const Vec3 w = cross(a.v - b.v, b.v - c.v);
      const double n = norm(w);
      if (n <= 1e-12) throw Error(Err::no_circumcenter, "degenerate spherical triple");
      const Vec3 u = (1.0 / n) * w;
      return {Point::embedded(s, u), Point::embedded(s, -1.0 * u)};
    }
    case Surface::hyperbolic: {
      const Vec3 w = mcross(a.v - b.v, b.v - c.v);
      const double q = mdot(w, w);
      if (!(q < -1e-14))
        throw Error(Err::no_circumcenter, "triple has no hyperbolic circumcenter");
      Vec3 u = (1.0 / std::sqrt(-q)) * w;
      if (u[2] < 0.0) u = -1.0 * u;
      return {Point::embedded(s, u)};
    }
  }
  throw Error(Err::internal_error, "equidistant_point: bad surface");
}

CircleFrame circle_frame(Surface s, const Point& center, double radius) {
  CircleFrame f;
  f.surface = s;
  f.center = center;
  f.radius = radius;
  switch (s) {
    case Surface::euclidean:
      f.e1 = {1, 0, 0};
      f.e2 = {0, 1, 0};
      break;
    case Surface::spherical: {
      const Vec3 c = center.v;
      const Vec3 ref = std::abs(c[2]) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
      const Vec3 w = cross(ref, c);
      f.e1 = (1.0 / norm(w)) * w;
      f.e2 = cross(c, f.e1);
      break;
    }
    case Surface::hyperbolic: {
      const Vec3 c = center.v;
      Vec3 ref{1, 0, 0};
      Vec3 w = mcross(c, ref);
      if (mdot(w, w) <= 1e-12) {
        ref = Vec3{0, 1, 0};
        w = mcross(c, ref);
      }
      f.e1 = tangent_normalize(s, w);
      Vec3 w2 = mcross(c, f.e1);
      w2 = tangent_normalize(s, w2);
      // fix orientation so that det[e1, e2, c] > 0
      if (dot(cross(f.e1, w2), c) < 0.0) w2 = -1.0 * w2;
      f.e2 = w2;
      break;
    }
  }
  return f;
}

Point CircleFrame::point_at(double theta) const {
  const Vec3 u = std::cos(theta) * e1 + std::sin(theta) * e2;
  switch (surface) {
    case Surface::euclidean:
      return Point{surface, {center.v[0] + radius * u[0], center.v[1] + radius * u[1], 1.0}};
    case Surface::spherical:
      return Point::embedded(surface, std::cos(radius) * center.v + std::sin(radius) * u);
    case Surface::hyperbolic:
      return Point::embedded(surface, std::cosh(radius) * center.v + std::sinh(radius) * u);
  }
  throw Error(Err::internal_error, "point_at: bad surface");
}

Vec3 CircleFrame::unit_tangent_at(double theta) const {
  return -std::sin(theta) * e1 + std::cos(theta) * e2;
}

double CircleFrame::angle_of(const Point& p) const {
  switch (surface) {
    case Surface::euclidean: {
      const Vec3 d = p.v - center.v;
      return std::atan2(dot(d, e2), dot(d, e1));
    }
    case Surface::spherical:
      return std::atan2(dot(p.v, e2), dot(p.v, e1));
    case Surface::hyperbolic:
      return std::atan2(mdot(p.v, e2), mdot(p.v, e1));
  }
  return 0.0;
}

double CircleFrame::angle_of_direction(const Point& q) const {
  // unnormalized tangent projection; the scale cancels in atan2
  Vec3 t;
  switch (surface) {
    case Surface::euclidean: t = Vec3{q.v[0] - center.v[0], q.v[1] - center.v[1], 0.0}; break;
    case Surface::spherical: t = q.v - dot(center.v, q.v) * center.v; break;
    case Surface::hyperbolic: t = q.v + mdot(center.v, q.v) * center.v; break;
  }
  return std::atan2(tangent_dot(surface, t, e2), tangent_dot(surface, t, e1));
}

double CircleFrame::speed() const {
  switch (surface) {
    case Surface::euclidean: return radius;
    case Surface::spherical: return std::sin(radius);
    case Surface::hyperbolic: return std::sinh(radius);
  }
  return 0.0;
}

double signed_angle(Surface s, const Point& at, const Vec3& t1, const Vec3& t2) {
  const Vec3 e1 = tangent_normalize(s, t1);
  Vec3 e2;
  switch (s) {
    case Surface::euclidean: e2 = Vec3{-e1[1], e1[0], 0.0}; break;
    case Surface::spherical: e2 = cross(at.v, e1); break;
    case Surface::hyperbolic: {
      e2 = tangent_normalize(s, mcross(at.v, e1));
      if (dot(cross(e1, e2), at.v) < 0.0) e2 = -1.0 * e2;
      break;
    }
  }
  return std::atan2(tangent_dot(s, t2, e2), tangent_dot(s, t2, e1));
}

}  // namespace kpc
