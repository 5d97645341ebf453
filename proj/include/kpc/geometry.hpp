#pragma once
// Geometric primitives on the three constant-curvature surfaces. Points live
// in one embedded 3-vector model per surface (plane z=1, unit sphere,
// hyperboloid sheet), so bisectors, reflections and circle intersections share
// a single (pseudo-)orthogonal linear-algebra code path.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "kpc/errors.hpp"

namespace kpc {

inline constexpr double kEpsModel = 1e-12;  // model constraints in constructors
inline constexpr double kEpsPred = 1e-9;    // incidence predicates
inline constexpr double kEpsArea = 1e-6;    // area comparisons
inline constexpr double kEpsAngle = 1e-7;   // angular separation of directions
inline constexpr double kPi = 3.14159265358979323846264338327950288;

enum class Surface { euclidean, spherical, hyperbolic };

double curvature(Surface s);
const char* surface_name(Surface s);
Surface surface_from_name(const std::string& name);

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Minkowski form of signature (+,+,-) and its cross product (orthogonal to
// both arguments with respect to the form).
inline double mdot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] - a[2] * b[2]; }
inline Vec3 mcross(const Vec3& a, const Vec3& b) {
  const Vec3 c = cross(a, b);
  return {c[0], c[1], -c[2]};
}

struct Point {
  Surface surface{Surface::euclidean};
  Vec3 v{0.0, 0.0, 1.0};

  double x() const { return v[0]; }
  double y() const { return v[1]; }
  double z() const { return v[2]; }

  static Point planar(double x, double y) { return Point{Surface::euclidean, {x, y, 1.0}}; }
  // Renormalizes onto the model; throws InvalidPoint when that is impossible.
  static Point embedded(Surface s, const Vec3& raw);
};

bool same_point(const Point& a, const Point& b, double tol = kEpsPred);
bool lex_less(const Point& a, const Point& b);

struct Disk {
  Point center;
  double radius{0.0};
};

Disk make_disk(const Point& center, double radius);

double max_distance(Surface s);  // pi on the sphere, inf otherwise
double distance(Surface s, const Point& p, const Point& q);

// Unit tangent at p toward q; requires p != q and, on the sphere, q not
// antipodal to p.
Vec3 direction(Surface s, const Point& p, const Point& q);
Point geodesic_point(Surface s, const Point& p, const Vec3& unit_tangent, double arc);
Point geodesic_eval(Surface s, const Point& p, const Point& q, double t);

double disk_area(Surface s, double r);
double circle_circumference(Surface s, double r);
double circle_geodesic_curvature(Surface s, double r);

// Oriented geodesic through `base` with unit tangent `tangent`.
struct GeodesicLine {
  Surface surface{Surface::euclidean};
  Point base;
  Vec3 tangent{1.0, 0.0, 0.0};

  Point eval(double arc) const;
  double coord(const Point& on_line) const;  // arclength coordinate; (-pi,pi] on the sphere
  Vec3 normal() const;                       // unit normal functional of the line
  double side(const Point& p) const;         // signed incidence value, 0 on the line
};

GeodesicLine line_through(Surface s, const Point& p, const Point& q);
GeodesicLine bisector(Surface s, const Point& a, const Point& b);
Point reflect(Surface s, const GeodesicLine& line, const Point& p);

struct Isometry {
  Surface surface{Surface::euclidean};
  std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  Point apply(const Point& p) const;
  Vec3 apply_linear(const Vec3& t) const;
};

Isometry identity_isometry(Surface s);
Isometry reflection_isometry(Surface s, const GeodesicLine& line);
Isometry compose(const Isometry& a, const Isometry& b);  // a after b
bool isometry_close(const Isometry& a, const Isometry& b, double tol = kEpsPred);

struct CircleIntersection {
  std::vector<Point> points;  // 0..2
  bool tangent{false};
};

CircleIntersection circle_intersections(Surface s, const Disk& a, const Disk& b);

// Points equidistant from a, b and c: one on the plane and the hyperboloid
// (throws NoCircumcenter when none exists), the two poles on the sphere.
std::vector<Point> equidistant_point(Surface s, const Point& a, const Point& b, const Point& c);

// Circle of intrinsic radius r around `center`, parametrized
// counterclockwise (disk interior on the left of the travel direction).
struct CircleFrame {
  Surface surface{Surface::euclidean};
  Point center;
  double radius{1.0};
  Vec3 e1{1, 0, 0}, e2{0, 1, 0};

  Point point_at(double theta) const;
  Vec3 unit_tangent_at(double theta) const;
  double angle_of(const Point& on_circle) const;
  double angle_of_direction(const Point& q) const;  // angle of the ray center->q
  double speed() const;                             // |d point / d theta|
};

CircleFrame circle_frame(Surface s, const Point& center, double radius);

// Signed angle from tangent t1 to tangent t2 in the oriented tangent plane.
double signed_angle(Surface s, const Point& at, const Vec3& t1, const Vec3& t2);

// Inner product of tangent vectors at a common point.
double tangent_dot(Surface s, const Vec3& a, const Vec3& b);
Vec3 tangent_normalize(Surface s, const Vec3& a);

}  // namespace kpc
