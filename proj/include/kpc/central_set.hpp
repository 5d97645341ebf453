#pragma once
// The central set of a validated disk union as a finite geodesic graph:
// vertices carry maximal-ball radii, edges are straight geodesic segments on
// corner-pair bisectors. Also sub-unions, relative central sets and the
// recompute-and-compare check for sub-unions.

#include <string>
#include <vector>

#include "kpc/ball_union.hpp"
#include "kpc/geometry.hpp"

namespace kpc {

enum class VertexKind { disk_center, voronoi_vertex, subdivision };

struct CsVertex {
  Point point;
  double radius{0.0};
  VertexKind kind{VertexKind::voronoi_vertex};
};

struct CsEdge {
  int v0{-1}, v1{-1};
  Point corner_a, corner_b;  // the two boundary points every maximal ball on the edge touches
  GeodesicLine line;         // the bisector carrying the edge
  double t0{0.0}, t1{0.0};   // arclength coordinates of v0 and v1 on the line
};

struct CentralComplex {
  Surface surface{Surface::euclidean};
  BallPolytope polytope;
  std::vector<CsVertex> vertices;
  std::vector<CsEdge> edges;

  Point edge_point(int e, double u) const;  // u in [0,1] from v0 to v1
  double edge_length(int e) const;
  int degree(int v) const;
};

CentralComplex central_set(const BallPolytope& poly);

double radius_at_vertex(const CentralComplex& cc, int v);
double radius_at_edge(const CentralComplex& cc, int e, double u);

// Splits edge e at parameter u; the first piece replaces edge e, the second
// piece and the new vertex are appended.
CentralComplex subdivide(const CentralComplex& cc, int e, double u);

// One disk per vertex; their union reproduces the whole union.
BallConfiguration reconstruct(const CentralComplex& cc);

struct Subcomplex {
  std::vector<char> vsel, esel;
};

Subcomplex subcomplex_empty(const CentralComplex& cc);
Subcomplex subcomplex_all(const CentralComplex& cc);
Subcomplex close_subcomplex(const CentralComplex& cc, Subcomplex sub);
bool subcomplex_closed(const CentralComplex& cc, const Subcomplex& sub);
bool subcomplex_nonempty(const Subcomplex& sub);
Subcomplex complement_closure(const CentralComplex& cc, const Subcomplex& sub);
Subcomplex subcomplex_intersect(const Subcomplex& a, const Subcomplex& b);
bool subcomplex_cover(const CentralComplex& cc, const Subcomplex& a, const Subcomplex& b);

// Union of the maximal balls centered on the subcomplex, as a finite
// configuration: one ball per essential vertex (interior vertices of a
// straight pencil run contribute nothing and are omitted).
BallConfiguration sub_union(const CentralComplex& cc, const Subcomplex& sub);

struct EdgeClip {
  int edge{-1};
  double u0{0.0}, u1{0.0};
};

struct RelativeCentralSet {
  std::vector<int> vertices;
  std::vector<EdgeClip> clips;
  bool nonempty{false};
  bool connected{false};
};

// Central set relative to p: the part of the complex whose maximal balls
// contain p.
RelativeCentralSet relative_central_set(const CentralComplex& cc, const Point& p);

struct SubCheckReport {
  bool ok{false};
  std::vector<std::string> discrepancies;
};

// Recomputes the central set of the sub-union and compares it against the
// subcomplex itself.
SubCheckReport sub_central_set_check(const CentralComplex& cc, const Subcomplex& sub);

}  // namespace kpc
