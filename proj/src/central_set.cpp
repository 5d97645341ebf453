#include "kpc/central_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kpc {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kVertexMergeTol = 1e-7;
constexpr double kContactTol = 1e-7;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool same_unordered_pair(const Point& a1, const Point& b1, const Point& a2, const Point& b2) {
  return (same_point(a1, a2, kVertexMergeTol) && same_point(b1, b2, kVertexMergeTol)) ||
         (same_point(a1, b2, kVertexMergeTol) && same_point(b1, a2, kVertexMergeTol));
}

}  // namespace

Point CentralComplex::edge_point(int e, double u) const {
  const CsEdge& ed = edges[e];
  return ed.line.eval(ed.t0 + u * (ed.t1 - ed.t0));
}

double CentralComplex::edge_length(int e) const { return edges[e].t1 - edges[e].t0; }

int CentralComplex::degree(int v) const {
  int d = 0;
  for (const CsEdge& e : edges) {
    if (e.v0 == v) ++d;
    if (e.v1 == v) ++d;
  }
  return d;
}

CentralComplex central_set(const BallPolytope& poly) {
  if (!poly.validated) throw Error(Err::unvalidated_input, "central_set");
  if (poly.covers_sphere)
    throw Error(Err::covers_whole_surface, "central set undefined for the whole sphere");
  if (poly.component_count != 1) throw Error(Err::disconnected_union, "central_set");
  const Surface s = poly.surface;

  CentralComplex cc;
  cc.surface = s;
  cc.polytope = poly;

  const int n = static_cast<int>(poly.disks.size());
  if (n == 1) {
    cc.vertices.push_back(
        CsVertex{poly.disks[0].center, poly.disks[0].radius, VertexKind::disk_center});
    return cc;
  }
  for (const BoundaryArc& a : poly.arcs)
    if (a.full_circle)
      throw Error(Err::internal_error, "full-circle arc in a connected multi-disk union");

  const std::vector<Corner>& corners = poly.corners;
  const int nc = static_cast<int>(corners.size());

  struct RawEdge {
    Point p0, p1;
    Point a, b;
    GeodesicLine line;
    double t0, t1;
  };
  std::vector<RawEdge> raw;

  for (int ia = 0; ia < nc; ++ia)
    for (int ib = ia + 1; ib < nc; ++ib) {
      const Point& a = corners[ia].point;
      const Point& b = corners[ib].point;
      GeodesicLine line;
      try {
        line = bisector(s, a, b);
      } catch (const Error&) {
        continue;
      }
      // breakpoints along the bisector: disk centers on it and points
      // equidistant from a, b and a third corner
      std::vector<double> coords;
      for (const Disk& d : poly.disks)
        if (std::abs(distance(s, d.center, a) - distance(s, d.center, b)) <= kEpsPred)
          coords.push_back(line.coord(d.center));
      for (int ic = 0; ic < nc; ++ic) {
        if (ic == ia || ic == ib) continue;
        try {
          for (const Point& q : equidistant_point(s, a, b, corners[ic].point))
            coords.push_back(line.coord(q));
        } catch (const Error&) {
          // no equidistant point for this triple
        }
      }
      if (coords.empty()) continue;
      std::sort(coords.begin(), coords.end());
      coords.erase(std::unique(coords.begin(), coords.end(),
                               [](double x, double y) { return std::abs(x - y) <= 1e-9; }),
                   coords.end());
      if (s == Surface::spherical && coords.size() >= 2 &&
          coords.front() + kTwoPi - coords.back() <= 1e-9)
        coords.pop_back();

      const int m = static_cast<int>(coords.size());
      const int nseg = s == Surface::spherical ? m : m - 1;
      for (int t = 0; t < nseg; ++t) {
        const double c0 = coords[t];
        double span;
        if (s == Surface::spherical) {
          span = coords[(t + 1) % m] - c0;
          if (t == m - 1) span += kTwoPi;
          if (m == 1) span = kTwoPi;
        } else {
          span = coords[t + 1] - c0;
        }
        if (span <= 1e-9) continue;
        const Point mid = line.eval(c0 + 0.5 * span);
        double rho = 0.0;
        if (!maximal_ball_at(poly, mid, &rho)) continue;
        if (std::abs(distance(s, mid, a) - rho) > kContactTol) continue;
        if (std::abs(distance(s, mid, b) - rho) > kContactTol) continue;
        raw.push_back(RawEdge{line.eval(c0), line.eval(c0 + span), a, b, line, c0, c0 + span});
      }
    }

  // vertex registry
  std::vector<CsVertex> verts;
  auto vertex_id = [&](const Point& p) {
    for (int i = 0; i < static_cast<int>(verts.size()); ++i)
      if (same_point(verts[i].point, p, kVertexMergeTol)) return i;
    double rho = 0.0;
    if (!maximal_ball_at(poly, p, &rho))
      throw Error(Err::degenerate_voronoi,
                  "edge endpoint fails the maximal-ball predicate; jitter the scene");
    VertexKind kind = VertexKind::voronoi_vertex;
    for (const Disk& d : poly.disks)
      if (same_point(d.center, p, kVertexMergeTol)) {
        kind = VertexKind::disk_center;
        break;
      }
    verts.push_back(CsVertex{p, rho, kind});
    return static_cast<int>(verts.size()) - 1;
  };

  struct EdgeRec {
    int v0, v1;
    RawEdge geom;
  };
  std::vector<EdgeRec> recs;
  for (const RawEdge& r : raw) {
    const int v0 = vertex_id(r.p0);
    const int v1 = vertex_id(r.p1);
    const Point mid = r.line.eval(0.5 * (r.t0 + r.t1));
    bool dup = false;
    for (const EdgeRec& e : recs) {
      if (((e.v0 == v0 && e.v1 == v1) || (e.v0 == v1 && e.v1 == v0)) &&
          same_point(e.geom.line.eval(0.5 * (e.geom.t0 + e.geom.t1)), mid, kVertexMergeTol)) {
        if (!same_unordered_pair(e.geom.a, e.geom.b, r.a, r.b))
          throw Error(Err::degenerate_voronoi,
                      "edge defined by two distinct corner pairs; jitter the scene");
        dup = true;
        break;
      }
    }
    if (!dup) recs.push_back(EdgeRec{v0, v1, r});
  }

  // any maximal disk center must already be a vertex of some edge
  for (const Disk& d : poly.disks) {
    if (!maximal_ball_at(poly, d.center)) continue;
    bool found = false;
    for (const CsVertex& v : verts)
      if (same_point(v.point, d.center, kVertexMergeTol)) {
        found = true;
        break;
      }
    if (!found)
      throw Error(Err::degenerate_voronoi,
                  "maximal disk center not attached to the complex; jitter the scene");
  }

  // cocircularity guard: a non-center vertex touching four or more corners
  for (const CsVertex& v : verts) {
    if (v.kind == VertexKind::disk_center) continue;
    const auto contacts = boundary_contacts(poly, v.point, kEpsPred);
    if (contacts.size() >= 4)
      throw Error(Err::degenerate_voronoi,
                  "four near-cocircular boundary points at a vertex; jitter the scene");
  }

  // connectivity of the complex
  if (!verts.empty()) {
    UnionFind uf(static_cast<int>(verts.size()));
    for (const EdgeRec& e : recs) uf.unite(e.v0, e.v1);
    const int root = uf.find(0);
    for (int i = 1; i < static_cast<int>(verts.size()); ++i)
      if (uf.find(i) != root)
        throw Error(Err::degenerate_voronoi, "central set came out disconnected; jitter the scene");
  }

  // canonical order
  std::vector<int> order(verts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return lex_less(verts[x].point, verts[y].point); });
  std::vector<int> rank(verts.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) rank[order[i]] = i;
  for (const int o : order) cc.vertices.push_back(verts[o]);
  for (const EdgeRec& e : recs)
    cc.edges.push_back(
        CsEdge{rank[e.v0], rank[e.v1], e.geom.a, e.geom.b, e.geom.line, e.geom.t0, e.geom.t1});
  std::sort(cc.edges.begin(), cc.edges.end(), [&](const CsEdge& x, const CsEdge& y) {
    const int xa = std::min(x.v0, x.v1), xb = std::max(x.v0, x.v1);
    const int ya = std::min(y.v0, y.v1), yb = std::max(y.v0, y.v1);
    if (xa != ya) return xa < ya;
    if (xb != yb) return xb < yb;
    return lex_less(x.line.eval(0.5 * (x.t0 + x.t1)), y.line.eval(0.5 * (y.t0 + y.t1)));
  });
  return cc;
}

double radius_at_vertex(const CentralComplex& cc, int v) {
  if (v < 0 || v >= static_cast<int>(cc.vertices.size()))
    throw Error(Err::location_off_complex, "vertex index");
  return cc.vertices[v].radius;
}

double radius_at_edge(const CentralComplex& cc, int e, double u) {
  if (e < 0 || e >= static_cast<int>(cc.edges.size()) || u < -1e-9 || u > 1.0 + 1e-9)
    throw Error(Err::location_off_complex, "edge location");
  const Point x = cc.edge_point(e, std::clamp(u, 0.0, 1.0));
  return distance(cc.surface, x, cc.edges[e].corner_a);
}

CentralComplex subdivide(const CentralComplex& cc, int e, double u) {
  if (e < 0 || e >= static_cast<int>(cc.edges.size()) || u <= 1e-9 || u >= 1.0 - 1e-9)
    throw Error(Err::location_off_complex, "subdivision location");
  CentralComplex out = cc;
  const CsEdge ed = cc.edges[e];
  const Point p = cc.edge_point(e, u);
  const double r = distance(cc.surface, p, ed.corner_a);
  const int nv = static_cast<int>(out.vertices.size());
  out.vertices.push_back(CsVertex{p, r, VertexKind::subdivision});
  const double tm = ed.t0 + u * (ed.t1 - ed.t0);
  out.edges[e] = CsEdge{ed.v0, nv, ed.corner_a, ed.corner_b, ed.line, ed.t0, tm};
  out.edges.push_back(CsEdge{nv, ed.v1, ed.corner_a, ed.corner_b, ed.line, tm, ed.t1});
  return out;
}

BallConfiguration reconstruct(const CentralComplex& cc) {
  std::vector<Disk> disks;
  disks.reserve(cc.vertices.size());
  for (const CsVertex& v : cc.vertices) disks.push_back(Disk{v.point, v.radius});
  return BallConfiguration{cc.surface, disks};
}

Subcomplex subcomplex_empty(const CentralComplex& cc) {
  return Subcomplex{std::vector<char>(cc.vertices.size(), 0),
                    std::vector<char>(cc.edges.size(), 0)};
}

Subcomplex subcomplex_all(const CentralComplex& cc) {
  return Subcomplex{std::vector<char>(cc.vertices.size(), 1),
                    std::vector<char>(cc.edges.size(), 1)};
}

Subcomplex close_subcomplex(const CentralComplex& cc, Subcomplex sub) {
  for (int e = 0; e < static_cast<int>(cc.edges.size()); ++e)
    if (sub.esel[e]) {
      sub.vsel[cc.edges[e].v0] = 1;
      sub.vsel[cc.edges[e].v1] = 1;
    }
  return sub;
}

bool subcomplex_closed(const CentralComplex& cc, const Subcomplex& sub) {
  for (int e = 0; e < static_cast<int>(cc.edges.size()); ++e)
    if (sub.esel[e] && (!sub.vsel[cc.edges[e].v0] || !sub.vsel[cc.edges[e].v1])) return false;
  return true;
}

bool subcomplex_nonempty(const Subcomplex& sub) {
  for (const char c : sub.vsel)
    if (c) return true;
  for (const char c : sub.esel)
    if (c) return true;
  return false;
}

Subcomplex complement_closure(const CentralComplex& cc, const Subcomplex& sub) {
  Subcomplex out = subcomplex_empty(cc);
  for (int e = 0; e < static_cast<int>(cc.edges.size()); ++e)
    if (!sub.esel[e]) out.esel[e] = 1;
  out = close_subcomplex(cc, out);
  for (int v = 0; v < static_cast<int>(cc.vertices.size()); ++v)
    if (!sub.vsel[v] && cc.degree(v) == 0) out.vsel[v] = 1;
  return out;
}

Subcomplex subcomplex_intersect(const Subcomplex& a, const Subcomplex& b) {
  Subcomplex out = a;
  for (std::size_t i = 0; i < out.vsel.size(); ++i) out.vsel[i] = a.vsel[i] && b.vsel[i];
  for (std::size_t i = 0; i < out.esel.size(); ++i) out.esel[i] = a.esel[i] && b.esel[i];
  return out;
}

bool subcomplex_cover(const CentralComplex& cc, const Subcomplex& a, const Subcomplex& b) {
  for (std::size_t e = 0; e < cc.edges.size(); ++e)
    if (!a.esel[e] && !b.esel[e]) return false;
  for (std::size_t v = 0; v < cc.vertices.size(); ++v)
    if (!a.vsel[v] && !b.vsel[v]) return false;
  return true;
}

namespace {

// Vertices whose disk is needed to reproduce the sub-union: everything except
// interior vertices of a straight run of edges sharing one corner pair.
std::vector<int> essential_vertices(const CentralComplex& cc, const Subcomplex& sub) {
  const int nv = static_cast<int>(cc.vertices.size());
  std::vector<std::vector<int>> incident(nv);
  for (int e = 0; e < static_cast<int>(cc.edges.size()); ++e)
    if (sub.esel[e]) {
      incident[cc.edges[e].v0].push_back(e);
      incident[cc.edges[e].v1].push_back(e);
    }
  std::vector<int> out;
  for (int v = 0; v < nv; ++v) {
    if (!sub.vsel[v]) continue;
    if (incident[v].size() == 2) {
      const CsEdge& e0 = cc.edges[incident[v][0]];
      const CsEdge& e1 = cc.edges[incident[v][1]];
      if (same_unordered_pair(e0.corner_a, e0.corner_b, e1.corner_a, e1.corner_b)) continue;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

BallConfiguration sub_union(const CentralComplex& cc, const Subcomplex& sub) {
  if (!subcomplex_nonempty(sub)) throw Error(Err::empty_subcomplex, "sub_union");
  if (!subcomplex_closed(cc, sub)) throw Error(Err::empty_subcomplex, "subcomplex not closed");
  std::vector<Disk> disks;
  for (const int v : essential_vertices(cc, sub))
    disks.push_back(Disk{cc.vertices[v].point, cc.vertices[v].radius});
  return BallConfiguration{cc.surface, disks};
}

RelativeCentralSet relative_central_set(const CentralComplex& cc, const Point& p) {
  if (!contains(cc.surface, cc.polytope.disks, p))
    throw Error(Err::point_outside_union, "relative_central_set");
  RelativeCentralSet out;
  const int nv = static_cast<int>(cc.vertices.size());
  std::vector<char> vin(nv, 0);
  for (int v = 0; v < nv; ++v)
    if (distance(cc.surface, cc.vertices[v].point, p) <= cc.vertices[v].radius + kEpsPred) {
      vin[v] = 1;
      out.vertices.push_back(v);
    }

  // g(u) <= 0 exactly where the maximal ball at edge parameter u contains p
  for (int e = 0; e < static_cast<int>(cc.edges.size()); ++e) {
    const auto g = [&](double u) {
      const Point x = cc.edge_point(e, u);
      return distance(cc.surface, x, p) - distance(cc.surface, x, cc.edges[e].corner_a);
    };
    constexpr int kSamples = 64;
    std::vector<double> us(kSamples + 1), gs(kSamples + 1);
    for (int i = 0; i <= kSamples; ++i) {
      us[i] = static_cast<double>(i) / kSamples;
      gs[i] = g(us[i]);
    }
    auto refine = [&](double lo, double hi, bool want_entering) {
      // bisection on the sign change between lo and hi
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool inside = g(mid) <= 0.0;
        if (inside == want_entering)
          hi = mid;
        else
          lo = mid;
        if (hi - lo < 1e-12) break;
      }
      return 0.5 * (lo + hi);
    };
    double start = -1.0;
    bool open = gs[0] <= kEpsPred;
    if (open) start = 0.0;
    for (int i = 1; i <= kSamples; ++i) {
      const bool inside = gs[i] <= kEpsPred;
      if (inside && !open) {
        start = refine(us[i - 1], us[i], true);
        open = true;
      } else if (!inside && open) {
        const double stop = refine(us[i - 1], us[i], false);
        if (stop - start > 1e-9) out.clips.push_back(EdgeClip{e, start, stop});
        open = false;
      }
    }
    if (open && 1.0 - start > 1e-9) out.clips.push_back(EdgeClip{e, start, 1.0});
  }

  out.nonempty = !out.vertices.empty() || !out.clips.empty();

  // connectivity of the selected pieces
  const int parts = nv + static_cast<int>(out.clips.size());
  UnionFind uf(parts);
  std::vector<char> active(nv, 0);
  for (const int v : out.vertices) active[v] = 1;
  for (int i = 0; i < static_cast<int>(out.clips.size()); ++i) {
    const EdgeClip& c = out.clips[i];
    if (c.u0 <= 1e-7 && vin[cc.edges[c.edge].v0]) uf.unite(nv + i, cc.edges[c.edge].v0);
    if (c.u1 >= 1.0 - 1e-7 && vin[cc.edges[c.edge].v1]) uf.unite(nv + i, cc.edges[c.edge].v1);
  }
  std::vector<int> roots;
  for (int v = 0; v < nv; ++v)
    if (active[v]) roots.push_back(uf.find(v));
  for (int i = 0; i < static_cast<int>(out.clips.size()); ++i) roots.push_back(uf.find(nv + i));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  out.connected = roots.size() <= 1;
  return out;
}

namespace {

struct CanonEdge {
  Point a, b;     // endpoints
  Point mid;      // geometric midpoint of the merged run
};

struct CanonGraph {
  std::vector<Point> vertices;
  std::vector<CanonEdge> edges;
};

// Collapses interior degree-2 vertices of straight pencil runs.
CanonGraph canonical_graph(const CentralComplex& cc, const Subcomplex& sub) {
  const std::vector<int> essential = essential_vertices(cc, sub);
  std::vector<char> is_essential(cc.vertices.size(), 0);
  for (const int v : essential) is_essential[v] = 1;

  CanonGraph g;
  for (const int v : essential) g.vertices.push_back(cc.vertices[v].point);

  std::vector<char> used(cc.edges.size(), 0);
  std::vector<std::vector<int>> incident(cc.vertices.size());
  for (int e = 0; e < static_cast<int>(cc.edges.size()); ++e)
    if (sub.esel[e]) {
      incident[cc.edges[e].v0].push_back(e);
      incident[cc.edges[e].v1].push_back(e);
    }

  for (const int v : essential) {
    for (const int e0 : incident[v]) {
      if (used[e0]) continue;
      // walk the run starting at v along e0 until the next essential vertex
      int cur_edge = e0;
      int cur_v = v;
      double lo = cc.edges[e0].line.coord(cc.vertices[v].point);
      while (true) {
        used[cur_edge] = 1;
        const CsEdge& ed = cc.edges[cur_edge];
        const int other = ed.v0 == cur_v ? ed.v1 : ed.v0;
        if (is_essential[other]) {
          const double hi = ed.line.coord(cc.vertices[other].point);
          g.edges.push_back(CanonEdge{cc.vertices[v].point, cc.vertices[other].point,
                                      ed.line.eval(0.5 * (lo + hi))});
          break;
        }
        int next_edge = -1;
        for (const int e2 : incident[other])
          if (e2 != cur_edge && !used[e2]) next_edge = e2;
        if (next_edge < 0) {
          const double hi = ed.line.coord(cc.vertices[other].point);
          g.edges.push_back(CanonEdge{cc.vertices[v].point, cc.vertices[other].point,
                                      ed.line.eval(0.5 * (lo + hi))});
          break;
        }
        cur_edge = next_edge;
        cur_v = other;
      }
    }
  }
  return g;
}

}  // namespace

SubCheckReport sub_central_set_check(const CentralComplex& cc, const Subcomplex& sub) {
  SubCheckReport rep;
  const BallConfiguration cfg = sub_union(cc, sub);
  const BallPolytope poly2 = validate(cfg, /*allow_shared_corners=*/true);
  const CentralComplex cc2 = central_set(poly2);

  const CanonGraph ga = canonical_graph(cc, sub);
  const CanonGraph gb = canonical_graph(cc2, subcomplex_all(cc2));

  constexpr double tol = 1e-6;
  auto has_point = [&](const std::vector<Point>& pts, const Point& p) {
    for (const Point& q : pts)
      if (same_point(p, q, tol)) return true;
    return false;
  };
  if (ga.vertices.size() != gb.vertices.size())
    rep.discrepancies.push_back("vertex counts differ: " + std::to_string(ga.vertices.size()) +
                                " vs " + std::to_string(gb.vertices.size()));
  for (const Point& p : ga.vertices)
    if (!has_point(gb.vertices, p)) rep.discrepancies.push_back("missing vertex in recomputation");
  for (const Point& p : gb.vertices)
    if (!has_point(ga.vertices, p)) rep.discrepancies.push_back("extra vertex in recomputation");

  auto edge_match = [&](const CanonEdge& e, const std::vector<CanonEdge>& other) {
    for (const CanonEdge& f : other) {
      const bool ends = (same_point(e.a, f.a, tol) && same_point(e.b, f.b, tol)) ||
                        (same_point(e.a, f.b, tol) && same_point(e.b, f.a, tol));
      if (ends && same_point(e.mid, f.mid, tol)) return true;
    }
    return false;
  };
  if (ga.edges.size() != gb.edges.size())
    rep.discrepancies.push_back("edge counts differ: " + std::to_string(ga.edges.size()) + " vs " +
                                std::to_string(gb.edges.size()));
  for (const CanonEdge& e : ga.edges)
    if (!edge_match(e, gb.edges)) rep.discrepancies.push_back("missing edge in recomputation");
  for (const CanonEdge& e : gb.edges)
    if (!edge_match(e, ga.edges)) rep.discrepancies.push_back("extra edge in recomputation");

  rep.ok = rep.discrepancies.empty();
  return rep;
}

}  // namespace kpc
