#include "kpc/contraction.hpp"

#include <algorithm>
#include <cmath>

#include "kpc/rng.hpp"

namespace kpc {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

// Tangent of the geodesic gamma(t) = eval(t) at parameter t.
Vec3 line_tangent_at(const GeodesicLine& line, double t) {
  switch (line.surface) {
    case Surface::euclidean:
      return line.tangent;
    case Surface::spherical:
      return -std::sin(t) * line.base.v + std::cos(t) * line.tangent;
    case Surface::hyperbolic:
      return std::sinh(t) * line.base.v + std::cosh(t) * line.tangent;
  }
  return line.tangent;
}

// Roots of cut.side(gamma(x)) for the geodesic from (p, tan), x in (lo, hi).
std::vector<double> side_roots(Surface s, const Point& p, const Vec3& tan,
                               const GeodesicLine& cut, double lo, double hi) {
  const Vec3 n = cut.normal();
  std::vector<double> roots;
  switch (s) {
    case Surface::euclidean: {
      const double a =
          (p.v[0] - cut.base.v[0]) * n[0] + (p.v[1] - cut.base.v[1]) * n[1];
      const double b = tan[0] * n[0] + tan[1] * n[1];
      if (std::abs(b) > 1e-14) roots.push_back(-a / b);
      break;
    }
    case Surface::spherical: {
      const double a = dot(p.v, n), b = dot(tan, n);
      if (std::abs(a) < 1e-15 && std::abs(b) < 1e-15) break;  // segment on the cut line
      const double x0 = std::atan2(-a, b);
      for (int k = -3; k <= 3; ++k) roots.push_back(x0 + k * kPi);
      break;
    }
    case Surface::hyperbolic: {
      const double a = mdot(p.v, n), b = mdot(tan, n);
      if (std::abs(b) > std::abs(a) + 1e-15) roots.push_back(std::atanh(-a / b));
      break;
    }
  }
  std::vector<double> out;
  for (const double r : roots)
    if (r > lo + 1e-9 && r < hi - 1e-9) out.push_back(r);
  return out;
}

}  // namespace

ContractionCheck is_contractive(Surface s, const CenterMap& m) {
  const int n = static_cast<int>(m.pairs.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (distance(s, m.pairs[i].first, m.pairs[j].first) <= kEpsPred)
        throw Error(Err::invalid_map, "duplicate source points");
  ContractionCheck out;
  out.contractive = true;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double before = distance(s, m.pairs[i].first, m.pairs[j].first);
      const double after = distance(s, m.pairs[i].second, m.pairs[j].second);
      if (after > before + kEpsPred) {
        out.contractive = false;
        if (after - before > worst) {
          worst = after - before;
          out.has_witness = true;
          out.witness = ContractionWitness{m.pairs[i].first, m.pairs[j].first, before, after};
        }
      }
    }
  return out;
}

PiecewiseIsometry identity_contraction(Surface s) { return PiecewiseIsometry{s, {}, {}}; }

PiecewiseIsometry fold(Surface s, const GeodesicLine& line) {
  if (line.surface != s) throw Error(Err::mixed_surfaces, "fold line surface");
  return PiecewiseIsometry{s, {line}, {}};
}

PiecewiseIsometry compose(const PiecewiseIsometry& f, const PiecewiseIsometry& g) {
  if (f.surface != g.surface) throw Error(Err::mixed_surfaces, "compose");
  if (f.explicit_cells() || g.explicit_cells())
    throw Error(Err::invalid_map, "compose supports fold-built maps");
  PiecewiseIsometry out{f.surface, g.stages, {}};
  out.stages.insert(out.stages.end(), f.stages.begin(), f.stages.end());
  return out;
}

PiecewiseIsometry explicit_piecewise(Surface s, std::vector<PwCell> cells) {
  for (const PwCell& c : cells) {
    if (c.iso.surface != s) throw Error(Err::mixed_surfaces, "cell isometry surface");
    for (const auto& [line, sign] : c.constraints) {
      if (line.surface != s) throw Error(Err::mixed_surfaces, "cell constraint surface");
      if (sign != 1 && sign != -1) throw Error(Err::invalid_map, "constraint sign must be +-1");
    }
  }
  return PiecewiseIsometry{s, {}, std::move(cells)};
}

int pw_cell_of(const PiecewiseIsometry& f, const Point& p) {
  for (int i = 0; i < static_cast<int>(f.cells.size()); ++i) {
    bool inside = true;
    for (const auto& [line, sign] : f.cells[i].constraints)
      if (sign * line.side(p) > kEpsPred) {
        inside = false;
        break;
      }
    if (inside) return i;
  }
  throw Error(Err::point_outside_cells, "no cell contains the point");
}

Point pw_apply(const PiecewiseIsometry& f, const Point& p) {
  if (p.surface != f.surface) throw Error(Err::mixed_surfaces, "pw_apply");
  if (f.explicit_cells()) return f.cells[pw_cell_of(f, p)].iso.apply(p);
  Point q = p;
  for (const GeodesicLine& line : f.stages)
    if (line.side(q) > 0.0) q = reflect(f.surface, line, q);
  return q;
}

std::vector<PwDefect> pw_validate(const PiecewiseIsometry& f, const Point& center, double radius,
                                  std::uint64_t seed) {
  std::vector<PwDefect> defects;
  Rng rng(derive_seed(seed, "pw_validate", 0));
  const CircleFrame frame = circle_frame(f.surface, center, 1.0);
  auto sample = [&]() {
    const double theta = rng.uniform(0.0, kTwoPi);
    const double rho = radius * rng.uniform();
    const Vec3 dir = std::cos(theta) * frame.e1 + std::sin(theta) * frame.e2;
    return geodesic_point(f.surface, center, dir, rho);
  };

  // global 1-Lipschitz on sampled pairs
  constexpr int kPairs = 400;
  for (int i = 0; i < kPairs; ++i) {
    const Point a = sample(), b = sample();
    const double before = distance(f.surface, a, b);
    const double after = distance(f.surface, pw_apply(f, a), pw_apply(f, b));
    if (after > before + 1e-7) {
      defects.push_back(PwDefect{"expansion of a sampled pair by " + std::to_string(after - before)});
      break;
    }
  }

  if (f.explicit_cells()) {
    // local isometry inside each cell on sampled pairs
    constexpr int kLocal = 600;
    for (int i = 0; i < kLocal; ++i) {
      const Point a = sample(), b = sample();
      int ca, cb;
      try {
        ca = pw_cell_of(f, a);
        cb = pw_cell_of(f, b);
      } catch (const Error&) {
        defects.push_back(PwDefect{"sampled point not covered by any cell"});
        break;
      }
      if (ca != cb) continue;
      const double before = distance(f.surface, a, b);
      const double after =
          distance(f.surface, f.cells[ca].iso.apply(a), f.cells[ca].iso.apply(b));
      if (std::abs(after - before) > 1e-7) {
        defects.push_back(PwDefect{"cell " + std::to_string(ca) + " map is not an isometry"});
        break;
      }
    }
    // agreement across shared boundaries: points near a constraint line that
    // lie in two cells must map the same way under both
    for (int ci = 0; ci < static_cast<int>(f.cells.size()); ++ci)
      for (const auto& [line, sign] : f.cells[ci].constraints) {
        (void)sign;
        for (int k = 0; k < 32; ++k) {
          const Point q = line.eval(radius * (2.0 * rng.uniform() - 1.0));
          if (distance(f.surface, q, center) > radius) continue;
          bool in_ci = true;
          for (const auto& [l2, s2] : f.cells[ci].constraints)
            if (s2 * l2.side(q) > kEpsPred) in_ci = false;
          if (!in_ci) continue;
          for (int cj = 0; cj < static_cast<int>(f.cells.size()); ++cj) {
            if (cj == ci) continue;
            bool in_cj = true;
            for (const auto& [l2, s2] : f.cells[cj].constraints)
              if (s2 * l2.side(q) > kEpsPred) in_cj = false;
            if (!in_cj) continue;
            if (distance(f.surface, f.cells[ci].iso.apply(q), f.cells[cj].iso.apply(q)) >
                kEpsPred) {
              defects.push_back(PwDefect{"cells " + std::to_string(ci) + " and " +
                                         std::to_string(cj) +
                                         " disagree on a shared boundary point"});
              break;
            }
          }
        }
      }
  }
  return defects;
}

namespace {

// Crossing parameters of the composed fold map along one geodesic segment,
// in the segment's own arclength coordinates.
void fold_cuts(Surface s, const Point& p0, const Vec3& tan0, double len,
               const std::vector<GeodesicLine>& stages, std::size_t stage,
               double global_offset, std::vector<double>& cuts) {
  if (stage >= stages.size()) return;
  const GeodesicLine seg{s, p0, tan0};
  std::vector<double> local = side_roots(s, p0, tan0, stages[stage], 0.0, len);
  std::sort(local.begin(), local.end());
  std::vector<double> bounds{0.0};
  for (const double r : local) {
    bounds.push_back(r);
    cuts.push_back(global_offset + r);
  }
  bounds.push_back(len);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double a = bounds[i], b = bounds[i + 1];
    const Point mid = seg.eval(0.5 * (a + b));
    Point q0 = seg.eval(a);
    Vec3 qt = line_tangent_at(seg, a);
    if (stages[stage].side(mid) > 0.0) {
      const Isometry refl = reflection_isometry(s, stages[stage]);
      q0 = refl.apply(q0);
      qt = refl.apply_linear(qt);
    }
    fold_cuts(s, q0, qt, b - a, stages, stage + 1, global_offset + a, cuts);
  }
}

Isometry composite_isometry_at(const PiecewiseIsometry& f, const Point& p) {
  Isometry acc = identity_isometry(f.surface);
  Point q = p;
  for (const GeodesicLine& line : f.stages) {
    if (line.side(q) > 0.0) {
      const Isometry refl = reflection_isometry(f.surface, line);
      acc = compose(refl, acc);
      q = reflect(f.surface, line, q);
    }
  }
  return acc;
}

}  // namespace

RefinedComplex refine_complex(const PiecewiseIsometry& f, const CentralComplex& cc) {
  if (f.surface != cc.surface) throw Error(Err::mixed_surfaces, "refine_complex");
  RefinedComplex rc;
  rc.complex.surface = cc.surface;
  rc.complex.polytope = cc.polytope;
  rc.complex.vertices = cc.vertices;

  for (int e = 0; e < static_cast<int>(cc.edges.size()); ++e) {
    const CsEdge& ed = cc.edges[e];
    const double len = ed.t1 - ed.t0;
    std::vector<double> cuts;
    if (f.explicit_cells()) {
      const Point start = ed.line.eval(ed.t0);
      const Vec3 tan = line_tangent_at(ed.line, ed.t0);
      for (const PwCell& cell : f.cells)
        for (const auto& [line, sign] : cell.constraints) {
          (void)sign;
          for (const double r : side_roots(cc.surface, start, tan, line, 0.0, len))
            cuts.push_back(r);
        }
    } else {
      const Point start = ed.line.eval(ed.t0);
      const Vec3 tan = line_tangent_at(ed.line, ed.t0);
      fold_cuts(cc.surface, start, tan, len, f.stages, 0, 0.0, cuts);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
               cuts.end());

    // piece boundaries; merge adjacent pieces mapped by the same isometry
    std::vector<double> bounds{0.0};
    for (const double c : cuts)
      if (c > 1e-9 && c < len - 1e-9) bounds.push_back(c);
    bounds.push_back(len);
    if (bounds.size() > 2) {
      std::vector<double> kept{bounds.front()};
      for (std::size_t i = 1; i + 1 < bounds.size(); ++i) {
        const Point mid_prev = ed.line.eval(ed.t0 + 0.5 * (kept.back() + bounds[i]));
        const Point mid_next = ed.line.eval(ed.t0 + 0.5 * (bounds[i] + bounds[i + 1]));
        bool differ;
        if (f.explicit_cells()) {
          differ = pw_cell_of(f, mid_prev) != pw_cell_of(f, mid_next);
        } else {
          differ = !isometry_close(composite_isometry_at(f, mid_prev),
                                   composite_isometry_at(f, mid_next));
        }
        if (differ) kept.push_back(bounds[i]);
      }
      kept.push_back(bounds.back());
      bounds = std::move(kept);
    }

    // emit pieces; interior boundaries become subdivision vertices
    int prev_vertex = ed.v0;
    double prev_t = ed.t0;
    for (std::size_t i = 1; i + 1 < bounds.size(); ++i) {
      const double t = ed.t0 + bounds[i];
      const Point p = ed.line.eval(t);
      const int nv = static_cast<int>(rc.complex.vertices.size());
      rc.complex.vertices.push_back(
          CsVertex{p, distance(cc.surface, p, ed.corner_a), VertexKind::subdivision});
      rc.complex.edges.push_back(
          CsEdge{prev_vertex, nv, ed.corner_a, ed.corner_b, ed.line, prev_t, t});
      rc.origin_edge.push_back(e);
      prev_vertex = nv;
      prev_t = t;
    }
    rc.complex.edges.push_back(
        CsEdge{prev_vertex, ed.v1, ed.corner_a, ed.corner_b, ed.line, prev_t, ed.t1});
    rc.origin_edge.push_back(e);
  }

  // on every refined edge the map must now act as one isometry
  for (int e = 0; e < static_cast<int>(rc.complex.edges.size()); ++e) {
    const CsEdge& ed = rc.complex.edges[e];
    const Point p = rc.complex.vertices[ed.v0].point;
    const Point q = rc.complex.vertices[ed.v1].point;
    const Point m = rc.complex.edge_point(e, 0.5);
    const Point fp = pw_apply(f, p), fq = pw_apply(f, q), fm = pw_apply(f, m);
    if (std::abs(distance(cc.surface, fp, fq) - distance(cc.surface, p, q)) > 1e-7 ||
        std::abs(distance(cc.surface, fp, fm) - distance(cc.surface, p, m)) > 1e-7)
      throw Error(Err::refinement_failure,
                  "map is not isometric on refined edge " + std::to_string(e));
  }
  return rc;
}

Subcomplex refine_subcomplex(const RefinedComplex& rc, const CentralComplex& cc,
                             const Subcomplex& sub) {
  Subcomplex out;
  out.vsel.assign(rc.complex.vertices.size(), 0);
  out.esel.assign(rc.complex.edges.size(), 0);
  for (std::size_t v = 0; v < cc.vertices.size(); ++v) out.vsel[v] = sub.vsel[v];
  for (std::size_t e = 0; e < rc.complex.edges.size(); ++e)
    if (sub.esel[rc.origin_edge[e]]) {
      out.esel[e] = 1;
      out.vsel[rc.complex.edges[e].v0] = 1;
      out.vsel[rc.complex.edges[e].v1] = 1;
    }
  return out;
}

}  // namespace kpc
