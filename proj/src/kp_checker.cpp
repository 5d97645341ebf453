#include "kpc/kp_checker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kpc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double union_area_of_config(const BallConfiguration& cfg) {
  return union_area(validate(cfg, /*allow_shared_corners=*/true));
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

double SampleWindow::area() const {
  switch (surface) {
    case Surface::euclidean: return (x1 - x0) * (y1 - y0);
    case Surface::spherical: return 4.0 * kPi;
    case Surface::hyperbolic: return 2.0 * kPi * (std::cosh(radius) - 1.0);
  }
  return 0.0;
}

Point SampleWindow::sample(Rng& rng) const {
  switch (surface) {
    case Surface::euclidean:
      return Point::planar(x0 + (x1 - x0) * rng.uniform(), y0 + (y1 - y0) * rng.uniform());
    case Surface::spherical: {
      while (true) {
        const Vec3 v{rng.normal(), rng.normal(), rng.normal()};
        const double n = norm(v);
        if (n > 1e-6) return Point::embedded(surface, v);
      }
    }
    case Surface::hyperbolic: {
      const double rho = std::acosh(1.0 + rng.uniform() * (std::cosh(radius) - 1.0));
      const double theta = 2.0 * kPi * rng.uniform();
      const Vec3 dir{std::cos(theta), std::sin(theta), 0.0};
      return Point::embedded(
          surface, std::cosh(rho) * Vec3{0, 0, 1} + std::sinh(rho) * dir);
    }
  }
  throw Error(Err::internal_error, "sample: bad surface");
}

bool SampleWindow::contains_disk(const Disk& d) const {
  switch (surface) {
    case Surface::euclidean:
      return d.center.x() - d.radius >= x0 && d.center.x() + d.radius <= x1 &&
             d.center.y() - d.radius >= y0 && d.center.y() + d.radius <= y1;
    case Surface::spherical: return true;
    case Surface::hyperbolic: {
      const Point origin = Point::embedded(surface, Vec3{0, 0, 1});
      return distance(surface, origin, d.center) + d.radius <= radius;
    }
  }
  return false;
}

SampleWindow window_for(Surface s, const std::vector<Disk>& disks, double margin) {
  SampleWindow w;
  w.surface = s;
  switch (s) {
    case Surface::euclidean: {
      w.x0 = w.y0 = std::numeric_limits<double>::infinity();
      w.x1 = w.y1 = -std::numeric_limits<double>::infinity();
      for (const Disk& d : disks) {
        w.x0 = std::min(w.x0, d.center.x() - d.radius - margin);
        w.x1 = std::max(w.x1, d.center.x() + d.radius + margin);
        w.y0 = std::min(w.y0, d.center.y() - d.radius - margin);
        w.y1 = std::max(w.y1, d.center.y() + d.radius + margin);
      }
      break;
    }
    case Surface::spherical:
      break;
    case Surface::hyperbolic: {
      const Point origin = Point::embedded(s, Vec3{0, 0, 1});
      w.radius = margin;
      for (const Disk& d : disks)
        w.radius = std::max(w.radius, distance(s, origin, d.center) + d.radius + margin);
      break;
    }
  }
  return w;
}

MonteCarloEstimate mc_area(Surface s, const std::function<bool(const Point&)>& member,
                           const SampleWindow& window, long long n, std::uint64_t seed,
                           const std::vector<Disk>* region) {
  if (window.surface != s) throw Error(Err::mixed_surfaces, "mc_area window");
  if (region)
    for (const Disk& d : *region)
      if (!window.contains_disk(d))
        throw Error(Err::window_too_small, "a region disk sticks out of the sampling window");
  Rng rng(derive_seed(seed, "mc_area", 0));
  long long hits = 0;
  for (long long i = 0; i < n; ++i)
    if (member(window.sample(rng))) ++hits;
  const double w = window.area();
  const double p = n > 0 ? static_cast<double>(hits) / static_cast<double>(n) : 0.0;
  MonteCarloEstimate est;
  est.mean = p * w;
  est.std_error = n > 0 ? w * std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
  est.samples = n;
  est.seed = seed;
  return est;
}

BallConfiguration image_config(const CentralComplex& cc, const Subcomplex& sub,
                               const PiecewiseIsometry& f) {
  std::vector<Disk> disks;
  for (std::size_t v = 0; v < cc.vertices.size(); ++v) {
    if (!sub.vsel[v]) continue;
    const Disk img{pw_apply(f, cc.vertices[v].point), cc.vertices[v].radius};
    bool dup = false;
    for (const Disk& d : disks)
      if (same_point(d.center, img.center, 1e-12) && std::abs(d.radius - img.radius) <= 1e-12) {
        dup = true;
        break;
      }
    if (!dup) disks.push_back(img);
  }
  return BallConfiguration{cc.surface, disks};
}

KPReport kp_verify(const KPInstance& inst, std::uint64_t seed, long long mc_samples,
                   bool force_mc) {
  const Surface s = inst.config.surface;
  const BallPolytope poly = validate(inst.config);
  KPReport rep;
  rep.area_before = poly.covers_sphere ? 4.0 * kPi : union_area(poly);

  BallConfiguration image{s, {}};
  if (std::holds_alternative<CenterMap>(inst.contraction)) {
    const CenterMap& cm = std::get<CenterMap>(inst.contraction);
    const ContractionCheck chk = is_contractive(s, cm);
    if (!chk.contractive) {
      throw Error(Err::not_a_contraction,
                  "center map expands a pair: " + std::to_string(chk.witness.before) + " -> " +
                      std::to_string(chk.witness.after));
    }
    rep.contractive = true;
    rep.image_representation = "original_disks";
    for (const Disk& d : poly.disks) {
      int match = -1;
      for (int i = 0; i < static_cast<int>(cm.pairs.size()); ++i)
        if (same_point(cm.pairs[i].first, d.center, 1e-7)) {
          match = i;
          break;
        }
      if (match < 0) throw Error(Err::invalid_map, "a disk center has no image in the map");
      image.disks.push_back(Disk{cm.pairs[match].second, d.radius});
    }
  } else {
    const PiecewiseIsometry& f = std::get<PiecewiseIsometry>(inst.contraction);
    if (f.surface != s) throw Error(Err::mixed_surfaces, "kp_verify");
    if (poly.covers_sphere) {
      // no central set: measure the rearranged original disks instead
      rep.image_representation = "whole_sphere";
      rep.contractive = true;
      for (const Disk& d : poly.disks) image.disks.push_back(Disk{pw_apply(f, d.center), d.radius});
    } else {
      const CentralComplex cc = central_set(poly);
      // contraction verified pairwise on the measured centers
      for (std::size_t i = 0; i < cc.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < cc.vertices.size(); ++j) {
          const double before = distance(s, cc.vertices[i].point, cc.vertices[j].point);
          const double after =
              distance(s, pw_apply(f, cc.vertices[i].point), pw_apply(f, cc.vertices[j].point));
          if (after > before + kEpsPred)
            throw Error(Err::not_a_contraction,
                        "map expands a vertex pair by " + std::to_string(after - before));
        }
      rep.contractive = true;
      rep.image_representation = "central_set_vertices";
      image = image_config(cc, subcomplex_all(cc), f);
    }
  }

  bool exact_ok = true;
  try {
    rep.area_after = union_area_of_config(image);
  } catch (const Error&) {
    exact_ok = false;
    rep.area_after = kNan;
  }

  if (!exact_ok || force_mc) {
    std::vector<Disk> all = inst.config.disks;
    all.insert(all.end(), image.disks.begin(), image.disks.end());
    const SampleWindow w = window_for(s, all);
    rep.mc_before = mc_area(
        s, [&](const Point& p) { return contains(s, inst.config.disks, p); }, w, mc_samples,
        derive_seed(seed, "kp_before", 0), &inst.config.disks);
    rep.mc_after = mc_area(
        s, [&](const Point& p) { return contains(s, image.disks, p); }, w, mc_samples,
        derive_seed(seed, "kp_after", 0), &image.disks);
  }

  if (exact_ok) {
    rep.residual = rep.area_after - rep.area_before;
    rep.verdict = rep.residual <= kEpsArea ? Verdict::holds : Verdict::violated;
  } else {
    const double after = rep.mc_after->mean;
    const double sigma = rep.mc_after->std_error;
    rep.residual = after - rep.area_before;
    if (after - 4.0 * sigma > rep.area_before + kEpsArea)
      rep.verdict = Verdict::violated;
    else if (after + 4.0 * sigma <= rep.area_before + kEpsArea)
      rep.verdict = Verdict::holds;
    else
      rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

InclusionReport inclusion_check(const KPInstance& inst, long long n, std::uint64_t seed) {
  if (!std::holds_alternative<PiecewiseIsometry>(inst.contraction))
    throw Error(Err::invalid_map, "inclusion_check needs a piecewise isometry");
  const PiecewiseIsometry& f = std::get<PiecewiseIsometry>(inst.contraction);
  const Surface s = inst.config.surface;
  const BallPolytope poly = validate(inst.config);

  std::vector<Disk> v_disks;
  for (const Disk& d : poly.disks) v_disks.push_back(Disk{pw_apply(f, d.center), d.radius});

  std::vector<Disk> uf_disks;
  if (poly.covers_sphere) {
    uf_disks = v_disks;
  } else {
    const CentralComplex cc = central_set(poly);
    const RefinedComplex rc = refine_complex(f, cc);
    for (const CsVertex& v : rc.complex.vertices)
      uf_disks.push_back(Disk{pw_apply(f, v.point), v.radius});
  }

  const SampleWindow w = window_for(s, v_disks);
  Rng rng(derive_seed(seed, "inclusion", 0));
  InclusionReport rep;
  for (long long i = 0; i < n; ++i) {
    const Point p = w.sample(rng);
    if (!contains(s, v_disks, p)) continue;
    ++rep.tested;
    bool inside = false;
    for (const Disk& d : uf_disks)
      if (distance(s, d.center, p) - d.radius <= kEpsPred) {
        inside = true;
        break;
      }
    if (!inside) {
      ++rep.violations;
      if (!rep.witness) rep.witness = p;
    }
  }
  rep.ok = rep.violations == 0;
  return rep;
}

SplitReport split_check(const CentralComplex& cc, const Subcomplex& x, const Subcomplex& y,
                        const PiecewiseIsometry* f, long long mc_samples, std::uint64_t seed) {
  if (!subcomplex_nonempty(x) || !subcomplex_nonempty(y))
    throw Error(Err::empty_subcomplex, "split_check");
  if (!subcomplex_closed(cc, x) || !subcomplex_closed(cc, y))
    throw Error(Err::not_a_cover, "split parts must be closed subcomplexes");
  if (!subcomplex_cover(cc, x, y))
    throw Error(Err::not_a_cover, "X and Y do not cover the central set");
  const Subcomplex z = subcomplex_intersect(x, y);
  if (!subcomplex_nonempty(z))
    throw Error(Err::empty_subcomplex, "X and Y have empty intersection");

  SplitReport rep;
  rep.area_u = union_area(cc.polytope);
  const BallConfiguration cfg_x = sub_union(cc, x);
  const BallConfiguration cfg_y = sub_union(cc, y);
  const BallConfiguration cfg_z = sub_union(cc, z);
  rep.area_x = union_area_of_config(cfg_x);
  rep.area_y = union_area_of_config(cfg_y);
  rep.area_xy = union_area_of_config(cfg_z);
  rep.eq1_residual = rep.area_u - rep.area_x - rep.area_y + rep.area_xy;

  const Surface s = cc.surface;
  const SampleWindow w = window_for(s, cc.polytope.disks);
  rep.sym_diff = mc_area(
      s,
      [&](const Point& p) {
        const bool in_xy = contains(cfg_x, p) && contains(cfg_y, p);
        return in_xy != contains(cfg_z, p);
      },
      w, mc_samples, derive_seed(seed, "split_symdiff", 0), &cc.polytope.disks);

  if (f) {
    rep.has_contraction = true;
    const RefinedComplex rc = refine_complex(*f, cc);
    const Subcomplex xr = refine_subcomplex(rc, cc, x);
    const Subcomplex yr = refine_subcomplex(rc, cc, y);
    const Subcomplex zr = subcomplex_intersect(xr, yr);
    rep.area_uf = union_area_of_config(image_config(rc.complex, subcomplex_all(rc.complex), *f));
    rep.area_xf = union_area_of_config(image_config(rc.complex, xr, *f));
    rep.area_yf = union_area_of_config(image_config(rc.complex, yr, *f));
    rep.area_xyf = union_area_of_config(image_config(rc.complex, zr, *f));
    rep.eq2_slack = rep.area_xf + rep.area_yf - rep.area_xyf - rep.area_uf;
    rep.general_case_slack = (rep.area_x + rep.area_y - rep.area_xf - rep.area_yf) -
                             (rep.area_xy - rep.area_xyf);
  }
  return rep;
}

namespace {

CentralComplex restrict_complex(const CentralComplex& cc, const Subcomplex& sub,
                                const BallPolytope& poly) {
  CentralComplex out;
  out.surface = cc.surface;
  out.polytope = poly;
  std::vector<int> remap(cc.vertices.size(), -1);
  for (std::size_t v = 0; v < cc.vertices.size(); ++v)
    if (sub.vsel[v]) {
      remap[v] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(cc.vertices[v]);
    }
  for (std::size_t e = 0; e < cc.edges.size(); ++e)
    if (sub.esel[e]) {
      CsEdge ed = cc.edges[e];
      ed.v0 = remap[ed.v0];
      ed.v1 = remap[ed.v1];
      out.edges.push_back(ed);
    }
  return out;
}

}  // namespace

Certificate peel_certificate(const CentralComplex& cc, const PiecewiseIsometry& f) {
  Certificate cert;
  const Surface s = cc.surface;
  {
    const TopologyReport topo = topology(cc.polytope);
    const int v = static_cast<int>(cc.vertices.size());
    const int e = static_cast<int>(cc.edges.size());
    if (!topo.simply_connected || v - e != 1)
      throw Error(Err::not_a_tree, "central set is not a tree");
  }
  cert.area_before = union_area(cc.polytope);

  const RefinedComplex rc = refine_complex(f, cc);
  CentralComplex work = rc.complex;

  try {
    cert.area_after =
        union_area_of_config(image_config(work, subcomplex_all(work), f));
  } catch (const Error& err) {
    cert.verdict = Verdict::inconclusive;
    cert.area_after = kNan;
    cert.failure = std::string("rearranged union could not be measured exactly: ") + err.what();
    return cert;
  }

  bool all_pass = true;
  while (!work.edges.empty()) {
    // deterministic leaf choice: lexicographically smallest degree-1 vertex
    int leaf = -1;
    for (int v = 0; v < static_cast<int>(work.vertices.size()); ++v) {
      if (work.degree(v) != 1) continue;
      if (leaf < 0 || lex_less(work.vertices[v].point, work.vertices[leaf].point)) leaf = v;
    }
    if (leaf < 0) throw Error(Err::not_a_tree, "no leaf found while peeling");
    int leaf_edge = -1;
    for (int e = 0; e < static_cast<int>(work.edges.size()); ++e)
      if (work.edges[e].v0 == leaf || work.edges[e].v1 == leaf) {
        leaf_edge = e;
        break;
      }
    const CsEdge& ed = work.edges[leaf_edge];
    const int hinge = ed.v0 == leaf ? ed.v1 : ed.v0;

    Subcomplex y = subcomplex_empty(work);
    y.esel[leaf_edge] = 1;
    y = close_subcomplex(work, y);
    Subcomplex x = complement_closure(work, y);
    if (work.edges.size() == 1) {
      x = subcomplex_empty(work);
      x.vsel[hinge] = 1;
    }

    PeelStep step;
    step.leaf_point = work.vertices[leaf].point;
    step.hinge_point = work.vertices[hinge].point;
    step.hinge_radius_before = work.vertices[hinge].radius;
    step.hinge_radius_after = step.hinge_radius_before;  // radii are carried by the map

    const BallConfiguration cfg_x = sub_union(work, x);
    try {
      step.area_u = union_area_of_config(sub_union(work, subcomplex_all(work)));
      step.area_x = union_area_of_config(cfg_x);
      step.area_y = union_area_of_config(sub_union(work, y));
      step.area_hinge = disk_area(s, work.vertices[hinge].radius);
      step.area_uf = union_area_of_config(image_config(work, subcomplex_all(work), f));
      step.area_xf = union_area_of_config(image_config(work, x, f));
      step.area_yf = union_area_of_config(image_config(work, y, f));
      step.area_hinge_f = disk_area(s, work.vertices[hinge].radius);
    } catch (const Error& err) {
      cert.verdict = Verdict::inconclusive;
      cert.failure = std::string("peel step could not be measured exactly: ") + err.what();
      cert.steps.push_back(step);
      return cert;
    }
    step.eq1_residual = step.area_u - step.area_x - step.area_y + step.area_hinge;
    step.eq2_slack = step.area_xf + step.area_yf - step.area_hinge_f - step.area_uf;
    step.edge_isometry_residual =
        std::abs(distance(s, pw_apply(f, step.leaf_point), pw_apply(f, step.hinge_point)) -
                 distance(s, step.leaf_point, step.hinge_point));
    step.sub_check_ok = sub_central_set_check(work, x).ok;

    step.pass = std::abs(step.eq1_residual) <= kEpsArea && step.eq2_slack >= -kEpsArea &&
                std::abs(step.area_y - step.area_yf) <= kEpsArea &&
                std::abs(step.area_hinge - step.area_hinge_f) <= kEpsPred &&
                step.edge_isometry_residual <= 1e-7 && step.sub_check_ok;
    all_pass = all_pass && step.pass;
    cert.steps.push_back(step);

    work = restrict_complex(work, x, validate(cfg_x, /*allow_shared_corners=*/true));
  }

  const bool inequality = cert.area_after <= cert.area_before + kEpsArea;
  if (all_pass && inequality) {
    cert.verdict = Verdict::holds;
  } else if (!inequality && all_pass) {
    cert.verdict = Verdict::violated;
    cert.failure = "rearranged union area exceeds the original";
  } else {
    cert.verdict = Verdict::inconclusive;
    cert.failure = "a peel step failed its checks";
  }
  return cert;
}

}  // namespace kpc
