// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "grid_oracle.hpp"
#include "kpc/kp_checker.hpp"
#include "kpc/report_json.hpp"
#include "kpc/scene.hpp"

using namespace kpc;
using kpc::test::grid_medial_oracle;
using kpc::test::one_sided_hausdorff;
using kpc::test::OracleParams;
using kpc::test::sample_complex;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s - %s\n", idx, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double lens_area(double r, double d) {
  return 2.0 * r * r * std::acos(d / (2.0 * r)) - 0.5 * d * std::sqrt(4.0 * r * r - d * d);
}

const Surface kSurfaces[] = {Surface::euclidean, Surface::spherical, Surface::hyperbolic};

std::vector<Scene> g_euclidean_scenes;  // shared between criteria 2 and 3

// --- criterion 1: the two-disk fold instance ------------------------------

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  KPInstance inst;
  inst.config = make_config(Surface::euclidean,
                            {Disk{Point::planar(0, 0), 1.0}, Disk{Point::planar(1, 0), 1.0}});
  inst.contraction =
      fold(Surface::euclidean,
           line_through(Surface::euclidean, Point::planar(0.75, 0), Point::planar(0.75, -1)));
  const KPReport rep = kp_verify(inst);
  const double elapsed = seconds_since(t0);
  const double expect_before = 2 * kPi - lens_area(1.0, 1.0);
  const double expect_after = 2 * kPi - lens_area(1.0, 0.5);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "before %.9f (want 5.054815), after %.9f (want 4.131076), verdict %s, %.3f s",
                rep.area_before, rep.area_after, verdict_name(rep.verdict), elapsed);
  report(1,
         std::abs(rep.area_before - 5.054815) <= 1e-6 &&
             std::abs(rep.area_after - 4.131076) <= 1e-6 &&
             std::abs(rep.area_before - expect_before) <= 1e-9 &&
             std::abs(rep.area_after - expect_after) <= 1e-9 &&
             rep.verdict == Verdict::holds && elapsed < 1.0,
         buf);
}

// --- criterion 2: grid oracle equivalence ---------------------------------

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  int scenes = 0;
  double worst_ab = 0.0, worst_ba = 0.0;
  std::uint64_t seed = 0;
  bool ok = true;
  while (scenes < 50 && seconds_since(t0) < 280.0) {
    ++seed;
    Scene scene;
    try {
      scene = random_scene(Surface::euclidean, 2 + seed % 5, seed, SceneWant::any);
    } catch (const Error&) {
      continue;
    }
    const BallPolytope poly = validate(scene_config(scene));
    const CentralComplex cc = central_set(poly);
    const std::vector<Point> grid = grid_medial_oracle(scene.disks, OracleParams{});
    const std::vector<Point> axis = sample_complex(cc, 0.005);
    const double ab = one_sided_hausdorff(Surface::euclidean, grid, axis);
    const double ba = one_sided_hausdorff(Surface::euclidean, axis, grid);
    worst_ab = std::max(worst_ab, ab);
    worst_ba = std::max(worst_ba, ba);
    if (ab > 0.02 || ba > 0.02) ok = false;
    g_euclidean_scenes.push_back(scene);
    ++scenes;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d scenes, worst grid->complex %.4f, worst complex->grid %.4f, %.1f s", scenes,
                worst_ab, worst_ba, seconds_since(t0));
  report(2, ok && scenes >= 50 && seconds_since(t0) < 300.0, buf);
}

// --- criterion 3: vertex balls reproduce the union ------------------------

void criterion3() {
  bool ok = true;
  int scenes = 0;
  double worst_ratio = 0.0;
  auto check_scene = [&](const Scene& scene, std::uint64_t seed) {
    const BallPolytope poly = validate(scene_config(scene));
    CentralComplex cc;
    try {
      cc = central_set(poly);
    } catch (const Error&) {
      ok = false;
      return;
    }
    const BallConfiguration rec = reconstruct(cc);
    const SampleWindow w = window_for(scene.surface, scene.disks);
    const MonteCarloEstimate est = mc_area(
        scene.surface,
        [&](const Point& p) {
          return contains(scene.surface, scene.disks, p) != contains(rec, p);
        },
        w, 1000000, derive_seed(900, "c3", seed));
    if (est.mean > 4.0 * est.std_error + 1e-12) ok = false;
    if (est.std_error > 0.0)
      worst_ratio = std::max(worst_ratio, est.mean / est.std_error);
    ++scenes;
  };
  std::uint64_t n = 0;
  for (const Scene& scene : g_euclidean_scenes) check_scene(scene, n++);
  for (const Surface s : {Surface::spherical, Surface::hyperbolic}) {
    int made = 0;
    std::uint64_t seed = 2000;
    while (made < 20) {
      ++seed;
      try {
        const Scene scene = random_scene(s, 2 + seed % 5, seed, SceneWant::any);
        check_scene(scene, n++);
        ++made;
      } catch (const Error&) {
        continue;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d scenes, worst |diff|/sigma %.2f", scenes, worst_ratio);
  report(3, ok && scenes >= 90, buf);
}

// --- criterion 4: Euler characteristic of the complex ----------------------

void criterion4() {
  bool ok = true;
  int scenes = 0, holed = 0;
  auto check = [&](const Scene& scene) {
    const BallPolytope poly = validate(scene_config(scene));
    const TopologyReport topo = topology(poly);
    const CentralComplex cc = central_set(poly);
    const int chi = static_cast<int>(cc.vertices.size()) - static_cast<int>(cc.edges.size());
    if (chi != topo.euler_characteristic) ok = false;
    if (topo.simply_connected) {
      // a tree: connected with V - E = 1 (connectivity is enforced on build)
      if (chi != 1) ok = false;
    }
    if (topo.hole_count == 1) ++holed;
    ++scenes;
  };
  for (const Scene& scene : g_euclidean_scenes) check(scene);
  std::uint64_t seed = 3000;
  int made = 0;
  while (made < 12) {
    ++seed;
    try {
      const Surface s = kSurfaces[seed % 3];
      check(random_scene(s, 4 + seed % 3, seed, SceneWant::one_hole));
      ++made;
    } catch (const Error&) {
      continue;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d scenes, %d with one hole", scenes, holed);
  report(4, ok && holed >= 10, buf);
}

// --- criterion 5: splitting identity ---------------------------------------

void criterion5() {
  bool ok = true;
  int splits = 0;
  double worst_eq1 = 0.0, worst_sym = 0.0;
  std::uint64_t seed = 4000;
  while (splits < 102) {
    ++seed;
    const Surface s = kSurfaces[seed % 3];
    Scene scene;
    try {
      scene = random_scene(s, 2 + seed % 5, seed, SceneWant::simply_connected);
    } catch (const Error&) {
      continue;
    }
    CentralComplex cc;
    try {
      cc = central_set(validate(scene_config(scene)));
    } catch (const Error&) {
      continue;
    }
    if (cc.edges.empty()) continue;
    Rng rng(derive_seed(seed, "split", 0));
    const int e = static_cast<int>(rng.uniform_int(cc.edges.size()));
    const double u = rng.uniform(0.3, 0.7);
    CentralComplex sub = subdivide(cc, e, u);
    const int nv = static_cast<int>(sub.vertices.size()) - 1;
    Subcomplex x = subcomplex_empty(sub);
    x.esel[e] = 1;
    std::vector<char> seen(sub.vertices.size(), 0);
    seen[nv] = 1;
    std::vector<int> stack{sub.edges[e].v0 == nv ? sub.edges[e].v1 : sub.edges[e].v0};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (seen[v]) continue;
      seen[v] = 1;
      for (int e2 = 0; e2 < static_cast<int>(sub.edges.size()); ++e2) {
        if (x.esel[e2]) continue;
        if (sub.edges[e2].v0 == v || sub.edges[e2].v1 == v) {
          x.esel[e2] = 1;
          const int other = sub.edges[e2].v0 == v ? sub.edges[e2].v1 : sub.edges[e2].v0;
          if (!seen[other]) stack.push_back(other);
        }
      }
    }
    x = close_subcomplex(sub, x);
    const Subcomplex y = complement_closure(sub, x);
    if (!subcomplex_nonempty(y)) continue;
    SplitReport rep;
    try {
      rep = split_check(sub, x, y, nullptr, 100000, derive_seed(seed, "c5", 0));
    } catch (const Error&) {
      ok = false;
      ++splits;
      continue;
    }
    worst_eq1 = std::max(worst_eq1, std::abs(rep.eq1_residual));
    if (std::abs(rep.eq1_residual) > 1e-6) ok = false;
    if (rep.sym_diff.mean > 4.0 * rep.sym_diff.std_error + 1e-12) ok = false;
    if (rep.sym_diff.std_error > 0)
      worst_sym = std::max(worst_sym, rep.sym_diff.mean / rep.sym_diff.std_error);
    ++splits;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d splits, worst |eq1| %.2e, worst symdiff/sigma %.2f", splits,
                worst_eq1, worst_sym);
  report(5, ok && splits >= 100, buf);
}

// --- criterion 6: the main sweep -------------------------------------------

void criterion6() {
  bool ok = true;
  char buf[512];
  std::string detail;
  for (const Surface s : kSurfaces) {
    int made = 0, holds = 0, violated = 0, inconclusive = 0, disagreements = 0;
    std::uint64_t seed = 10000;
    while (made < 200) {
      ++seed;
      Scene scene;
      try {
        scene = random_scene(s, 2 + seed % 5, seed, SceneWant::simply_connected);
      } catch (const Error&) {
        continue;
      }
      const PiecewiseIsometry f = random_folds(scene, 1 + static_cast<int>(seed % 4),
                                               derive_seed(seed, "c6fold", 0));
      KPInstance inst;
      inst.config = scene_config(scene);
      inst.contraction = f;
      ++made;
      Verdict kp = Verdict::inconclusive, cert = Verdict::inconclusive;
      try {
        kp = kp_verify(inst, seed, 200000, false).verdict;
        cert = peel_certificate(central_set(validate(inst.config)), f).verdict;
      } catch (const Error&) {
        ++inconclusive;
        continue;
      }
      if (kp == Verdict::inconclusive || cert == Verdict::inconclusive) {
        ++inconclusive;
        continue;
      }
      if (kp != cert) ++disagreements;
      if (kp == Verdict::holds) ++holds;
      if (kp == Verdict::violated) ++violated;
    }
    const double inc_rate = static_cast<double>(inconclusive) / made;
    if (violated > 0 || disagreements > 0 || inc_rate >= 0.05) ok = false;
    std::snprintf(buf, sizeof buf, "%s %d instances: %d holds, %d violated, %d inconclusive; ",
                  surface_name(s), made, holds, violated, inconclusive);
    detail += buf;
  }
  report(6, ok, detail);
}

// --- criterion 7: spherical corollaries ------------------------------------

Point sphere_point_at(const Point& from, double theta, double dist) {
  const CircleFrame f = circle_frame(Surface::spherical, from, 1.0);
  const Vec3 dir = std::cos(theta) * f.e1 + std::sin(theta) * f.e2;
  return geodesic_point(Surface::spherical, from, dir, dist);
}

bool sphere_margins(const std::vector<Disk>& disks) {
  constexpr double m = 0.08;
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      const double d = distance(Surface::spherical, disks[i].center, disks[j].center);
      const double ri = disks[i].radius, rj = disks[j].radius;
      if (d < m) return false;
      if (std::abs(d - (ri + rj)) < m) return false;
      if (std::abs(d - std::abs(ri - rj)) < m) return false;
      if (std::abs(d - (2 * kPi - ri - rj)) < m) return false;
      if (d + ri > rj + m && d + rj > ri + m) continue;
      return false;  // containment within margin
    }
  return true;
}

void criterion7() {
  bool ok = true;
  int big_done = 0, small_done = 0;
  double worst_big = -1e30, worst_small = -1e30;
  std::uint64_t seed = 5000;
  // unions of large caps cannot grow
  while (big_done < 50 && seed < 8000) {
    ++seed;
    Rng rng(derive_seed(seed, "c7big", 0));
    std::vector<Disk> disks{Disk{Point::embedded(Surface::spherical, {0, 0, 1}),
                                 rng.uniform(kPi / 2 + 0.08, 2.0)}};
    const int k = 2 + static_cast<int>(rng.uniform_int(3));
    for (int i = 1; i < k; ++i) {
      const Disk& anchor = disks[rng.uniform_int(disks.size())];
      const double r = rng.uniform(kPi / 2 + 0.08, 2.0);
      const double lo = std::max(std::abs(r - anchor.radius) + 0.15, 0.2);
      const double hi = std::min(r + anchor.radius - 0.15, kPi - 0.1);
      if (hi <= lo) continue;
      disks.push_back(
          Disk{sphere_point_at(anchor.center, rng.uniform(0.0, 2 * kPi), rng.uniform(lo, hi)), r});
    }
    if (!sphere_margins(disks)) continue;
    double before;
    try {
      before = union_area(validate(make_config(Surface::spherical, disks)));
    } catch (const Error&) {
      continue;
    }
    Scene probe;
    probe.surface = Surface::spherical;
    probe.disks = disks;
    const PiecewiseIsometry f =
        random_folds(probe, 1 + static_cast<int>(seed % 3), derive_seed(seed, "c7f", 1));
    std::vector<Disk> folded;
    for (const Disk& d : disks) folded.push_back(Disk{pw_apply(f, d.center), d.radius});
    double after;
    try {
      after = union_area(validate(make_config(Surface::spherical, folded), true));
    } catch (const Error&) {
      continue;
    }
    worst_big = std::max(worst_big, after - before);
    if (after > before + 1e-6) ok = false;
    ++big_done;
  }
  // intersections of small caps cannot shrink
  seed = 6000;
  while (small_done < 50 && seed < 9000) {
    ++seed;
    Scene scene;
    try {
      scene = random_scene(Surface::spherical, 2 + seed % 3, seed, SceneWant::any);
    } catch (const Error&) {
      continue;
    }
    double before;
    try {
      before = intersection_area_sphere(scene_config(scene));
    } catch (const Error&) {
      continue;
    }
    const PiecewiseIsometry f =
        random_folds(scene, 1 + static_cast<int>(seed % 3), derive_seed(seed, "c7s", 1));
    std::vector<Disk> folded;
    for (const Disk& d : scene.disks) folded.push_back(Disk{pw_apply(f, d.center), d.radius});
    double after;
    try {
      after = intersection_area_sphere(make_config(Surface::spherical, folded));
    } catch (const Error&) {
      continue;
    }
    worst_small = std::max(worst_small, before - after);
    if (after < before - 1e-6) ok = false;
    ++small_done;
  }
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "%d large-cap unions (worst growth %.2e), %d small-cap intersections (worst "
                "shrink %.2e)",
                big_done, worst_big, small_done, worst_small);
  report(7, ok && big_done >= 50 && small_done >= 50, buf);
}

// --- criterion 8: relative central sets ------------------------------------

void criterion8() {
  bool ok = true;
  long long pairs = 0;
  for (const Surface s : kSurfaces) {
    int scenes = 0;
    long long done = 0;
    std::uint64_t seed = 7000;
    while (done < 1000 && seed < 10000) {
      ++seed;
      Scene scene;
      CentralComplex cc;
      try {
        scene = random_scene(s, 2 + seed % 5, seed, SceneWant::simply_connected);
        cc = central_set(validate(scene_config(scene)));
      } catch (const Error&) {
        continue;
      }
      ++scenes;
      const SampleWindow w = window_for(s, scene.disks);
      Rng rng(derive_seed(seed, "c8", 0));
      int got = 0;
      for (int tries = 0; tries < 4000 && got < 30; ++tries) {
        const Point p = w.sample(rng);
        if (!contains(s, scene.disks, p)) continue;
        if (distance_to_boundary(cc.polytope, p) < 0.01) continue;
        const RelativeCentralSet rel = relative_central_set(cc, p);
        if (!rel.nonempty || !rel.connected) ok = false;
        ++got;
        ++done;
        ++pairs;
      }
    }
    if (done < 1000) ok = false;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%lld (scene, point) pairs", pairs);
  report(8, ok, buf);
}

// --- criterion 9: determinism ----------------------------------------------

void criterion9() {
  bool ok = true;
  const Scene scene = random_scene(Surface::euclidean, 4, 4242, SceneWant::simply_connected);
  const Scene scene2 = random_scene(Surface::euclidean, 4, 4242, SceneWant::simply_connected);
  if (serialize_scene(scene) != serialize_scene(scene2)) ok = false;
  const PiecewiseIsometry f = random_folds(scene, 3, 4242);
  KPInstance inst;
  inst.config = scene_config(scene);
  inst.contraction = f;
  const std::string r1 = kp_report_json(kp_verify(inst, 17, 200000, true));
  const std::string r2 = kp_report_json(kp_verify(inst, 17, 200000, true));
  if (r1 != r2) ok = false;
  const CentralComplex cc = central_set(validate(inst.config));
  const std::string c1 = certificate_json(peel_certificate(cc, f));
  const std::string c2 = certificate_json(peel_certificate(cc, f));
  if (c1 != c2) ok = false;
  report(9, ok, "reports, certificates and scenes are byte-identical across reruns");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures == 0) std::printf("acceptance: all criteria PASS\n");
  else std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
