#include <doctest.h>

#include <cmath>

#include "kpc/kp_checker.hpp"
#include "kpc/report_json.hpp"
#include "kpc/scene.hpp"
#include "test_util.hpp"

using namespace kpc;
using kpc::test::random_line;
using kpc::test::random_point;

namespace {

double lens_area(double r, double d) {
  return 2.0 * r * r * std::acos(d / (2.0 * r)) - 0.5 * d * std::sqrt(4.0 * r * r - d * d);
}

BallConfiguration two_disks(double d) {
  return make_config(Surface::euclidean,
                     {Disk{Point::planar(0, 0), 1.0}, Disk{Point::planar(d, 0), 1.0}});
}

// vertical fold at x = a, reflecting the right half plane to the left
GeodesicLine fold_line_at(double a) {
  return line_through(Surface::euclidean, Point::planar(a, 0), Point::planar(a, -1));
}

}  // namespace

TEST_CASE("mc_area anchors") {
  const SampleWindow w = window_for(Surface::euclidean, {Disk{Point::planar(0, 0), 1.0}});
  const MonteCarloEstimate disk = mc_area(
      Surface::euclidean,
      [](const Point& p) { return p.x() * p.x() + p.y() * p.y() <= 1.0; }, w, 200000, 3);
  CHECK(std::abs(disk.mean - kPi) <= 4.0 * disk.std_error);
  const MonteCarloEstimate empty = mc_area(
      Surface::euclidean, [](const Point&) { return false; }, w, 10000, 3);
  CHECK(empty.mean == 0.0);
  CHECK(empty.std_error == 0.0);
  SampleWindow sphere;
  sphere.surface = Surface::spherical;
  const MonteCarloEstimate hemi = mc_area(
      Surface::spherical, [](const Point& p) { return p.z() >= 0.0; }, sphere, 200000, 4);
  CHECK(std::abs(hemi.mean - 2 * kPi) <= 4.0 * hemi.std_error);
  // identical seeds give bit-identical estimates
  const MonteCarloEstimate again = mc_area(
      Surface::spherical, [](const Point& p) { return p.z() >= 0.0; }, sphere, 200000, 4);
  CHECK(hemi.mean == again.mean);
  CHECK(hemi.std_error == again.std_error);
  const std::vector<Disk> outside{Disk{Point::planar(5, 5), 1.0}};
  CHECK_THROWS_AS(mc_area(Surface::euclidean, [](const Point&) { return true; },
                          SampleWindow{Surface::euclidean, 0, 1, 0, 1, 0}, 10, 1, &outside),
                  Error);
}

TEST_CASE("hyperbolic window sampling matches disk areas") {
  SampleWindow w;
  w.surface = Surface::hyperbolic;
  w.radius = 2.5;
  const Point c = Point::embedded(Surface::hyperbolic, {std::sinh(0.7), 0, std::cosh(0.7)});
  const MonteCarloEstimate est = mc_area(
      Surface::hyperbolic,
      [&](const Point& p) { return distance(Surface::hyperbolic, c, p) <= 0.9; }, w, 300000, 9);
  CHECK(std::abs(est.mean - disk_area(Surface::hyperbolic, 0.9)) <= 4.0 * est.std_error);
}

TEST_CASE("kp_verify: two unit disks folded from distance 1 to 1/2") {
  KPInstance inst;
  inst.config = two_disks(1.0);
  inst.contraction = fold(Surface::euclidean, fold_line_at(0.75));
  const KPReport rep = kp_verify(inst);
  CHECK(rep.contractive);
  CHECK(rep.verdict == Verdict::holds);
  CHECK(rep.image_representation == "central_set_vertices");
  CHECK(rep.area_before == doctest::Approx(2 * kPi - lens_area(1, 1.0)).epsilon(1e-9));
  CHECK(rep.area_after == doctest::Approx(2 * kPi - lens_area(1, 0.5)).epsilon(1e-9));
  CHECK(rep.area_before == doctest::Approx(5.054815).epsilon(1e-6));
  CHECK(rep.area_after == doctest::Approx(4.131076).epsilon(1e-6));
}

TEST_CASE("kp_verify: identity and center maps") {
  KPInstance id_inst;
  id_inst.config = two_disks(1.0);
  id_inst.contraction = identity_contraction(Surface::euclidean);
  const KPReport id_rep = kp_verify(id_inst);
  CHECK(id_rep.verdict == Verdict::holds);
  CHECK(id_rep.area_after == doctest::Approx(id_rep.area_before).epsilon(1e-12));

  KPInstance cm_inst;
  cm_inst.config = two_disks(1.0);
  cm_inst.contraction = CenterMap{Surface::euclidean,
                                  {{Point::planar(0, 0), Point::planar(0, 0)},
                                   {Point::planar(1, 0), Point::planar(0.5, 0)}}};
  const KPReport cm_rep = kp_verify(cm_inst);
  CHECK(cm_rep.verdict == Verdict::holds);
  CHECK(cm_rep.image_representation == "original_disks");
  CHECK(cm_rep.area_after == doctest::Approx(2 * kPi - lens_area(1, 0.5)).epsilon(1e-9));

  KPInstance bad;
  bad.config = two_disks(1.0);
  bad.contraction = CenterMap{Surface::euclidean,
                              {{Point::planar(0, 0), Point::planar(0, 0)},
                               {Point::planar(1, 0), Point::planar(1.5, 0)}}};
  CHECK_THROWS_AS(kp_verify(bad), Error);
}

TEST_CASE("inclusion check") {
  KPInstance inst;
  inst.config = two_disks(1.0);
  inst.contraction = identity_contraction(Surface::euclidean);
  const InclusionReport id_rep = inclusion_check(inst, 20000, 5);
  CHECK(id_rep.ok);
  CHECK(id_rep.tested > 1000);

  inst.contraction = fold(Surface::euclidean, fold_line_at(0.75));
  const InclusionReport fold_rep = inclusion_check(inst, 100000, 5);
  CHECK(fold_rep.ok);
  CHECK(fold_rep.violations == 0);
}

TEST_CASE("split_check on the two-disk complex") {
  CentralComplex cc = central_set(validate(two_disks(1.0)));
  cc = subdivide(cc, 0, 0.5);
  Subcomplex x = subcomplex_empty(cc), y = subcomplex_empty(cc);
  x.esel[0] = 1;
  y.esel[1] = 1;
  x = close_subcomplex(cc, x);
  y = close_subcomplex(cc, y);
  const SplitReport rep = split_check(cc, x, y, nullptr, 100000, 11);
  CHECK(std::abs(rep.eq1_residual) <= 1e-6);
  CHECK(rep.sym_diff.mean <= 4.0 * rep.sym_diff.std_error + 1e-9);
  CHECK(rep.area_u == doctest::Approx(2 * kPi - lens_area(1, 1.0)).epsilon(1e-9));
  CHECK(rep.area_xy == doctest::Approx(disk_area(Surface::euclidean, std::sqrt(3.0) / 2))
                          .epsilon(1e-9));

  // X the whole complex, Y a single vertex: U_{X cap Y} = U_Y
  Subcomplex whole = subcomplex_all(cc);
  Subcomplex vtx = subcomplex_empty(cc);
  vtx.vsel[0] = 1;
  const SplitReport rep2 = split_check(cc, whole, vtx, nullptr, 50000, 11);
  CHECK(std::abs(rep2.eq1_residual) <= 1e-9);
  CHECK(rep2.area_xy == doctest::Approx(rep2.area_y).epsilon(1e-12));

  // a fold that fixes the complex pointwise keeps the hinge ball congruent
  const PiecewiseIsometry fx =
      fold(Surface::euclidean,
           line_through(Surface::euclidean, Point::planar(0, 0), Point::planar(1, 0)));
  const SplitReport rep3 = split_check(cc, x, y, &fx, 50000, 11);
  CHECK(rep3.has_contraction);
  CHECK(rep3.eq2_slack >= -1e-6);
  CHECK(rep3.area_xyf == doctest::Approx(rep3.area_xy).epsilon(1e-9));

  // parts that do not cover raise NotACover
  Subcomplex small = subcomplex_empty(cc);
  small.vsel[0] = 1;
  CHECK_THROWS_AS(split_check(cc, small, vtx, nullptr, 1000, 1), Error);
}

TEST_CASE("peel certificate: single ball, segment, Y tree") {
  // one disk: empty certificate, holds
  const CentralComplex one =
      central_set(validate(make_config(Surface::euclidean, {Disk{Point::planar(0, 0), 1.0}})));
  const Certificate c1 =
      peel_certificate(one, fold(Surface::euclidean, fold_line_at(2.0)));
  CHECK(c1.verdict == Verdict::holds);
  CHECK(c1.steps.empty());

  // two disks, fold along the line through both centers: one trivial step
  const CentralComplex two = central_set(validate(two_disks(1.0)));
  const PiecewiseIsometry along =
      fold(Surface::euclidean,
           line_through(Surface::euclidean, Point::planar(0, 0), Point::planar(1, 0)));
  const Certificate c2 = peel_certificate(two, along);
  CHECK(c2.verdict == Verdict::holds);
  REQUIRE(c2.steps.size() == 1);
  CHECK(std::abs(c2.area_after - c2.area_before) <= 1e-9);
  CHECK(c2.steps[0].pass);
  CHECK(std::abs(c2.steps[0].eq1_residual) <= 1e-9);

  // Y tree, fold through the hub perpendicular to one leaf edge
  const BallConfiguration ycfg = make_config(
      Surface::euclidean, {Disk{Point::planar(0, 0), 1.0}, Disk{Point::planar(1, 0), 1.0},
                           Disk{Point::planar(0.5, std::sqrt(3.0) / 2), 1.0}});
  const CentralComplex y = central_set(validate(ycfg));
  const Point hub = Point::planar(0.5, std::sqrt(3.0) / 6);
  // leaf edge toward (0,0); its direction at the hub
  const Vec3 dir = direction(Surface::euclidean, Point{Surface::euclidean, {0.5, std::sqrt(3.0) / 6, 1}},
                             Point::planar(0, 0));
  const Point other = Point::planar(hub.x() - dir[1], hub.y() + dir[0]);
  const Certificate c3 = peel_certificate(y, fold(Surface::euclidean,
                                                  line_through(Surface::euclidean, hub, other)));
  CHECK(c3.verdict == Verdict::holds);
  CHECK(c3.steps.size() == 3);
  for (const PeelStep& s : c3.steps) CHECK(s.pass);

  KPInstance inst;
  inst.config = ycfg;
  inst.contraction = fold(Surface::euclidean, line_through(Surface::euclidean, hub, other));
  const KPReport rep = kp_verify(inst);
  CHECK(rep.verdict == Verdict::holds);
  CHECK(std::abs(rep.area_after - c3.area_after) <= 1e-6);

  // non-trees are rejected
  const Scene ring = random_scene(Surface::euclidean, 5, 7, SceneWant::one_hole);
  const CentralComplex rc = central_set(validate(scene_config(ring)));
  CHECK_THROWS_AS(peel_certificate(rc, along), Error);
}

TEST_CASE("certificates and reports are deterministic") {
  const Scene scene = random_scene(Surface::euclidean, 4, 4242, SceneWant::simply_connected);
  const PiecewiseIsometry f = random_folds(scene, 2, 4242);
  KPInstance inst;
  inst.config = scene_config(scene);
  inst.contraction = f;
  const std::string r1 = kp_report_json(kp_verify(inst, 99, 50000, true));
  const std::string r2 = kp_report_json(kp_verify(inst, 99, 50000, true));
  CHECK(r1 == r2);
  const CentralComplex cc = central_set(validate(inst.config));
  const std::string c1 = certificate_json(peel_certificate(cc, f));
  const std::string c2 = certificate_json(peel_certificate(cc, f));
  CHECK(c1 == c2);
}

TEST_CASE("theorem sweep smoke test on all surfaces") {
  Rng rng(97);
  for (const Surface s : {Surface::euclidean, Surface::spherical, Surface::hyperbolic}) {
    int holds = 0, total = 0;
    for (int i = 0; i < 6; ++i) {
      Scene scene;
      try {
        scene = random_scene(s, 2 + i % 4, 2100 + i, SceneWant::simply_connected);
      } catch (const Error&) {
        continue;
      }
      PiecewiseIsometry f = random_folds(scene, 1 + i % 3, 31 * i + 7);
      KPInstance inst;
      inst.config = scene_config(scene);
      inst.contraction = f;
      try {
        const KPReport rep = kp_verify(inst, 1000 + i, 100000, false);
        ++total;
        if (rep.verdict == Verdict::holds) ++holds;
      } catch (const Error&) {
        continue;
      }
    }
    CHECK(total >= 4);
    CHECK(holds == total);
  }
}

TEST_CASE("spherical corollary smoke tests") {
  // large caps: union area cannot grow under a fold
  const Point a = Point::embedded(Surface::spherical, {0, 0, 1});
  const Point b = Point::embedded(Surface::spherical, {std::sin(1.3), 0, std::cos(1.3)});
  const BallConfiguration big =
      make_config(Surface::spherical, {Disk{a, kPi / 2 + 0.2}, Disk{b, kPi / 2 + 0.35}});
  const double before = union_area(validate(big));
  Rng rng(101);
  const GeodesicLine line = random_line(Surface::spherical, rng);
  const PiecewiseIsometry f = fold(Surface::spherical, line);
  std::vector<Disk> folded;
  for (const Disk& d : big.disks) folded.push_back(Disk{pw_apply(f, d.center), d.radius});
  const double after = union_area(validate(make_config(Surface::spherical, folded), true));
  CHECK(after <= before + 1e-6);

  // small caps: intersection area cannot shrink
  const BallConfiguration small =
      make_config(Surface::spherical, {Disk{a, 1.2}, Disk{b, 1.1}});
  const double ibefore = intersection_area_sphere(small);
  std::vector<Disk> folded2;
  for (const Disk& d : small.disks) folded2.push_back(Disk{pw_apply(f, d.center), d.radius});
  const double iafter = intersection_area_sphere(make_config(Surface::spherical, folded2));
  CHECK(iafter >= ibefore - 1e-6);
}
