#include <doctest.h>

#include <cmath>

#include "kpc/central_set.hpp"
#include "kpc/scene.hpp"

using namespace kpc;

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("parse minimal scene") {
  const Scene s = parse_scene(R"({"surface":"euclidean","disks":[{"center":[0,0],"radius":1}]})");
  CHECK(s.surface == Surface::euclidean);
  REQUIRE(s.disks.size() == 1);
  CHECK(s.disks[0].radius == 1.0);
  CHECK(s.contraction_kind == ContractionKind::none);
}

TEST_CASE("parse errors carry a path") {
  try {
    parse_scene(R"({"surface":"torus","disks":[{"center":[0,0],"radius":1}]})");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Err::unknown_surface);
  }
  try {
    parse_scene(R"({"surface":"euclidean","disks":[{"center":[0,0],"radius":-2}]})");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == Err::invalid_disk);
    CHECK(std::string(e.what()).find("/disks/0") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_scene("{not json"), Error);
}

TEST_CASE("serialize and parse round trip") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Surface s = seed % 3 == 0   ? Surface::euclidean
                      : seed % 3 == 1 ? Surface::spherical
                                      : Surface::hyperbolic;
    Scene scene;
    try {
      scene = random_scene(s, 2 + seed % 5, seed, SceneWant::any);
    } catch (const Error&) {
      continue;
    }
    if (seed % 2 == 0) {
      scene.contraction_kind = ContractionKind::folds;
      const PiecewiseIsometry f = random_folds(scene, 2, seed);
      for (const GeodesicLine& l : f.stages)
        scene.fold_lines.emplace_back(l.base, l.eval(1.0));
      scene.selections["left"] = SceneSelection{{0}, {0}};
    }
    const std::string doc = serialize_scene(scene);
    const Scene back = parse_scene(doc);
    CHECK(serialize_scene(back) == doc);
    REQUIRE(back.disks.size() == scene.disks.size());
    for (std::size_t i = 0; i < scene.disks.size(); ++i) {
      CHECK(back.disks[i].radius == scene.disks[i].radius);
      CHECK(back.disks[i].center.v == scene.disks[i].center.v);
    }
  }
}

TEST_CASE("random scenes are deterministic and match the request") {
  const Scene a = random_scene(Surface::euclidean, 2, 1, SceneWant::simply_connected);
  const Scene b = random_scene(Surface::euclidean, 2, 1, SceneWant::simply_connected);
  CHECK(serialize_scene(a) == serialize_scene(b));
  CHECK(a.disks.size() == 2);
  CHECK(topology(validate(scene_config(a))).simply_connected);

  const Scene c = random_scene(Surface::euclidean, 5, 7, SceneWant::simply_connected);
  const TopologyReport topo = topology(validate(scene_config(c)));
  CHECK(topo.euler_characteristic == 1);
  CHECK(topo.simply_connected);

  const Scene ring = random_scene(Surface::euclidean, 5, 3, SceneWant::one_hole);
  CHECK(topology(validate(scene_config(ring))).hole_count == 1);
}

TEST_CASE("fold specs apply right to left") {
  Scene scene;
  scene.surface = Surface::euclidean;
  scene.disks = {Disk{Point::planar(0, 0), 1.0}};
  scene.contraction_kind = ContractionKind::folds;
  // first listed: fold across the x axis (upper half goes down);
  // last listed acts first: fold across the y axis (right half goes left)
  scene.fold_lines.emplace_back(Point::planar(0, 0), Point::planar(1, 0));
  scene.fold_lines.emplace_back(Point::planar(0, 0), Point::planar(0, -1));
  const PiecewiseIsometry f = scene_folds(scene);
  CHECK(same_point(pw_apply(f, Point::planar(1, 1)), Point::planar(-1, -1), 1e-12));
}

TEST_CASE("jitter is deterministic and small") {
  const Scene a = random_scene(Surface::euclidean, 3, 11, SceneWant::any);
  const Scene j1 = jitter_scene(a, 5);
  const Scene j2 = jitter_scene(a, 5);
  CHECK(serialize_scene(j1) == serialize_scene(j2));
  for (std::size_t i = 0; i < a.disks.size(); ++i) {
    CHECK(j1.disks[i].radius != a.disks[i].radius);
    CHECK(std::abs(j1.disks[i].radius - a.disks[i].radius) <= 1e-7);
  }
}

TEST_CASE("svg export shows disks, edges and corners") {
  Scene two;
  two.surface = Surface::euclidean;
  two.disks = {Disk{Point::planar(0, 0), 1.0}, Disk{Point::planar(1, 0), 1.0}};
  const CentralComplex cc = central_set(validate(scene_config(two)));
  const std::string svg = svg_export(two, &cc);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count_occurrences(svg, "class=\"disk\"") == 2);
  CHECK(count_occurrences(svg, "class=\"edge\"") == 1);
  CHECK(count_occurrences(svg, "class=\"corner\"") == 2);
  const std::string bare = svg_export(two, nullptr);
  CHECK(count_occurrences(bare, "class=\"disk\"") == 2);
  CHECK(count_occurrences(bare, "class=\"edge\"") == 0);

  Scene y;
  y.surface = Surface::euclidean;
  y.disks = {Disk{Point::planar(0, 0), 1.0}, Disk{Point::planar(1, 0), 1.0},
             Disk{Point::planar(0.5, std::sqrt(3.0) / 2), 1.0}};
  const CentralComplex ycc = central_set(validate(scene_config(y)));
  const std::string ysvg = svg_export(y, &ycc);
  CHECK(count_occurrences(ysvg, "class=\"edge\"") == 3);

  // projected surfaces render paths rather than circles
  const Scene sph = random_scene(Surface::spherical, 3, 5, SceneWant::any);
  const std::string ssvg = svg_export(sph, nullptr);
  CHECK(count_occurrences(ssvg, "class=\"disk\"") == 3);
}
