#pragma once
// Scene documents (JSON), seeded random scene generation, and SVG export.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kpc/ball_union.hpp"
#include "kpc/central_set.hpp"
#include "kpc/contraction.hpp"

namespace kpc {

enum class ContractionKind { none, folds, pointmap };

struct SceneSelection {
  std::vector<int> vertices;
  std::vector<int> edges;
};

struct Scene {
  Surface surface{Surface::euclidean};
  std::vector<Disk> disks;
  ContractionKind contraction_kind{ContractionKind::none};
  std::vector<std::pair<Point, Point>> fold_lines;  // applied right to left
  CenterMap pointmap;
  std::map<std::string, SceneSelection> selections;
  std::string label;
  std::uint64_t seed{0};
};

Scene parse_scene(const std::string& document);
std::string serialize_scene(const Scene& scene);

BallConfiguration scene_config(const Scene& scene);
PiecewiseIsometry scene_folds(const Scene& scene);

// Deterministic radius jitter of magnitude 1e-7 to escape degenerate inputs.
Scene jitter_scene(const Scene& scene, std::uint64_t seed);

enum class SceneWant { simply_connected, any, one_hole };

// Disks attached one by one, each overlapping the union built so far,
// resampled until the configuration validates with generic margins and the
// topology matches the request.
Scene random_scene(Surface s, int k, std::uint64_t seed, SceneWant want);

// Random fold lines near the scene, composed right to left.
PiecewiseIsometry random_folds(const Scene& scene, int count, std::uint64_t seed);

std::string svg_export(const Scene& scene, const CentralComplex* cc);

std::string format_number(double x);  // 17 significant digits, stable across runs

}  // namespace kpc
