#pragma once
// Contractive rearrangements: finite center maps, geodesic folds and their
// compositions as piecewise isometries, and the refinement of a central
// complex that makes the map isometric on every edge.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kpc/central_set.hpp"
#include "kpc/geometry.hpp"

namespace kpc {

struct CenterMap {
  Surface surface{Surface::euclidean};
  std::vector<std::pair<Point, Point>> pairs;  // (source, image)
};

struct ContractionWitness {
  Point a, b;
  double before{0.0}, after{0.0};
};

struct ContractionCheck {
  bool contractive{false};
  bool has_witness{false};
  ContractionWitness witness;  // worst violating pair when not contractive
};

ContractionCheck is_contractive(Surface s, const CenterMap& m);

struct PwCell {
  // geodesically convex cell: sign * side(p) <= tol for every constraint
  std::vector<std::pair<GeodesicLine, int>> constraints;
  Isometry iso;
};

struct PiecewiseIsometry {
  Surface surface{Surface::euclidean};
  std::vector<GeodesicLine> stages;  // fold lines, applied first to last
  std::vector<PwCell> cells;         // explicit variant; empty for fold-built maps
  bool explicit_cells() const { return !cells.empty(); }
};

PiecewiseIsometry identity_contraction(Surface s);
// Two half-plane cells: identity where side(p) <= 0, reflection on the other side.
PiecewiseIsometry fold(Surface s, const GeodesicLine& line);
PiecewiseIsometry compose(const PiecewiseIsometry& f, const PiecewiseIsometry& g);  // f after g
PiecewiseIsometry explicit_piecewise(Surface s, std::vector<PwCell> cells);

Point pw_apply(const PiecewiseIsometry& f, const Point& p);
int pw_cell_of(const PiecewiseIsometry& f, const Point& p);  // explicit variant

struct PwDefect {
  std::string what;
};

// Sampled validation: 1-Lipschitz over random pairs, per-cell isometry, and
// agreement of neighboring cells near shared boundaries.
std::vector<PwDefect> pw_validate(const PiecewiseIsometry& f, const Point& center, double radius,
                                  std::uint64_t seed);

struct RefinedComplex {
  CentralComplex complex;
  std::vector<int> origin_edge;  // for each refined edge, the edge of the input complex
};

// Subdivides every edge at its crossings with the fold lines (or explicit
// cell boundaries) so that the map restricted to each edge is an isometry;
// adjacent pieces mapped by the same isometry are merged back.
RefinedComplex refine_complex(const PiecewiseIsometry& f, const CentralComplex& cc);

// Selection transport onto a refined complex: vertices keep their indices,
// refined pieces inherit the selection of their original edge, subdivision
// vertices join when an incident piece is selected.
Subcomplex refine_subcomplex(const RefinedComplex& rc, const CentralComplex& cc,
                             const Subcomplex& sub);

}  // namespace kpc
