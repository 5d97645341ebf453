#pragma once
// The verification engine: seeded Monte Carlo area oracle, union-area
// inequality verdicts for contractive rearrangements, splitting-identity
// checks, the inclusion test, and the leaf-peeling certificate.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kpc/ball_union.hpp"
#include "kpc/central_set.hpp"
#include "kpc/contraction.hpp"
#include "kpc/rng.hpp"

namespace kpc {

struct MonteCarloEstimate {
  double mean{0.0};
  double std_error{0.0};
  long long samples{0};
  std::uint64_t seed{0};
};

struct SampleWindow {
  Surface surface{Surface::euclidean};
  double x0{0}, x1{0}, y0{0}, y1{0};  // euclidean box
  double radius{0};                   // hyperbolic geodesic disk around (0,0,1)

  double area() const;
  Point sample(Rng& rng) const;
  bool contains_disk(const Disk& d) const;
};

SampleWindow window_for(Surface s, const std::vector<Disk>& disks, double margin = 0.25);

// Unbiased hit-or-miss estimate of the member predicate's area inside the
// window; deterministic for a fixed seed. When region disks are supplied the
// window is checked to contain them (WindowTooSmall otherwise).
MonteCarloEstimate mc_area(Surface s, const std::function<bool(const Point&)>& member,
                           const SampleWindow& window, long long n, std::uint64_t seed,
                           const std::vector<Disk>* region = nullptr);

enum class Verdict { holds, violated, inconclusive };
const char* verdict_name(Verdict v);

struct KPInstance {
  BallConfiguration config;
  std::variant<PiecewiseIsometry, CenterMap> contraction;
};

struct KPReport {
  double area_before{0.0};
  double area_after{0.0};  // NaN when the exact path failed
  std::optional<MonteCarloEstimate> mc_before, mc_after;
  bool contractive{false};
  Verdict verdict{Verdict::inconclusive};
  double residual{0.0};  // area_after - area_before on the exact path
  // which superset of the rearranged union was measured:
  // "central_set_vertices", "original_disks" or "whole_sphere"
  std::string image_representation;
};

KPReport kp_verify(const KPInstance& inst, std::uint64_t seed = 0, long long mc_samples = 1000000,
                   bool force_mc = false);

struct InclusionReport {
  bool ok{false};
  long long tested{0};
  long long violations{0};
  std::optional<Point> witness;
};

// Samples the rearranged original disks and tests membership in the
// rearranged maximal-ball family.
InclusionReport inclusion_check(const KPInstance& inst, long long n, std::uint64_t seed);

struct SplitReport {
  double area_u{0}, area_x{0}, area_y{0}, area_xy{0};
  double eq1_residual{0};
  MonteCarloEstimate sym_diff;  // (U_X ∩ U_Y) Δ U_{X∩Y}
  bool has_contraction{false};
  double area_uf{0}, area_xf{0}, area_yf{0}, area_xyf{0};
  double eq2_slack{0};
  double general_case_slack{0};
};

SplitReport split_check(const CentralComplex& cc, const Subcomplex& x, const Subcomplex& y,
                        const PiecewiseIsometry* f, long long mc_samples, std::uint64_t seed);

struct PeelStep {
  Point leaf_point, hinge_point;
  double hinge_radius_before{0}, hinge_radius_after{0};
  double area_u{0}, area_x{0}, area_y{0}, area_hinge{0};
  double area_uf{0}, area_xf{0}, area_yf{0}, area_hinge_f{0};
  double eq1_residual{0};
  double eq2_slack{0};
  double edge_isometry_residual{0};
  bool sub_check_ok{false};
  bool pass{false};
};

struct Certificate {
  Verdict verdict{Verdict::inconclusive};
  double area_before{0};
  double area_after{0};
  std::vector<PeelStep> steps;
  std::string failure;  // empty when the verdict holds
};

// Leaf-peeling induction on the refined tree: every step splits off one edge,
// checks the splitting identity, the congruent hinge balls, the isometric
// edge and the recomputed central set of the remainder.
Certificate peel_certificate(const CentralComplex& cc, const PiecewiseIsometry& f);

// Image of the selected vertex balls under the map, duplicates merged.
BallConfiguration image_config(const CentralComplex& cc, const Subcomplex& sub,
                               const PiecewiseIsometry& f);

}  // namespace kpc
