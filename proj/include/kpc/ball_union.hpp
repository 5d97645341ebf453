#pragma once
// Disk unions as ball-polytopes: validation of the boundary arrangement
// (corners and arcs), exact union areas, and topology of the union.

#include <vector>

#include "kpc/geometry.hpp"

namespace kpc {

struct BallConfiguration {
  Surface surface{Surface::euclidean};
  std::vector<Disk> disks;
};

BallConfiguration make_config(Surface s, std::vector<Disk> disks);

struct Corner {
  Point point;
  int circle_a{-1}, circle_b{-1};  // effective disk indices of the two boundary arcs meeting here
};

struct BoundaryArc {
  int disk_index{-1};            // effective disk index
  int start_corner{-1}, end_corner{-1};
  double theta_start{0.0};       // CCW window in the disk's circle frame
  double theta_len{0.0};
  bool full_circle{false};
};

struct TopologyReport {
  int component_count{0};
  int hole_count{0};
  int euler_characteristic{0};
  bool simply_connected{false};
};

struct BallPolytope {
  Surface surface{Surface::euclidean};
  BallConfiguration original;
  std::vector<Disk> disks;              // effective disks, redundant ones dropped
  std::vector<int> effective_index;     // position of each effective disk in the original list
  std::vector<int> dropped_redundant;   // original indices of dropped disks
  std::vector<CircleFrame> frames;      // one per effective disk
  std::vector<Corner> corners;
  std::vector<BoundaryArc> arcs;
  std::vector<std::vector<int>> cycles;  // boundary cycles as arc index chains
  std::vector<int> disk_component;       // overlap component per effective disk
  int component_count{0};
  bool covers_sphere{false};
  bool validated{false};
};

// By default a corner lying on a third circle is rejected as degenerate input.
// Configurations built from maximal balls legitimately share corners between
// many circles (a pencil); internal callers pass allow_shared_corners = true,
// which still requires the boundary to stay a manifold.
BallPolytope validate(const BallConfiguration& config, bool allow_shared_corners = false);

bool contains(Surface s, const std::vector<Disk>& disks, const Point& p);
bool contains(const BallConfiguration& config, const Point& p);

double union_area(const BallPolytope& poly);
TopologyReport topology(const BallPolytope& poly);

// Area of the intersection of spherical disks via antipodal complements.
double intersection_area_sphere(const BallConfiguration& config);

// Distance from a point to the boundary of the union.
double distance_to_boundary(const BallPolytope& poly, const Point& p);

struct BoundaryContact {
  Point point;
  double dist{0.0};
};

// All boundary points realizing the distance to the boundary up to `slack`.
std::vector<BoundaryContact> boundary_contacts(const BallPolytope& poly, const Point& p,
                                               double slack);

// Whether the inscribed ball of maximal radius centered at p cannot be grown:
// it must touch the boundary in at least two distinct directions (a boundary
// arc of contact counts through its sampled points).
bool maximal_ball_at(const BallPolytope& poly, const Point& p, double* radius_out = nullptr);

}  // namespace kpc
