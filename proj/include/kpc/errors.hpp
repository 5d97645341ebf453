#pragma once
#include <stdexcept>
#include <string>

namespace kpc {

enum class Err {
  invalid_point,
  invalid_radius,
  ambiguous_geodesic,
  degenerate_coincident,
  no_circumcenter,
  degenerate_bisector,
  tangent_circles,
  coincident_circles,
  corner_on_third_circle,
  zero_radius,
  unvalidated_input,
  non_spherical_surface,
  disconnected_union,
  degenerate_voronoi,
  location_off_complex,
  point_outside_union,
  empty_subcomplex,
  invalid_map,
  mixed_surfaces,
  point_outside_cells,
  coverage_gap,
  window_too_small,
  not_a_contraction,
  validation_failure,
  not_a_cover,
  not_a_tree,
  refinement_failure,
  syntax_error,
  unknown_surface,
  invalid_disk,
  generation_failure,
  io_error,
  covers_whole_surface,
  internal_error,
};

const char* err_name(Err e);

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& msg)
      : std::runtime_error(std::string(err_name(c)) + ": " + msg), code(c) {}
};

}  // namespace kpc
