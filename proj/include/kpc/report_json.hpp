#pragma once
// JSON report builders shared by the CLI and the test suites. All numbers go
// through format_number so reports are byte-identical for identical seeds.

#include <cmath>
#include <string>

#include "kpc/kp_checker.hpp"
#include "kpc/scene.hpp"

namespace kpc {

inline std::string point_json(const Point& p) {
  std::string out = "[" + format_number(p.x()) + "," + format_number(p.y());
  if (p.surface != Surface::euclidean) out += "," + format_number(p.z());
  return out + "]";
}

inline std::string mc_json(const MonteCarloEstimate& e) {
  return "{\"mean\":" + format_number(e.mean) + ",\"std_error\":" + format_number(e.std_error) +
         ",\"samples\":" + std::to_string(e.samples) + ",\"seed\":" + std::to_string(e.seed) + "}";
}

inline std::string topology_json(const TopologyReport& t) {
  return "{\"component_count\":" + std::to_string(t.component_count) +
         ",\"hole_count\":" + std::to_string(t.hole_count) +
         ",\"euler_characteristic\":" + std::to_string(t.euler_characteristic) +
         ",\"simply_connected\":" + (t.simply_connected ? std::string("true") : "false") + "}";
}

inline const char* vertex_kind_name(VertexKind k) {
  switch (k) {
    case VertexKind::disk_center: return "disk_center";
    case VertexKind::voronoi_vertex: return "voronoi_vertex";
    case VertexKind::subdivision: return "subdivision";
  }
  return "?";
}

inline std::string complex_json(const CentralComplex& cc) {
  std::string out = "{\"surface\":\"" + std::string(surface_name(cc.surface)) + "\",\"vertices\":[";
  for (std::size_t v = 0; v < cc.vertices.size(); ++v) {
    if (v) out += ',';
    out += "{\"point\":" + point_json(cc.vertices[v].point) +
           ",\"radius\":" + format_number(cc.vertices[v].radius) + ",\"kind\":\"" +
           vertex_kind_name(cc.vertices[v].kind) + "\"}";
  }
  out += "],\"edges\":[";
  for (std::size_t e = 0; e < cc.edges.size(); ++e) {
    if (e) out += ',';
    out += "{\"v0\":" + std::to_string(cc.edges[e].v0) +
           ",\"v1\":" + std::to_string(cc.edges[e].v1) +
           ",\"corner_a\":" + point_json(cc.edges[e].corner_a) +
           ",\"corner_b\":" + point_json(cc.edges[e].corner_b) +
           ",\"length\":" + format_number(cc.edge_length(static_cast<int>(e))) + "}";
  }
  return out + "]}";
}

inline std::string kp_report_json(const KPReport& r) {
  std::string out = "{\"area_before\":" + format_number(r.area_before) + ",\"area_after\":";
  out += std::isnan(r.area_after) ? std::string("null") : format_number(r.area_after);
  out += ",\"mc_before\":" + (r.mc_before ? mc_json(*r.mc_before) : std::string("null"));
  out += ",\"mc_after\":" + (r.mc_after ? mc_json(*r.mc_after) : std::string("null"));
  out += ",\"contractive\":" + std::string(r.contractive ? "true" : "false");
  out += ",\"verdict\":\"" + std::string(verdict_name(r.verdict)) + "\"";
  out += ",\"residual\":" + format_number(r.residual);
  out += ",\"image_representation\":\"" + r.image_representation + "\"}";
  return out;
}

inline std::string split_report_json(const SplitReport& r) {
  std::string out = "{\"area_u\":" + format_number(r.area_u) +
                    ",\"area_x\":" + format_number(r.area_x) +
                    ",\"area_y\":" + format_number(r.area_y) +
                    ",\"area_xy\":" + format_number(r.area_xy) +
                    ",\"eq1_residual\":" + format_number(r.eq1_residual) +
                    ",\"sym_diff\":" + mc_json(r.sym_diff);
  if (r.has_contraction) {
    out += ",\"area_uf\":" + format_number(r.area_uf) + ",\"area_xf\":" + format_number(r.area_xf) +
           ",\"area_yf\":" + format_number(r.area_yf) +
           ",\"area_xyf\":" + format_number(r.area_xyf) +
           ",\"eq2_slack\":" + format_number(r.eq2_slack) +
           ",\"general_case_slack\":" + format_number(r.general_case_slack);
  }
  return out + "}";
}

inline std::string certificate_json(const Certificate& c) {
  std::string out = "{\"verdict\":\"" + std::string(verdict_name(c.verdict)) + "\"";
  out += ",\"area_before\":" + format_number(c.area_before);
  out += ",\"area_after\":";
  out += std::isnan(c.area_after) ? std::string("null") : format_number(c.area_after);
  out += ",\"steps\":[";
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const PeelStep& s = c.steps[i];
    if (i) out += ',';
    out += "{\"leaf\":" + point_json(s.leaf_point) + ",\"hinge\":" + point_json(s.hinge_point) +
           ",\"hinge_radius_before\":" + format_number(s.hinge_radius_before) +
           ",\"hinge_radius_after\":" + format_number(s.hinge_radius_after) +
           ",\"area_u\":" + format_number(s.area_u) + ",\"area_x\":" + format_number(s.area_x) +
           ",\"area_y\":" + format_number(s.area_y) +
           ",\"area_hinge\":" + format_number(s.area_hinge) +
           ",\"area_uf\":" + format_number(s.area_uf) +
           ",\"area_xf\":" + format_number(s.area_xf) +
           ",\"area_yf\":" + format_number(s.area_yf) +
           ",\"area_hinge_f\":" + format_number(s.area_hinge_f) +
           ",\"eq1_residual\":" + format_number(s.eq1_residual) +
           ",\"eq2_slack\":" + format_number(s.eq2_slack) +
           ",\"edge_isometry_residual\":" + format_number(s.edge_isometry_residual) +
           ",\"sub_check_ok\":" + (s.sub_check_ok ? std::string("true") : "false") +
           ",\"pass\":" + (s.pass ? std::string("true") : "false") + "}";
  }
  out += "]";
  if (!c.failure.empty()) out += ",\"failure\":\"" + c.failure + "\"";
  return out + "}";
}

}  // namespace kpc
