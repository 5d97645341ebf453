// Command-line driver: scene I/O, verification commands, reports as JSON on
// stdout. Exit codes: 0 holds/ok, 1 error, 2 violated, 3 inconclusive.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kpc/kp_checker.hpp"
#include "kpc/report_json.hpp"
#include "kpc/scene.hpp"

using namespace kpc;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Err::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Err::io_error, "cannot write " + path);
  out << text;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::holds: return 0;
    case Verdict::violated: return 2;
    case Verdict::inconclusive: return 3;
  }
  return 1;
}

Subcomplex selection_to_subcomplex(const CentralComplex& cc, const SceneSelection& sel) {
  Subcomplex sub = subcomplex_empty(cc);
  for (const int v : sel.vertices) {
    if (v < 0 || v >= static_cast<int>(cc.vertices.size()))
      throw Error(Err::location_off_complex, "selection vertex index out of range");
    sub.vsel[v] = 1;
  }
  for (const int e : sel.edges) {
    if (e < 0 || e >= static_cast<int>(cc.edges.size()))
      throw Error(Err::location_off_complex, "selection edge index out of range");
    sub.esel[e] = 1;
  }
  return close_subcomplex(cc, sub);
}

Point parse_point_arg(Surface s, const std::string& text) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) coords.push_back(std::stod(item));
  if (s == Surface::euclidean) {
    if (coords.size() != 2) throw Error(Err::invalid_point, "expected x,y");
    return Point::planar(coords[0], coords[1]);
  }
  if (coords.size() != 3) throw Error(Err::invalid_point, "expected x,y,z");
  return Point::embedded(s, Vec3{coords[0], coords[1], coords[2]});
}

struct Options {
  std::string scene_path, out_path, point_arg, x_name, y_name, want = "simply_connected";
  std::string surface_arg = "euclidean";
  long long samples = 1000000;
  std::uint64_t seed = 0;
  double tolerance = kEpsArea;
  int k = 3;
  bool oracle = false, jitter = false, with_complex = false;
};

Scene load_scene(const Options& opt) {
  Scene scene = parse_scene(read_file(opt.scene_path));
  if (opt.jitter) scene = jitter_scene(scene, opt.seed ? opt.seed : scene.seed);
  return scene;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"central sets of disk unions and contraction area checks"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_scene = true) {
    if (needs_scene) cmd->add_option("--scene", opt.scene_path, "scene JSON file")->required();
    cmd->add_option("--samples", opt.samples, "Monte Carlo sample count");
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--tolerance", opt.tolerance, "area tolerance");
    cmd->add_option("--out", opt.out_path, "output file (default stdout)");
    cmd->add_flag("--oracle", opt.oracle, "force the Monte Carlo cross-check");
    cmd->add_flag("--jitter", opt.jitter, "deterministic 1e-7 radius jitter");
  };

  CLI::App* cmd_area = app.add_subcommand("area", "exact union area");
  add_common(cmd_area);
  CLI::App* cmd_cs = app.add_subcommand("central-set", "central set of the union");
  add_common(cmd_cs);
  CLI::App* cmd_topo = app.add_subcommand("topology", "components, holes, Euler characteristic");
  add_common(cmd_topo);
  CLI::App* cmd_rel = app.add_subcommand("relative", "central set relative to a point");
  add_common(cmd_rel);
  cmd_rel->add_option("--point", opt.point_arg, "comma separated coordinates")->required();
  CLI::App* cmd_chk = app.add_subcommand("check-contraction", "validate the scene's contraction");
  add_common(cmd_chk);
  CLI::App* cmd_kp = app.add_subcommand("verify-kp", "union area after contraction");
  add_common(cmd_kp);
  CLI::App* cmd_split = app.add_subcommand("split-check", "splitting identity on a cover");
  add_common(cmd_split);
  cmd_split->add_option("--x", opt.x_name, "selection name for X");
  cmd_split->add_option("--y", opt.y_name, "selection name for Y");
  CLI::App* cmd_cert = app.add_subcommand("certificate", "leaf-peeling certificate");
  add_common(cmd_cert);
  CLI::App* cmd_rand = app.add_subcommand("random", "generate a random scene");
  add_common(cmd_rand, false);
  cmd_rand->add_option("--surface", opt.surface_arg, "euclidean|spherical|hyperbolic");
  cmd_rand->add_option("--k", opt.k, "number of disks");
  cmd_rand->add_option("--want", opt.want, "simply_connected|any|one_hole");
  CLI::App* cmd_render = app.add_subcommand("render", "SVG figure of the scene");
  add_common(cmd_render);
  cmd_render->add_flag("--central-set", opt.with_complex, "draw the central set");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_area->parsed()) {
      const Scene scene = load_scene(opt);
      const BallPolytope poly = validate(scene_config(scene));
      const double area = union_area(poly);
      std::string out = "{\"surface\":\"" + std::string(surface_name(scene.surface)) + "\"";
      out += ",\"area\":" + format_number(area);
      out += ",\"topology\":" + topology_json(topology(poly));
      if (opt.oracle) {
        const SampleWindow w = window_for(scene.surface, scene.disks);
        const MonteCarloEstimate mc = mc_area(
            scene.surface, [&](const Point& p) { return contains(scene.surface, scene.disks, p); },
            w, opt.samples, opt.seed, &scene.disks);
        out += ",\"mc\":" + mc_json(mc);
      }
      out += "}";
      write_output(opt.out_path, out);
      return 0;
    }
    if (cmd_cs->parsed()) {
      const Scene scene = load_scene(opt);
      const CentralComplex cc = central_set(validate(scene_config(scene)));
      write_output(opt.out_path, complex_json(cc));
      return 0;
    }
    if (cmd_topo->parsed()) {
      const Scene scene = load_scene(opt);
      write_output(opt.out_path, topology_json(topology(validate(scene_config(scene)))));
      return 0;
    }
    if (cmd_rel->parsed()) {
      const Scene scene = load_scene(opt);
      const CentralComplex cc = central_set(validate(scene_config(scene)));
      const Point p = parse_point_arg(scene.surface, opt.point_arg);
      const RelativeCentralSet rel = relative_central_set(cc, p);
      std::string out = "{\"vertices\":[";
      for (std::size_t i = 0; i < rel.vertices.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(rel.vertices[i]);
      }
      out += "],\"clips\":[";
      for (std::size_t i = 0; i < rel.clips.size(); ++i) {
        if (i) out += ',';
        out += "{\"edge\":" + std::to_string(rel.clips[i].edge) +
               ",\"u0\":" + format_number(rel.clips[i].u0) +
               ",\"u1\":" + format_number(rel.clips[i].u1) + "}";
      }
      out += "],\"nonempty\":" + std::string(rel.nonempty ? "true" : "false");
      out += ",\"connected\":" + std::string(rel.connected ? "true" : "false") + "}";
      write_output(opt.out_path, out);
      return 0;
    }
    if (cmd_chk->parsed()) {
      const Scene scene = load_scene(opt);
      if (scene.contraction_kind == ContractionKind::none)
        throw Error(Err::invalid_map, "scene has no contraction");
      if (scene.contraction_kind == ContractionKind::pointmap) {
        const ContractionCheck chk = is_contractive(scene.surface, scene.pointmap);
        std::string out = "{\"type\":\"pointmap\",\"contractive\":";
        out += chk.contractive ? "true" : "false";
        if (chk.has_witness)
          out += ",\"witness\":{\"a\":" + point_json(chk.witness.a) +
                 ",\"b\":" + point_json(chk.witness.b) +
                 ",\"before\":" + format_number(chk.witness.before) +
                 ",\"after\":" + format_number(chk.witness.after) + "}";
        out += "}";
        write_output(opt.out_path, out);
        return chk.contractive ? 0 : 2;
      }
      const PiecewiseIsometry f = scene_folds(scene);
      const Point anchor = scene.disks.front().center;
      const auto defects = pw_validate(f, anchor, 4.0, opt.seed);
      std::string out = "{\"type\":\"folds\",\"valid\":";
      out += defects.empty() ? "true" : "false";
      out += ",\"defects\":[";
      for (std::size_t i = 0; i < defects.size(); ++i) {
        if (i) out += ',';
        out += "\"" + defects[i].what + "\"";
      }
      out += "]}";
      write_output(opt.out_path, out);
      return defects.empty() ? 0 : 2;
    }
    if (cmd_kp->parsed()) {
      const Scene scene = load_scene(opt);
      KPInstance inst;
      inst.config = scene_config(scene);
      if (scene.contraction_kind == ContractionKind::folds)
        inst.contraction = scene_folds(scene);
      else if (scene.contraction_kind == ContractionKind::pointmap)
        inst.contraction = scene.pointmap;
      else
        throw Error(Err::invalid_map, "scene has no contraction");
      KPReport rep = kp_verify(inst, opt.seed, opt.samples, opt.oracle);
      if (!std::isnan(rep.area_after)) {
        rep.verdict =
            rep.area_after <= rep.area_before + opt.tolerance ? Verdict::holds : Verdict::violated;
      }
      write_output(opt.out_path, kp_report_json(rep));
      return verdict_exit(rep.verdict);
    }
    if (cmd_split->parsed()) {
      const Scene scene = load_scene(opt);
      const CentralComplex cc = central_set(validate(scene_config(scene)));
      Subcomplex x, y;
      if (!opt.x_name.empty() && !opt.y_name.empty()) {
        const auto ix = scene.selections.find(opt.x_name);
        const auto iy = scene.selections.find(opt.y_name);
        if (ix == scene.selections.end() || iy == scene.selections.end())
          throw Error(Err::not_a_cover, "named selections not found in the scene");
        x = selection_to_subcomplex(cc, ix->second);
        y = selection_to_subcomplex(cc, iy->second);
      } else {
        // default split: X is the first edge, Y the closure of the rest
        if (cc.edges.empty()) throw Error(Err::empty_subcomplex, "complex has no edges to split");
        x = subcomplex_empty(cc);
        x.esel[0] = 1;
        x = close_subcomplex(cc, x);
        y = complement_closure(cc, x);
        if (cc.edges.size() == 1) {
          y = subcomplex_empty(cc);
          y.vsel[cc.edges[0].v1] = 1;
        }
      }
      std::optional<PiecewiseIsometry> f;
      if (scene.contraction_kind == ContractionKind::folds) f = scene_folds(scene);
      const SplitReport rep =
          split_check(cc, x, y, f ? &*f : nullptr, opt.samples, opt.seed);
      write_output(opt.out_path, split_report_json(rep));
      const bool ok = std::abs(rep.eq1_residual) <= opt.tolerance &&
                      (!rep.has_contraction || rep.eq2_slack >= -opt.tolerance);
      return ok ? 0 : 2;
    }
    if (cmd_cert->parsed()) {
      const Scene scene = load_scene(opt);
      if (scene.contraction_kind != ContractionKind::folds)
        throw Error(Err::invalid_map, "certificate needs a fold contraction");
      const CentralComplex cc = central_set(validate(scene_config(scene)));
      const Certificate cert = peel_certificate(cc, scene_folds(scene));
      write_output(opt.out_path, certificate_json(cert));
      return verdict_exit(cert.verdict);
    }
    if (cmd_rand->parsed()) {
      SceneWant want = SceneWant::simply_connected;
      if (opt.want == "any")
        want = SceneWant::any;
      else if (opt.want == "one_hole")
        want = SceneWant::one_hole;
      else if (opt.want != "simply_connected")
        throw Error(Err::generation_failure, "unknown want: " + opt.want);
      const Scene scene = random_scene(surface_from_name(opt.surface_arg), opt.k, opt.seed, want);
      write_output(opt.out_path, serialize_scene(scene));
      return 0;
    }
    if (cmd_render->parsed()) {
      const Scene scene = load_scene(opt);
      std::string svg;
      if (opt.with_complex) {
        const CentralComplex cc = central_set(validate(scene_config(scene)));
        svg = svg_export(scene, &cc);
      } else {
        svg = svg_export(scene, nullptr);
      }
      write_output(opt.out_path, svg);
      return 0;
    }
  } catch (const Error& e) {
    std::cout << "{\"error\":\"" << err_name(e.code) << "\",\"message\":\"" << e.what() << "\"}\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << "{\"error\":\"InternalError\",\"message\":\"" << e.what() << "\"}\n";
    return 1;
  }
  return 1;
}
