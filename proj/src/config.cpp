#include "sma/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

using nlohmann::json;

namespace sma {

namespace {

// 9 significant digits, fixed formatting for byte-stable output
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double get_num(const json& j, const char* key, std::optional<double> dflt = {}) {
  if (!j.contains(key)) {
    if (dflt) return *dflt;
    throw ConfigError(std::string("missing field: ") + key);
  }
  if (!j[key].is_number()) throw ConfigError(std::string("not a number: ") + key);
  return j[key].get<double>();
}

int get_int(const json& j, const char* key, std::optional<int> dflt = {}) {
  if (!j.contains(key)) {
    if (dflt) return *dflt;
    throw ConfigError(std::string("missing field: ") + key);
  }
  if (!j[key].is_number_integer()) throw ConfigError(std::string("not an integer: ") + key);
  return j[key].get<int>();
}

std::string get_str(const json& j, const char* key, const char* dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_string()) throw ConfigError(std::string("not a string: ") + key);
  return j[key].get<std::string>();
}

Eigen::Vector3d get_vec3(const json& j, const char* key, const Eigen::Vector3d& dflt) {
  if (!j.contains(key)) return dflt;
  const auto& a = j[key];
  if (!a.is_array() || a.size() != 3)
    throw ConfigError(std::string("expected [x,y,z]: ") + key);
  return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

}  // namespace

SimConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  SimConfig c;
  if (!j.contains("material")) throw ConfigError("missing block: material");
  {
    const json& m = j["material"];
    MaterialParams& p = c.material;
    p = MaterialParams{};
    p.E_A = get_num(m, "E_A");
    p.E_M = get_num(m, "E_M");
    p.nu = get_num(m, "nu", 0.33);
    p.alpha = get_num(m, "alpha");
    p.c = get_num(m, "c", 0.0);
    p.M_s = get_num(m, "M_s");
    p.M_f = get_num(m, "M_f");
    p.A_s = get_num(m, "A_s");
    p.A_f = get_num(m, "A_f");
    p.H = get_num(m, "H");
    p.rho = get_num(m, "rho", 6500.0);
    p.T0 = get_num(m, "T0");
    p.rho_ds0 = get_num(m, "rho_ds0");
    p.hardening = hardening_from_string(get_str(m, "hardening", "quadratic"));
    p.n1 = get_num(m, "n1", 1.0);
    p.n2 = get_num(m, "n2", 1.0);
    p.n3 = get_num(m, "n3", 1.0);
    p.n4 = get_num(m, "n4", 1.0);
    p.calibrate();
    p.validate();
  }
  if (!j.contains("geometry")) throw ConfigError("missing block: geometry");
  {
    const json& g = j["geometry"];
    c.geometry.kind = get_str(g, "kind", "bar");
    if (c.geometry.kind == "bar") {
      c.geometry.length = get_num(g, "length");
      c.geometry.area = get_num(g, "area");
      c.geometry.elements = get_int(g, "elements");
    } else if (c.geometry.kind == "box") {
      c.geometry.size = get_vec3(g, "size", c.geometry.size);
      if (!g.contains("divisions") || !g["divisions"].is_array() ||
          g["divisions"].size() != 3)
        throw ConfigError("geometry.divisions must be [nx,ny,nz]");
      for (int i = 0; i < 3; ++i) c.geometry.divisions[i] = g["divisions"][i].get<int>();
    } else {
      throw ConfigError("geometry.kind must be bar or box");
    }
  }
  if (j.contains("bc")) {
    const json& b = j["bc"];
    for (const auto& f : b.value("fixed_planes", json::array())) {
      PlaneBC pb;
      pb.axis = get_int(f, "axis");
      pb.value = get_num(f, "value", 0.0);
      if (pb.axis < 0 || pb.axis > 2) throw ConfigError("bc axis out of range");
      c.fixed_planes.push_back(pb);
    }
    for (const auto& t : b.value("tractions", json::array())) {
      FaceTraction ft;
      ft.axis = get_int(t, "axis");
      ft.value = get_num(t, "value");
      ft.dir = get_int(t, "dir");
      if (ft.axis < 0 || ft.axis > 2 || ft.dir < 0 || ft.dir > 2)
        throw ConfigError("traction axis/dir out of range");
      c.tractions.push_back(ft);
    }
  }
  if (!j.contains("path")) throw ConfigError("missing block: path");
  {
    const json& pth = j["path"];
    c.initial_T = get_num(pth, "initial_T");
    c.initial_load = get_num(pth, "initial_load", 0.0);
    if (!pth.contains("segments") || !pth["segments"].is_array() ||
        pth["segments"].empty())
      throw ConfigError("path.segments must be a nonempty array");
    for (const auto& s : pth["segments"]) {
      PathSegment seg;
      seg.T = get_num(s, "T");
      seg.load = get_num(s, "load", 0.0);
      seg.steps = get_int(s, "steps");
      if (seg.steps < 1) throw ConfigError("segment steps must be >= 1");
      c.segments.push_back(seg);
    }
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    c.solver.strategy = strategy_from_string(get_str(s, "strategy", "parallel_projection"));
    c.solver.scheme = scheme_from_string(get_str(s, "scheme", "newton_raphson"));
    c.solver.e_R = get_num(s, "e_R", 1e-6);
    c.solver.local.e_H = get_num(s, "e_H", 1e-6);
    c.solver.max_outer = get_int(s, "max_outer", 50);
    c.solver.local.max_iter = get_int(s, "max_inner", 50);
    if (c.solver.e_R <= 0 || c.solver.local.e_H <= 0)
      throw ConfigError("solver tolerances must be positive");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    c.output.results = get_str(o, "results", "results.csv");
    c.output.summary = get_str(o, "summary", "summary.txt");
    c.output.probe = get_vec3(o, "probe", c.output.probe);
  }
  return c;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const SimConfig& c) {
  json j;
  const MaterialParams& p = c.material;
  j["material"] = {{"E_A", p.E_A},   {"E_M", p.E_M},       {"nu", p.nu},
                   {"alpha", p.alpha}, {"c", p.c},          {"M_s", p.M_s},
                   {"M_f", p.M_f},   {"A_s", p.A_s},       {"A_f", p.A_f},
                   {"H", p.H},       {"rho", p.rho},       {"T0", p.T0},
                   {"rho_ds0", p.rho_ds0},
                   {"hardening", to_string(p.hardening)},
                   {"n1", p.n1},     {"n2", p.n2},         {"n3", p.n3},
                   {"n4", p.n4}};
  if (c.geometry.kind == "bar") {
    j["geometry"] = {{"kind", "bar"},
                     {"length", c.geometry.length},
                     {"area", c.geometry.area},
                     {"elements", c.geometry.elements}};
  } else {
    j["geometry"] = {{"kind", "box"},
                     {"size", {c.geometry.size.x(), c.geometry.size.y(),
                               c.geometry.size.z()}},
                     {"divisions", {c.geometry.divisions[0], c.geometry.divisions[1],
                                    c.geometry.divisions[2]}}};
  }
  json fixed = json::array(), trac = json::array();
  for (const auto& f : c.fixed_planes)
    fixed.push_back({{"axis", f.axis}, {"value", f.value}});
  for (const auto& t : c.tractions)
    trac.push_back({{"axis", t.axis}, {"value", t.value}, {"dir", t.dir}});
  j["bc"] = {{"fixed_planes", fixed}, {"tractions", trac}};
  json segs = json::array();
  for (const auto& s : c.segments)
    segs.push_back({{"T", s.T}, {"load", s.load}, {"steps", s.steps}});
  j["path"] = {{"initial_T", c.initial_T},
               {"initial_load", c.initial_load},
               {"segments", segs}};
  j["solver"] = {{"strategy", to_string(c.solver.strategy)},
                 {"scheme", to_string(c.solver.scheme)},
                 {"e_R", c.solver.e_R},
                 {"e_H", c.solver.local.e_H},
                 {"max_outer", c.solver.max_outer},
                 {"max_inner", c.solver.local.max_iter}};
  j["output"] = {{"results", c.output.results},
                 {"summary", c.output.summary},
                 {"probe", {c.output.probe.x(), c.output.probe.y(), c.output.probe.z()}}};
  return j.dump(2) + "\n";
}

Problem build_problem(const SimConfig& c) {
  Problem pr;
  pr.mat = c.material;
  if (c.geometry.kind == "bar") {
    pr.sys.mesh = make_bar_mesh(c.geometry.length, c.geometry.elements, c.geometry.area);
    pr.sys.mode = StressMode::Uniaxial;
    pr.sys.dirichlet.push_back({0, 0.0});
    pr.sys.finalize();
    pr.sys.load_pattern = Eigen::VectorXd::Zero(pr.sys.mesh.n_dofs());
    pr.sys.load_pattern(pr.sys.mesh.n_dofs() - 1) = 1.0;  // load = end force [N]
  } else {
    pr.sys.mesh = make_box_mesh(c.geometry.size, c.geometry.divisions);
    pr.sys.mode = StressMode::Full;
    if (c.fixed_planes.empty()) throw ConfigError("box geometry needs bc.fixed_planes");
    for (const auto& f : c.fixed_planes) pr.sys.fix_plane(f.axis, f.value);
    pr.sys.finalize();
    pr.sys.load_pattern = Eigen::VectorXd::Zero(pr.sys.mesh.n_dofs());
    for (const auto& t : c.tractions)  // load = traction magnitude [Pa]
      pr.sys.add_face_traction(t.axis, t.value, t.dir);
  }
  pr.init();
  return pr;
}

std::vector<LoadPoint> build_path(const SimConfig& c) {
  return build_path_with_steps(c, std::nullopt, std::nullopt);
}

std::vector<LoadPoint> build_path_with_steps(const SimConfig& c,
                                             std::optional<double> dT,
                                             std::optional<double> dF) {
  std::vector<LoadPoint> path;
  LoadPoint prev{c.initial_T, c.initial_load};
  if (c.initial_load != 0.0)
    append_ramp(path, {c.initial_T, 0.0}, prev, 1);  // bring the load on
  for (const auto& seg : c.segments) {
    const LoadPoint to{seg.T, seg.load};
    int steps = seg.steps;
    if (dT || dF) {
      steps = 1;
      if (dT && *dT > 0)
        steps = std::max(steps, (int)std::ceil(std::abs(to.T - prev.T) / *dT - 1e-9));
      if (dF && *dF > 0)
        steps = std::max(steps, (int)std::ceil(std::abs(to.load - prev.load) / *dF - 1e-9));
    }
    append_ramp(path, prev, to, steps);
    prev = to;
  }
  return path;
}

std::string format_results_header() {
  return "step,time,T,load,probe_u,probe_sigma,probe_xi,probe_et_xx,probe_et_yy,"
         "probe_et_zz,probe_et_yz,probe_et_xz,probe_et_xy,outer_iters,local_iters\n";
}

std::string format_result_row(int step, const LoadPoint& lp, const Problem& pr,
                              const StepStats& st, const Eigen::Vector3d& probe) {
  const int node = pr.sys.nearest_node(probe);
  const int gp = pr.sys.nearest_gp(probe);
  const int dpn = pr.sys.mesh.dofs_per_node();
  // probe displacement: the dominant loaded direction for boxes (y), axial for bars
  const double u = dpn == 1 ? pr.d(node) : pr.d(3 * node + 1);
  const InternalState& s = pr.states[gp];
  const double sig = dpn == 1 ? s.sigma(0) : s.sigma(1);
  std::string row = std::to_string(step) + "," + num(step + 1.0) + "," + num(lp.T) + "," +
                    num(lp.load) + "," + num(u) + "," + num(sig) + "," + num(s.xi);
  for (int i = 0; i < 6; ++i) row += "," + num(s.et(i));
  row += "," + std::to_string(st.outer) + "," + std::to_string(st.local_iters) + "\n";
  return row;
}

}  // namespace sma
