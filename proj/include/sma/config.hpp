#pragma once

#include <optional>
#include <string>

#include "sma/solver.hpp"

namespace sma {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct GeometryConfig {
  std::string kind = "bar";  // "bar" or "box"
  // bar
  double length = 1.0;
  double area = 1.0;
  int elements = 10;
  // box
  Eigen::Vector3d size = {0.2, 1.0, 0.2};
  std::array<int, 3> divisions = {2, 10, 2};
};

struct PlaneBC {
  int axis = 1;
  double value = 0.0;
};

struct FaceTraction {
  int axis = 1;
  double value = 1.0;
  int dir = 1;  // load component; pattern scaled by the path load [Pa]
};

// one linear ramp of temperature and load factor
struct PathSegment {
  double T = 300.0;
  double load = 0.0;
  int steps = 1;
};

struct OutputConfig {
  std::string results = "results.csv";
  std::string summary = "summary.txt";
  Eigen::Vector3d probe = {0, 0, 0};  // nearest node / gauss point recorded
};

struct SimConfig {
  MaterialParams material = MaterialParams::niti50();
  GeometryConfig geometry;
  std::vector<PlaneBC> fixed_planes;        // box only; bar fixes its left end
  std::vector<FaceTraction> tractions;      // box only; bar loads its right end
  double initial_T = 300.0;
  double initial_load = 0.0;
  std::vector<PathSegment> segments;
  SolverConfig solver;
  OutputConfig output;
};

SimConfig load_config(const std::string& path);
SimConfig parse_config(const std::string& text);  // throws ConfigError
std::string dump_config(const SimConfig& c);      // round-trips through parse

Problem build_problem(const SimConfig& c);
std::vector<LoadPoint> build_path(const SimConfig& c);

// the same path with every segment re-divided so no step exceeds the given
// temperature / load strides (used by step-size searches)
std::vector<LoadPoint> build_path_with_steps(const SimConfig& c,
                                             std::optional<double> dT,
                                             std::optional<double> dF);

// results table: fixed column order, 9 significant digits, one row per step
std::string format_results_header();
std::string format_result_row(int step, const LoadPoint& lp, const Problem& pr,
                              const StepStats& st, const Eigen::Vector3d& probe);

}  // namespace sma
