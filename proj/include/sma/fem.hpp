#pragma once

#include <Eigen/Sparse>
#include <array>
#include <vector>

#include "sma/local_update.hpp"

namespace sma {

struct Mesh {
  enum class Kind { Bar, Hex };
  Kind kind = Kind::Bar;
  std::vector<Eigen::Vector3d> nodes;
  std::vector<std::vector<int>> elems;  // 2 nodes (bar) or 8 nodes (hex)
  double area = 1.0;                    // bar cross section

  int dofs_per_node() const { return kind == Kind::Bar ? 1 : 3; }
  int n_dofs() const { return static_cast<int>(nodes.size()) * dofs_per_node(); }
};

// 1D bar along x, n equal elements.
Mesh make_bar_mesh(double length, int n, double area);

// Structured box [0,sx] x [0,sy] x [0,sz] with nx*ny*nz trilinear hexes.
Mesh make_box_mesh(const Eigen::Vector3d& size, const std::array<int, 3>& div);

struct GaussPointGeom {
  Eigen::Matrix<double, 6, Eigen::Dynamic> B;  // engineering-shear B matrix
  double wdetJ = 0;                            // weight * |J| (* area for bars)
};

// Mesh plus boundary conditions, quadrature geometry and DOF bookkeeping.
struct FemSystem {
  Mesh mesh;
  StressMode mode = StressMode::Full;
  std::vector<std::pair<int, double>> dirichlet;  // global dof -> value
  Eigen::VectorXd load_pattern;                   // F_ext = load * pattern

  std::vector<std::vector<GaussPointGeom>> quad;  // [elem][gp]
  std::vector<int> free_of_full;                  // -1 for constrained dofs
  std::vector<int> full_of_free;

  void finalize();  // call after mesh / dirichlet are set
  int n_free() const { return static_cast<int>(full_of_free.size()); }
  int gp_per_elem() const { return mesh.kind == Mesh::Kind::Bar ? 2 : 8; }
  int n_gp() const { return static_cast<int>(mesh.elems.size()) * gp_per_elem(); }
  int gp_index(int e, int g) const { return e * gp_per_elem() + g; }

  std::vector<int> elem_dofs(int e) const;
  Eigen::VectorXd elem_vector(int e, const Eigen::VectorXd& full) const;
  Voigt6 strain(int e, int g, const Eigen::VectorXd& d) const;

  // sum of w B^T v detJ over all gauss points, for stress-like per-GP vectors
  Eigen::VectorXd gp_force(const std::vector<Voigt6>& v) const;
  Eigen::VectorXd internal_force(const std::vector<Voigt6>& sigma) const {
    return gp_force(sigma);
  }
  // tangent sum of w B^T L B detJ, reduced to free dofs
  Eigen::SparseMatrix<double> tangent(const std::vector<Mat6>& L) const;

  Eigen::VectorXd restrict_free(const Eigen::VectorXd& full) const;
  void add_to_full(const Eigen::VectorXd& free, Eigen::VectorXd& full) const;

  // constrain every dof of all nodes with coordinate[axis] == value
  void fix_plane(int axis, double value, double tol = 1e-12);
  // uniform traction [Pa] on the boundary face coordinate[axis] == value,
  // acting in direction dir; consistent nodal loads appended to load_pattern
  void add_face_traction(int axis, double value, int dir, double tol = 1e-12);
  // point load pattern entry on the dof of the node nearest to pos
  void add_node_load(const Eigen::Vector3d& pos, int dir, double scale = 1.0);

  int nearest_node(const Eigen::Vector3d& pos) const;
  int nearest_gp(const Eigen::Vector3d& pos) const;  // returns flat gp index
};

}  // namespace sma
