#include "sma/fem.hpp"

#include <cmath>
#include <limits>

namespace sma {

namespace {

const double kGauss = 1.0 / std::sqrt(3.0);

// hex corner signs, node order: bottom quad counter-clockwise, then top
const int kHexSign[8][3] = {{-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
                            {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1}};

struct ShapeDerivs {
  Eigen::Matrix<double, 8, 3> dN;  // w.r.t. natural coordinates
  Eigen::Matrix<double, 8, 1> N;
};

ShapeDerivs hex_shape(double xi, double eta, double zeta) {
  ShapeDerivs s;
  for (int a = 0; a < 8; ++a) {
    const double sx = kHexSign[a][0], sy = kHexSign[a][1], sz = kHexSign[a][2];
    s.N(a) = 0.125 * (1 + sx * xi) * (1 + sy * eta) * (1 + sz * zeta);
    s.dN(a, 0) = 0.125 * sx * (1 + sy * eta) * (1 + sz * zeta);
    s.dN(a, 1) = 0.125 * sy * (1 + sx * xi) * (1 + sz * zeta);
    s.dN(a, 2) = 0.125 * sz * (1 + sx * xi) * (1 + sy * eta);
  }
  return s;
}

GaussPointGeom hex_gp(const Mesh& mesh, const std::vector<int>& conn, double xi,
                      double eta, double zeta) {
  const ShapeDerivs s = hex_shape(xi, eta, zeta);
  Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
  for (int a = 0; a < 8; ++a) J += s.dN.row(a).transpose() * mesh.nodes[conn[a]].transpose();
  const double detJ = J.determinant();
  if (detJ <= 0) throw std::runtime_error("hex_gp: non-positive Jacobian");
  const Eigen::Matrix3d Jinv = J.inverse();
  GaussPointGeom g;
  g.B = Eigen::Matrix<double, 6, Eigen::Dynamic>::Zero(6, 24);
  for (int a = 0; a < 8; ++a) {
    const Eigen::Vector3d grad = Jinv * s.dN.row(a).transpose();
    const int c = 3 * a;
    g.B(0, c + 0) = grad(0);
    g.B(1, c + 1) = grad(1);
    g.B(2, c + 2) = grad(2);
    g.B(3, c + 1) = grad(2);  // gamma_yz
    g.B(3, c + 2) = grad(1);
    g.B(4, c + 0) = grad(2);  // gamma_xz
    g.B(4, c + 2) = grad(0);
    g.B(5, c + 0) = grad(1);  // gamma_xy
    g.B(5, c + 1) = grad(0);
  }
  g.wdetJ = detJ;  // unit weights for 2x2x2
  return g;
}

}  // namespace

Mesh make_bar_mesh(double length, int n, double area) {
  if (n < 1 || length <= 0 || area <= 0) throw std::invalid_argument("make_bar_mesh");
  Mesh m;
  m.kind = Mesh::Kind::Bar;
  m.area = area;
  for (int i = 0; i <= n; ++i) m.nodes.emplace_back(length * i / n, 0, 0);
  for (int i = 0; i < n; ++i) m.elems.push_back({i, i + 1});
  return m;
}

Mesh make_box_mesh(const Eigen::Vector3d& size, const std::array<int, 3>& div) {
  const int nx = div[0], ny = div[1], nz = div[2];
  if (nx < 1 || ny < 1 || nz < 1) throw std::invalid_argument("make_box_mesh");
  Mesh m;
  m.kind = Mesh::Kind::Hex;
  auto idx = [&](int i, int j, int k) { return (k * (ny + 1) + j) * (nx + 1) + i; };
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i)
        m.nodes.emplace_back(size(0) * i / nx, size(1) * j / ny, size(2) * k / nz);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        m.elems.push_back({idx(i, j, k), idx(i + 1, j, k), idx(i + 1, j + 1, k),
                           idx(i, j + 1, k), idx(i, j, k + 1), idx(i + 1, j, k + 1),
                           idx(i + 1, j + 1, k + 1), idx(i, j + 1, k + 1)});
  return m;
}

void FemSystem::finalize() {
  mode = mesh.kind == Mesh::Kind::Bar ? StressMode::Uniaxial : StressMode::Full;
  quad.clear();
  quad.resize(mesh.elems.size());
  for (size_t e = 0; e < mesh.elems.size(); ++e) {
    const auto& conn = mesh.elems[e];
    if (mesh.kind == Mesh::Kind::Bar) {
      const double L = (mesh.nodes[conn[1]] - mesh.nodes[conn[0]]).norm();
      for (int g = 0; g < 2; ++g) {
        GaussPointGeom q;
        q.B = Eigen::Matrix<double, 6, Eigen::Dynamic>::Zero(6, 2);
        q.B(0, 0) = -1.0 / L;
        q.B(0, 1) = 1.0 / L;
        q.wdetJ = 0.5 * L * mesh.area;
        quad[e].push_back(q);
      }
    } else {
      for (int gz = 0; gz < 2; ++gz)
        for (int gy = 0; gy < 2; ++gy)
          for (int gx = 0; gx < 2; ++gx)
            quad[e].push_back(hex_gp(mesh, conn, (2 * gx - 1) * kGauss,
                                     (2 * gy - 1) * kGauss, (2 * gz - 1) * kGauss));
    }
  }
  if (load_pattern.size() != mesh.n_dofs()) {
    Eigen::VectorXd lp = Eigen::VectorXd::Zero(mesh.n_dofs());
    if (load_pattern.size() > 0) lp.head(load_pattern.size()) = load_pattern;
    load_pattern = lp;
  }
  std::vector<bool> fixed(mesh.n_dofs(), false);
  for (const auto& [dof, val] : dirichlet) fixed[dof] = true;
  free_of_full.assign(mesh.n_dofs(), -1);
  full_of_free.clear();
  for (int i = 0; i < mesh.n_dofs(); ++i)
    if (!fixed[i]) {
      free_of_full[i] = static_cast<int>(full_of_free.size());
      full_of_free.push_back(i);
    }
}

std::vector<int> FemSystem::elem_dofs(int e) const {
  const int dpn = mesh.dofs_per_node();
  std::vector<int> dofs;
  for (int a : mesh.elems[e])
    for (int c = 0; c < dpn; ++c) dofs.push_back(a * dpn + c);
  return dofs;
}

Eigen::VectorXd FemSystem::elem_vector(int e, const Eigen::VectorXd& full) const {
  const auto dofs = elem_dofs(e);
  Eigen::VectorXd v(dofs.size());
  for (size_t i = 0; i < dofs.size(); ++i) v(i) = full(dofs[i]);
  return v;
}

Voigt6 FemSystem::strain(int e, int g, const Eigen::VectorXd& d) const {
  return quad[e][g].B * elem_vector(e, d);
}

Eigen::VectorXd FemSystem::gp_force(const std::vector<Voigt6>& v) const {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(mesh.n_dofs());
  for (size_t e = 0; e < mesh.elems.size(); ++e) {
    const auto dofs = elem_dofs(static_cast<int>(e));
    for (size_t g = 0; g < quad[e].size(); ++g) {
      const auto& q = quad[e][g];
      const Eigen::VectorXd fe =
          q.wdetJ * q.B.transpose() * v[gp_index(static_cast<int>(e), static_cast<int>(g))];
      for (size_t i = 0; i < dofs.size(); ++i) f(dofs[i]) += fe(i);
    }
  }
  return f;
}

Eigen::SparseMatrix<double> FemSystem::tangent(const std::vector<Mat6>& L) const {
  std::vector<Eigen::Triplet<double>> trips;
  for (size_t e = 0; e < mesh.elems.size(); ++e) {
    const auto dofs = elem_dofs(static_cast<int>(e));
    Eigen::MatrixXd ke = Eigen::MatrixXd::Zero(dofs.size(), dofs.size());
    for (size_t g = 0; g < quad[e].size(); ++g) {
      const auto& q = quad[e][g];
      ke += q.wdetJ * q.B.transpose() *
            L[gp_index(static_cast<int>(e), static_cast<int>(g))] * q.B;
    }
    for (size_t i = 0; i < dofs.size(); ++i) {
      const int fi = free_of_full[dofs[i]];
      if (fi < 0) continue;
      for (size_t j = 0; j < dofs.size(); ++j) {
        const int fj = free_of_full[dofs[j]];
        if (fj >= 0) trips.emplace_back(fi, fj, ke(i, j));
      }
    }
  }
  Eigen::SparseMatrix<double> K(n_free(), n_free());
  K.setFromTriplets(trips.begin(), trips.end());
  return K;
}

Eigen::VectorXd FemSystem::restrict_free(const Eigen::VectorXd& full) const {
  Eigen::VectorXd v(n_free());
  for (int i = 0; i < n_free(); ++i) v(i) = full(full_of_free[i]);
  return v;
}

void FemSystem::add_to_full(const Eigen::VectorXd& free, Eigen::VectorXd& full) const {
  for (int i = 0; i < n_free(); ++i) full(full_of_free[i]) += free(i);
}

void FemSystem::fix_plane(int axis, double value, double tol) {
  const int dpn = mesh.dofs_per_node();
  for (size_t a = 0; a < mesh.nodes.size(); ++a)
    if (std::abs(mesh.nodes[a](axis) - value) < tol)
      for (int c = 0; c < dpn; ++c)
        dirichlet.emplace_back(static_cast<int>(a) * dpn + c, 0.0);
}

void FemSystem::add_face_traction(int axis, double value, int dir, double tol) {
  if (mesh.kind != Mesh::Kind::Hex)
    throw std::invalid_argument("add_face_traction: hex meshes only");
  if (load_pattern.size() != mesh.n_dofs())
    load_pattern = Eigen::VectorXd::Zero(mesh.n_dofs());
  // element faces lying on the plane; consistent loads for a constant
  // traction on a bilinear face are equal quarters of traction * face area
  for (const auto& conn : mesh.elems) {
    std::vector<int> face;
    for (int a : conn)
      if (std::abs(mesh.nodes[a](axis) - value) < tol) face.push_back(a);
    if (face.size() != 4) continue;
    // face area from the two in-plane spans of the axis-aligned mesh
    Eigen::Vector3d lo = mesh.nodes[face[0]], hi = mesh.nodes[face[0]];
    for (int a : face) {
      lo = lo.cwiseMin(mesh.nodes[a]);
      hi = hi.cwiseMax(mesh.nodes[a]);
    }
    double area = 1.0;
    for (int c = 0; c < 3; ++c)
      if (c != axis) area *= hi(c) - lo(c);
    for (int a : face) load_pattern(3 * a + dir) += 0.25 * area;
  }
}

void FemSystem::add_node_load(const Eigen::Vector3d& pos, int dir, double scale) {
  if (load_pattern.size() != mesh.n_dofs())
    load_pattern = Eigen::VectorXd::Zero(mesh.n_dofs());
  load_pattern(nearest_node(pos) * mesh.dofs_per_node() + dir) += scale;
}

int FemSystem::nearest_node(const Eigen::Vector3d& pos) const {
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < mesh.nodes.size(); ++a) {
    const double d = (mesh.nodes[a] - pos).squaredNorm();
    if (d < bd) {
      bd = d;
      best = static_cast<int>(a);
    }
  }
  return best;
}

int FemSystem::nearest_gp(const Eigen::Vector3d& pos) const {
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (size_t e = 0; e < mesh.elems.size(); ++e) {
    // gauss point positions: interpolate nodal coordinates
    const auto& conn = mesh.elems[e];
    for (size_t g = 0; g < quad[e].size(); ++g) {
      Eigen::Vector3d x = Eigen::Vector3d::Zero();
      if (mesh.kind == Mesh::Kind::Bar) {
        const double t = g == 0 ? 0.5 * (1 - kGauss) : 0.5 * (1 + kGauss);
        x = (1 - t) * mesh.nodes[conn[0]] + t * mesh.nodes[conn[1]];
      } else {
        const int gx = g % 2, gy = (g / 2) % 2, gz = g / 4;
        const ShapeDerivs s = hex_shape((2 * gx - 1) * kGauss, (2 * gy - 1) * kGauss,
                                        (2 * gz - 1) * kGauss);
        for (int a = 0; a < 8; ++a) x += s.N(a) * mesh.nodes[conn[a]];
      }
      const double d = (x - pos).squaredNorm();
      if (d < bd) {
        bd = d;
        best = gp_index(static_cast<int>(e), static_cast<int>(g));
      }
    }
  }
  return best;
}

}  // namespace sma
