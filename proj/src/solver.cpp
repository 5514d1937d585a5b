#include "wentzel/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "wentzel/errors.hpp"

namespace wentzel {

Spectrum solve_wentzel(const Assembly& assembly, double beta, int count) {
  if (beta < 0.0) throw ConfigError("solve_wentzel: beta must be >= 0");
  const int nb = assembly.num_boundary();
  if (count < 1 || count > nb) {
    throw ConfigError("solve_wentzel: count must be in [1, boundary vertex count]");
  }

  InteriorSolver solver(assembly);
  const Eigen::MatrixXd s = solver.schur_complement();
  Eigen::MatrixXd lhs = s + beta * Eigen::MatrixXd(assembly.a_gamma);
  lhs = 0.5 * (lhs + lhs.transpose()).eval();
  const Eigen::MatrixXd mass = assembly.m_gamma.asDiagonal();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(lhs, mass,
                                                                Eigen::ComputeEigenvectors |
                                                                    Eigen::Ax_lBx);
  if (eig.info() != Eigen::Success) {
    throw MeshError("solve_wentzel: eigensolver failed");
  }

  Spectrum out;
  out.beta = beta;
  out.eigenvalues = eig.eigenvalues().head(count);
  out.boundary_vectors = eig.eigenvectors().leftCols(count);
  out.full_vectors.resize(assembly.num_vertices(), count);
  for (int k = 0; k < count; ++k) {
    out.full_vectors.col(k) = solver.extend(out.boundary_vectors.col(k));
  }
  return out;
}

Spectrum solve_wentzel(const TriMesh& mesh, double beta, int count) {
  return solve_wentzel(assemble(mesh), beta, count);
}

Eigen::VectorXd disk_oracle(double beta, int count, double radius) {
  if (beta < 0.0 || radius <= 0.0 || count < 1) {
    throw ConfigError("disk_oracle: need beta >= 0, radius > 0, count >= 1");
  }
  Eigen::VectorXd values(count);
  int written = 0;
  values[written++] = 0.0;
  for (int m = 1; written < count; ++m) {
    const double lambda = beta * m * m / (radius * radius) + m / radius;
    for (int rep = 0; rep < 2 && written < count; ++rep) values[written++] = lambda;
  }
  return values;
}

double scaling_check(const TriMesh& mesh, double beta, double c, int count) {
  if (c <= 0.0) throw ConfigError("scaling_check: c must be positive");
  const Spectrum scaled = solve_wentzel(scaled_mesh(mesh, c), beta, count);
  const Spectrum reference = solve_wentzel(mesh, beta / c, count);
  double worst = 0.0;
  const double tol = 1e-12;
  for (int k = 0; k < count; ++k) {
    const double lhs = c * scaled.eigenvalues[k];
    const double rhs = reference.eigenvalues[k];
    worst = std::max(worst, std::abs(lhs - rhs) / (std::abs(rhs) + tol));
  }
  return worst;
}

}  // namespace wentzel
