#pragma once

#include <Eigen/Dense>

#include "wentzel/assembly.hpp"
#include "wentzel/mesh.hpp"

namespace wentzel {

/// Sorted eigenpairs of the boundary-reduced problem
/// (S + beta * A_Gamma) u = lambda * M_Gamma u.
struct Spectrum {
  double beta = 0.0;
  Eigen::VectorXd eigenvalues;          // ascending, first `count`
  Eigen::MatrixXd boundary_vectors;     // nb x count, M_Gamma-orthonormal
  Eigen::MatrixXd full_vectors;         // nv x count, harmonic extensions
};

Spectrum solve_wentzel(const TriMesh& mesh, double beta, int count);
Spectrum solve_wentzel(const Assembly& assembly, double beta, int count);

/// Closed-form spectrum of the disk of given radius: {0} followed by
/// beta*m^2/R^2 + m/R with multiplicity two, m = 1, 2, ...
Eigen::VectorXd disk_oracle(double beta, int count, double radius = 1.0);

/// Max relative deviation of the rescaling identity
/// c * lambda_k(c*Omega, beta) = lambda_k(Omega, beta/c) over the first
/// `count` eigenvalues.
double scaling_check(const TriMesh& mesh, double beta, double c, int count);

}  // namespace wentzel
