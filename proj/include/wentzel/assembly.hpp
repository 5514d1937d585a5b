#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <memory>
#include <vector>

#include "wentzel/mesh.hpp"

namespace wentzel {

/// P1 finite element matrices of a mesh. a_omega is the full cotangent
/// stiffness on all vertices; a_gamma and m_gamma act on the boundary
/// trace (boundary-index ordering given by boundary_index_map).
struct Assembly {
  Eigen::SparseMatrix<double> a_omega;  // nv x nv, PSD, row sums zero
  Eigen::SparseMatrix<double> a_gamma;  // nb x nb, 1-D loop stiffness
  Eigen::VectorXd m_gamma;              // nb, lumped boundary mass (diagonal)
  std::vector<int> boundary_vertices;   // boundary row -> vertex id
  std::vector<int> boundary_index_map;  // vertex id -> boundary row, or -1
  double vol_omega = 0.0;
  double vol_gamma = 0.0;

  int num_vertices() const { return static_cast<int>(boundary_index_map.size()); }
  int num_boundary() const { return static_cast<int>(boundary_vertices.size()); }

  Eigen::VectorXd trace(const Eigen::VectorXd& full) const;
};

Assembly assemble(const TriMesh& mesh);

/// Factorization of the interior stiffness block, shared by the Schur
/// reduction and harmonic extension.
class InteriorSolver {
public:
  explicit InteriorSolver(const Assembly& assembly);

  /// Dirichlet-to-Neumann operator S = A_BB - A_BI A_II^{-1} A_IB,
  /// symmetric positive semidefinite with S 1 = 0.
  Eigen::MatrixXd schur_complement() const;

  /// Harmonic extension of boundary values (in boundary-row order) to a
  /// full vertex vector; minimizes the bulk Dirichlet energy.
  Eigen::VectorXd extend(const Eigen::VectorXd& boundary_values) const;

  int num_interior() const { return static_cast<int>(interior_.size()); }

private:
  const Assembly& assembly_;
  std::vector<int> interior_;              // interior row -> vertex id
  Eigen::SparseMatrix<double> a_ii_;
  Eigen::SparseMatrix<double> a_ib_;       // interior x boundary
  Eigen::MatrixXd a_bb_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
};

Eigen::MatrixXd schur_dtn(const Assembly& assembly);
Eigen::VectorXd harmonic_extend(const Assembly& assembly,
                                const Eigen::VectorXd& boundary_values);

}  // namespace wentzel
