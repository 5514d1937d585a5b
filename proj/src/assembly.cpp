#include "wentzel/assembly.hpp"

#include <cmath>

#include "wentzel/errors.hpp"

namespace wentzel {

Eigen::VectorXd Assembly::trace(const Eigen::VectorXd& full) const {
  Eigen::VectorXd t(num_boundary());
  for (int b = 0; b < num_boundary(); ++b) t[b] = full[boundary_vertices[b]];
  return t;
}

Assembly assemble(const TriMesh& mesh) {
  mesh.validate();
  Assembly out;
  const int nv = mesh.num_vertices();

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.num_triangles() * 9);
  for (const auto& t : mesh.triangles) {
    const Eigen::Vector2d a = mesh.vertices.row(t[0]);
    const Eigen::Vector2d b = mesh.vertices.row(t[1]);
    const Eigen::Vector2d c = mesh.vertices.row(t[2]);
    const double area2 = (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    if (area2 <= 0.0) throw MeshError("assemble: degenerate triangle");
    // Half-cotangent weights; diagonal entries cancel the row sums exactly.
    const double cot[3] = {(b - a).dot(c - a) / area2, (c - b).dot(a - b) / area2,
                           (a - c).dot(b - c) / area2};
    for (int e = 0; e < 3; ++e) {
      const int i = t[(e + 1) % 3], j = t[(e + 2) % 3];
      const double w = 0.5 * cot[e];
      trips.emplace_back(i, j, -w);
      trips.emplace_back(j, i, -w);
      trips.emplace_back(i, i, w);
      trips.emplace_back(j, j, w);
    }
  }
  out.a_omega.resize(nv, nv);
  out.a_omega.setFromTriplets(trips.begin(), trips.end());

  out.boundary_index_map.assign(nv, -1);
  for (const auto& loop : mesh.boundary_loops) {
    for (int i : loop) {
      if (out.boundary_index_map[i] < 0) {
        out.boundary_index_map[i] = static_cast<int>(out.boundary_vertices.size());
        out.boundary_vertices.push_back(i);
      }
    }
  }
  const int nb = static_cast<int>(out.boundary_vertices.size());

  std::vector<Eigen::Triplet<double>> btrips;
  out.m_gamma = Eigen::VectorXd::Zero(nb);
  for (const auto& loop : mesh.boundary_loops) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const int va = loop[i], vb = loop[(i + 1) % loop.size()];
      const double len = (mesh.vertices.row(va) - mesh.vertices.row(vb)).norm();
      if (len <= 0.0) throw MeshError("assemble: zero-length boundary edge");
      const int ra = out.boundary_index_map[va], rb = out.boundary_index_map[vb];
      const double w = 1.0 / len;
      btrips.emplace_back(ra, ra, w);
      btrips.emplace_back(rb, rb, w);
      btrips.emplace_back(ra, rb, -w);
      btrips.emplace_back(rb, ra, -w);
      out.m_gamma[ra] += 0.5 * len;
      out.m_gamma[rb] += 0.5 * len;
    }
  }
  out.a_gamma.resize(nb, nb);
  out.a_gamma.setFromTriplets(btrips.begin(), btrips.end());

  out.vol_omega = mesh.vol_omega();
  out.vol_gamma = mesh.vol_gamma();
  return out;
}

InteriorSolver::InteriorSolver(const Assembly& assembly) : assembly_(assembly) {
  const int nv = assembly.num_vertices();
  const int nb = assembly.num_boundary();
  std::vector<int> interior_index(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (assembly.boundary_index_map[v] < 0) {
      interior_index[v] = static_cast<int>(interior_.size());
      interior_.push_back(v);
    }
  }
  const int ni = static_cast<int>(interior_.size());

  std::vector<Eigen::Triplet<double>> ii, ib;
  a_bb_ = Eigen::MatrixXd::Zero(nb, nb);
  for (int col = 0; col < assembly.a_omega.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(assembly.a_omega, col); it;
         ++it) {
      const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
      const int rb = assembly.boundary_index_map[r], cb = assembly.boundary_index_map[c];
      if (rb < 0 && cb < 0) {
        ii.emplace_back(interior_index[r], interior_index[c], it.value());
      } else if (rb < 0 && cb >= 0) {
        ib.emplace_back(interior_index[r], cb, it.value());
      } else if (rb >= 0 && cb >= 0) {
        a_bb_(rb, cb) += it.value();
      }
    }
  }
  a_ii_.resize(ni, ni);
  a_ii_.setFromTriplets(ii.begin(), ii.end());
  a_ib_.resize(ni, nb);
  a_ib_.setFromTriplets(ib.begin(), ib.end());

  if (ni > 0) {
    ldlt_.compute(a_ii_);
    if (ldlt_.info() != Eigen::Success) {
      throw MeshError("interior stiffness block is singular");
    }
  }
}

Eigen::MatrixXd InteriorSolver::schur_complement() const {
  if (interior_.empty()) return a_bb_;
  const Eigen::MatrixXd x = ldlt_.solve(Eigen::MatrixXd(a_ib_));
  Eigen::MatrixXd s = a_bb_ - Eigen::MatrixXd(a_ib_).transpose() * x;
  s = 0.5 * (s + s.transpose()).eval();
  return s;
}

Eigen::VectorXd InteriorSolver::extend(const Eigen::VectorXd& boundary_values) const {
  const int nb = assembly_.num_boundary();
  if (boundary_values.size() != nb) {
    throw ConfigError("harmonic_extend: boundary value size mismatch");
  }
  Eigen::VectorXd full = Eigen::VectorXd::Zero(assembly_.num_vertices());
  for (int b = 0; b < nb; ++b) full[assembly_.boundary_vertices[b]] = boundary_values[b];
  if (!interior_.empty()) {
    const Eigen::VectorXd rhs = -(a_ib_ * boundary_values);
    const Eigen::VectorXd ui = ldlt_.solve(rhs);
    for (std::size_t i = 0; i < interior_.size(); ++i) full[interior_[i]] = ui[i];
  }
  return full;
}

Eigen::MatrixXd schur_dtn(const Assembly& assembly) {
  return InteriorSolver(assembly).schur_complement();
}

Eigen::VectorXd harmonic_extend(const Assembly& assembly,
                                const Eigen::VectorXd& boundary_values) {
  return InteriorSolver(assembly).extend(boundary_values);
}

}  // namespace wentzel
