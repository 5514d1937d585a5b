#include "wentzel/rayleigh.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wentzel/errors.hpp"

namespace wentzel {

std::vector<int> DiscreteFunction::support() const {
  std::vector<int> s;
  for (int i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) s.push_back(i);
  }
  return s;
}

std::vector<int> DiscreteFunction::boundary_support(const Assembly& assembly) const {
  std::vector<int> s;
  for (int v : assembly.boundary_vertices) {
    if (values[v] != 0.0) s.push_back(v);
  }
  return s;
}

DiscreteFunction plateau_spherical(const FiniteMetricMeasureSpace& space,
                                   const SphericalCapacitor& cap) {
  DiscreteFunction f;
  f.values = Eigen::VectorXd::Zero(space.size());
  for (int v : cap.b_members) {
    const double d = space.dist(cap.center, v);
    f.values[v] = std::min(1.0, 2.0 - d / cap.r);
  }
  return f;
}

DiscreteFunction plateau_cm(const FiniteMetricMeasureSpace& space,
                            const CmCapacitor& cap) {
  if (cap.r_used <= 0.0) throw ConfigError("plateau_cm: r must be positive");
  DiscreteFunction f;
  f.values = Eigen::VectorXd::Zero(space.size());
  for (int v : cap.b_members) {
    double d = std::numeric_limits<double>::infinity();
    for (int a : cap.a_members) d = std::min(d, space.dist(a, v));
    f.values[v] = 1.0 - d / cap.r_used;
  }
  return f;
}

QuotientBreakdown rayleigh_quotient(const Assembly& assembly, double beta,
                                    const DiscreteFunction& f) {
  if (beta < 0.0) throw ConfigError("rayleigh_quotient: beta must be >= 0");
  if (f.values.size() != assembly.num_vertices()) {
    throw ConfigError("rayleigh_quotient: value vector size mismatch");
  }
  QuotientBreakdown q;
  q.bulk_energy = f.values.dot(assembly.a_omega * f.values);
  const Eigen::VectorXd t = assembly.trace(f.values);
  q.boundary_energy = t.dot(assembly.a_gamma * t);
  q.boundary_mass = t.dot(assembly.m_gamma.cwiseProduct(t));
  if (q.boundary_mass <= 0.0) {
    throw ZeroBoundaryMass("rayleigh_quotient: function vanishes on the boundary");
  }
  q.quotient = (q.bulk_energy + beta * q.boundary_energy) / q.boundary_mass;
  return q;
}

namespace {

// Supports must neither share a vertex nor be joined by a mesh edge, so
// every stiffness and mass cross term vanishes identically and the
// quotient of a combination splits.
void check_disjoint_supports(const Assembly& assembly,
                             const std::vector<DiscreteFunction>& fns) {
  const int nv = assembly.num_vertices();
  std::vector<int> owner(nv, -1);
  for (std::size_t j = 0; j < fns.size(); ++j) {
    for (int v : fns[j].support()) {
      if (owner[v] >= 0) {
        throw SupportsOverlap("supports share vertex " + std::to_string(v));
      }
      owner[v] = static_cast<int>(j);
    }
  }
  for (int col = 0; col < assembly.a_omega.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(assembly.a_omega, col); it; ++it) {
      const int a = owner[it.row()], b = owner[it.col()];
      if (a >= 0 && b >= 0 && a != b) {
        throw SupportsOverlap("supports are adjacent across a mesh edge");
      }
    }
  }
}

}  // namespace

double minmax_bound_from_family(const Assembly& assembly, double beta,
                                const std::vector<DiscreteFunction>& fns) {
  if (fns.empty()) throw ConfigError("minmax_bound_from_family: empty family");
  if (fns.size() > 1) check_disjoint_supports(assembly, fns);
  double bound = 0.0;
  for (const auto& f : fns) {
    bound = std::max(bound, rayleigh_quotient(assembly, beta, f).quotient);
  }
  return bound;
}

namespace {

// Feasibility cap: the largest N with alpha = mu / (16 k N^2) still at or
// above the largest single boundary weight.
int auto_n_cover(const FiniteMetricMeasureSpace& space, int k) {
  const double ratio = space.total_measure() / (16.0 * k * space.max_weight());
  return std::max(1, static_cast<int>(std::floor(std::sqrt(std::max(ratio, 0.0)))));
}

double auto_r0(const FiniteMetricMeasureSpace& space) {
  const auto& weighted = space.weighted_points();
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    for (std::size_t j = i + 1; j < weighted.size(); ++j) {
      const double d = space.dist(weighted[i], weighted[j]);
      if (d > 0.0) min_gap = std::min(min_gap, d);
    }
  }
  if (!std::isfinite(min_gap)) return 0.1;
  return std::min(0.1, 0.45 * min_gap);
}

std::vector<char> one_ring_closure(const Assembly& assembly,
                                   const std::vector<int>& support) {
  std::vector<char> mark(assembly.num_vertices(), 0);
  for (int v : support) mark[v] = 1;
  std::vector<char> out = mark;
  for (int col = 0; col < assembly.a_omega.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(assembly.a_omega, col); it; ++it) {
      if (mark[it.row()]) out[it.col()] = 1;
      if (mark[it.col()]) out[it.row()] = 1;
    }
  }
  return out;
}

}  // namespace

CertifiedBound certified_upper_bounds(const TriMesh& mesh, const Assembly& assembly,
                                      double beta, int k, int n_cover, double r0) {
  if (k < 1) throw ConfigError("certified_upper_bounds: k must be >= 1");
  const FiniteMetricMeasureSpace space = space_from_mesh(mesh);
  if (n_cover <= 0) n_cover = auto_n_cover(space, k);
  if (r0 <= 0.0) r0 = auto_r0(space);

  CertifiedBound out;
  out.k = k;
  out.n_cover_used = n_cover;
  out.r0_used = r0;

  CapacitorFamily family = build_capacitors(space, 4 * k, r0, n_cover);
  out.family_kind = family.kind;
  out.alpha = family.alpha;

  std::vector<DiscreteFunction> fns;
  std::vector<const std::vector<int>*> b_sets;
  if (family.kind == FamilyKind::Spherical) {
    for (const auto& cap : family.sphericals) {
      fns.push_back(plateau_spherical(space, cap));
      b_sets.push_back(&cap.b_members);
    }
  } else {
    for (const auto& cap : family.cms) {
      fns.push_back(plateau_cm(space, cap));
      b_sets.push_back(&cap.b_members);
    }
  }

  for (const auto& f : fns) {
    out.quotients.push_back(rayleigh_quotient(assembly, beta, f).quotient);
  }

  // Per-capacitor volume shares (vertex-lumped bulk area, boundary mass).
  Eigen::VectorXd lumped_area = Eigen::VectorXd::Zero(mesh.num_vertices());
  for (const auto& t : mesh.triangles) {
    const Eigen::Vector2d a = mesh.vertices.row(t[0]);
    const Eigen::Vector2d b = mesh.vertices.row(t[1]);
    const Eigen::Vector2d c = mesh.vertices.row(t[2]);
    const double third =
        ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x()) / 6.0;
    for (int v : t) lumped_area[v] += third;
  }
  std::vector<char> volume_ok(fns.size(), 0);
  for (std::size_t j = 0; j < fns.size(); ++j) {
    double bulk = 0.0, bnd = 0.0;
    for (int v : *b_sets[j]) {
      bulk += lumped_area[v];
      bnd += space.weight(v);
    }
    volume_ok[j] = (bulk <= assembly.vol_omega / k) && (bnd <= assembly.vol_gamma / k);
  }

  std::vector<int> order(fns.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return out.quotients[a] < out.quotients[b]; });

  auto select = [&](bool use_volume_filter) {
    std::vector<int> chosen;
    std::vector<char> blocked(assembly.num_vertices(), 0);
    for (int idx : order) {
      if (static_cast<int>(chosen.size()) == k + 1) break;
      if (use_volume_filter && !volume_ok[idx]) continue;
      const auto support = fns[idx].support();
      bool clash = false;
      for (int v : support) {
        if (blocked[v]) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      const auto closure = one_ring_closure(assembly, support);
      for (int v = 0; v < assembly.num_vertices(); ++v) {
        if (closure[v]) blocked[v] = 1;
      }
      chosen.push_back(idx);
    }
    return chosen;
  };

  out.selected = select(true);
  if (static_cast<int>(out.selected.size()) < k + 1) {
    out.fallback = true;
    out.selected = select(false);
  }
  if (static_cast<int>(out.selected.size()) < k + 1) {
    throw CMConstructionFailed(
        "certified_upper_bounds: cannot select k+1 disjointly supported functions");
  }

  std::vector<DiscreteFunction> picked;
  for (int idx : out.selected) picked.push_back(fns[idx]);
  out.bound = minmax_bound_from_family(assembly, beta, picked);
  return out;
}

double harmonic_ritz_bound(const Assembly& assembly, const Eigen::MatrixXd& dtn,
                           double beta, const std::vector<DiscreteFunction>& fns) {
  if (fns.empty()) throw ConfigError("harmonic_ritz_bound: empty family");
  const int nb = assembly.num_boundary();
  const int m = static_cast<int>(fns.size());
  Eigen::MatrixXd traces(nb, m);
  for (int j = 0; j < m; ++j) traces.col(j) = assembly.trace(fns[j].values);

  const Eigen::MatrixXd op = dtn + beta * Eigen::MatrixXd(assembly.a_gamma);
  Eigen::MatrixXd lhs = traces.transpose() * op * traces;
  lhs = 0.5 * (lhs + lhs.transpose()).eval();
  Eigen::MatrixXd rhs =
      traces.transpose() * assembly.m_gamma.asDiagonal() * traces;
  rhs = 0.5 * (rhs + rhs.transpose()).eval();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(lhs, rhs);
  if (eig.info() != Eigen::Success) {
    throw ZeroBoundaryMass("harmonic_ritz_bound: traces are mass-degenerate");
  }
  return eig.eigenvalues().maxCoeff();
}

}  // namespace wentzel
