#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wentzel/assembly.hpp"
#include "wentzel/capacitors.hpp"
#include "wentzel/space.hpp"

namespace wentzel {

/// One real value per mesh vertex.
struct DiscreteFunction {
  Eigen::VectorXd values;

  std::vector<int> support() const;
  std::vector<int> boundary_support(const Assembly& assembly) const;
};

struct QuotientBreakdown {
  double bulk_energy = 0.0;      // f^T A_Omega f
  double boundary_energy = 0.0;  // trace^T A_Gamma trace
  double boundary_mass = 0.0;    // trace^T M_Gamma trace
  double quotient = 0.0;         // (bulk + beta * boundary_energy) / boundary_mass
};

/// f(x) = min(1, 2 - d(center, x) / r) inside B(center, 2r), 0 outside.
DiscreteFunction plateau_spherical(const FiniteMetricMeasureSpace& space,
                                   const SphericalCapacitor& cap);

/// f(x) = 1 - d(A, x) / r inside the open r-neighborhood of A, 0 outside.
DiscreteFunction plateau_cm(const FiniteMetricMeasureSpace& space,
                            const CmCapacitor& cap);

QuotientBreakdown rayleigh_quotient(const Assembly& assembly, double beta,
                                    const DiscreteFunction& f);

/// Certified bound for the (m-1)-th eigenvalue from m test functions with
/// pairwise disjoint, mutually non-adjacent supports: the quotient of any
/// combination is at most the largest individual quotient. Throws
/// SupportsOverlap when two supports share a vertex or a mesh edge.
double minmax_bound_from_family(const Assembly& assembly, double beta,
                                const std::vector<DiscreteFunction>& fns);

struct CertifiedBound {
  int k = 0;
  double bound = 0.0;
  FamilyKind family_kind = FamilyKind::Spherical;
  bool fallback = false;   // volume filters could not keep k+1 functions
  int n_cover_used = 0;
  double r0_used = 0.0;
  double alpha = 0.0;
  std::vector<int> selected;       // capacitor indices in family order
  std::vector<double> quotients;   // one per capacitor in family order
};

/// End-to-end certificate for lambda_k: builds 4k capacitors with
/// alpha = vol_gamma / (16 k N^2), takes the plateau functions, filters by
/// the per-capacitor volume shares, and returns the max quotient over the
/// k+1 selected functions. n_cover = 0 or r0 = 0 pick feasible defaults
/// from the mesh spacing.
CertifiedBound certified_upper_bounds(const TriMesh& mesh, const Assembly& assembly,
                                      double beta, int k, int n_cover = 0,
                                      double r0 = 0.0);

/// Optional tightening: Rayleigh-Ritz bound over the span of the selected
/// traces with harmonically extended interiors (largest eigenvalue of the
/// reduced pencil). Valid for any independent family; never above the
/// plateau bound.
double harmonic_ritz_bound(const Assembly& assembly, const Eigen::MatrixXd& dtn,
                           double beta, const std::vector<DiscreteFunction>& fns);

}  // namespace wentzel
