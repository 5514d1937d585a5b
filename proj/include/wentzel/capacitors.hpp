#pragma once

#include <string>
#include <vector>

#include "wentzel/space.hpp"

namespace wentzel {

/// Capacitor with concentric balls: A = B(center, r), B = B(center, 2r).
struct SphericalCapacitor {
  int center = -1;
  double r = 0.0;
  std::vector<int> a_members;
  std::vector<int> b_members;
  double mass_a = 0.0;
  double mass_b = 0.0;
};

/// Capacitor from the greedy covering construction: B is the exact open
/// r-neighborhood of the set A.
struct CmCapacitor {
  std::vector<int> a_members;
  std::vector<int> b_members;
  double r_used = 0.0;
  double mass_a = 0.0;
  double mass_b = 0.0;
};

enum class FamilyKind { Spherical, Cm };

struct TraceStep {
  int step = 0;
  double tau_j = 0.0;
  int x_j = -1;          // -1 marks the switch to the covering branch
  double r_j = 0.0;
  double removed_mass = 0.0;
};

struct CapacitorFamily {
  FamilyKind kind = FamilyKind::Spherical;
  std::vector<SphericalCapacitor> sphericals;
  std::vector<CmCapacitor> cms;
  int requested = 0;
  double alpha = 0.0;
  int n_cover = 0;
  double r0 = 0.0;
  double r_tilde0 = 0.0;  // covering branch only
  std::vector<TraceStep> trace;
  std::uint64_t checksum = 0;

  int size() const {
    return kind == FamilyKind::Spherical ? static_cast<int>(sphericals.size())
                                         : static_cast<int>(cms.size());
  }
};

/// Greedy construction of K capacitors with mass(A_i) >= 2*N*alpha and
/// pairwise neighborhood distance d(B_i, B_j) > 2r, under the hypothesis
/// that every open r-ball holds mass at most alpha on the active subset.
std::vector<CmCapacitor> cm_decompose(const FiniteMetricMeasureSpace& space, int count,
                                      double r, double alpha, int n_cover,
                                      const std::vector<char>& active_mask,
                                      int backtrack_budget = 1000);
std::vector<CmCapacitor> cm_decompose(const FiniteMetricMeasureSpace& space, int count,
                                      double r, double alpha, int n_cover);

/// Two-branch construction: iterated spherical steps at radius 1.5*tau_j
/// while tau_j keeps shrinking, otherwise a single covering-branch run at
/// radius min(r0, tau_1). alpha = mu(X) / (4 * count * n_cover^2).
CapacitorFamily build_capacitors(const FiniteMetricMeasureSpace& space, int count,
                                 double r0, int n_cover);

struct FamilyCheck {
  bool b_disjoint = false;
  bool masses_ok = false;
  bool gap_ok = false;    // covering branch: pairwise d(B_i,B_j) > 2*r_tilde0
  bool radii_ok = false;  // spherical branch: r_j <= 2*r0
  bool count_ok = false;
  bool all_ok() const {
    return b_disjoint && masses_ok && gap_ok && radii_ok && count_ok;
  }
  std::vector<std::string> failures;
};

FamilyCheck verify_family(const FiniteMetricMeasureSpace& space,
                          const CapacitorFamily& family);

std::string serialize_family(const CapacitorFamily& family);
CapacitorFamily parse_family(const std::string& text);
void write_family(const CapacitorFamily& family, const std::string& path);
CapacitorFamily read_family(const std::string& path);

}  // namespace wentzel
