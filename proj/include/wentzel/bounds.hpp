#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wentzel/mms.hpp"

namespace wentzel {

/// Closed-form constants of the eigenvalue bounds. Fields suffixed _n are
/// the kappa-free specializations (the kappa = 1 evaluations), used where
/// a bound's statement splits off the kappa dependence.
struct ConstantTable {
  int n = 2;
  double kappa = 0.0;
  double c0 = -1.0;            // volume-growth constant; < 0 when absent
  double r0_nardulli = -1.0;   // growth validity radius; < 0 when absent

  double covering_bound = 0.0;  // 2^{5n} e^{4(n-1)k}
  double c_nk = 0.0;            // (2^n / n) e^{2(n-1)k}
  double a_prop = 0.0;          // 2^{16n} e^{8(n-1)k}
  double b_prop = 0.0;          // 2^{14n} e^{8(n-1)k} c_nk^{2/n}
  double c_prop = 0.0;          // 25 * 2^{5(n+1)} e^{4(n-1)k}

  double a_thm1 = 0.0;   // 2^{28n} w_{n-1}^{2/(n-1)} e^{8(n-1)k}
  double b_thm1 = 0.0;   // 2^{24n} (C0 w_{n-1})^{2/n} e^{8(n-1)k} + 2^{24n} e^{12(n-1)k}
  double c_thm1 = 0.0;   // 2^{10n} e^{4(n-1)k} / r0^2, r0 = min(1, R0)/10

  double a_n = 0.0;       // a_prop at kappa = 1
  double b_n = 0.0;       // b_prop at kappa = 1
  double c_n = 0.0;       // c_prop at kappa = 1
  double a_thm1_n = 0.0;  // a_thm1 at kappa = 1
  double b_final = 0.0;   // b_n * (kappa + 1)
  double c_final = 0.0;   // c_n * (kappa^3 + 1)
};

ConstantTable constants(int n, double kappa, double c0 = -1.0,
                        double r0_nardulli = -1.0);

/// Leading Weyl term beta * C_n^2 * k^{2/(n-1)} with
/// C_n = 2*pi / (w_{n-1} * vol_gamma)^{1/(n-1)}.
double weyl_asymptote(int n, double beta, double vol_gamma, int k);

/// Bound in terms of the concentration constant c_tilde.
double thm_bound_general(const GeometrySummary& geom, double beta, int k);

/// Bound in terms of the fitted volume-growth pair (C0, R0).
double thm_bound_ricci(const GeometrySummary& geom, double beta, int k);

enum class BoundRoute { General, Ricci };

/// Single-power-of-k corollary form: (A-coefficient + 1) (k/V_G)^{2/(n-1)}
/// plus a k-free geometric constant.
double cor_bound(const GeometrySummary& geom, double beta, int k, BoundRoute which);

/// Euclidean specialization: c_tilde = (i_gamma / 2) * vol(S^{n-1}),
/// routed through the general corollary. Requires kappa = 0.
double euclid_bound(const GeometrySummary& geom, double beta, int k);

struct BoundRow {
  int k = 0;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double certified = std::numeric_limits<double>::quiet_NaN();
  double weyl = std::numeric_limits<double>::quiet_NaN();
  double thm_general = std::numeric_limits<double>::quiet_NaN();
  double thm_ricci = std::numeric_limits<double>::quiet_NaN();
  double cor = std::numeric_limits<double>::quiet_NaN();
  double euclid = std::numeric_limits<double>::quiet_NaN();
  bool dom_ok = false;
};

struct BoundReport {
  std::vector<BoundRow> rows;
};

/// Sets dom_ok per row: every present bound (weyl excluded; it is only
/// asymptotic) must be at least lambda_k * (1 - 1e-8).
void check_dominance(const Eigen::VectorXd& eigenvalues, BoundReport& report);

}  // namespace wentzel
