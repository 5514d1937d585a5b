#include "wentzel/bounds.hpp"

#include <cmath>
#include <numbers>

#include "wentzel/errors.hpp"

namespace wentzel {

namespace {

double pow2(int e) { return std::ldexp(1.0, e); }

double covering_closed_form(int n, double kappa) {
  return pow2(5 * n) * std::exp(4.0 * (n - 1) * kappa);
}

double c_model_volume(int n, double kappa) {
  return pow2(n) / n * std::exp(2.0 * (n - 1) * kappa);
}

double a_prop_of(int n, double kappa) {
  return pow2(16 * n) * std::exp(8.0 * (n - 1) * kappa);
}

double b_prop_of(int n, double kappa) {
  return pow2(14 * n) * std::exp(8.0 * (n - 1) * kappa) *
         std::pow(c_model_volume(n, kappa), 2.0 / n);
}

double c_prop_of(int n, double kappa) {
  return 25.0 * pow2(5 * (n + 1)) * std::exp(4.0 * (n - 1) * kappa);
}

double a_thm1_of(int n, double kappa) {
  return pow2(28 * n) * std::pow(unit_ball_volume(n - 1), 2.0 / (n - 1)) *
         std::exp(8.0 * (n - 1) * kappa);
}

// Collapse of the middle k^{2/n} term into a k-free constant: with
// bbar = coeff * V_G^{2/(n(n-1))}, the sub-threshold branch is bounded by
// bbar^{1+2/n} / V_G^{2/(n-1)}.
double t2_collapse(double coeff, double vol_gamma, int n) {
  const double bbar = coeff * std::pow(vol_gamma, 2.0 / (n * (n - 1.0)));
  return std::pow(bbar, 1.0 + 2.0 / n) / std::pow(vol_gamma, 2.0 / (n - 1.0));
}

void require_base(const GeometrySummary& geom, int k, const char* who) {
  if (geom.n < 2 || geom.vol_omega <= 0.0 || geom.vol_gamma <= 0.0 ||
      geom.kappa < 0.0) {
    throw ConfigError(std::string(who) + ": incomplete geometry summary");
  }
  if (k < 1) throw ConfigError(std::string(who) + ": k must be >= 1");
}

}  // namespace

ConstantTable constants(int n, double kappa, double c0, double r0_nardulli) {
  if (n < 2 || kappa < 0.0) {
    throw ConfigError("constants: need n >= 2 and kappa >= 0");
  }
  ConstantTable t;
  t.n = n;
  t.kappa = kappa;
  t.c0 = c0;
  t.r0_nardulli = r0_nardulli;

  t.covering_bound = covering_closed_form(n, kappa);
  t.c_nk = c_model_volume(n, kappa);
  t.a_prop = a_prop_of(n, kappa);
  t.b_prop = b_prop_of(n, kappa);
  t.c_prop = c_prop_of(n, kappa);

  t.a_thm1 = a_thm1_of(n, kappa);
  const double omega = unit_ball_volume(n - 1);
  if (c0 >= 0.0) {
    t.b_thm1 = pow2(24 * n) * std::pow(c0 * omega, 2.0 / n) *
                   std::exp(8.0 * (n - 1) * kappa) +
               pow2(24 * n) * std::exp(12.0 * (n - 1) * kappa);
  }
  if (r0_nardulli > 0.0) {
    const double r0 = std::min(1.0, r0_nardulli) / 10.0;
    t.c_thm1 = pow2(10 * n) * std::exp(4.0 * (n - 1) * kappa) / (r0 * r0);
  }

  t.a_n = a_prop_of(n, 1.0);
  t.b_n = b_prop_of(n, 1.0);
  t.c_n = c_prop_of(n, 1.0);
  t.a_thm1_n = a_thm1_of(n, 1.0);
  t.b_final = t.b_n * (kappa + 1.0);
  t.c_final = t.c_n * (kappa * kappa * kappa + 1.0);
  return t;
}

double weyl_asymptote(int n, double beta, double vol_gamma, int k) {
  if (n < 2 || vol_gamma <= 0.0 || k < 1) {
    throw ConfigError("weyl_asymptote: need n >= 2, vol_gamma > 0, k >= 1");
  }
  const double cn = 2.0 * std::numbers::pi /
                    std::pow(unit_ball_volume(n - 1) * vol_gamma, 1.0 / (n - 1));
  return beta * cn * cn * std::pow(static_cast<double>(k), 2.0 / (n - 1));
}

double thm_bound_general(const GeometrySummary& geom, double beta, int k) {
  require_base(geom, k, "thm_bound_general");
  if (geom.c_tilde < 0.0) {
    throw ConfigError("thm_bound_general: concentration constant missing");
  }
  const ConstantTable t = constants(geom.n, geom.kappa);
  const int n = geom.n;
  const double rho = geom.vol_omega / geom.vol_gamma;
  const double first =
      t.a_n * (geom.kappa * rho + beta) *
      std::pow(geom.c_tilde * k / geom.vol_gamma, 2.0 / (n - 1));
  const double middle = t.b_final * std::pow(rho, 1.0 - 2.0 / n) *
                        std::pow(k / geom.vol_gamma, 2.0 / n);
  const double last = t.c_final * (rho + beta);
  return first + middle + last;
}

double thm_bound_ricci(const GeometrySummary& geom, double beta, int k) {
  require_base(geom, k, "thm_bound_ricci");
  if (geom.c0 < 0.0 || geom.r0_nardulli <= 0.0) {
    throw ConfigError("thm_bound_ricci: C0/R0 missing");
  }
  const ConstantTable t = constants(geom.n, geom.kappa, geom.c0, geom.r0_nardulli);
  const int n = geom.n;
  const double rho = geom.vol_omega / geom.vol_gamma;
  const double first = t.a_thm1_n * (geom.kappa * rho + beta) *
                       std::pow(k / geom.vol_gamma, 2.0 / (n - 1));
  const double middle = t.b_thm1 * (std::pow(rho, 1.0 - 2.0 / n) + rho + beta) *
                        std::pow(k / geom.vol_gamma, 2.0 / n);
  const double last = t.c_thm1 * (rho + beta);
  return first + middle + last;
}

double cor_bound(const GeometrySummary& geom, double beta, int k, BoundRoute which) {
  require_base(geom, k, "cor_bound");
  const int n = geom.n;
  const double rho = geom.vol_omega / geom.vol_gamma;
  double a_coeff = 0.0, mid_coeff = 0.0, tail = 0.0;
  if (which == BoundRoute::General) {
    if (geom.c_tilde < 0.0) {
      throw ConfigError("cor_bound: concentration constant missing");
    }
    const ConstantTable t = constants(n, geom.kappa);
    a_coeff = t.a_n * (geom.kappa * rho + beta) *
              std::pow(geom.c_tilde, 2.0 / (n - 1));
    mid_coeff = t.b_final * std::pow(rho, 1.0 - 2.0 / n);
    tail = t.c_final * (rho + beta);
  } else {
    if (geom.c0 < 0.0 || geom.r0_nardulli <= 0.0) {
      throw ConfigError("cor_bound: C0/R0 missing");
    }
    const ConstantTable t = constants(n, geom.kappa, geom.c0, geom.r0_nardulli);
    a_coeff = t.a_thm1_n * (geom.kappa * rho + beta);
    mid_coeff = t.b_thm1 * (std::pow(rho, 1.0 - 2.0 / n) + rho + beta);
    tail = t.c_thm1 * (rho + beta);
  }
  const double head =
      (a_coeff + 1.0) * std::pow(k / geom.vol_gamma, 2.0 / (n - 1));
  return head + t2_collapse(mid_coeff, geom.vol_gamma, n) + tail;
}

double euclid_bound(const GeometrySummary& geom, double beta, int k) {
  require_base(geom, k, "euclid_bound");
  if (geom.kappa != 0.0) {
    throw ConfigError("euclid_bound: requires kappa = 0");
  }
  if (!geom.i_gamma || *geom.i_gamma < 2) {
    throw ConfigError("euclid_bound: intersection index missing");
  }
  GeometrySummary adjusted = geom;
  adjusted.c_tilde = (*geom.i_gamma / 2.0) * unit_sphere_area(geom.n - 1);
  return cor_bound(adjusted, beta, k, BoundRoute::General);
}

void check_dominance(const Eigen::VectorXd& eigenvalues, BoundReport& report) {
  for (auto& row : report.rows) {
    if (row.k < 0 || row.k >= eigenvalues.size()) {
      throw ConfigError("check_dominance: spectrum does not cover k");
    }
    const double threshold = eigenvalues[row.k] * (1.0 - 1e-8);
    row.lambda = eigenvalues[row.k];
    auto dominated = [threshold](double bound) {
      return std::isnan(bound) || bound >= threshold;
    };
    row.dom_ok = dominated(row.certified) && dominated(row.thm_general) &&
                 dominated(row.thm_ricci) && dominated(row.cor) &&
                 dominated(row.euclid);
  }
}

}  // namespace wentzel
