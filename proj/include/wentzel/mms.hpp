#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wentzel/space.hpp"

namespace wentzel {

/// Volume of the unit ball of R^m (m >= 0).
double unit_ball_volume(int m);
/// Surface area of the unit sphere S^m in R^{m+1}.
double unit_sphere_area(int m);

/// Greedy covering-number estimate: max over the given centers of the
/// size of a maximal r/(2*epsilon)-separated net inside the open ball
/// B(x, r). The net centers form an r/epsilon-cover of the ball.
int covering_number(const FiniteMetricMeasureSpace& space, double r, double epsilon,
                    const std::vector<int>& sample_centers);
int covering_number(const FiniteMetricMeasureSpace& space, double r, double epsilon);

/// For each grid radius, the exact maximum over all centers of the open
/// ball measure. Nondecreasing in r.
std::vector<std::pair<double, double>> radial_profile(
    const FiniteMetricMeasureSpace& space, const std::vector<double>& r_grid);

/// Exact sup{r > 0 : mu(B(x,r)) <= alpha for all x in active}, with both
/// ball mass and centers restricted to the active subset. Returns 0 when
/// a single atom already exceeds alpha, and 2*diameter when no radius
/// violates the threshold.
double tau(const FiniteMetricMeasureSpace& space, double alpha,
           const std::vector<char>& active_mask);
double tau(const FiniteMetricMeasureSpace& space, double alpha);

/// Boundary-volume concentration constant: sup over boundary centers and
/// a logarithmic radius grid of mu(B(x,r)) / r^{n-1}.
double concentration_constant(const FiniteMetricMeasureSpace& space, double r_min,
                              double r_max, int radii_per_decade = 64);

/// Maximum transversal crossing count of straight lines with a closed
/// planar polygon (or several loops), over num_lines random lines plus
/// all lines through pairs of edge midpoints. Even, and >= 2.
int intersection_index(const std::vector<Eigen::Vector2d>& polygon, int num_lines,
                       unsigned rng_seed);
int intersection_index(const std::vector<std::vector<Eigen::Vector2d>>& loops,
                       int num_lines, unsigned rng_seed);

/// Smallest C0 >= 0 with mu(B(x,R)) <= (1 + 2*R*C0) * w_{n-1} * (2R)^{n-1}
/// for every center x and every grid R in [d(x, support), R0]; R0 is the
/// largest grid radius. Deterministic.
std::pair<double, double> fit_nardulli(const FiniteMetricMeasureSpace& space,
                                       const std::vector<double>& r_grid);

/// Scalar geometric summary consumed by the closed-form bound evaluators.
struct GeometrySummary {
  int n = 2;
  double vol_omega = 0.0;  // bulk volume, length^n
  double vol_gamma = 0.0;  // boundary volume, length^{n-1}
  double kappa = 0.0;      // Ricci lower-bound parameter, >= 0
  double c_tilde = -1.0;   // concentration constant; < 0 when absent
  double c0 = -1.0;        // fitted volume-growth constant; < 0 when absent
  double r0_nardulli = -1.0;  // fit validity radius; < 0 when absent
  std::optional<int> i_gamma; // intersection index
  double omega_n_minus_1 = 0.0;  // unit ball volume of R^{n-1}

  static GeometrySummary make(int n, double vol_omega, double vol_gamma,
                              double kappa = 0.0);
};

std::string geometry_to_json(const GeometrySummary& g);
GeometrySummary geometry_from_json(const std::string& text);
GeometrySummary read_geometry(const std::string& path);
void write_geometry(const GeometrySummary& g, const std::string& path);

}  // namespace wentzel
