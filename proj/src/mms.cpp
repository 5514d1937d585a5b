#include "wentzel/mms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wentzel/errors.hpp"

namespace wentzel {

double unit_ball_volume(int m) {
  if (m < 0) throw ConfigError("unit_ball_volume: negative dimension");
  return std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
}

double unit_sphere_area(int m) {
  // S^m bounds the unit ball of R^{m+1}: area = (m+1) * omega_{m+1}.
  return (m + 1) * unit_ball_volume(m + 1);
}

int covering_number(const FiniteMetricMeasureSpace& space, double r, double epsilon,
                    const std::vector<int>& sample_centers) {
  if (space.size() == 0) throw ConfigError("covering_number: empty space");
  if (r <= 0.0 || epsilon <= 1.0) {
    throw ConfigError("covering_number: need r > 0 and epsilon > 1");
  }
  const double separation = r / (2.0 * epsilon);
  int best = 0;
  std::vector<int> net;
  for (int x : sample_centers) {
    if (x < 0 || x >= space.size()) throw ConfigError("covering_number: invalid center");
    net.clear();
    for (int y = 0; y < space.size(); ++y) {
      if (space.dist(x, y) >= r) continue;
      bool separated = true;
      for (int m : net) {
        if (space.dist(y, m) < separation) {
          separated = false;
          break;
        }
      }
      if (separated) net.push_back(y);
    }
    best = std::max(best, static_cast<int>(net.size()));
  }
  return best;
}

int covering_number(const FiniteMetricMeasureSpace& space, double r, double epsilon) {
  std::vector<int> centers(space.size());
  for (int i = 0; i < space.size(); ++i) centers[i] = i;
  return covering_number(space, r, epsilon, centers);
}

std::vector<std::pair<double, double>> radial_profile(
    const FiniteMetricMeasureSpace& space, const std::vector<double>& r_grid) {
  std::vector<std::pair<double, double>> profile;
  profile.reserve(r_grid.size());
  const auto& weighted = space.weighted_points();
  for (double r : r_grid) {
    double sup = 0.0;
    for (int x = 0; x < space.size(); ++x) {
      double m = 0.0;
      for (int y : weighted) {
        if (space.dist(x, y) < r) m += space.weight(y);
      }
      sup = std::max(sup, m);
    }
    profile.emplace_back(r, sup);
  }
  return profile;
}

double tau(const FiniteMetricMeasureSpace& space, double alpha,
           const std::vector<char>& active_mask) {
  if (alpha < 0.0) throw ConfigError("tau: alpha must be >= 0");
  std::vector<int> active;
  std::vector<int> weighted;
  for (int i = 0; i < space.size(); ++i) {
    if (!active_mask[i]) continue;
    active.push_back(i);
    if (space.weight(i) > 0.0) weighted.push_back(i);
  }
  const double cap = 2.0 * space.diameter();
  if (weighted.empty()) return cap;

  // tau = min over centers x of the first distance tier at which the
  // closed-ball mass exceeds alpha; the open ball at that radius still
  // excludes the tier, so the value is the exact supremum.
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> dw;
  for (int x : active) {
    dw.clear();
    for (int y : weighted) dw.emplace_back(space.dist(x, y), space.weight(y));
    std::sort(dw.begin(), dw.end());
    double cum = 0.0;
    std::size_t i = 0;
    while (i < dw.size()) {
      const double d = dw[i].first;
      if (d >= best) break;  // cannot improve the minimum
      double tier = 0.0;
      while (i < dw.size() && dw[i].first == d) tier += dw[i++].second;
      cum += tier;
      if (cum > alpha) {
        best = std::min(best, d);
        break;
      }
    }
  }
  if (!std::isfinite(best)) return cap;
  return best;
}

double tau(const FiniteMetricMeasureSpace& space, double alpha) {
  return tau(space, alpha, std::vector<char>(space.size(), 1));
}

double concentration_constant(const FiniteMetricMeasureSpace& space, double r_min,
                              double r_max, int radii_per_decade) {
  if (!(r_min > 0.0 && r_min < r_max && r_max <= 1.0)) {
    throw ConfigError("concentration_constant: need 0 < r_min < r_max <= 1");
  }
  const auto& boundary = space.weighted_points();
  if (boundary.empty()) throw ConfigError("concentration_constant: empty boundary");

  const double decades = std::log10(r_max / r_min);
  const int steps = std::max(1, static_cast<int>(std::ceil(decades * radii_per_decade)));
  std::vector<double> grid(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    grid[i] = r_min * std::pow(r_max / r_min, static_cast<double>(i) / steps);
  }
  grid.back() = r_max;

  const int exponent = space.dim_n() - 1;
  double sup = 0.0;
  for (int x : boundary) {
    for (double r : grid) {
      double m = 0.0;
      for (int y : boundary) {
        if (space.dist(x, y) < r) m += space.weight(y);
      }
      sup = std::max(sup, m / std::pow(r, exponent));
    }
  }
  return sup;
}

namespace {

int crossings_with_line(const std::vector<std::vector<Eigen::Vector2d>>& loops,
                        const Eigen::Vector2d& point, const Eigen::Vector2d& normal) {
  // Signed-side test with zero mapped to +: equivalent to nudging the
  // line off every vertex, so touches count as transversal crossings.
  int count = 0;
  for (const auto& loop : loops) {
    const std::size_t n = loop.size();
    if (n < 3) continue;
    int prev = (normal.dot(loop[n - 1] - point) < 0.0) ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) {
      const int side = (normal.dot(loop[i] - point) < 0.0) ? -1 : 1;
      if (side != prev) ++count;
      prev = side;
    }
  }
  return count;
}

double polygon_area(const std::vector<Eigen::Vector2d>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

}  // namespace

int intersection_index(const std::vector<std::vector<Eigen::Vector2d>>& loops,
                       int num_lines, unsigned rng_seed) {
  if (num_lines < 1) throw ConfigError("intersection_index: num_lines >= 1");
  double total_area = 0.0;
  std::vector<Eigen::Vector2d> midpoints;
  Eigen::Vector2d lo(std::numeric_limits<double>::max(),
                     std::numeric_limits<double>::max());
  Eigen::Vector2d hi = -lo;
  for (const auto& loop : loops) {
    if (loop.size() < 3) throw ConfigError("intersection_index: degenerate loop");
    total_area += std::abs(polygon_area(loop));
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const auto& p = loop[i];
      const auto& q = loop[(i + 1) % loop.size()];
      midpoints.push_back(0.5 * (p + q));
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  if (total_area <= 0.0) throw ConfigError("intersection_index: zero-area polygon");

  const Eigen::Vector2d center = 0.5 * (lo + hi);
  const double radius = 0.5 * (hi - lo).norm() * 1.01 + 1e-12;

  int best = 0;
  // Deterministic sweep: all lines through pairs of distinct edge midpoints.
  for (std::size_t i = 0; i < midpoints.size(); ++i) {
    for (std::size_t j = i + 1; j < midpoints.size(); ++j) {
      const Eigen::Vector2d dir = midpoints[j] - midpoints[i];
      if (dir.norm() < 1e-12 * radius) continue;
      const Eigen::Vector2d normal(-dir.y(), dir.x());
      best = std::max(best, crossings_with_line(loops, midpoints[i], normal));
    }
  }
  // Random lines: uniform angle, uniform offset across the bounding circle.
  std::mt19937 rng(rng_seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> offset(-radius, radius);
  for (int l = 0; l < num_lines; ++l) {
    const double th = angle(rng);
    const Eigen::Vector2d normal(-std::sin(th), std::cos(th));
    const Eigen::Vector2d point = center + offset(rng) * normal;
    best = std::max(best, crossings_with_line(loops, point, normal));
  }
  return std::max(best, 2);
}

int intersection_index(const std::vector<Eigen::Vector2d>& polygon, int num_lines,
                       unsigned rng_seed) {
  return intersection_index(std::vector<std::vector<Eigen::Vector2d>>{polygon},
                            num_lines, rng_seed);
}

std::pair<double, double> fit_nardulli(const FiniteMetricMeasureSpace& space,
                                       const std::vector<double>& r_grid) {
  if (r_grid.empty()) throw ConfigError("fit_nardulli: empty grid");
  const auto& weighted = space.weighted_points();
  const double omega = unit_ball_volume(space.dim_n() - 1);

  double c0 = 0.0;
  const double r0 = r_grid.back();
  std::vector<std::pair<double, double>> dw;
  for (int x = 0; x < space.size(); ++x) {
    dw.clear();
    for (int y : weighted) dw.emplace_back(space.dist(x, y), space.weight(y));
    std::sort(dw.begin(), dw.end());
    const double dist_to_support = dw.empty() ? 0.0 : dw.front().first;
    double cum = 0.0;
    std::size_t i = 0;
    for (double R : r_grid) {
      while (i < dw.size() && dw[i].first < R) cum += dw[i++].second;
      if (R < dist_to_support) continue;  // empty intersection, inequality trivial
      const double envelope = omega * std::pow(2.0 * R, space.dim_n() - 1);
      const double required = (cum / envelope - 1.0) / (2.0 * R);
      c0 = std::max(c0, required);
    }
  }
  return {c0, r0};
}

GeometrySummary GeometrySummary::make(int n, double vol_omega, double vol_gamma,
                                      double kappa) {
  if (n < 2 || vol_omega <= 0.0 || vol_gamma <= 0.0 || kappa < 0.0) {
    throw ConfigError("geometry summary: need n >= 2, positive volumes, kappa >= 0");
  }
  GeometrySummary g;
  g.n = n;
  g.vol_omega = vol_omega;
  g.vol_gamma = vol_gamma;
  g.kappa = kappa;
  g.omega_n_minus_1 = unit_ball_volume(n - 1);
  return g;
}

std::string geometry_to_json(const GeometrySummary& g) {
  nlohmann::json j;
  j["n"] = g.n;
  j["vol_omega"] = g.vol_omega;
  j["vol_gamma"] = g.vol_gamma;
  j["kappa"] = g.kappa;
  j["omega_n_minus_1"] = g.omega_n_minus_1;
  if (g.c_tilde >= 0.0) j["c_tilde"] = g.c_tilde;
  if (g.c0 >= 0.0) j["c0"] = g.c0;
  if (g.r0_nardulli >= 0.0) j["r0_nardulli"] = g.r0_nardulli;
  if (g.i_gamma) j["i_gamma"] = *g.i_gamma;
  return j.dump(2) + "\n";
}

GeometrySummary geometry_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("geometry json: ") + e.what());
  }
  GeometrySummary g = GeometrySummary::make(
      j.at("n").get<int>(), j.at("vol_omega").get<double>(),
      j.at("vol_gamma").get<double>(), j.value("kappa", 0.0));
  if (j.contains("omega_n_minus_1")) g.omega_n_minus_1 = j["omega_n_minus_1"];
  if (j.contains("c_tilde")) g.c_tilde = j["c_tilde"];
  if (j.contains("c0")) g.c0 = j["c0"];
  if (j.contains("r0_nardulli")) g.r0_nardulli = j["r0_nardulli"];
  if (j.contains("i_gamma")) g.i_gamma = j["i_gamma"].get<int>();
  return g;
}

GeometrySummary read_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open geometry file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return geometry_from_json(ss.str());
}

void write_geometry(const GeometrySummary& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write geometry file: " + path);
  out << geometry_to_json(g);
}

}  // namespace wentzel
