#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace wentzel {

/// Finite metric measure space: a point cloud with Euclidean ambient
/// distance and a nonnegative weight per point. Weights are carried by a
/// designated boundary subset; interior points participate as ball
/// centers and members but carry zero mass.
class FiniteMetricMeasureSpace {
public:
  FiniteMetricMeasureSpace(Eigen::MatrixXd points, Eigen::VectorXd weights,
                           std::vector<char> boundary_mask, int dim_n);

  int size() const { return static_cast<int>(points_.rows()); }
  int ambient_dim() const { return static_cast<int>(points_.cols()); }
  int dim_n() const { return dim_n_; }

  const Eigen::MatrixXd& points() const { return points_; }
  Eigen::RowVectorXd point(int i) const { return points_.row(i); }
  double weight(int i) const { return weights_[i]; }
  const Eigen::VectorXd& weights() const { return weights_; }
  bool is_boundary(int i) const { return boundary_mask_[i] != 0; }
  const std::vector<char>& boundary_mask() const { return boundary_mask_; }

  double dist(int i, int j) const { return (points_.row(i) - points_.row(j)).norm(); }

  double total_measure() const { return total_measure_; }
  double max_weight() const { return max_weight_; }
  /// Largest pairwise distance; computed once and cached.
  double diameter() const;

  /// Ids of points with positive weight.
  const std::vector<int>& weighted_points() const { return weighted_points_; }

  /// Symmetry and triangle-inequality spot check on sampled triples,
  /// tolerance 1e-9 * diameter. Returns false on a violation.
  bool check_metric(int sample_triples = 2000, unsigned seed = 0) const;

private:
  Eigen::MatrixXd points_;
  Eigen::VectorXd weights_;
  std::vector<char> boundary_mask_;
  int dim_n_ = 2;
  double total_measure_ = 0.0;
  double max_weight_ = 0.0;
  std::vector<int> weighted_points_;
  mutable double diameter_ = -1.0;
};

/// Open metric ball: members are exactly {y : d(x,y) < r}.
struct Ball {
  int center = -1;
  double radius = 0.0;
  std::vector<int> members;
  double measure = 0.0;
};

Ball ball(const FiniteMetricMeasureSpace& space, int center, double radius);

/// Plain-text space format: '#' comments, header "n_points dim_n", then
/// one point per line "x y [z] weight is_boundary".
FiniteMetricMeasureSpace read_space(const std::string& path);
void write_space(const FiniteMetricMeasureSpace& space, const std::string& path);
std::string serialize_space(const FiniteMetricMeasureSpace& space);
FiniteMetricMeasureSpace parse_space(const std::string& text);

/// FNV-1a hash of the canonical serialization; used to tie capacitor
/// family files to their source space.
std::uint64_t space_checksum(const FiniteMetricMeasureSpace& space);

}  // namespace wentzel
