#include "wentzel/space.hpp"

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>

#include "wentzel/errors.hpp"

namespace wentzel {

FiniteMetricMeasureSpace::FiniteMetricMeasureSpace(Eigen::MatrixXd points,
                                                   Eigen::VectorXd weights,
                                                   std::vector<char> boundary_mask,
                                                   int dim_n)
    : points_(std::move(points)),
      weights_(std::move(weights)),
      boundary_mask_(std::move(boundary_mask)),
      dim_n_(dim_n) {
  const int n = static_cast<int>(points_.rows());
  if (weights_.size() != n || static_cast<int>(boundary_mask_.size()) != n) {
    throw ConfigError("space: points/weights/mask size mismatch");
  }
  if (dim_n_ < 2) {
    throw ConfigError("space: dim_n must be >= 2");
  }
  for (int i = 0; i < n; ++i) {
    if (weights_[i] < 0.0) {
      throw ConfigError("space: negative weight");
    }
    if (weights_[i] > 0.0 && !boundary_mask_[i]) {
      throw ConfigError("space: positive weight outside boundary mask");
    }
    if (weights_[i] > 0.0) {
      weighted_points_.push_back(i);
      max_weight_ = std::max(max_weight_, weights_[i]);
    }
    total_measure_ += weights_[i];
  }
  if (n == 0 || total_measure_ <= 0.0) {
    throw ConfigError("space: total measure must be positive");
  }
}

double FiniteMetricMeasureSpace::diameter() const {
  if (diameter_ >= 0.0) return diameter_;
  double d2 = 0.0;
  const int n = size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      d2 = std::max(d2, (points_.row(i) - points_.row(j)).squaredNorm());
    }
  }
  diameter_ = std::sqrt(d2);
  return diameter_;
}

bool FiniteMetricMeasureSpace::check_metric(int sample_triples, unsigned seed) const {
  const int n = size();
  if (n < 3) return true;
  const double tol = 1e-9 * diameter();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int t = 0; t < sample_triples; ++t) {
    const int i = pick(rng), j = pick(rng), k = pick(rng);
    if (std::abs(dist(i, j) - dist(j, i)) > tol) return false;
    if (dist(i, k) > dist(i, j) + dist(j, k) + tol) return false;
    if (dist(i, i) != 0.0) return false;
  }
  return true;
}

Ball ball(const FiniteMetricMeasureSpace& space, int center, double radius) {
  if (center < 0 || center >= space.size()) {
    throw ConfigError("ball: invalid point id");
  }
  if (radius < 0.0) {
    throw ConfigError("ball: negative radius");
  }
  Ball b;
  b.center = center;
  b.radius = radius;
  for (int i = 0; i < space.size(); ++i) {
    if (space.dist(center, i) < radius) {
      b.members.push_back(i);
      b.measure += space.weight(i);
    }
  }
  return b;
}

std::string serialize_space(const FiniteMetricMeasureSpace& space) {
  std::ostringstream out;
  out << "# wentzel metric measure space\n";
  out << space.size() << ' ' << space.dim_n() << '\n';
  char buf[96];
  const int ad = space.ambient_dim();
  for (int i = 0; i < space.size(); ++i) {
    for (int c = 0; c < ad; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g ", space.points()(i, c));
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g %d\n", space.weight(i),
                  space.is_boundary(i) ? 1 : 0);
    out << buf;
  }
  return out.str();
}

namespace {

std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    out << line << '\n';
  }
  return out.str();
}

}  // namespace

FiniteMetricMeasureSpace parse_space(const std::string& text) {
  std::istringstream in(strip_comments(text));
  int n = 0, dim_n = 0;
  if (!(in >> n >> dim_n) || n <= 0 || dim_n < 2) {
    throw ConfigError("space file: bad header");
  }
  const int ad = std::min(dim_n, 3);  // stored coordinates: x y [z]
  Eigen::MatrixXd pts(n, ad);
  Eigen::VectorXd w(n);
  std::vector<char> mask(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < ad; ++c) {
      if (!(in >> pts(i, c))) throw ConfigError("space file: truncated point line");
    }
    int b = 0;
    if (!(in >> w[i] >> b)) throw ConfigError("space file: truncated point line");
    mask[i] = b ? 1 : 0;
  }
  return FiniteMetricMeasureSpace(std::move(pts), std::move(w), std::move(mask), dim_n);
}

FiniteMetricMeasureSpace read_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open space file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_space(ss.str());
}

void write_space(const FiniteMetricMeasureSpace& space, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write space file: " + path);
  out << serialize_space(space);
}

std::uint64_t space_checksum(const FiniteMetricMeasureSpace& space) {
  const std::string text = serialize_space(space);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace wentzel
