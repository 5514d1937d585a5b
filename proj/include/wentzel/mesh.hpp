#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "wentzel/space.hpp"

namespace wentzel {

/// Planar triangulation with counterclockwise triangles and ordered
/// closed boundary loops (domain on the left of each directed loop edge).
struct TriMesh {
  Eigen::MatrixX2d vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::vector<int>> boundary_loops;

  int num_vertices() const { return static_cast<int>(vertices.rows()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }

  double vol_omega() const;  // total triangle area
  double vol_gamma() const;  // total boundary length

  /// Sorted ids of boundary vertices (union over loops).
  std::vector<int> boundary_vertices() const;
  std::vector<char> boundary_flags() const;

  /// Throws MeshError on inverted triangles, open loops, boundary edges
  /// shared by two triangles, or an Euler count inconsistent with the
  /// loop count.
  void validate() const;
};

enum class Shape { Disk, Square, Ellipse, Annulus, Polygon };

struct ShapeParams {
  double radius = 1.0;                       // disk
  double side = 1.0;                         // square
  double a = 1.0, b = 1.0;                   // ellipse semi-axes
  double r_in = 0.5, r_out = 1.0;            // annulus
  std::vector<Eigen::Vector2d> polygon;      // simple closed polygon, CCW or CW
};

/// Generates a mesh whose boundary vertex spacing is at most
/// 2*pi*scale/resolution, scale being the shape's circumradius.
TriMesh gen_mesh(Shape shape, int resolution, const ShapeParams& params = {});
Shape shape_from_name(const std::string& name);

/// Simple star-shaped polygon with pseudo-random vertex radii; handy as a
/// generic non-convex test domain.
std::vector<Eigen::Vector2d> random_star_polygon(unsigned seed, int num_vertices,
                                                 double r_min = 0.6, double r_max = 1.3);

/// Lumped boundary weights: half the lengths of the adjacent loop edges
/// for boundary vertices, zero elsewhere. Sums to vol_gamma.
Eigen::VectorXd boundary_weights(const TriMesh& mesh);

/// The mesh as a metric measure space: all vertices, Euclidean distance,
/// lumped boundary weights. Point i corresponds to vertex i.
FiniteMetricMeasureSpace space_from_mesh(const TriMesh& mesh);

/// Boundary loops as coordinate polylines.
std::vector<std::vector<Eigen::Vector2d>> boundary_polylines(const TriMesh& mesh);

/// ASCII mesh format: '#' comments, header "nv nt nl", vertex lines
/// "x y", triangle lines "i j k" (0-based, CCW), then per loop
/// "len i1 ... i_len".
TriMesh read_mesh(const std::string& path);
void write_mesh(const TriMesh& mesh, const std::string& path);
std::string serialize_mesh(const TriMesh& mesh);
TriMesh parse_mesh(const std::string& text);

TriMesh scaled_mesh(const TriMesh& mesh, double factor);

}  // namespace wentzel
