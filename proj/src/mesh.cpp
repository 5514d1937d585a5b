#include "wentzel/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "wentzel/errors.hpp"

namespace wentzel {

namespace {

constexpr double kPi = std::numbers::pi;

double signed_area(const Eigen::MatrixX2d& v, const std::array<int, 3>& t) {
  const Eigen::Vector2d a = v.row(t[0]), b = v.row(t[1]), c = v.row(t[2]);
  return 0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
}

void orient_ccw(const Eigen::MatrixX2d& v, std::vector<std::array<int, 3>>& tris) {
  for (auto& t : tris) {
    if (signed_area(v, t) < 0.0) std::swap(t[1], t[2]);
  }
}

// Boundary loops from triangle adjacency: directed edges without a
// reverse partner, chained into cycles. Domain stays on the left.
std::vector<std::vector<int>> derive_loops(const Eigen::MatrixX2d& v,
                                           const std::vector<std::array<int, 3>>& tris) {
  std::set<std::pair<int, int>> directed;
  for (const auto& t : tris) {
    for (int e = 0; e < 3; ++e) {
      auto edge = std::make_pair(t[e], t[(e + 1) % 3]);
      if (!directed.insert(edge).second) {
        throw MeshError("duplicate directed edge; inconsistent orientation");
      }
    }
  }
  std::map<int, int> next;
  for (const auto& [a, b] : directed) {
    if (!directed.count({b, a})) {
      if (next.count(a)) throw MeshError("non-manifold boundary vertex");
      next[a] = b;
    }
  }
  std::vector<std::vector<int>> loops;
  std::set<int> used;
  for (const auto& [start, first] : next) {
    if (used.count(start)) continue;
    std::vector<int> loop;
    int cur = start;
    do {
      loop.push_back(cur);
      used.insert(cur);
      auto it = next.find(cur);
      if (it == next.end()) throw MeshError("open boundary chain");
      cur = it->second;
    } while (cur != start);
    loops.push_back(std::move(loop));
  }
  (void)v;
  return loops;
}

TriMesh finish(Eigen::MatrixX2d vertices, std::vector<std::array<int, 3>> tris) {
  orient_ccw(vertices, tris);
  TriMesh mesh;
  mesh.boundary_loops = derive_loops(vertices, tris);
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(tris);
  mesh.validate();
  return mesh;
}

// Stitch two concentric CCW rings with a zipper walk over unwrapped angles.
void stitch_rings(const std::vector<int>& inner, double inner_offset,
                  const std::vector<int>& outer, double outer_offset,
                  std::vector<std::array<int, 3>>& tris) {
  const int na = static_cast<int>(inner.size());
  const int nb = static_cast<int>(outer.size());
  int ia = 0, jb = 0;
  auto next_a = [&] { return inner_offset + 2.0 * kPi * (ia + 1) / na; };
  auto next_b = [&] { return outer_offset + 2.0 * kPi * (jb + 1) / nb; };
  while (ia < na || jb < nb) {
    if (jb == nb || (ia < na && next_a() <= next_b())) {
      tris.push_back({inner[ia % na], outer[jb % nb], inner[(ia + 1) % na]});
      ++ia;
    } else {
      tris.push_back({inner[ia % na], outer[jb % nb], outer[(jb + 1) % nb]});
      ++jb;
    }
  }
}

TriMesh make_disk(double radius, int resolution) {
  if (radius <= 0.0) throw ConfigError("disk: radius must be positive");
  const int rings = std::max(2, static_cast<int>(std::lround(resolution / (2.0 * kPi))));
  std::vector<Eigen::Vector2d> pts;
  pts.emplace_back(0.0, 0.0);
  std::vector<std::vector<int>> ring_ids(rings + 1);
  std::vector<double> ring_off(rings + 1, 0.0);
  ring_ids[0] = {0};
  for (int i = 1; i <= rings; ++i) {
    const double r = radius * i / rings;
    const int n = (i == rings)
                      ? resolution
                      : std::max(4, static_cast<int>(std::lround(
                                        static_cast<double>(resolution) * i / rings)));
    ring_off[i] = (i % 2) ? kPi / n : 0.0;
    for (int j = 0; j < n; ++j) {
      const double th = ring_off[i] + 2.0 * kPi * j / n;
      ring_ids[i].push_back(static_cast<int>(pts.size()));
      pts.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  }
  std::vector<std::array<int, 3>> tris;
  const auto& first = ring_ids[1];
  for (std::size_t j = 0; j < first.size(); ++j) {
    tris.push_back({0, first[j], first[(j + 1) % first.size()]});
  }
  for (int i = 1; i < rings; ++i) {
    stitch_rings(ring_ids[i], ring_off[i], ring_ids[i + 1], ring_off[i + 1], tris);
  }
  Eigen::MatrixX2d v(pts.size(), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) v.row(i) = pts[i];
  return finish(std::move(v), std::move(tris));
}

TriMesh make_square(double side, int resolution) {
  if (side <= 0.0) throw ConfigError("square: side must be positive");
  const int q = std::max(1, (resolution + 3) / 4);
  const int m = q + 1;
  Eigen::MatrixX2d v(m * m, 2);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      v.row(j * m + i) << side * i / q, side * j / q;
    }
  }
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < q; ++j) {
    for (int i = 0; i < q; ++i) {
      const int v00 = j * m + i, v10 = v00 + 1, v01 = v00 + m, v11 = v01 + 1;
      tris.push_back({v00, v10, v11});
      tris.push_back({v00, v11, v01});
    }
  }
  return finish(std::move(v), std::move(tris));
}

TriMesh make_annulus(double r_in, double r_out, int resolution) {
  if (!(0.0 < r_in && r_in < r_out)) {
    throw ConfigError("annulus: need 0 < r_in < r_out");
  }
  const int rings = std::max(
      1, static_cast<int>(std::lround((r_out - r_in) * resolution / (2.0 * kPi * r_out))));
  std::vector<std::vector<int>> ring_ids(rings + 1);
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i <= rings; ++i) {
    const double r = r_in + (r_out - r_in) * i / rings;
    for (int j = 0; j < resolution; ++j) {
      const double th = 2.0 * kPi * j / resolution;
      ring_ids[i].push_back(static_cast<int>(pts.size()));
      pts.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  }
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < rings; ++i) {
    stitch_rings(ring_ids[i], 0.0, ring_ids[i + 1], 0.0, tris);
  }
  Eigen::MatrixX2d v(pts.size(), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) v.row(i) = pts[i];
  return finish(std::move(v), std::move(tris));
}

// --- polygon meshing: subdivide boundary, ear clip, refine, smooth ---

bool point_in_triangle(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                       const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  auto cross = [](const Eigen::Vector2d& u, const Eigen::Vector2d& w) {
    return u.x() * w.y() - u.y() * w.x();
  };
  const double scale = (b - a).norm() + (c - b).norm() + (a - c).norm();
  const double tol = -1e-12 * scale * scale;
  return cross(b - a, p - a) >= tol && cross(c - b, p - b) >= tol &&
         cross(a - c, p - c) >= tol;
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Eigen::Vector2d>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> ring(n);
  for (int i = 0; i < n; ++i) ring[i] = i;
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.norm());

  std::vector<std::array<int, 3>> tris;
  auto cross = [](const Eigen::Vector2d& u, const Eigen::Vector2d& w) {
    return u.x() * w.y() - u.y() * w.x();
  };
  while (ring.size() > 3) {
    const int m = static_cast<int>(ring.size());
    bool clipped = false;
    for (int k = 0; k < m; ++k) {
      const int ip = ring[(k + m - 1) % m], ic = ring[k], in = ring[(k + 1) % m];
      const Eigen::Vector2d &a = pts[ip], &b = pts[ic], &c = pts[in];
      if (cross(b - a, c - b) <= 1e-14 * scale * scale) continue;  // reflex/flat
      bool blocked = false;
      for (int other : ring) {
        if (other == ip || other == ic || other == in) continue;
        if (point_in_triangle(pts[other], a, b, c)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      tris.push_back({ip, ic, in});
      ring.erase(ring.begin() + k);
      clipped = true;
      break;
    }
    if (!clipped) throw MeshError("polygon: ear clipping failed (not simple?)");
  }
  tris.push_back({ring[0], ring[1], ring[2]});
  return tris;
}

void refine_to_edge_length(std::vector<Eigen::Vector2d>& pts,
                           std::vector<std::array<int, 3>>& tris, double h) {
  for (int pass = 0; pass < 12; ++pass) {
    double max_edge = 0.0;
    for (const auto& t : tris) {
      for (int e = 0; e < 3; ++e) {
        max_edge = std::max(max_edge, (pts[t[e]] - pts[t[(e + 1) % 3]]).norm());
      }
    }
    if (max_edge <= h) return;
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int id = static_cast<int>(pts.size());
      pts.push_back(0.5 * (pts[a] + pts[b]));
      midpoint[key] = id;
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(tris.size() * 4);
    for (const auto& t : tris) {
      const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({ab, t[1], bc});
      next.push_back({ca, bc, t[2]});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
}

void smooth_interior(std::vector<Eigen::Vector2d>& pts,
                     const std::vector<std::array<int, 3>>& tris,
                     const std::vector<char>& is_boundary, int iterations) {
  std::vector<std::vector<int>> nbrs(pts.size());
  for (const auto& t : tris) {
    for (int e = 0; e < 3; ++e) {
      nbrs[t[e]].push_back(t[(e + 1) % 3]);
      nbrs[t[e]].push_back(t[(e + 2) % 3]);
    }
  }
  std::vector<std::vector<int>> star(pts.size());
  for (std::size_t ti = 0; ti < tris.size(); ++ti) {
    for (int e = 0; e < 3; ++e) star[tris[ti][e]].push_back(static_cast<int>(ti));
  }
  auto area = [&](const std::array<int, 3>& t) {
    return 0.5 * ((pts[t[1]] - pts[t[0]]).x() * (pts[t[2]] - pts[t[0]]).y() -
                  (pts[t[1]] - pts[t[0]]).y() * (pts[t[2]] - pts[t[0]]).x());
  };
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (is_boundary[i] || nbrs[i].empty()) continue;
      Eigen::Vector2d avg(0, 0);
      for (int j : nbrs[i]) avg += pts[j];
      avg /= static_cast<double>(nbrs[i].size());
      const Eigen::Vector2d old = pts[i];
      pts[i] = avg;
      for (int ti : star[i]) {
        if (area(tris[ti]) <= 0.0) {  // reject a move that inverts an element
          pts[i] = old;
          break;
        }
      }
    }
  }
}

TriMesh make_polygon(const std::vector<Eigen::Vector2d>& polygon, int resolution) {
  if (polygon.size() < 3) throw ConfigError("polygon: need at least 3 vertices");
  std::vector<Eigen::Vector2d> poly = polygon;
  double area2 = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    area2 += p.x() * q.y() - q.x() * p.y();
  }
  if (area2 == 0.0) throw ConfigError("polygon: zero area");
  if (area2 < 0.0) std::reverse(poly.begin(), poly.end());

  double scale = 0.0;
  for (const auto& p : poly) scale = std::max(scale, p.norm());
  const double h = 2.0 * kPi * scale / resolution;

  std::vector<Eigen::Vector2d> pts;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Eigen::Vector2d& a = poly[i];
    const Eigen::Vector2d& b = poly[(i + 1) % poly.size()];
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a).norm() / h)));
    for (int k = 0; k < pieces; ++k) {
      pts.push_back(a + (b - a) * (static_cast<double>(k) / pieces));
    }
  }
  auto tris = ear_clip(pts);
  refine_to_edge_length(pts, tris, h);

  std::vector<char> bnd(pts.size(), 0);
  {
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : tris) {
      for (int e = 0; e < 3; ++e) {
        ++edge_count[std::minmax(t[e], t[(e + 1) % 3])];
      }
    }
    for (const auto& [edge, count] : edge_count) {
      if (count == 1) bnd[edge.first] = bnd[edge.second] = 1;
    }
  }
  smooth_interior(pts, tris, bnd, 10);

  Eigen::MatrixX2d v(pts.size(), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) v.row(i) = pts[i];
  return finish(std::move(v), std::move(tris));
}

}  // namespace

double TriMesh::vol_omega() const {
  double a = 0.0;
  for (const auto& t : triangles) a += signed_area(vertices, t);
  return a;
}

double TriMesh::vol_gamma() const {
  double len = 0.0;
  for (const auto& loop : boundary_loops) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      len += (vertices.row(loop[i]) - vertices.row(loop[(i + 1) % loop.size()])).norm();
    }
  }
  return len;
}

std::vector<int> TriMesh::boundary_vertices() const {
  std::vector<int> ids;
  for (const auto& loop : boundary_loops) ids.insert(ids.end(), loop.begin(), loop.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<char> TriMesh::boundary_flags() const {
  std::vector<char> flags(num_vertices(), 0);
  for (const auto& loop : boundary_loops) {
    for (int i : loop) flags[i] = 1;
  }
  return flags;
}

void TriMesh::validate() const {
  const int nv = num_vertices();
  for (const auto& t : triangles) {
    for (int i : t) {
      if (i < 0 || i >= nv) throw MeshError("triangle index out of range");
    }
    if (signed_area(vertices, t) <= 0.0) {
      throw MeshError("non-positive triangle area");
    }
  }
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : triangles) {
    for (int e = 0; e < 3; ++e) {
      ++edge_count[std::minmax(t[e], t[(e + 1) % 3])];
    }
  }
  std::set<std::pair<int, int>> boundary_edges;
  for (const auto& [edge, count] : edge_count) {
    if (count == 1) boundary_edges.insert(edge);
    if (count > 2) throw MeshError("edge shared by more than two triangles");
  }
  std::set<std::pair<int, int>> loop_edges;
  for (const auto& loop : boundary_loops) {
    if (loop.size() < 3) throw MeshError("boundary loop too short");
    std::set<int> seen(loop.begin(), loop.end());
    if (seen.size() != loop.size()) throw MeshError("self-intersecting boundary loop");
    for (std::size_t i = 0; i < loop.size(); ++i) {
      loop_edges.insert(std::minmax(loop[i], loop[(i + 1) % loop.size()]));
    }
  }
  if (loop_edges != boundary_edges) {
    throw MeshError("boundary loops do not match triangle adjacency");
  }
  const long euler = static_cast<long>(nv) - static_cast<long>(edge_count.size()) +
                     static_cast<long>(triangles.size());
  if (euler != 2 - static_cast<long>(boundary_loops.size())) {
    throw MeshError("Euler count inconsistent with loop count");
  }
}

Shape shape_from_name(const std::string& name) {
  if (name == "disk") return Shape::Disk;
  if (name == "square") return Shape::Square;
  if (name == "ellipse") return Shape::Ellipse;
  if (name == "annulus") return Shape::Annulus;
  if (name == "polygon") return Shape::Polygon;
  throw ConfigError("unknown shape: " + name);
}

TriMesh gen_mesh(Shape shape, int resolution, const ShapeParams& params) {
  if (resolution < 4) throw ConfigError("gen_mesh: resolution must be >= 4");
  switch (shape) {
    case Shape::Disk:
      return make_disk(params.radius, resolution);
    case Shape::Square:
      return make_square(params.side, resolution);
    case Shape::Ellipse: {
      if (params.a <= 0.0 || params.b <= 0.0) {
        throw ConfigError("ellipse: semi-axes must be positive");
      }
      TriMesh disk = make_disk(1.0, resolution);
      disk.vertices.col(0) *= params.a;
      disk.vertices.col(1) *= params.b;
      disk.validate();
      return disk;
    }
    case Shape::Annulus:
      return make_annulus(params.r_in, params.r_out, resolution);
    case Shape::Polygon:
      return make_polygon(params.polygon, resolution);
  }
  throw ConfigError("gen_mesh: unknown shape");
}

std::vector<Eigen::Vector2d> random_star_polygon(unsigned seed, int num_vertices,
                                                 double r_min, double r_max) {
  if (num_vertices < 3) throw ConfigError("random_star_polygon: need >= 3 vertices");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> radius(r_min, r_max);
  std::vector<Eigen::Vector2d> poly;
  poly.reserve(num_vertices);
  for (int i = 0; i < num_vertices; ++i) {
    const double th = 2.0 * kPi * i / num_vertices;
    const double r = radius(rng);
    poly.emplace_back(r * std::cos(th), r * std::sin(th));
  }
  return poly;
}

Eigen::VectorXd boundary_weights(const TriMesh& mesh) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(mesh.num_vertices());
  for (const auto& loop : mesh.boundary_loops) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const int a = loop[i], b = loop[(i + 1) % loop.size()];
      const double half = 0.5 * (mesh.vertices.row(a) - mesh.vertices.row(b)).norm();
      w[a] += half;
      w[b] += half;
    }
  }
  return w;
}

FiniteMetricMeasureSpace space_from_mesh(const TriMesh& mesh) {
  return FiniteMetricMeasureSpace(mesh.vertices, boundary_weights(mesh),
                                  mesh.boundary_flags(), 2);
}

std::vector<std::vector<Eigen::Vector2d>> boundary_polylines(const TriMesh& mesh) {
  std::vector<std::vector<Eigen::Vector2d>> loops;
  for (const auto& loop : mesh.boundary_loops) {
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(loop.size());
    for (int i : loop) pts.emplace_back(mesh.vertices(i, 0), mesh.vertices(i, 1));
    loops.push_back(std::move(pts));
  }
  return loops;
}

std::string serialize_mesh(const TriMesh& mesh) {
  std::ostringstream out;
  out << "# wentzel triangle mesh\n";
  out << mesh.num_vertices() << ' ' << mesh.num_triangles() << ' '
      << mesh.boundary_loops.size() << '\n';
  char buf[96];
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", mesh.vertices(i, 0),
                  mesh.vertices(i, 1));
    out << buf;
  }
  for (const auto& t : mesh.triangles) {
    out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  for (const auto& loop : mesh.boundary_loops) {
    out << loop.size();
    for (int i : loop) out << ' ' << i;
    out << '\n';
  }
  return out.str();
}

TriMesh parse_mesh(const std::string& text) {
  std::istringstream raw(text);
  std::ostringstream cleaned;
  std::string line;
  while (std::getline(raw, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    cleaned << line << '\n';
  }
  std::istringstream in(cleaned.str());
  int nv = 0, nt = 0, nl = 0;
  if (!(in >> nv >> nt >> nl) || nv < 3 || nt < 1 || nl < 1) {
    throw ConfigError("mesh file: bad header");
  }
  TriMesh mesh;
  mesh.vertices.resize(nv, 2);
  for (int i = 0; i < nv; ++i) {
    if (!(in >> mesh.vertices(i, 0) >> mesh.vertices(i, 1))) {
      throw ConfigError("mesh file: truncated vertex list");
    }
  }
  mesh.triangles.resize(nt);
  for (int i = 0; i < nt; ++i) {
    if (!(in >> mesh.triangles[i][0] >> mesh.triangles[i][1] >> mesh.triangles[i][2])) {
      throw ConfigError("mesh file: truncated triangle list");
    }
  }
  for (int l = 0; l < nl; ++l) {
    int len = 0;
    if (!(in >> len) || len < 3) throw ConfigError("mesh file: bad loop length");
    std::vector<int> loop(len);
    for (int i = 0; i < len; ++i) {
      if (!(in >> loop[i])) throw ConfigError("mesh file: truncated loop");
    }
    mesh.boundary_loops.push_back(std::move(loop));
  }
  mesh.validate();
  return mesh;
}

TriMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mesh file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_mesh(ss.str());
}

void write_mesh(const TriMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write mesh file: " + path);
  out << serialize_mesh(mesh);
}

TriMesh scaled_mesh(const TriMesh& mesh, double factor) {
  if (factor <= 0.0) throw ConfigError("scaled_mesh: factor must be positive");
  TriMesh scaled = mesh;
  scaled.vertices *= factor;
  return scaled;
}

}  // namespace wentzel
