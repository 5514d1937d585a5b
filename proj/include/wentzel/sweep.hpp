#pragma once

#include <string>
#include <vector>

#include "wentzel/bounds.hpp"
#include "wentzel/mesh.hpp"
#include "wentzel/rayleigh.hpp"
#include "wentzel/solver.hpp"

namespace wentzel {

enum class NCoverMode { Auto, Measured, Paper, Explicit };

struct RunConfig {
  std::string mesh_path;  // empty: generate from shape
  std::string shape = "disk";
  int resolution = 240;
  ShapeParams shape_params;
  double beta = 1.0;
  int k_min = 1;
  int k_max = 8;
  NCoverMode n_cover_mode = NCoverMode::Auto;
  int n_cover = 0;
  double r0 = 0.0;  // 0 = derive from boundary spacing
  double kappa = 0.0;
  unsigned seed = 0;
  std::string out_path;

  void validate() const;
};

struct SweepRow {
  int k = 0;
  double lambda = 0.0;
  double certified = 0.0;
  double weyl = 0.0;
  double thm_general = 0.0;
  double thm_ricci = 0.0;
  double cor = 0.0;
  double euclid = 0.0;
  bool dom_ok = false;
  double elapsed_ms = 0.0;  // not part of the CSV contract
};

struct SweepResult {
  std::vector<SweepRow> rows;
  GeometrySummary geometry;
  std::string csv;
  int exit_code = 0;  // 0 iff every dominance flag passes
};

/// Measured geometric summary of a mesh: concentration constant over
/// [0.1, 1], volume-growth fit over a log grid up to 1, and the sampled
/// intersection index of the boundary loops.
GeometrySummary measure_geometry(const TriMesh& mesh, double kappa, unsigned seed);

TriMesh mesh_from_config(const RunConfig& config);

/// Full pipeline for one mesh: spectrum, per-k certificates, closed-form
/// bounds, dominance flags. Deterministic for a fixed config and seed.
SweepResult run_sweep(const RunConfig& config);

std::string sweep_to_csv(const std::vector<SweepRow>& rows,
                         const GeometrySummary& geometry, double beta);
std::vector<SweepRow> sweep_from_csv(const std::string& text);

/// Human-readable summary: per-column dominance counts and, when the
/// table has more than one row, the least-squares slope of lambda_k
/// against k^{2/(n-1)} over the top half of the k range, with its ratio
/// to the Weyl coefficient when beta > 0.
std::string report(const RunConfig& config, const std::vector<SweepRow>& rows,
                   const GeometrySummary& geometry);

/// Least-squares slope through the origin of lambda_k vs k^{2/(n-1)}.
double weyl_slope(const std::vector<std::pair<int, double>>& lambdas, int n);

}  // namespace wentzel
