#include "wentzel/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wentzel/errors.hpp"

namespace wentzel {

void RunConfig::validate() const {
  if (beta < 0.0) throw ConfigError("config: beta must be >= 0");
  if (k_min < 1 || k_max < k_min) throw ConfigError("config: empty k range");
  if (resolution < 4) throw ConfigError("config: resolution must be >= 4");
  if (r0 < 0.0 || r0 > 0.1) throw ConfigError("config: r0 must lie in (0, 1/10]");
  if (kappa < 0.0) throw ConfigError("config: kappa must be >= 0");
  if (n_cover_mode == NCoverMode::Explicit && n_cover < 1) {
    throw ConfigError("config: explicit n_cover must be >= 1");
  }
}

TriMesh mesh_from_config(const RunConfig& config) {
  if (!config.mesh_path.empty()) return read_mesh(config.mesh_path);
  return gen_mesh(shape_from_name(config.shape), config.resolution,
                  config.shape_params);
}

GeometrySummary measure_geometry(const TriMesh& mesh, double kappa, unsigned seed) {
  GeometrySummary g =
      GeometrySummary::make(2, mesh.vol_omega(), mesh.vol_gamma(), kappa);
  const FiniteMetricMeasureSpace space = space_from_mesh(mesh);
  g.c_tilde = concentration_constant(space, 0.1, 1.0);

  std::vector<double> grid;
  const double lo = 0.05, hi = 1.0;
  for (int i = 0; i <= 48; ++i) grid.push_back(lo * std::pow(hi / lo, i / 48.0));
  const auto [c0, r0] = fit_nardulli(space, grid);
  g.c0 = c0;
  g.r0_nardulli = r0;

  g.i_gamma = intersection_index(boundary_polylines(mesh), 256, seed);
  return g;
}

namespace {

int resolve_n_cover(const RunConfig& config, const FiniteMetricMeasureSpace& space) {
  switch (config.n_cover_mode) {
    case NCoverMode::Explicit:
      return config.n_cover;
    case NCoverMode::Paper:
      return static_cast<int>(
          std::ceil(constants(2, config.kappa).covering_bound));
    case NCoverMode::Measured: {
      // Sample a few dozen centers; the estimate is a max, so sampling
      // only under-reports.
      std::vector<int> centers;
      const int stride = std::max(1, space.size() / 32);
      for (int i = 0; i < space.size(); i += stride) centers.push_back(i);
      return std::max(1, covering_number(space, 1.0, 4.0, centers));
    }
    case NCoverMode::Auto:
    default: {
      // Largest N keeping alpha = mu/(16 k N^2) above the largest atom at
      // the top of the sweep, so one N serves the whole k range.
      const double ratio =
          space.total_measure() / (16.0 * config.k_max * space.max_weight());
      return std::max(1, static_cast<int>(std::floor(std::sqrt(std::max(ratio, 0.0)))));
    }
  }
}

void append_csv_value(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, ",%.17g", v);
  line += buf;
}

}  // namespace

std::string sweep_to_csv(const std::vector<SweepRow>& rows,
                         const GeometrySummary& geometry, double beta) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "# beta=%.17g n=%d vol_omega=%.17g vol_gamma=%.17g\n",
                beta, geometry.n, geometry.vol_omega, geometry.vol_gamma);
  out += buf;
  out += "k,lambda,certified,weyl,thm_general,thm_ricci,cor,euclid,dom_ok\n";
  for (const auto& row : rows) {
    std::string line = std::to_string(row.k);
    append_csv_value(line, row.lambda);
    append_csv_value(line, row.certified);
    append_csv_value(line, row.weyl);
    append_csv_value(line, row.thm_general);
    append_csv_value(line, row.thm_ricci);
    append_csv_value(line, row.cor);
    append_csv_value(line, row.euclid);
    line += row.dom_ok ? ",1" : ",0";
    out += line + "\n";
  }
  return out;
}

std::vector<SweepRow> sweep_from_csv(const std::string& text) {
  std::vector<SweepRow> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'k') continue;
    for (auto& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream ls(line);
    SweepRow row;
    int dom = 0;
    if (!(ls >> row.k >> row.lambda >> row.certified >> row.weyl >> row.thm_general >>
          row.thm_ricci >> row.cor >> row.euclid >> dom)) {
      throw ConfigError("sweep csv: malformed row");
    }
    row.dom_ok = dom != 0;
    rows.push_back(row);
  }
  return rows;
}

SweepResult run_sweep(const RunConfig& config) {
  config.validate();
  const TriMesh mesh = mesh_from_config(config);
  const Assembly assembly = assemble(mesh);
  const FiniteMetricMeasureSpace space = space_from_mesh(mesh);

  const int count = config.k_max + 1;
  const Spectrum spectrum = solve_wentzel(assembly, config.beta, count);

  SweepResult result;
  result.geometry = measure_geometry(mesh, config.kappa, config.seed);
  const int n_cover = resolve_n_cover(config, space);

  BoundReport bound_report;
  for (int k = config.k_min; k <= config.k_max; ++k) {
    const auto start = std::chrono::steady_clock::now();
    SweepRow row;
    row.k = k;
    row.lambda = spectrum.eigenvalues[k];
    row.certified =
        certified_upper_bounds(mesh, assembly, config.beta, k, n_cover, config.r0)
            .bound;
    row.weyl = weyl_asymptote(result.geometry.n, config.beta,
                              result.geometry.vol_gamma, k);
    row.thm_general = thm_bound_general(result.geometry, config.beta, k);
    row.thm_ricci = thm_bound_ricci(result.geometry, config.beta, k);
    row.cor = cor_bound(result.geometry, config.beta, k, BoundRoute::General);
    row.euclid = (config.kappa == 0.0)
                     ? euclid_bound(result.geometry, config.beta, k)
                     : std::numeric_limits<double>::quiet_NaN();
    row.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    result.rows.push_back(row);

    BoundRow br;
    br.k = k;
    br.certified = row.certified;
    br.thm_general = row.thm_general;
    br.thm_ricci = row.thm_ricci;
    br.cor = row.cor;
    br.euclid = row.euclid;
    bound_report.rows.push_back(br);
  }

  check_dominance(spectrum.eigenvalues, bound_report);
  bool all_ok = true;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    result.rows[i].dom_ok = bound_report.rows[i].dom_ok;
    all_ok = all_ok && result.rows[i].dom_ok;
  }
  result.exit_code = all_ok ? 0 : 1;
  result.csv = sweep_to_csv(result.rows, result.geometry, config.beta);

  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path);
    if (!out) throw ConfigError("cannot write output file: " + config.out_path);
    out << result.csv;
  }
  return result;
}

double weyl_slope(const std::vector<std::pair<int, double>>& lambdas, int n) {
  double num = 0.0, den = 0.0;
  for (const auto& [k, lambda] : lambdas) {
    const double x = std::pow(static_cast<double>(k), 2.0 / (n - 1));
    num += lambda * x;
    den += x * x;
  }
  if (den == 0.0) throw ConfigError("weyl_slope: empty sample");
  return num / den;
}

std::string report(const RunConfig& config, const std::vector<SweepRow>& rows,
                   const GeometrySummary& geometry) {
  if (rows.empty()) throw ConfigError("report: empty table");
  std::ostringstream out;
  out.precision(6);
  int dom_pass = 0;
  for (const auto& row : rows) dom_pass += row.dom_ok ? 1 : 0;
  out << "rows: " << rows.size() << ", dominance passes: " << dom_pass << '/'
      << rows.size() << '\n';
  out << "lambda range: [" << rows.front().lambda << ", " << rows.back().lambda
      << "] for k in [" << rows.front().k << ", " << rows.back().k << "]\n";

  if (rows.size() > 1) {
    const int k_lo = rows.front().k, k_hi = rows.back().k;
    const int half = k_lo + (k_hi - k_lo) / 2;
    std::vector<std::pair<int, double>> top;
    for (const auto& row : rows) {
      if (row.k >= half) top.emplace_back(row.k, row.lambda);
    }
    const double slope = weyl_slope(top, geometry.n);
    out << "fitted slope of lambda_k vs k^(2/(n-1)) over k >= " << half << ": "
        << slope << '\n';
    if (config.beta > 0.0) {
      const double coeff =
          weyl_asymptote(geometry.n, config.beta, geometry.vol_gamma, 1);
      out << "slope / (beta*C_n^2): " << slope / coeff << '\n';
    } else {
      out << "beta = 0: slope reported as absolute\n";
    }
  } else {
    out << "single row: slope omitted\n";
  }
  return out.str();
}

}  // namespace wentzel
