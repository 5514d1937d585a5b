#include "wentzel/capacitors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "wentzel/errors.hpp"
#include "wentzel/mms.hpp"

namespace wentzel {

namespace {

double active_ball_mass(const FiniteMetricMeasureSpace& space, int center, double r,
                        const std::vector<char>& active) {
  double m = 0.0;
  for (int y : space.weighted_points()) {
    if (active[y] && space.dist(center, y) < r) m += space.weight(y);
  }
  return m;
}

std::vector<int> ball_members(const FiniteMetricMeasureSpace& space, int center,
                              double r) {
  std::vector<int> out;
  for (int i = 0; i < space.size(); ++i) {
    if (space.dist(center, i) < r) out.push_back(i);
  }
  return out;
}

// Open r-neighborhood of a point set, over all points of the space.
std::vector<int> neighborhood(const FiniteMetricMeasureSpace& space,
                              const std::vector<int>& set, double r) {
  std::vector<int> out;
  for (int i = 0; i < space.size(); ++i) {
    for (int a : set) {
      if (space.dist(i, a) < r) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

double set_mass(const FiniteMetricMeasureSpace& space, const std::vector<int>& set) {
  double m = 0.0;
  for (int i : set) m += space.weight(i);
  return m;
}

double set_distance(const FiniteMetricMeasureSpace& space, const std::vector<int>& a,
                    const std::vector<int>& b) {
  double d = std::numeric_limits<double>::infinity();
  for (int i : a) {
    for (int j : b) d = std::min(d, space.dist(i, j));
  }
  return d;
}

struct Claim {
  int center = -1;
  std::vector<int> a_members;   // weighted pool points, d(center, .) <= rho
  std::vector<int> removed;     // pool points within the 4r guard zone
};

// One greedy claim around the given center: grow over distance tiers
// until the pool mass reaches `target`. Returns false when the pool
// cannot supply the mass.
bool grow_claim(const FiniteMetricMeasureSpace& space, int center,
                const std::vector<char>& pool, double target, double guard,
                Claim& out) {
  std::vector<std::pair<double, int>> by_dist;
  for (int y : space.weighted_points()) {
    if (pool[y]) by_dist.emplace_back(space.dist(center, y), y);
  }
  std::sort(by_dist.begin(), by_dist.end());
  double cum = 0.0;
  double rho = -1.0;
  std::size_t i = 0;
  while (i < by_dist.size()) {
    const double d = by_dist[i].first;
    while (i < by_dist.size() && by_dist[i].first == d) {
      cum += space.weight(by_dist[i].second);
      ++i;
    }
    if (cum >= target) {
      rho = d;
      break;
    }
  }
  if (rho < 0.0) return false;
  out.center = center;
  out.a_members.clear();
  for (const auto& [d, y] : by_dist) {
    if (d <= rho) out.a_members.push_back(y);
  }
  out.removed.clear();
  for (int y = 0; y < space.size(); ++y) {
    if (!pool[y]) continue;
    for (int a : out.a_members) {
      if (space.dist(y, a) < guard) {
        out.removed.push_back(y);
        break;
      }
    }
  }
  return true;
}

// Depth-first greedy with backtracking over the claim centers.
bool search_claims(const FiniteMetricMeasureSpace& space, int count, double r,
                   double target, std::vector<char>& pool, std::vector<Claim>& claims,
                   int& budget) {
  if (static_cast<int>(claims.size()) == count) return true;
  // Candidates in decreasing order of in-pool r-ball mass, ties by id.
  std::vector<std::pair<double, int>> candidates;
  for (int x : space.weighted_points()) {
    if (!pool[x]) continue;
    candidates.emplace_back(-active_ball_mass(space, x, r, pool), x);
  }
  std::sort(candidates.begin(), candidates.end());
  const double guard = 4.0 * r;
  for (const auto& [neg_mass, x] : candidates) {
    if (--budget < 0) return false;
    Claim claim;
    if (!grow_claim(space, x, pool, target, guard, claim)) break;  // pool exhausted
    for (int y : claim.removed) pool[y] = 0;
    claims.push_back(claim);
    if (search_claims(space, count, r, target, pool, claims, budget)) return true;
    claims.pop_back();
    for (int y : claim.removed) pool[y] = 1;
  }
  return false;
}

CapacitorFamily spherical_family_shell(const FiniteMetricMeasureSpace& space) {
  CapacitorFamily family;
  family.checksum = space_checksum(space);
  return family;
}

}  // namespace

std::vector<CmCapacitor> cm_decompose(const FiniteMetricMeasureSpace& space, int count,
                                      double r, double alpha, int n_cover,
                                      const std::vector<char>& active_mask,
                                      int backtrack_budget) {
  if (count < 1 || r <= 0.0 || n_cover < 1) {
    throw ConfigError("cm_decompose: need count >= 1, r > 0, n_cover >= 1");
  }
  double max_w = 0.0;
  for (int y : space.weighted_points()) {
    if (active_mask[y]) max_w = std::max(max_w, space.weight(y));
  }
  if (alpha < max_w) {
    throw MeasureTooAtomic("cm_decompose: alpha below the largest point weight");
  }
  for (int x = 0; x < space.size(); ++x) {
    if (!active_mask[x]) continue;
    if (active_ball_mass(space, x, r, active_mask) > alpha) {
      throw HypothesisViolated("cm_decompose: some r-ball exceeds alpha");
    }
  }

  const double target = 2.0 * n_cover * alpha;
  std::vector<char> pool = active_mask;
  std::vector<Claim> claims;
  int budget = backtrack_budget;
  if (!search_claims(space, count, r, target, pool, claims, budget)) {
    throw CMConstructionFailed(
        budget < 0 ? "cm_decompose: backtracking budget exhausted"
                   : "cm_decompose: active mass cannot supply the requested family");
  }

  std::vector<CmCapacitor> out;
  out.reserve(claims.size());
  for (const auto& claim : claims) {
    CmCapacitor cap;
    cap.a_members = claim.a_members;
    cap.b_members = neighborhood(space, claim.a_members, r);
    cap.r_used = r;
    cap.mass_a = set_mass(space, cap.a_members);
    cap.mass_b = set_mass(space, cap.b_members);
    out.push_back(std::move(cap));
  }
  // Re-verify the postconditions before returning.
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].mass_a < target) {
      throw CMConstructionFailed("cm_decompose: postcondition mass check failed");
    }
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (set_distance(space, out[i].b_members, out[j].b_members) <= 2.0 * r) {
        throw CMConstructionFailed("cm_decompose: postcondition gap check failed");
      }
    }
  }
  return out;
}

std::vector<CmCapacitor> cm_decompose(const FiniteMetricMeasureSpace& space, int count,
                                      double r, double alpha, int n_cover) {
  return cm_decompose(space, count, r, alpha, n_cover,
                      std::vector<char>(space.size(), 1));
}

CapacitorFamily build_capacitors(const FiniteMetricMeasureSpace& space, int count,
                                 double r0, int n_cover) {
  if (count < 1) throw ConfigError("build_capacitors: count must be >= 1");
  if (!(r0 > 0.0 && r0 <= 0.1)) {
    throw ConfigError("build_capacitors: need 0 < r0 <= 1/10");
  }
  if (n_cover < 1) throw ConfigError("build_capacitors: n_cover must be >= 1");

  const double alpha =
      space.total_measure() / (4.0 * count * n_cover * static_cast<double>(n_cover));
  if (alpha < space.max_weight()) {
    throw MeasureTooAtomic("build_capacitors: alpha below the largest point weight");
  }

  CapacitorFamily family = spherical_family_shell(space);
  family.requested = count;
  family.alpha = alpha;
  family.n_cover = n_cover;
  family.r0 = r0;

  std::vector<char> active(space.size(), 1);
  const double removal_budget =
      count * static_cast<double>(n_cover) * n_cover * alpha;  // = mu(X)/4
  double removed_total = 0.0;
  double tau_1 = 0.0, r_1 = 0.0;

  for (int j = 1; j <= count; ++j) {
    const double tau_j = tau(space, alpha, active);
    if (j == 1) tau_1 = tau_j;
    const bool to_covering = (j == 1) ? (tau_j >= r0) : (tau_j >= tau_1);
    if (to_covering) {
      const double r_tilde = std::min(r0, tau_1);
      family.trace.push_back({j, tau_j, -1, r_tilde, 0.0});
      family.kind = FamilyKind::Cm;
      family.r_tilde0 = r_tilde;
      family.cms = cm_decompose(space, count, r_tilde, alpha, n_cover, active);
      return family;
    }

    const double r_j = 1.5 * tau_j;
    if (j == 1) r_1 = r_j;
    int x_j = -1;
    for (int x = 0; x < space.size(); ++x) {
      if (!active[x]) continue;
      if (active_ball_mass(space, x, r_j, active) > alpha) {
        x_j = x;  // smallest id wins
        break;
      }
    }
    if (x_j < 0) {
      throw HypothesisViolated("build_capacitors: no center exceeds alpha at 1.5*tau");
    }

    SphericalCapacitor cap;
    cap.center = x_j;
    cap.r = r_j;
    cap.a_members = ball_members(space, x_j, r_j);
    cap.b_members = ball_members(space, x_j, 2.0 * r_j);
    cap.mass_a = set_mass(space, cap.a_members);
    cap.mass_b = set_mass(space, cap.b_members);

    double removed_mass = 0.0;
    std::vector<int> removed;
    for (int y = 0; y < space.size(); ++y) {
      if (active[y] && space.dist(x_j, y) < 4.0 * r_1) {
        removed.push_back(y);
        removed_mass += space.weight(y);
      }
    }
    removed_total += removed_mass;
    if (removed_total > removal_budget * (1.0 + 1e-12)) {
      throw HypothesisViolated(
          "build_capacitors: removal exceeds the covering budget; the given "
          "n_cover does not hold on this space");
    }
    for (int y : removed) active[y] = 0;
    family.sphericals.push_back(std::move(cap));
    family.trace.push_back({j, tau_j, x_j, r_j, removed_mass});
  }
  return family;
}

FamilyCheck verify_family(const FiniteMetricMeasureSpace& space,
                          const CapacitorFamily& family) {
  FamilyCheck check;
  auto fail = [&check](const std::string& msg) { check.failures.push_back(msg); };

  check.count_ok = family.size() == family.requested && family.requested > 0;
  if (!check.count_ok) fail("capacitor count differs from requested");

  std::vector<const std::vector<int>*> b_sets;
  if (family.kind == FamilyKind::Spherical) {
    for (const auto& cap : family.sphericals) b_sets.push_back(&cap.b_members);
  } else {
    for (const auto& cap : family.cms) b_sets.push_back(&cap.b_members);
  }

  check.b_disjoint = true;
  for (std::size_t i = 0; i < b_sets.size() && check.b_disjoint; ++i) {
    std::vector<char> in_i(space.size(), 0);
    for (int v : *b_sets[i]) in_i[v] = 1;
    for (std::size_t j = i + 1; j < b_sets.size(); ++j) {
      for (int v : *b_sets[j]) {
        if (in_i[v]) {
          check.b_disjoint = false;
          fail("B sets intersect");
          break;
        }
      }
      if (!check.b_disjoint) break;
    }
  }

  check.masses_ok = true;
  if (family.kind == FamilyKind::Spherical) {
    for (const auto& cap : family.sphericals) {
      if (set_mass(space, cap.a_members) < family.alpha) {
        check.masses_ok = false;
        fail("spherical capacitor below alpha");
      }
    }
  } else {
    const double target = 2.0 * family.n_cover * family.alpha;
    for (const auto& cap : family.cms) {
      if (set_mass(space, cap.a_members) < target) {
        check.masses_ok = false;
        fail("covering capacitor below 2*N*alpha");
      }
    }
  }

  check.gap_ok = true;
  if (family.kind == FamilyKind::Cm) {
    for (std::size_t i = 0; i < family.cms.size(); ++i) {
      for (std::size_t j = i + 1; j < family.cms.size(); ++j) {
        if (set_distance(space, family.cms[i].b_members, family.cms[j].b_members) <=
            2.0 * family.r_tilde0) {
          check.gap_ok = false;
          fail("B sets closer than 2*r_tilde0");
        }
      }
    }
  }

  check.radii_ok = true;
  if (family.kind == FamilyKind::Spherical) {
    for (const auto& cap : family.sphericals) {
      if (cap.r > 2.0 * family.r0) {
        check.radii_ok = false;
        fail("spherical radius above 2*r0");
      }
    }
  }
  return check;
}

namespace {

void write_ids(std::ostringstream& out, const std::vector<int>& ids) {
  out << ' ' << ids.size();
  for (int i : ids) out << ' ' << i;
}

std::vector<int> read_ids(std::istringstream& in) {
  std::size_t n = 0;
  if (!(in >> n)) throw ConfigError("family file: truncated id list");
  std::vector<int> ids(n);
  for (auto& i : ids) {
    if (!(in >> i)) throw ConfigError("family file: truncated id list");
  }
  return ids;
}

}  // namespace

std::string serialize_family(const CapacitorFamily& family) {
  std::ostringstream out;
  out << "# wentzel capacitor family\n";
  out.precision(17);
  out << "kind " << (family.kind == FamilyKind::Spherical ? "spherical" : "cm") << '\n';
  out << "requested " << family.requested << '\n';
  out << "alpha " << family.alpha << '\n';
  out << "n_cover " << family.n_cover << '\n';
  out << "r0 " << family.r0 << '\n';
  out << "r_tilde0 " << family.r_tilde0 << '\n';
  out << "space_checksum " << family.checksum << '\n';
  if (family.kind == FamilyKind::Spherical) {
    for (const auto& cap : family.sphericals) {
      std::ostringstream line;
      line.precision(17);
      line << "capacitor spherical " << cap.center << ' ' << cap.r << ' ' << cap.mass_a
           << ' ' << cap.mass_b;
      write_ids(line, cap.a_members);
      write_ids(line, cap.b_members);
      out << line.str() << '\n';
    }
  } else {
    for (const auto& cap : family.cms) {
      std::ostringstream line;
      line.precision(17);
      line << "capacitor cm " << cap.r_used << ' ' << cap.mass_a << ' ' << cap.mass_b;
      write_ids(line, cap.a_members);
      write_ids(line, cap.b_members);
      out << line.str() << '\n';
    }
  }
  return out.str();
}

CapacitorFamily parse_family(const std::string& text) {
  CapacitorFamily family;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "kind") {
      std::string kind;
      ls >> kind;
      family.kind = (kind == "cm") ? FamilyKind::Cm : FamilyKind::Spherical;
    } else if (key == "requested") {
      ls >> family.requested;
    } else if (key == "alpha") {
      ls >> family.alpha;
    } else if (key == "n_cover") {
      ls >> family.n_cover;
    } else if (key == "r0") {
      ls >> family.r0;
    } else if (key == "r_tilde0") {
      ls >> family.r_tilde0;
    } else if (key == "space_checksum") {
      ls >> family.checksum;
    } else if (key == "capacitor") {
      std::string kind;
      ls >> kind;
      if (kind == "spherical") {
        SphericalCapacitor cap;
        ls >> cap.center >> cap.r >> cap.mass_a >> cap.mass_b;
        cap.a_members = read_ids(ls);
        cap.b_members = read_ids(ls);
        family.sphericals.push_back(std::move(cap));
      } else if (kind == "cm") {
        CmCapacitor cap;
        ls >> cap.r_used >> cap.mass_a >> cap.mass_b;
        cap.a_members = read_ids(ls);
        cap.b_members = read_ids(ls);
        family.cms.push_back(std::move(cap));
      } else {
        throw ConfigError("family file: unknown capacitor kind");
      }
    } else {
      throw ConfigError("family file: unknown key " + key);
    }
  }
  return family;
}

void write_family(const CapacitorFamily& family, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write family file: " + path);
  out << serialize_family(family);
}

CapacitorFamily read_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open family file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_family(ss.str());
}

}  // namespace wentzel
