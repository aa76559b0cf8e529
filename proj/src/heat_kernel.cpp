#include "subgauss/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "subgauss/potential.hpp"

namespace subgauss {

namespace {

constexpr double kMassTol = 1e-10;
constexpr double kUnderflowGuard = 1e-300;

void check_row_invariants(const WeightedGraph& g, const ScalarField& h, double expected_mass) {
  double mass = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (h[v] < 0.0) throw std::runtime_error("heat kernel row went negative");
    mass += h[v] * g.vertex_mass(v);
  }
  if (std::abs(mass - expected_mass) > kMassTol) {
    throw std::runtime_error("heat kernel mass drifted beyond tolerance");
  }
}

// Runs the evolution h_0, h_1, ..., h_max and hands every step to the sink.
// Invariants are enforced on each step.
void evolve(const WeightedGraph& g, int x, int max_n,
            const std::function<void(int, const ScalarField&)>& sink) {
  if (x < 0 || x >= g.vertex_count()) throw std::invalid_argument("source out of range");
  if (max_n < 0) throw std::invalid_argument("negative step count");

  ScalarField h(static_cast<std::size_t>(g.vertex_count()), 0.0, FieldTag::heat_kernel_row);
  h[x] = 1.0 / g.vertex_mass(x);
  check_row_invariants(g, h, 1.0);
  sink(0, h);
  for (int n = 1; n <= max_n; ++n) {
    h = walk_step(g, h);
    h.tag = FieldTag::heat_kernel_row;
    check_row_invariants(g, h, 1.0);
    sink(n, h);
  }
}

}  // namespace

HeatKernelRow heat_kernel_row(const WeightedGraph& g, int x, int n) {
  HeatKernelRow row;
  row.source = x;
  row.steps = n;
  evolve(g, x, n, [&](int k, const ScalarField& h) {
    if (k == n) row.values = h;
  });
  return row;
}

HeatKernelRow smoothed_heat_kernel_row(const WeightedGraph& g, int x, int n) {
  HeatKernelRow row;
  row.source = x;
  row.steps = n;
  row.smoothed = true;
  evolve(g, x, n + 1, [&](int k, const ScalarField& h) {
    if (k == n) {
      row.values = h;
    } else if (k == n + 1) {
      for (int v = 0; v < g.vertex_count(); ++v) row.values[v] += h[v];
    }
  });
  check_row_invariants(g, row.values, 2.0);
  return row;
}

ExponentFit on_diagonal_fit(const WeightedGraph& g, int x, std::span<const int> n_list) {
  if (n_list.size() < 3) throw std::invalid_argument("on-diagonal fit: need at least 3 points");
  int max_n = 0;
  for (int n : n_list) {
    if (n < 1) throw std::invalid_argument("on-diagonal fit: steps must be >= 1");
    max_n = std::max(max_n, n);
  }
  std::vector<double> diag(static_cast<std::size_t>(max_n) + 2, 0.0);
  evolve(g, x, max_n + 1, [&](int k, const ScalarField& h) { diag[k] = h[x]; });

  std::vector<double> values(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    values[i] = diag[n_list[i]] + diag[n_list[i] + 1];
  }
  return fit_loglog(n_list, values);
}

ExponentFit walk_dimension_fit(const WeightedGraph& g, int center, std::span<const int> radii) {
  const int window = audit_window_radius(g, center);
  std::vector<double> times(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] > window) {
      throw std::invalid_argument("walk dimension fit: radius beyond audit window");
    }
    times[i] = exit_time(g, ball(g, center, radii[i]))[center];
  }
  return fit_loglog(radii, times);
}

int mixing_window_max_n(const WeightedGraph& g, int center, double d_w) {
  if (!(d_w > 1.0)) throw std::invalid_argument("walk dimension must exceed 1");
  const double window = static_cast<double>(audit_window_radius(g, center));
  int n = static_cast<int>(std::pow(window / 3.0, d_w));
  while (n > 1 && 3.0 * std::pow(static_cast<double>(n), 1.0 / d_w) >= window) --n;
  while (3.0 * std::pow(static_cast<double>(n + 1), 1.0 / d_w) < window) ++n;
  return std::max(n, 1);
}

BandData band_statistics(const WeightedGraph& g, int x, double d_w, std::span<const int> n_list,
                         std::span<const int> y_list) {
  if (!(d_w > 1.0)) throw std::invalid_argument("walk dimension must exceed 1");
  for (int y : y_list) {
    if (y < 0 || y >= g.vertex_count()) throw std::invalid_argument("probe vertex out of range");
  }
  int max_n = 0;
  for (int n : n_list) {
    if (n < 1) throw std::invalid_argument("band statistics: steps must be >= 1");
    max_n = std::max(max_n, n);
  }

  std::vector<int> dist = bfs_distances(g, x);
  int ecc = 0;
  for (int v = 0; v < g.vertex_count(); ++v) ecc = std::max(ecc, dist[v]);
  std::vector<double> ball_mass(static_cast<std::size_t>(ecc) + 1, 0.0);
  for (int v = 0; v < g.vertex_count(); ++v) ball_mass[dist[v]] += g.vertex_mass(v);
  for (int r = 1; r <= ecc; ++r) ball_mass[r] += ball_mass[r - 1];

  // Smoothed probe values at the requested steps, captured in one evolution.
  std::vector<std::vector<double>> smoothed(n_list.size(),
                                            std::vector<double>(y_list.size(), 0.0));
  evolve(g, x, max_n + 1, [&](int k, const ScalarField& h) {
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      if (k == n_list[i] || k == n_list[i] + 1) {
        for (std::size_t j = 0; j < y_list.size(); ++j) smoothed[i][j] += h[y_list[j]];
      }
    }
  });

  BandData data;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const int n = n_list[i];
    const int vol_radius =
        std::min(ecc, static_cast<int>(std::pow(static_cast<double>(n), 1.0 / d_w)));
    const double vol = ball_mass[vol_radius];
    for (std::size_t j = 0; j < y_list.size(); ++j) {
      const int d = dist[y_list[j]];
      if (n < std::max(1, d)) continue;
      const double h = smoothed[i][j];
      if (h < kUnderflowGuard) {
        ++data.excluded;
        continue;
      }
      BandPoint p;
      p.n = n;
      p.y = y_list[j];
      p.dist = d;
      p.xi = std::pow(std::pow(static_cast<double>(d), d_w) / n, 1.0 / (d_w - 1.0));
      p.s = std::log(h * vol);
      data.points.push_back(p);
    }
  }
  return data;
}

ConditionReport subgaussian_band_check(const WeightedGraph& g, int x, double d_f, double d_w,
                                       std::span<const int> n_list, std::span<const int> y_list) {
  ConditionReport report;
  report.condition = "HK(d_w)";
  report.mode = "band";
  report.threshold = std::log(50.0);

  BandData data = band_statistics(g, x, d_w, n_list, y_list);
  report.stats.emplace_back("declared_d_f", d_f);
  report.stats.emplace_back("declared_d_w", d_w);
  report.stats.emplace_back("points", static_cast<double>(data.points.size()));
  report.stats.emplace_back("excluded", static_cast<double>(data.excluded));
  if (data.points.size() < 3) {
    report.pass = false;
    report.notes.push_back("fewer than 3 admissible pairs");
    return report;
  }

  const std::size_t m = data.points.size();
  double xbar = 0.0, sbar = 0.0;
  for (const BandPoint& p : data.points) {
    xbar += p.xi;
    sbar += p.s;
  }
  xbar /= static_cast<double>(m);
  sbar /= static_cast<double>(m);
  double sxx = 0.0, sxs = 0.0, sss = 0.0;
  for (const BandPoint& p : data.points) {
    sxx += (p.xi - xbar) * (p.xi - xbar);
    sxs += (p.xi - xbar) * (p.s - sbar);
    sss += (p.s - sbar) * (p.s - sbar);
  }
  if (sxx == 0.0) {
    report.pass = false;
    report.notes.push_back("no spread in xi: band fit degenerate");
    return report;
  }
  const double slope = sxs / sxx;
  const double b = -slope;
  const double a = sbar - slope * xbar;

  double res_lo = std::numeric_limits<double>::infinity();
  double res_hi = -std::numeric_limits<double>::infinity();
  double ss_res = 0.0;
  std::vector<std::pair<int, std::pair<double, double>>> per_n;
  for (const BandPoint& p : data.points) {
    const double e = p.s - (a - b * p.xi);
    ss_res += e * e;
    res_lo = std::min(res_lo, e);
    res_hi = std::max(res_hi, e);
    auto it = std::find_if(per_n.begin(), per_n.end(),
                           [&](const auto& q) { return q.first == p.n; });
    if (it == per_n.end()) {
      per_n.push_back({p.n, {e, e}});
    } else {
      it->second.first = std::min(it->second.first, e);
      it->second.second = std::max(it->second.second, e);
    }
  }
  const double r2 = sss == 0.0 ? 1.0 : 1.0 - ss_res / sss;
  const double band = res_hi - res_lo;

  for (const auto& [n, mm] : per_n) {
    report.scales.push_back({n, mm.first, "res_min"});
    report.scales.push_back({n, mm.second, "res_max"});
  }
  report.stats.emplace_back("slope_b", b);
  report.stats.emplace_back("intercept_a", a);
  report.stats.emplace_back("r_squared", r2);
  report.stats.emplace_back("residual_band", band);
  report.pass = b > 0.0 && r2 >= 0.9 && band <= report.threshold;
  return report;
}

}  // namespace subgauss
