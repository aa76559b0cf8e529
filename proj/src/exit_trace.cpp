#include "subgauss/exit_trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "subgauss/parallel.hpp"
#include "subgauss/potential.hpp"

namespace subgauss {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<char> mask_of(const VertexSet& s, int n) {
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  for (int v : s.ids) mask[v] = 1;
  return mask;
}

// Connected components of the subgraph induced on s.
std::vector<std::vector<int>> induced_components(const WeightedGraph& g, const VertexSet& s) {
  std::vector<char> in = mask_of(s, g.vertex_count());
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<std::vector<int>> comps;
  for (int start : s.ids) {
    if (seen[start]) continue;
    comps.emplace_back();
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      comps.back().push_back(v);
      for (int w : g.neighbors(v)) {
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
      }
    }
  }
  return comps;
}

// Sum over edges with both endpoints inside `within` of (d log u)^2 * weight.
// log_u must be finite on `within`.
double log_caccioppoli_sum(const WeightedGraph& g, const std::vector<double>& log_u,
                           const std::vector<char>& within) {
  double acc = 0.0;
  g.for_each_edge([&](int a, int b, double w) {
    if (within[a] && within[b]) {
      double d = log_u[a] - log_u[b];
      acc += d * d * w;
    }
  });
  return acc;
}

double inf_over(const ScalarField& u, const VertexSet& s) {
  double lo = kInf;
  for (int v : s.ids) lo = std::min(lo, u[v]);
  return lo;
}

std::string radius_note(int r, const char* reason) {
  return "r=" + std::to_string(r) + " dropped: " + reason;
}

// Smallest vertex id at the given BFS distance; layers 0..ecc are all realized.
int pole_at(const std::vector<int>& dist, int d) {
  for (int v = 0; v < static_cast<int>(dist.size()); ++v) {
    if (dist[v] == d) return v;
  }
  throw std::logic_error("no vertex at requested distance");
}

ScalarField delta_mass(const WeightedGraph& g, int pole) {
  ScalarField f(static_cast<std::size_t>(g.vertex_count()));
  f[pole] = 1.0 / g.vertex_mass(pole);
  return f;
}

}  // namespace

ContentBounds hausdorff_content_bounds(const WeightedGraph& g, const VertexSet& s) {
  if (s.empty()) throw std::invalid_argument("content bounds need a nonempty set");
  const int m = static_cast<int>(s.ids.size());

  // Ambient pairwise distances between set vertices.
  std::vector<std::vector<int>> dist(m);
  for (int i = 0; i < m; ++i) {
    std::vector<int> full = bfs_distances(g, s.ids[i]);
    dist[i].resize(m);
    for (int j = 0; j < m; ++j) dist[i][j] = full[s.ids[j]];
  }
  std::vector<int> index_of(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int i = 0; i < m; ++i) index_of[s.ids[i]] = i;

  ContentBounds out;
  int set_diam = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) set_diam = std::max(set_diam, dist[i][j]);
  }
  for (const std::vector<int>& comp : induced_components(g, s)) {
    int d = 0;
    for (int a : comp) {
      for (int b : comp) d = std::max(d, dist[index_of[a]][index_of[b]]);
    }
    out.lower = std::max(out.lower, 0.5 * d);
  }

  std::vector<int> radii;
  for (int r = 1; r <= std::max(set_diam, 1); r *= 2) radii.push_back(r);

  std::vector<char> covered(m, 0);
  int uncovered = m;
  double total = 0.0;
  while (uncovered > 0) {
    double best_ratio = -1.0;
    int best_r = 0, best_c = -1;
    for (int i = 0; i < m; ++i) {
      for (int r : radii) {
        double mass = 0.0;
        for (int j = 0; j < m; ++j) {
          if (!covered[j] && dist[i][j] <= r) mass += g.vertex_mass(s.ids[j]);
        }
        double ratio = mass / r;
        if (ratio > best_ratio ||
            (ratio == best_ratio && (r < best_r || (r == best_r && s.ids[i] < best_c)))) {
          best_ratio = ratio;
          best_r = r;
          best_c = s.ids[i];
        }
      }
    }
    int ci = index_of[best_c];
    for (int j = 0; j < m; ++j) {
      if (!covered[j] && dist[ci][j] <= best_r) {
        covered[j] = 1;
        --uncovered;
      }
    }
    total += best_r;
  }
  out.upper = total;
  return out;
}

ConditionReport content_mass_check(const WeightedGraph& g, const VertexSet& s, double d_f) {
  ConditionReport report;
  report.condition = "content-mass";
  report.mode = "min";
  report.threshold = 1e-3;
  ContentBounds bounds = hausdorff_content_bounds(g, s);
  double mass = s.total_mass;
  double denom = std::min(std::pow(mass, 1.0 / d_f), mass);
  double ratio = bounds.lower / denom;
  report.scales.push_back({static_cast<int>(s.ids.size()), ratio, ""});
  report.stats.emplace_back("mass", mass);
  report.stats.emplace_back("content_lower", bounds.lower);
  report.stats.emplace_back("content_upper", bounds.upper);
  report.pass = ratio >= report.threshold;
  return report;
}

ExitTrace exit_level_trace(const WeightedGraph& g, int center, int r, double d_w, double d_f) {
  if (center < 0 || center >= g.vertex_count()) throw std::invalid_argument("center out of range");
  if (r < 36) throw std::invalid_argument("trace radius must be at least 36");
  if (r >= eccentricity(g, center)) {
    throw std::invalid_argument("trace radius must stay inside the graph");
  }

  ExitTrace t;
  t.center = center;
  t.radius = r;
  t.d_w = d_w;
  t.d_f = d_f;

  VertexSet domain = ball(g, center, r);
  ScalarField u = exit_time(g, domain);
  VertexSet inner = ball(g, center, r / 18);
  t.inner_ball_mass = inner.total_mass;
  const double rdw = std::pow(static_cast<double>(r), d_w);

  // Smallest dyadic level constant whose super-level set holds a quarter of
  // the inner ball's mass.
  double thresh = 0.0;
  bool found = false;
  for (int j = 0; j <= 16; ++j) {
    t.c1 = std::pow(2.0, j);
    thresh = rdw / t.c1;
    std::vector<int> ids;
    for (int v : inner.ids) {
      if (u[v] >= thresh) ids.push_back(v);
    }
    VertexSet e = VertexSet::of(g, std::move(ids));
    if (e.total_mass >= t.inner_ball_mass / 4.0) {
      t.e_set = std::move(e);
      found = true;
      break;
    }
  }
  if (!found) {
    throw std::runtime_error(
        "no dyadic level constant up to 2^16 captures a quarter of the inner ball: "
        "the averaged exit-time lower bound fails at this scale");
  }
  t.e_mass = t.e_set.total_mass;

  // F_K sub-level sets shrink with K; record sizes while nonempty.
  t.k0 = -1;
  for (int k = 0; k <= 64; ++k) {
    double level = std::exp(-static_cast<double>(k + 1)) * thresh;
    int count = 0;
    for (int v : inner.ids) {
      if (u[v] <= level) ++count;
    }
    if (count == 0) break;
    t.k0 = k;
    t.level_set_sizes.push_back(count);
  }
  t.k_used = std::max(t.k0, 1);

  {
    double level = std::exp(-static_cast<double>(t.k_used + 1)) * thresh;
    std::vector<int> ids;
    for (int v : inner.ids) {
      if (u[v] <= level) ids.push_back(v);
    }
    t.f_set = VertexSet::of(g, std::move(ids));
  }

  // Log-interpolated cutoff. Monotonicity of log makes the anchoring exact:
  // v == 1 on E and v == 0 on F in floating point, not just approximately.
  std::vector<double> log_u(static_cast<std::size_t>(g.vertex_count()), 0.0);
  for (int v : domain.ids) log_u[v] = std::log(u[v]);
  const double log_thresh = std::log(thresh);
  t.v = ScalarField(static_cast<std::size_t>(g.vertex_count()));
  for (int v : domain.ids) {
    double s = 1.0 + (log_u[v] - log_thresh) / static_cast<double>(t.k_used);
    t.v[v] = std::clamp(s, 0.0, 1.0);
  }

  VertexSet half = ball(g, center, r / 2);
  std::vector<char> half_mask = mask_of(half, g.vertex_count());
  t.log_caccioppoli = log_caccioppoli_sum(g, log_u, half_mask);
  double ve = 0.0;
  g.for_each_edge([&](int a, int b, double w) {
    if (half_mask[a] && half_mask[b]) {
      double d = t.v[a] - t.v[b];
      ve += d * d * w;
    }
  });
  t.v_energy = ve;
  t.budget = t.log_caccioppoli / (static_cast<double>(t.k_used) * static_cast<double>(t.k_used));

  t.floor_ratio = inf_over(u, ball(g, center, r / 36)) / rdw;

  if (!t.f_set.empty()) {
    t.f_connected = induced_components(g, t.f_set).size() == 1;
    t.f_content = hausdorff_content_bounds(g, t.f_set);
  }
  t.e_content = hausdorff_content_bounds(g, t.e_set);
  return t;
}

ConditionReport exit_time_bounds_audit(const WeightedGraph& g, int center,
                                       std::span<const int> radii, double d_w) {
  ConditionReport report;
  report.condition = "exit-time-bounds";
  report.threshold = kDefaultSpreadThreshold;
  report.mode = "spread";

  const int window = audit_window_radius(g, center);
  std::vector<int> kept;
  for (int r : radii) {
    if (r < 1) {
      report.notes.push_back(radius_note(r, "radius must be positive"));
    } else if (r > window) {
      report.notes.push_back(radius_note(r, "radius beyond audit window"));
    } else {
      kept.push_back(r);
    }
  }

  struct Row {
    double sup = kInf, cac = kInf, avg = kInf;
    bool degenerate = false;
  };
  std::vector<Row> rows(kept.size());
  parallel_for_index(kept.size(), [&](std::size_t i) {
    const int r = kept[i];
    const double rdw = std::pow(static_cast<double>(r), d_w);
    VertexSet domain = ball(g, center, r);
    ScalarField u = exit_time(g, domain);
    VertexSet half = ball(g, center, r / 2);

    Row row;
    double sup = 0.0;
    for (int v : domain.ids) sup = std::max(sup, u[v]);
    row.sup = sup / rdw;

    for (int v : half.ids) {
      if (!(u[v] > 0.0)) row.degenerate = true;
    }
    if (!row.degenerate) {
      std::vector<double> log_u(static_cast<std::size_t>(g.vertex_count()), 0.0);
      for (int v : domain.ids) log_u[v] = std::log(u[v]);
      std::vector<char> half_mask = mask_of(half, g.vertex_count());
      row.cac = log_caccioppoli_sum(g, log_u, half_mask) * rdw / domain.total_mass;
      double inv = 0.0;
      for (int v : half.ids) inv += g.vertex_mass(v) / u[v];
      row.avg = inv * rdw / domain.total_mass;
    }
    rows[i] = row;
  });

  for (std::size_t i = 0; i < kept.size(); ++i) {
    report.scales.push_back({kept[i], rows[i].sup, "exit_ub"});
    report.scales.push_back({kept[i], rows[i].cac, "log_caccioppoli"});
    report.scales.push_back({kept[i], rows[i].avg, "averaged_lower"});
    if (rows[i].degenerate) {
      report.notes.push_back(radius_note(kept[i], "nonpositive exit time inside half ball"));
    }
  }

  if (kept.empty()) {
    report.pass = false;
    report.notes.push_back("no admissible scales");
    return report;
  }
  bool pass = true;
  for (const char* label : {"exit_ub", "log_caccioppoli", "averaged_lower"}) {
    double lo = kInf, hi = -kInf;
    for (const ScaleEntry& e : report.scales) {
      if (e.label == label) {
        lo = std::min(lo, e.constant);
        hi = std::max(hi, e.constant);
      }
    }
    double spread = (lo > 0.0 && std::isfinite(hi)) ? hi / lo : kInf;
    report.stats.emplace_back(std::string("spread_") + label, spread);
    if (!(spread <= report.threshold)) pass = false;
  }
  report.pass = pass;
  return report;
}

ConditionReport exit_floor_audit(const WeightedGraph& g, int center, std::span<const int> radii,
                                 double d_w) {
  ConditionReport report;
  report.condition = "exit-floor";
  report.threshold = kDefaultSpreadThreshold;

  const int ecc = eccentricity(g, center);
  std::vector<int> kept;
  for (int r : radii) {
    if (r < 36) {
      report.notes.push_back(radius_note(r, "below the minimum trace radius 36"));
    } else if (r >= ecc) {
      report.notes.push_back(radius_note(r, "radius reaches the graph boundary"));
    } else {
      kept.push_back(r);
    }
  }

  std::vector<double> ratios(kept.size());
  parallel_for_index(kept.size(), [&](std::size_t i) {
    ratios[i] = exit_level_trace(g, center, kept[i], d_w, 0.0).floor_ratio;
  });
  for (std::size_t i = 0; i < kept.size(); ++i) {
    report.scales.push_back({kept[i], ratios[i], ""});
  }
  finalize_spread(report);
  return report;
}

std::optional<double> mean_value_ratio(const WeightedGraph& g, const ScalarField& u, int center,
                                       int r) {
  VertexSet outer = ball(g, center, r / 18);
  VertexSet innermost = ball(g, center, r / 36);
  double inv_sum = 0.0;
  for (int v : outer.ids) {
    if (!(u[v] > 0.0)) return std::nullopt;
    inv_sum += g.vertex_mass(v) / u[v];
  }
  double harmonic_mean = outer.total_mass / inv_sum;
  double lo = inf_over(u, innermost);
  if (!(lo > 0.0)) return std::nullopt;
  return harmonic_mean / lo;
}

ConditionReport mean_value_audit(const WeightedGraph& g, int center, std::span<const int> radii,
                                 int samples_per_scale) {
  ConditionReport report;
  report.condition = "mean-value";
  report.mode = "max";
  report.threshold = 1e4;
  constexpr double kSuperharmonicTol = 1e-9;

  const int ecc = eccentricity(g, center);
  std::vector<int> dist = bfs_distances(g, center);
  int samples = 0, skipped = 0;
  bool all_superharmonic = true;
  double max_ratio = 0.0;

  for (int r : radii) {
    if (r < 36) {
      report.notes.push_back(radius_note(r, "below the minimum trace radius 36"));
      continue;
    }
    if (r >= ecc) {
      report.notes.push_back(radius_note(r, "radius reaches the graph boundary"));
      continue;
    }
    VertexSet domain = ball(g, center, r);
    VertexSet target = complement(g, domain);

    std::vector<std::pair<std::string, ScalarField>> stock;
    stock.emplace_back("exit", exit_time(g, domain));
    stock.emplace_back("green_c", green_apply(g, domain, delta_mass(g, center)));
    stock.emplace_back("green_r2", green_apply(g, domain, delta_mass(g, pole_at(dist, r / 2))));
    stock.emplace_back("green_3r4",
                       green_apply(g, domain, delta_mass(g, pole_at(dist, 3 * r / 4))));
    stock.emplace_back("eq_2r3",
                       equilibrium_potential(
                           g, VertexSet::of(g, {pole_at(dist, 2 * r / 3)}), target));
    stock.emplace_back("eq_r3",
                       equilibrium_potential(g, VertexSet::of(g, {pole_at(dist, r / 3)}), target));
    if (samples_per_scale < static_cast<int>(stock.size())) {
      stock.resize(static_cast<std::size_t>(std::max(samples_per_scale, 0)));
    }

    for (auto& [label, u] : stock) {
      if (!is_superharmonic(g, u, domain, kSuperharmonicTol)) {
        all_superharmonic = false;
        report.notes.push_back("sample " + label + " at r=" + std::to_string(r) +
                               " failed the superharmonic check");
      }
      std::optional<double> ratio = mean_value_ratio(g, u, center, r);
      if (!ratio) {
        ++skipped;
        report.notes.push_back("sample " + label + " at r=" + std::to_string(r) +
                               " skipped: vanishes inside the comparison ball");
        continue;
      }
      ++samples;
      max_ratio = std::max(max_ratio, *ratio);
      report.scales.push_back({r, *ratio, label});
    }
  }

  report.stats.emplace_back("max_ratio", max_ratio);
  report.stats.emplace_back("samples", static_cast<double>(samples));
  report.stats.emplace_back("skipped", static_cast<double>(skipped));
  report.pass = samples > 0 && all_superharmonic && max_ratio <= report.threshold;
  return report;
}

}  // namespace subgauss
