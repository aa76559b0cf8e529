#pragma once

#include <span>
#include <vector>

#include "subgauss/graph.hpp"
#include "subgauss/inequalities.hpp"

namespace subgauss {

// h_n(x,·) = p_n(x,·)/μ, nonnegative with Σ h·μ = 1 (2 when parity-smoothed).
struct HeatKernelRow {
  int source = 0;
  int steps = 0;
  bool smoothed = false;
  ScalarField values;
};

// n applications of the walk operator to δ_x/μ_x. Mass conservation and
// nonnegativity are enforced at every step (throws std::runtime_error on
// violation beyond 1e-10).
HeatKernelRow heat_kernel_row(const WeightedGraph& g, int x, int n);

// h_n + h_{n+1}; strictly positive in range even on bipartite graphs.
HeatKernelRow smoothed_heat_kernel_row(const WeightedGraph& g, int x, int n);

// Slope of log (h_n+h_{n+1})(x,x) vs log n. Expected ≈ -d_f/d_w.
ExponentFit on_diagonal_fit(const WeightedGraph& g, int x, std::span<const int> n_list);

// Slope of log E[exit time of B(center,r)](center) vs log r: the empirical
// walk dimension. Radii must sit inside the audit window.
ExponentFit walk_dimension_fit(const WeightedGraph& g, int center, std::span<const int> radii);

// Largest n whose diffusive scale stays clear of the graph boundary:
// 3·n^{1/d_w} < audit window radius.
int mixing_window_max_n(const WeightedGraph& g, int center, double d_w);

struct BandPoint {
  int n = 0;
  int y = 0;
  int dist = 0;
  double xi = 0.0;  // (d^{d_w}/n)^{1/(d_w-1)}
  double s = 0.0;   // log[(h_n+h_{n+1})(x,y) · V(x, ⌊n^{1/d_w}⌋)]
};

struct BandData {
  std::vector<BandPoint> points;
  int excluded = 0;  // pairs dropped by the 1e-300 underflow guard
};

// Pairs restricted to n ≥ max(1, d(x,y)); V measured from the graph itself.
BandData band_statistics(const WeightedGraph& g, int x, double d_w, std::span<const int> n_list,
                         std::span<const int> y_list);

// Fits s ≈ a − b·ξ. Pass iff b > 0, r² ≥ 0.9 and the residual band
// (max − min residual) ≤ log 50.
ConditionReport subgaussian_band_check(const WeightedGraph& g, int x, double d_f, double d_w,
                                       std::span<const int> n_list, std::span<const int> y_list);

}  // namespace subgauss
