#pragma once

#include <optional>
#include <span>
#include <vector>

#include "subgauss/graph.hpp"
#include "subgauss/inequalities.hpp"

namespace subgauss {

struct ContentBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// One-dimensional Hausdorff content estimates for a vertex set, in the ambient
// graph metric. lower: max over induced components of diameter/2 (a valid
// bound by monotonicity). upper: value of a greedy ball cover over candidate
// centers in S and dyadic radii; ties prefer the smaller radius, then the
// smaller center id. Exact content sits between the two.
ContentBounds hausdorff_content_bounds(const WeightedGraph& g, const VertexSet& s);

// Ratio of the content lower estimate against m(S)^{1/d_f} ∧ m(S);
// pass iff the ratio stays above the threshold (default 1e-3).
ConditionReport content_mass_check(const WeightedGraph& g, const VertexSet& s, double d_f);

// Numerical replay of the exit-time level-set argument at one scale.
struct ExitTrace {
  int center = 0;
  int radius = 0;
  double d_w = 0.0;
  double d_f = 0.0;
  double c1 = 0.0;              // smallest power of 2 with m(E) >= m(B(x,r/18))/4
  double e_mass = 0.0;          // m(E), E = {u >= r^{d_w}/c1} ∩ B(x,r/18)
  double inner_ball_mass = 0.0; // m(B(x,r/18))
  int k0 = -1;                  // largest K in [0,64] with F_K nonempty, -1 if none
  int k_used = 1;               // max(k0, 1): the K the cutoff is built with
  double v_energy = 0.0;        // energy of v over edges inside B(x,r/2)
  double log_caccioppoli = 0.0; // sum over those edges of (Δ log u)^2 μ
  double budget = 0.0;          // log_caccioppoli / k_used^2, dominates v_energy
  double floor_ratio = 0.0;     // inf over B(x,r/36) of u, divided by r^{d_w}
  bool f_connected = true;      // F level set induced-connected (vacuous if empty)
  ContentBounds e_content;
  ContentBounds f_content;      // zero bounds when F is empty
  std::vector<int> level_set_sizes;  // |F_K| for K = 0..k0
  ScalarField v;                // cutoff: 1 on E, 0 on F, log-interpolated between
  VertexSet e_set;
  VertexSet f_set;              // F at k_used
};

// Requires r >= 36 and r < eccentricity(center) so the 1/36 and 1/18
// fractions resolve to nonempty balls inside the graph. Throws
// std::runtime_error when no c1 <= 2^16 captures a quarter of the inner
// ball's mass (that would contradict the averaged exit-time lower bound).
ExitTrace exit_level_trace(const WeightedGraph& g, int center, int r, double d_w, double d_f);

// Per-scale series: sup u / r^{d_w} ("exit_ub"), the log-Caccioppoli sum
// normalized by r^{d_w}/m(B(x,r)) ("log_caccioppoli"), and the averaged
// inverse exit time with the same normalization ("averaged_lower").
// Pass iff every series has spread <= 50.
ConditionReport exit_time_bounds_audit(const WeightedGraph& g, int center,
                                       std::span<const int> radii, double d_w);

// Floor ratios inf_{B(x,r/36)} u / r^{d_w} across scales; spread verdict.
ConditionReport exit_floor_audit(const WeightedGraph& g, int center, std::span<const int> radii,
                                 double d_w);

// Harmonic mean of u over B(center, r/18) divided by inf over B(center, r/36).
// nullopt when u vanishes somewhere in the outer ball.
std::optional<double> mean_value_ratio(const WeightedGraph& g, const ScalarField& u, int center,
                                       int r);

// Samples nonnegative superharmonic functions on B(center, r) per scale (exit
// time, Green functions with assorted poles, equilibrium potentials), checks
// superharmonicity, and bounds the harmonic-mean/infimum ratio by 1e4.
// samples_per_scale caps how many of the stock functions are drawn.
ConditionReport mean_value_audit(const WeightedGraph& g, int center, std::span<const int> radii,
                                 int samples_per_scale);

}  // namespace subgauss
