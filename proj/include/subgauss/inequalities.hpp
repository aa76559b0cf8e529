#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "subgauss/graph.hpp"

namespace subgauss {

// Least-squares power law through (radii, values) in log-log coordinates.
struct ExponentFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double r_squared = 0.0;
  std::vector<int> radii;
  std::vector<double> values;
};

// Requires >= 3 abscissae, strictly increasing and >= 1, values positive and
// finite. r_squared = 1 - SS_res/SS_tot with the convention r² = 1 when all
// ordinates coincide.
ExponentFit fit_loglog(std::span<const int> radii, std::span<const double> values);

struct ScaleEntry {
  int scale = 0;
  double constant = 0.0;
  std::string label;  // empty for single-series reports
};

// Verdict is a pure function of the stored constants, mode and threshold:
//   spread: pass iff all constants positive/finite and max/min <= threshold
//   max:    pass iff every constant <= threshold
//   min:    pass iff every constant >= threshold
//   band:   pass decided by the producer from stats (stored, not recomputed)
//   gate:   boolean condition on stats, no scales
struct ConditionReport {
  std::string condition;
  std::vector<ScaleEntry> scales;
  double threshold = 0.0;
  std::string mode = "spread";
  bool pass = false;
  std::vector<std::pair<std::string, double>> stats;
  std::vector<std::string> notes;
};

// max/min/spread over the constants; applies the spread verdict and appends
// the three stats. No-op notes are preserved.
void finalize_spread(ConditionReport& report);

constexpr double kDefaultSpreadThreshold = 50.0;

ExponentFit volume_fit(const WeightedGraph& g, int center, std::span<const int> radii);

// Per-scale constants V(x,r)/r^{d_f}; spread verdict.
ConditionReport volume_condition(const WeightedGraph& g, int center, std::span<const int> radii,
                                 double d_f);

// Minimum one-step probability; pass iff strictly positive.
ConditionReport p0_condition(const WeightedGraph& g);

// Per-scale constants Cap(B(x,r), B(x,2r)^c) * r^{d_w} / V(x,r). Radii with 2r
// beyond the audit window are dropped with a note; spread verdict on the rest.
ConditionReport capacity_scaling_audit(const WeightedGraph& g, int center,
                                       std::span<const int> radii, double d_w);

// Optimal constant in
//   sum_{B(x,r)} (f - mean)^2 mu  <=  C * sum_{edges in B(x,energy_radius)} (df)^2 mu,
// maximized over functions on B(x,energy_radius). The r^{d_w} factor is NOT
// divided out. Singleton B(x,r) gives 0.
double poincare_constant_with_domain(const WeightedGraph& g, int center, int r,
                                     int energy_radius);

// energy_radius = 2r, the standard enlargement.
double poincare_constant(const WeightedGraph& g, int center, int r);

// Per-scale constants poincare_constant(r)/r^{d_w}; spread verdict. Radii whose
// doubled ball swallows the whole graph are dropped with a note. A clear decay
// of the constants in r is flagged in the notes as an over-generous d_w.
ConditionReport poincare_scaling_audit(const WeightedGraph& g, int center,
                                       std::span<const int> radii, double d_w);

// true iff d_w >= 2 and d_f < 1 + d_w.
bool hypothesis_gate(double d_f, double d_w);

ConditionReport hypothesis_gate_report(double d_f, double d_w);

}  // namespace subgauss
