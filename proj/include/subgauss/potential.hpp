#pragma once

#include "subgauss/graph.hpp"
#include "subgauss/linalg.hpp"

namespace subgauss {

// Capacity between two vertex sets. `infinite` is the authoritative marker for
// overlapping sets; value/potential/residual are meaningful only when finite.
struct CapacityResult {
  bool infinite = false;
  double value = 0.0;
  ScalarField potential;
  double residual = 0.0;  // linear-solve residual of the potential
};

// Potential that is 1 on a, 0 on b and harmonic elsewhere.
// Throws std::invalid_argument when a and b intersect (infinite capacity).
ScalarField equilibrium_potential(const WeightedGraph& g, const VertexSet& a, const VertexSet& b);

CapacityResult capacity(const WeightedGraph& g, const VertexSet& a, const VertexSet& b);

// Cap(B(x,r), {y : d(x,y) >= 2r}). Throws when no vertex is that far out.
CapacityResult annulus_capacity(const WeightedGraph& g, int x, int r);

// Expected number of steps to leave d: E = 1 + PE on d, 0 outside.
// d must be a proper subset of the vertex set.
ScalarField exit_time(const WeightedGraph& g, const VertexSet& d);

// u with L u = f * mu on d, u = 0 outside d.
ScalarField green_apply(const WeightedGraph& g, const VertexSet& d, const ScalarField& f);

// u >= Pu - tol on every vertex of d.
bool is_superharmonic(const WeightedGraph& g, const ScalarField& u, const VertexSet& d,
                      double tol);

// Default slack: 1e-9 * max |u|.
double default_superharmonic_tol(const ScalarField& u);

}  // namespace subgauss
