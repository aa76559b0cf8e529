#pragma once

#include <cstdint>

#include "subgauss/graph.hpp"

namespace subgauss {

// Box {0..side-1}^dim with unit conductances, dim in {1,2,3}.
// Vertex id is x + side*y + side^2*z.
WeightedGraph lattice(int dim, int side);

// Graphical Sierpinski gasket, level in 1..10, unit conductances.
// Corner vertices have ids 0, 1, 2.
WeightedGraph sierpinski_gasket(int level);

// Vicsek tree, level in 1..8, unit conductances.
// Center has id 0, the four arm tips ids 1..4.
WeightedGraph vicsek_tree(int level);

// Multiplies every conductance by an independent uniform draw from [lo, hi].
// Same (graph, lo, hi, seed) always yields the same result.
WeightedGraph perturb_weights(const WeightedGraph& g, double lo, double hi, std::uint64_t seed);

// Replaces each edge of conductance w by a k-edge path of conductance k*w, so
// effective resistances are preserved exactly. Original ids are kept, new
// vertices are appended in canonical edge order.
WeightedGraph subdivide(const WeightedGraph& g, int k);

}  // namespace subgauss
