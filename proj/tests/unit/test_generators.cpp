#include "subgauss/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "subgauss/graph.hpp"

using namespace subgauss;

TEST_CASE("lattice shapes") {
  WeightedGraph p = lattice(1, 7);
  CHECK(p.vertex_count() == 7);
  CHECK(p.edge_count() == 6);
  CHECK(eccentricity(p, 0) == 6);

  WeightedGraph q = lattice(2, 5);
  CHECK(q.vertex_count() == 25);
  CHECK(q.edge_count() == 2 * 5 * 4);
  // Corner (0,0) has two neighbors: (1,0) id 1 and (0,1) id 5.
  auto nbrs = q.neighbors(0);
  REQUIRE(nbrs.size() == 2);
  CHECK(nbrs[0] == 1);
  CHECK(nbrs[1] == 5);
  CHECK(q.has_coords());
  CHECK(q.coords()[7][0] == 2);
  CHECK(q.coords()[7][1] == 1);

  WeightedGraph c = lattice(3, 3);
  CHECK(c.vertex_count() == 27);
  CHECK(c.edge_count() == 3 * 9 * 2);

  CHECK_THROWS_AS((void)lattice(4, 3), std::invalid_argument);
  CHECK_THROWS_AS((void)lattice(2, 1), std::invalid_argument);
}

TEST_CASE("sierpinski gasket shapes") {
  // Level L: 3(3^L + 1)/2 vertices, 3^(L+1) edges, corner-to-corner 2^L.
  WeightedGraph g1 = sierpinski_gasket(1);
  CHECK(g1.vertex_count() == 6);
  CHECK(g1.edge_count() == 9);

  WeightedGraph g3 = sierpinski_gasket(3);
  CHECK(g3.vertex_count() == 42);
  CHECK(g3.edge_count() == 81);
  auto dist = bfs_distances(g3, 0);
  CHECK(dist[1] == 8);
  CHECK(dist[2] == 8);
  CHECK(eccentricity(g3, 0) == 8);
  // Corners have degree 2, everything else degree 4.
  CHECK(g3.neighbors(0).size() == 2);
  CHECK(g3.neighbors(1).size() == 2);
  CHECK(g3.neighbors(2).size() == 2);
  int deg4 = 0;
  for (int v = 3; v < g3.vertex_count(); ++v) {
    if (g3.neighbors(v).size() == 4) ++deg4;
  }
  CHECK(deg4 == g3.vertex_count() - 3);

  CHECK_THROWS_AS((void)sierpinski_gasket(0), std::invalid_argument);
  CHECK_THROWS_AS((void)sierpinski_gasket(11), std::invalid_argument);
}

TEST_CASE("vicsek tree shapes") {
  // Level L: 4*5^(L-1) edges and one more vertex than edges (it is a tree).
  WeightedGraph v1 = vicsek_tree(1);
  CHECK(v1.vertex_count() == 5);
  CHECK(v1.edge_count() == 4);

  WeightedGraph v3 = vicsek_tree(3);
  CHECK(v3.edge_count() == 100);
  CHECK(v3.vertex_count() == 101);
  // Arm tips sit 3^(L-1) steps from the center.
  auto dist = bfs_distances(v3, 0);
  for (int tip = 1; tip <= 4; ++tip) CHECK(dist[tip] == 9);

  CHECK_THROWS_AS((void)vicsek_tree(0), std::invalid_argument);
}

TEST_CASE("perturb_weights is deterministic and bounded") {
  WeightedGraph g = sierpinski_gasket(3);
  WeightedGraph a = perturb_weights(g, 1.0, 2.0, 99);
  WeightedGraph b = perturb_weights(g, 1.0, 2.0, 99);
  WeightedGraph c = perturb_weights(g, 1.0, 2.0, 100);

  CHECK(a.vertex_count() == g.vertex_count());
  CHECK(a.edge_count() == g.edge_count());

  bool identical = true;
  bool in_range = true;
  bool differs_somewhere = false;
  g.for_each_edge([&](int u, int v, double w) {
    double wa = a.conductance(u, v);
    if (wa != b.conductance(u, v)) identical = false;
    if (wa < w * 1.0 || wa > w * 2.0) in_range = false;
    if (wa != c.conductance(u, v)) differs_somewhere = true;
  });
  CHECK(identical);
  CHECK(in_range);
  CHECK(differs_somewhere);

  CHECK_THROWS_AS((void)perturb_weights(g, 0.0, 2.0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)perturb_weights(g, 2.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("subdivide replaces edges by conductance-preserving paths") {
  WeightedGraph g = lattice(1, 3);  // 0-1-2, unit weights
  WeightedGraph s = subdivide(g, 3);
  // Each edge becomes a 3-path of conductance 3; ids 0..2 survive.
  CHECK(s.vertex_count() == 3 + 2 * 2);
  CHECK(s.edge_count() == 6);
  CHECK(s.conductance(0, 1) == 0.0);
  bool all_three = true;
  s.for_each_edge([&](int, int, double w) {
    if (w != doctest::Approx(3.0)) all_three = false;
  });
  CHECK(all_three);
  // End-to-end distance triples.
  CHECK(eccentricity(s, 0) == 6);

  CHECK_THROWS_AS((void)subdivide(g, 1), std::invalid_argument);
}
