#include "subgauss/graph.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "subgauss/generators.hpp"

using namespace subgauss;

namespace {

WeightedGraph triangle_with_tail() {
  // 0-1-2 triangle, 2-3 tail; distinct weights.
  std::vector<EdgeSpec> edges{{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 0.5}, {2, 3, 4.0}};
  return WeightedGraph::from_edges(4, edges);
}

}  // namespace

TEST_CASE("from_edges validates input") {
  std::vector<EdgeSpec> self{{0, 0, 1.0}};
  CHECK_THROWS_AS((void)WeightedGraph::from_edges(2, self), std::invalid_argument);

  std::vector<EdgeSpec> dup{{0, 1, 1.0}, {1, 0, 2.0}};
  CHECK_THROWS_AS((void)WeightedGraph::from_edges(2, dup), std::invalid_argument);

  std::vector<EdgeSpec> range{{0, 2, 1.0}};
  CHECK_THROWS_AS((void)WeightedGraph::from_edges(2, range), std::invalid_argument);

  std::vector<EdgeSpec> nonpos{{0, 1, 0.0}};
  CHECK_THROWS_AS((void)WeightedGraph::from_edges(2, nonpos), std::invalid_argument);

  std::vector<EdgeSpec> nan_w{{0, 1, std::nan("")}};
  CHECK_THROWS_AS((void)WeightedGraph::from_edges(2, nan_w), std::invalid_argument);

  std::vector<EdgeSpec> split{{0, 1, 1.0}, {2, 3, 1.0}};
  CHECK_THROWS_AS((void)WeightedGraph::from_edges(4, split), std::invalid_argument);

  std::vector<EdgeSpec> none;
  CHECK_THROWS_AS((void)WeightedGraph::from_edges(2, none), std::invalid_argument);
}

TEST_CASE("adjacency structure and masses") {
  WeightedGraph g = triangle_with_tail();
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 4);

  auto n2 = g.neighbors(2);
  REQUIRE(n2.size() == 3);
  CHECK(n2[0] == 0);
  CHECK(n2[1] == 1);
  CHECK(n2[2] == 3);

  CHECK(g.vertex_mass(0) == doctest::Approx(1.5));
  CHECK(g.vertex_mass(2) == doctest::Approx(6.5));
  CHECK(g.total_mass() == doctest::Approx(1.5 + 3.0 + 6.5 + 4.0));

  CHECK(g.conductance(0, 2) == doctest::Approx(0.5));
  CHECK(g.conductance(2, 0) == doctest::Approx(0.5));
  CHECK(g.conductance(0, 3) == 0.0);

  int count = 0;
  double sum = 0.0;
  g.for_each_edge([&](int u, int v, double w) {
    CHECK(u < v);
    ++count;
    sum += w;
  });
  CHECK(count == 4);
  CHECK(sum == doctest::Approx(7.5));
}

TEST_CASE("bfs distances, balls and eccentricity on a path") {
  WeightedGraph g = lattice(1, 9);
  auto dist = bfs_distances(g, 3);
  CHECK(dist[3] == 0);
  CHECK(dist[0] == 3);
  CHECK(dist[8] == 5);

  VertexSet b = ball(g, 4, 2);
  REQUIRE(b.size() == 5);
  CHECK(b.ids.front() == 2);
  CHECK(b.ids.back() == 6);
  CHECK(b.contains(4));
  CHECK_FALSE(b.contains(1));
  // Ends of the ball have mass 2 here (interior path vertices).
  CHECK(b.total_mass == doctest::Approx(10.0));

  CHECK(eccentricity(g, 0) == 8);
  CHECK(eccentricity(g, 4) == 4);
  CHECK(audit_window_radius(g, 4) == 2);
}

TEST_CASE("approximate_center finds a true center") {
  WeightedGraph path = lattice(1, 101);
  CHECK(approximate_center(path) == 50);

  WeightedGraph grid = lattice(2, 17);
  int c = approximate_center(grid);
  CHECK(eccentricity(grid, c) == 16);
}

TEST_CASE("complement and measure") {
  WeightedGraph g = triangle_with_tail();
  VertexSet s = VertexSet::of(g, {0, 3});
  VertexSet t = complement(g, s);
  REQUIRE(t.size() == 2);
  CHECK(t.ids[0] == 1);
  CHECK(t.ids[1] == 2);
  CHECK(measure(g, t) == doctest::Approx(3.0 + 6.5));
  CHECK(t.total_mass == doctest::Approx(measure(g, t)));
}

TEST_CASE("energy of a linear ramp on a path") {
  WeightedGraph g = lattice(1, 5);
  ScalarField f(5);
  for (int v = 0; v < 5; ++v) f[v] = 0.25 * v;
  // Four edges, each increment 0.25: energy = 4 * 0.0625.
  CHECK(energy(g, f) == doctest::Approx(0.25));

  VertexSet left = VertexSet::of(g, {0, 1, 2});
  CHECK(energy_within(g, f, left) == doctest::Approx(0.125));
}

TEST_CASE("walk_step conserves the invariant measure pairing") {
  WeightedGraph g = triangle_with_tail();
  ScalarField f(4);
  f[0] = 1.0;
  f[2] = -2.0;
  ScalarField pf = walk_step(g, f);
  // sum Pf * mu == sum f * mu.
  double before = 0.0;
  double after = 0.0;
  for (int v = 0; v < 4; ++v) {
    before += f[v] * g.vertex_mass(v);
    after += pf[v] * g.vertex_mass(v);
  }
  CHECK(after == doctest::Approx(before));
  // (Pf)(3) = f(2) because vertex 3 has a single neighbor.
  CHECK(pf[3] == doctest::Approx(-2.0));
}

TEST_CASE("p0_constant is the worst one-step probability") {
  WeightedGraph g = triangle_with_tail();
  // Worst transition: 2 -> 0 with probability 0.5/6.5.
  CHECK(p0_constant(g) == doctest::Approx(0.5 / 6.5));
  CHECK(p0_constant(lattice(1, 3)) == doctest::Approx(0.5));
}

TEST_CASE("edge list round trip") {
  WeightedGraph g = triangle_with_tail();
  std::ostringstream out;
  save_edge_list(g, out, "fixture");
  std::string text = out.str();
  CHECK(text.find("# fixture") != std::string::npos);

  std::istringstream in(text);
  WeightedGraph back = load_edge_list(in);
  CHECK(back.vertex_count() == g.vertex_count());
  CHECK(back.edge_count() == g.edge_count());
  bool same = true;
  g.for_each_edge([&](int u, int v, double w) {
    if (back.conductance(u, v) != doctest::Approx(w)) same = false;
  });
  CHECK(same);
}

TEST_CASE("edge list rejects malformed input") {
  std::istringstream bad_token("0 1 x\n");
  CHECK_THROWS_AS((void)load_edge_list(bad_token), std::invalid_argument);

  std::istringstream missing("0 1\n");
  CHECK_THROWS_AS((void)load_edge_list(missing), std::invalid_argument);

  std::istringstream empty("# only a comment\n");
  CHECK_THROWS_AS((void)load_edge_list(empty), std::invalid_argument);
}
