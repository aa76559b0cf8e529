#include "subgauss/generators.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace subgauss {

namespace {

constexpr long long kVertexLimit = 5'000'000;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Bit-stable uniform in [lo, hi): top 53 bits of the generator output.
double uniform_draw(std::mt19937_64& rng, double lo, double hi) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace

WeightedGraph lattice(int dim, int side) {
  if (dim < 1 || dim > 3) fail("lattice dimension must be 1, 2 or 3");
  if (side < 2) fail("lattice side must be at least 2");
  long long n = 1;
  for (int i = 0; i < dim; ++i) n *= side;
  if (n > kVertexLimit) fail("lattice too large");

  auto id_of = [&](int x, int y, int z) {
    return x + side * (y + static_cast<long long>(side) * z);
  };
  int ny = dim >= 2 ? side : 1;
  int nz = dim >= 3 ? side : 1;

  std::vector<EdgeSpec> edges;
  edges.reserve(static_cast<std::size_t>(n) * dim);
  std::vector<std::array<int, 3>> coords(static_cast<std::size_t>(n));
  for (int z = 0; z < nz; ++z) {
    for (int y = 0; y < ny; ++y) {
      for (int x = 0; x < side; ++x) {
        int v = static_cast<int>(id_of(x, y, z));
        coords[v] = {x, y, z};
        if (x + 1 < side) edges.push_back({v, static_cast<int>(id_of(x + 1, y, z)), 1.0});
        if (dim >= 2 && y + 1 < side) edges.push_back({v, static_cast<int>(id_of(x, y + 1, z)), 1.0});
        if (dim >= 3 && z + 1 < side) edges.push_back({v, static_cast<int>(id_of(x, y, z + 1)), 1.0});
      }
    }
  }
  WeightedGraph g = WeightedGraph::from_edges(static_cast<int>(n), edges);
  g.set_coords(std::move(coords));
  return g;
}

WeightedGraph sierpinski_gasket(int level) {
  if (level < 1 || level > 10) fail("gasket level must be in 1..10");

  // Triangular-lattice integer coordinates; copies glue at shared corners.
  std::map<std::pair<int, int>, int> id_of;
  std::vector<std::array<int, 3>> coords;
  auto vertex = [&](int a, int b) {
    auto [it, fresh] = id_of.try_emplace({a, b}, static_cast<int>(coords.size()));
    if (fresh) coords.push_back({a, b, 0});
    return it->second;
  };

  int s = 1 << level;
  vertex(0, 0);
  vertex(s, 0);
  vertex(0, s);

  // Each entry is a corner offset of an upward cell at the current scale.
  std::vector<std::pair<int, int>> cells{{0, 0}};
  for (int l = 1; l < level; ++l) {
    std::vector<std::pair<int, int>> next;
    next.reserve(cells.size() * 3);
    int half = s >> l;
    for (auto [a, b] : cells) {
      next.push_back({a, b});
      next.push_back({a + half, b});
      next.push_back({a, b + half});
    }
    cells = std::move(next);
  }
  // cells now lists level-1 sub-gaskets of side 2; emit their 9 unit edges.
  std::vector<EdgeSpec> edges;
  edges.reserve(cells.size() * 9);
  auto add_edge = [&](int u, int v) { edges.push_back({u, v, 1.0}); };
  for (auto [a, b] : cells) {
    int c00 = vertex(a, b), c20 = vertex(a + 2, b), c02 = vertex(a, b + 2);
    int m10 = vertex(a + 1, b), m01 = vertex(a, b + 1), m11 = vertex(a + 1, b + 1);
    add_edge(c00, m10);
    add_edge(c00, m01);
    add_edge(c20, m10);
    add_edge(c20, m11);
    add_edge(c02, m01);
    add_edge(c02, m11);
    add_edge(m10, m01);
    add_edge(m10, m11);
    add_edge(m01, m11);
  }
  WeightedGraph g = WeightedGraph::from_edges(static_cast<int>(coords.size()), edges);
  g.set_coords(std::move(coords));
  return g;
}

WeightedGraph vicsek_tree(int level) {
  if (level < 1 || level > 8) fail("vicsek level must be in 1..8");

  std::map<std::pair<int, int>, int> id_of;
  std::vector<std::array<int, 3>> coords;
  auto vertex = [&](int a, int b) {
    auto [it, fresh] = id_of.try_emplace({a, b}, static_cast<int>(coords.size()));
    if (fresh) coords.push_back({a, b, 0});
    return it->second;
  };

  int w = 1;  // half-width 3^(level-1)
  for (int l = 1; l < level; ++l) w *= 3;
  vertex(0, 0);
  vertex(w, 0);
  vertex(-w, 0);
  vertex(0, w);
  vertex(0, -w);

  // Plus-sign recursion: center copy plus four copies shifted by twice the
  // previous half-width along each axis.
  std::vector<std::pair<int, int>> centers{{0, 0}};
  int half = w;
  while (half > 1) {
    int shift = 2 * (half / 3);
    std::vector<std::pair<int, int>> next;
    next.reserve(centers.size() * 5);
    for (auto [a, b] : centers) {
      next.push_back({a, b});
      next.push_back({a + shift, b});
      next.push_back({a - shift, b});
      next.push_back({a, b + shift});
      next.push_back({a, b - shift});
    }
    centers = std::move(next);
    half /= 3;
  }
  std::vector<EdgeSpec> edges;
  edges.reserve(centers.size() * 4);
  for (auto [a, b] : centers) {
    int c = vertex(a, b);
    edges.push_back({c, vertex(a + 1, b), 1.0});
    edges.push_back({c, vertex(a - 1, b), 1.0});
    edges.push_back({c, vertex(a, b + 1), 1.0});
    edges.push_back({c, vertex(a, b - 1), 1.0});
  }
  WeightedGraph g = WeightedGraph::from_edges(static_cast<int>(coords.size()), edges);
  g.set_coords(std::move(coords));
  return g;
}

WeightedGraph perturb_weights(const WeightedGraph& g, double lo, double hi, std::uint64_t seed) {
  if (!(lo > 0.0)) fail("perturbation lower bound must be positive");
  if (!(hi >= lo)) fail("perturbation range is empty");
  std::mt19937_64 rng(seed);
  std::vector<EdgeSpec> edges;
  edges.reserve(g.edge_count());
  g.for_each_edge([&](int u, int v, double w) {
    edges.push_back({u, v, w * uniform_draw(rng, lo, hi)});
  });
  WeightedGraph out = WeightedGraph::from_edges(g.vertex_count(), edges);
  if (g.has_coords()) out.set_coords(g.coords());
  return out;
}

WeightedGraph subdivide(const WeightedGraph& g, int k) {
  if (k < 2) fail("subdivision factor must be at least 2");
  long long n_new = g.vertex_count() + static_cast<long long>(k - 1) * g.edge_count();
  if (n_new > kVertexLimit) fail("subdivided graph too large");

  std::vector<EdgeSpec> edges;
  edges.reserve(static_cast<std::size_t>(k) * g.edge_count());
  std::vector<std::array<int, 3>> coords;
  bool keep_coords = g.has_coords();
  if (keep_coords) {
    coords.resize(static_cast<std::size_t>(n_new));
    for (int v = 0; v < g.vertex_count(); ++v)
      coords[v] = {g.coords()[v][0] * k, g.coords()[v][1] * k, g.coords()[v][2] * k};
  }
  int next_id = g.vertex_count();
  g.for_each_edge([&](int u, int v, double w) {
    double cw = k * w;
    int prev = u;
    for (int i = 1; i < k; ++i) {
      int mid = next_id++;
      if (keep_coords) {
        for (int c = 0; c < 3; ++c)
          coords[mid][c] = g.coords()[u][c] * k + i * (g.coords()[v][c] - g.coords()[u][c]);
      }
      edges.push_back({prev, mid, cw});
      prev = mid;
    }
    edges.push_back({prev, v, cw});
  });
  WeightedGraph out = WeightedGraph::from_edges(static_cast<int>(n_new), edges);
  if (keep_coords) out.set_coords(std::move(coords));
  return out;
}

}  // namespace subgauss
