#include "subgauss/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace subgauss {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

WeightedGraph WeightedGraph::from_edges(int vertex_count, std::span<const EdgeSpec> edges) {
  if (vertex_count <= 0) fail("graph needs at least one vertex");
  WeightedGraph g;
  g.n_ = vertex_count;

  std::vector<std::size_t> deg(vertex_count, 0);
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count)
      fail("edge endpoint out of range");
    if (e.u == e.v) fail("self loops are not allowed");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) fail("conductances must be positive and finite");
    ++deg[e.u];
    ++deg[e.v];
  }

  g.off_.assign(vertex_count + 1, 0);
  for (int v = 0; v < vertex_count; ++v) g.off_[v + 1] = g.off_[v] + deg[v];
  g.nbr_.resize(2 * edges.size());
  g.w_.resize(2 * edges.size());

  std::vector<std::size_t> cursor(g.off_.begin(), g.off_.end() - 1);
  for (const auto& e : edges) {
    g.nbr_[cursor[e.u]] = e.v;
    g.w_[cursor[e.u]++] = e.w;
    g.nbr_[cursor[e.v]] = e.u;
    g.w_[cursor[e.v]++] = e.w;
  }

  // Sort each adjacency row by neighbor id and reject duplicates.
  std::vector<std::pair<int, double>> row;
  for (int v = 0; v < vertex_count; ++v) {
    row.clear();
    for (std::size_t i = g.off_[v]; i < g.off_[v + 1]; ++i) row.emplace_back(g.nbr_[i], g.w_[i]);
    std::sort(row.begin(), row.end());
    for (std::size_t i = 1; i < row.size(); ++i)
      if (row[i].first == row[i - 1].first) fail("duplicate edge");
    for (std::size_t i = 0; i < row.size(); ++i) {
      g.nbr_[g.off_[v] + i] = row[i].first;
      g.w_[g.off_[v] + i] = row[i].second;
    }
  }

  g.mass_.assign(vertex_count, 0.0);
  for (int v = 0; v < vertex_count; ++v) {
    double m = 0.0;
    for (std::size_t i = g.off_[v]; i < g.off_[v + 1]; ++i) m += g.w_[i];
    if (m <= 0.0) fail("graph is not connected (isolated vertex)");
    g.mass_[v] = m;
  }
  g.total_mass_ = std::accumulate(g.mass_.begin(), g.mass_.end(), 0.0);

  // Connectivity.
  std::vector<char> seen(vertex_count, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int y : g.neighbors(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        queue.push_back(y);
      }
    }
  }
  if (reached != vertex_count) fail("graph is not connected");
  return g;
}

double WeightedGraph::conductance(int x, int y) const {
  auto nb = neighbors(x);
  auto it = std::lower_bound(nb.begin(), nb.end(), y);
  if (it == nb.end() || *it != y) return 0.0;
  return w_[off_[x] + static_cast<std::size_t>(it - nb.begin())];
}

void WeightedGraph::set_coords(std::vector<std::array<int, 3>> c) {
  if (!c.empty() && static_cast<int>(c.size()) != n_)
    fail("coordinate table size must match vertex count");
  coords_ = std::move(c);
}

VertexSet VertexSet::of(const WeightedGraph& g, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= g.vertex_count()) fail("vertex id out of range");
    if (i > 0 && ids[i] == ids[i - 1]) fail("duplicate vertex id in set");
  }
  VertexSet s;
  s.ids = std::move(ids);
  s.total_mass = 0.0;
  for (int v : s.ids) s.total_mass += g.vertex_mass(v);
  return s;
}

bool VertexSet::contains(int v) const {
  return std::binary_search(ids.begin(), ids.end(), v);
}

std::vector<int> bfs_distances(const WeightedGraph& g, int source) {
  if (source < 0 || source >= g.vertex_count()) fail("source out of range");
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

VertexSet ball(const WeightedGraph& g, int center, int radius) {
  if (center < 0 || center >= g.vertex_count()) fail("center out of range");
  if (radius < 0) fail("radius must be nonnegative");
  std::vector<int> ids;
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<int> queue{center};
  dist[center] = 0;
  ids.push_back(center);
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (dist[x] == radius) continue;
    for (int y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        ids.push_back(y);
        queue.push_back(y);
      }
    }
  }
  return VertexSet::of(g, std::move(ids));
}

int eccentricity(const WeightedGraph& g, int v) {
  auto dist = bfs_distances(g, v);
  return *std::max_element(dist.begin(), dist.end());
}

int audit_window_radius(const WeightedGraph& g, int center) {
  return eccentricity(g, center) / 2;
}

int approximate_center(const WeightedGraph& g) {
  auto far_from = [&](int s) {
    auto dist = bfs_distances(g, s);
    int best = s;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (dist[v] > dist[best]) best = v;
    return best;
  };
  int a = far_from(0);
  int b = far_from(a);
  auto da = bfs_distances(g, a);
  auto db = bfs_distances(g, b);

  // The double-sweep score max(da, db) underestimates eccentricity away from
  // the a-b axis, so ties must be settled by the true eccentricity. The tied
  // set is subsampled when large; candidates stay in ascending id order.
  int best = std::numeric_limits<int>::max();
  for (int v = 0; v < g.vertex_count(); ++v) best = std::min(best, std::max(da[v], db[v]));
  std::vector<int> tied;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (std::max(da[v], db[v]) == best) tied.push_back(v);
  }
  std::size_t stride = (tied.size() + 255) / 256;
  int center = tied[0];
  int center_ecc = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < tied.size(); i += stride) {
    int e = eccentricity(g, tied[i]);
    if (e < center_ecc) {
      center_ecc = e;
      center = tied[i];
    }
  }
  return center;
}

VertexSet complement(const WeightedGraph& g, const VertexSet& s) {
  std::vector<int> ids;
  ids.reserve(g.vertex_count() - s.size());
  std::size_t k = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (k < s.ids.size() && s.ids[k] == v) {
      ++k;
    } else {
      ids.push_back(v);
    }
  }
  return VertexSet::of(g, std::move(ids));
}

double measure(const WeightedGraph& g, const VertexSet& a) {
  (void)g;
  return a.total_mass;
}

double energy(const WeightedGraph& g, const ScalarField& f) {
  if (f.size() != static_cast<std::size_t>(g.vertex_count()))
    fail("field size must match vertex count");
  double e = 0.0;
  g.for_each_edge([&](int u, int v, double w) {
    double d = f[u] - f[v];
    e += d * d * w;
  });
  return e;
}

double energy_within(const WeightedGraph& g, const ScalarField& f, const VertexSet& d) {
  if (f.size() != static_cast<std::size_t>(g.vertex_count()))
    fail("field size must match vertex count");
  std::vector<char> in(g.vertex_count(), 0);
  for (int v : d.ids) in[v] = 1;
  double e = 0.0;
  g.for_each_edge([&](int u, int v, double w) {
    if (in[u] && in[v]) {
      double df = f[u] - f[v];
      e += df * df * w;
    }
  });
  return e;
}

ScalarField walk_step(const WeightedGraph& g, const ScalarField& f) {
  if (f.size() != static_cast<std::size_t>(g.vertex_count()))
    fail("field size must match vertex count");
  ScalarField out(f.size(), 0.0, f.tag);
  for (int x = 0; x < g.vertex_count(); ++x) {
    auto nb = g.neighbors(x);
    auto wt = g.weights(x);
    double acc = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) acc += wt[i] * f[nb[i]];
    out[x] = acc / g.vertex_mass(x);
  }
  return out;
}

double p0_constant(const WeightedGraph& g) {
  double p0 = 1.0;
  for (int x = 0; x < g.vertex_count(); ++x) {
    auto wt = g.weights(x);
    for (double w : wt) p0 = std::min(p0, w / g.vertex_mass(x));
  }
  return p0;
}

WeightedGraph load_edge_list(std::istream& in) {
  std::vector<EdgeSpec> edges;
  std::string line;
  int max_id = -1;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u, v;
    double w;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v >> w)) fail("edge list line " + std::to_string(line_no) + ": expected 'u v w'");
    std::string extra;
    if (ls >> extra) fail("edge list line " + std::to_string(line_no) + ": trailing tokens");
    if (u < 0 || v < 0 || u > 5'000'000 || v > 5'000'000)
      fail("edge list line " + std::to_string(line_no) + ": vertex id out of range");
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }
  if (edges.empty()) fail("edge list is empty");
  return WeightedGraph::from_edges(max_id + 1, edges);
}

WeightedGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  return load_edge_list(in);
}

void save_edge_list(const WeightedGraph& g, std::ostream& out, const std::string& header_comment) {
  if (!header_comment.empty()) out << "# " << header_comment << "\n";
  char buf[64];
  g.for_each_edge([&](int u, int v, double w) {
    std::snprintf(buf, sizeof buf, "%.17g", w);
    out << u << ' ' << v << ' ' << buf << '\n';
  });
}

void save_edge_list_file(const WeightedGraph& g, const std::string& path,
                         const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) fail("cannot open '" + path + "' for writing");
  save_edge_list(g, out, header_comment);
}

}  // namespace subgauss
