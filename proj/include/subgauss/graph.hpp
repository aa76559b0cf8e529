#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace subgauss {

enum class FieldTag { generic, potential, exit_time, heat_kernel_row };

// Dense vertex-indexed vector of doubles.
struct ScalarField {
  std::vector<double> values;
  FieldTag tag = FieldTag::generic;

  ScalarField() = default;
  explicit ScalarField(std::size_t n, double fill = 0.0, FieldTag t = FieldTag::generic)
      : values(n, fill), tag(t) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

struct EdgeSpec {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

// Finite connected weighted graph with symmetric positive conductances.
// Vertex ids are dense 0..n-1; adjacency is CSR, neighbors sorted per vertex.
// vertex_mass(x) is the sum of conductances incident to x.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Validates: ids in range, no self loops, no duplicate edges, positive finite
  // weights, connectivity. Throws std::invalid_argument on violation.
  static WeightedGraph from_edges(int vertex_count, std::span<const EdgeSpec> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return nbr_.size() / 2; }

  std::span<const int> neighbors(int x) const {
    return {nbr_.data() + off_[x], nbr_.data() + off_[x + 1]};
  }
  std::span<const double> weights(int x) const {
    return {w_.data() + off_[x], w_.data() + off_[x + 1]};
  }
  double vertex_mass(int x) const { return mass_[x]; }
  const std::vector<double>& vertex_masses() const { return mass_; }
  double total_mass() const { return total_mass_; }

  // Conductance of edge (x,y), 0 if absent.
  double conductance(int x, int y) const;

  // Iterates undirected edges once, in (u, v) order with u < v.
  template <class Fn>
  void for_each_edge(Fn&& fn) const {
    for (int u = 0; u < n_; ++u) {
      for (std::size_t i = off_[u]; i < off_[u + 1]; ++i) {
        if (nbr_[i] > u) fn(u, nbr_[i], w_[i]);
      }
    }
  }

  // Optional integer coordinates, generator bookkeeping only.
  bool has_coords() const { return !coords_.empty(); }
  const std::vector<std::array<int, 3>>& coords() const { return coords_; }
  void set_coords(std::vector<std::array<int, 3>> c);

 private:
  int n_ = 0;
  std::vector<std::size_t> off_;
  std::vector<int> nbr_;
  std::vector<double> w_;
  std::vector<double> mass_;
  double total_mass_ = 0.0;
  std::vector<std::array<int, 3>> coords_;
};

// Sorted set of vertex ids with cached total mass.
struct VertexSet {
  std::vector<int> ids;
  double total_mass = 0.0;

  static VertexSet of(const WeightedGraph& g, std::vector<int> ids);
  bool contains(int v) const;
  std::size_t size() const { return ids.size(); }
  bool empty() const { return ids.empty(); }
};

// BFS distances from source; graph is connected so all entries are >= 0.
std::vector<int> bfs_distances(const WeightedGraph& g, int source);

// Closed ball in the graph metric.
VertexSet ball(const WeightedGraph& g, int center, int radius);

int eccentricity(const WeightedGraph& g, int v);

// Scale-dependent audits stay inside eccentricity/2 to keep truncation effects
// out of the fitted constants.
int audit_window_radius(const WeightedGraph& g, int center);

// Double-sweep heuristic: cheap approximation of a minimum-eccentricity vertex.
int approximate_center(const WeightedGraph& g);

VertexSet complement(const WeightedGraph& g, const VertexSet& s);

double measure(const WeightedGraph& g, const VertexSet& a);

// Dirichlet energy, each undirected edge counted once.
double energy(const WeightedGraph& g, const ScalarField& f);

// Energy restricted to edges with both endpoints in d.
double energy_within(const WeightedGraph& g, const ScalarField& f, const VertexSet& d);

// One step of the transition operator: (Pf)(x) = sum_y mu(x,y) f(y) / mu_x.
ScalarField walk_step(const WeightedGraph& g, const ScalarField& f);

// Minimum one-step transition probability over both edge orientations.
double p0_constant(const WeightedGraph& g);

// Edge-list text format: one "u v w" per line, '#' starts a comment.
WeightedGraph load_edge_list(std::istream& in);
WeightedGraph load_edge_list_file(const std::string& path);
void save_edge_list(const WeightedGraph& g, std::ostream& out,
                    const std::string& header_comment = "");
void save_edge_list_file(const WeightedGraph& g, const std::string& path,
                         const std::string& header_comment = "");

}  // namespace subgauss
