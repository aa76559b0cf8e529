#include "subgauss/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace subgauss {

namespace {

constexpr double kPotentialTol = 1e-11;

void check_nonempty(const VertexSet& s, const char* name) {
  if (s.ids.empty()) throw std::invalid_argument(std::string(name) + " set is empty");
}

}  // namespace

ScalarField equilibrium_potential(const WeightedGraph& g, const VertexSet& a,
                                  const VertexSet& b) {
  check_nonempty(a, "source");
  check_nonempty(b, "target");
  for (int v : a.ids) {
    if (b.contains(v)) throw std::invalid_argument("source and target sets intersect");
  }

  // Unknowns live off a and b; solve the Dirichlet system there with the
  // boundary condition u = 1 on a folded into the right-hand side.
  std::vector<int> interior;
  interior.reserve(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!a.contains(v) && !b.contains(v)) interior.push_back(v);
  }

  ScalarField u(static_cast<std::size_t>(g.vertex_count()), 0.0, FieldTag::potential);
  for (int v : a.ids) u[v] = 1.0;

  if (!interior.empty()) {
    LocalOperator lap = make_local_operator(g, VertexSet::of(g, interior), OperatorMode::dirichlet);
    std::vector<double> rhs(lap.verts.size(), 0.0);
    for (std::size_t i = 0; i < lap.verts.size(); ++i) {
      int x = lap.verts[i];
      auto nbrs = g.neighbors(x);
      auto ws = g.weights(x);
      double acc = 0.0;
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        if (a.contains(nbrs[k])) acc += ws[k];
      }
      rhs[i] = acc;
    }
    CgResult sol = cg_solve(lap.op, rhs, kPotentialTol);
    if (!sol.converged) throw std::runtime_error("equilibrium potential solve did not converge");
    for (std::size_t i = 0; i < lap.verts.size(); ++i) u[lap.verts[i]] = sol.x[i];
  }
  return u;
}

CapacityResult capacity(const WeightedGraph& g, const VertexSet& a, const VertexSet& b) {
  check_nonempty(a, "source");
  check_nonempty(b, "target");
  CapacityResult out;
  for (int v : a.ids) {
    if (b.contains(v)) {
      out.infinite = true;
      return out;
    }
  }
  out.potential = equilibrium_potential(g, a, b);
  out.value = energy(g, out.potential);

  // Residual of the full linear system: the potential must be harmonic off
  // the two plates.
  ScalarField pu = walk_step(g, out.potential);
  double worst = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (a.contains(v) || b.contains(v)) continue;
    worst = std::max(worst, std::abs(out.potential[v] - pu[v]));
  }
  out.residual = worst;
  return out;
}

CapacityResult annulus_capacity(const WeightedGraph& g, int x, int r) {
  if (r <= 0) throw std::invalid_argument("annulus radius must be positive");
  std::vector<int> dist = bfs_distances(g, x);
  std::vector<int> far;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] >= 2 * r) far.push_back(v);
  }
  if (far.empty()) {
    throw std::out_of_range("no vertex at distance >= 2r from the annulus center");
  }
  return capacity(g, ball(g, x, r), VertexSet::of(g, far));
}

ScalarField green_apply(const WeightedGraph& g, const VertexSet& d, const ScalarField& f) {
  check_nonempty(d, "domain");
  if (f.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw std::invalid_argument("field size mismatch");
  }

  LocalOperator lap = make_local_operator(g, d, OperatorMode::dirichlet);
  std::vector<double> rhs(lap.verts.size());
  for (std::size_t i = 0; i < lap.verts.size(); ++i) {
    int v = lap.verts[i];
    rhs[i] = f[v] * g.vertex_mass(v);
  }
  CgResult sol = cg_solve(lap.op, rhs, kPotentialTol);
  if (!sol.converged) throw std::runtime_error("green operator solve did not converge");

  ScalarField u(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t i = 0; i < lap.verts.size(); ++i) u[lap.verts[i]] = sol.x[i];
  return u;
}

ScalarField exit_time(const WeightedGraph& g, const VertexSet& d) {
  check_nonempty(d, "domain");
  if (static_cast<int>(d.ids.size()) >= g.vertex_count()) {
    throw std::invalid_argument("exit time needs a proper subset of the vertices");
  }
  ScalarField ones(static_cast<std::size_t>(g.vertex_count()));
  for (int v : d.ids) ones[v] = 1.0;
  ScalarField u = green_apply(g, d, ones);
  u.tag = FieldTag::exit_time;
  return u;
}

bool is_superharmonic(const WeightedGraph& g, const ScalarField& u, const VertexSet& d,
                      double tol) {
  if (u.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw std::invalid_argument("field size mismatch");
  }
  ScalarField pu = walk_step(g, u);
  for (int v : d.ids) {
    if (u[v] < pu[v] - tol) return false;
  }
  return true;
}

double default_superharmonic_tol(const ScalarField& u) {
  double peak = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) peak = std::max(peak, std::abs(u.values[i]));
  return 1e-9 * peak;
}

}  // namespace subgauss
