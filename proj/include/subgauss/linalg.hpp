#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "subgauss/graph.hpp"

namespace subgauss {

// Implicit symmetric linear operator on a dense coordinate vector.
// jacobi_diag, when nonempty, is the operator diagonal used for
// preconditioning; entries <= 0 fall back to identity scaling.
struct SymOperator {
  std::size_t dim = 0;
  std::function<void(std::span<const double>, std::span<double>)> apply;
  std::vector<double> jacobi_diag;
};

double quadratic_value(const SymOperator& op, std::span<const double> x);

enum class OperatorMode {
  dirichlet,  // L f(x) = mu_x f(x) - sum_{y in D} mu(x,y) f(y); zero outside D
  neumann,    // Laplacian of the induced subgraph on D (edges inside D only)
  mass,       // diagonal multiplication by mu_x
};

// Restriction of a graph operator to a vertex set. Local index i corresponds
// to global vertex verts[i]; verts is sorted.
struct LocalOperator {
  std::vector<int> verts;
  SymOperator op;
};

LocalOperator make_local_operator(const WeightedGraph& g, const VertexSet& domain,
                                  OperatorMode mode);

struct CgResult {
  std::vector<double> x;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // final true residual |b - Ax|_2
  double rhs_norm = 0.0;
  bool residual_monotone = true;
};

// Jacobi-preconditioned conjugate gradients. Stops when the recurrence
// residual and the recomputed true residual are both <= rel_tol * |rhs|.
// max_iter < 0 selects the default 20*sqrt(dim) + 200.
CgResult cg_solve(const SymOperator& op, std::span<const double> rhs, double rel_tol = 1e-10,
                  int max_iter = -1);

struct RayleighResult {
  double value = 0.0;
  std::vector<double> vec;
  bool converged = false;
  int iterations = 0;
};

// Maximizes A(f)/B(f) over f orthogonal to the deflation vectors by power
// iteration on the pencil, with B-solves done by CG. B must be positive
// definite on the complement of the deflation subspace.
RayleighResult rayleigh_max_deflated(const SymOperator& a, const SymOperator& b,
                                     std::span<const std::vector<double>> deflate,
                                     double rel_tol = 1e-8, int max_iter = 3000,
                                     std::uint64_t seed = 0x5eed);

}  // namespace subgauss
