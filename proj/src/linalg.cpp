#include "subgauss/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

namespace subgauss {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Local CSR for the restriction of g to a vertex set.
struct LocalCsr {
  std::vector<std::size_t> off;
  std::vector<int> nbr;     // local indices
  std::vector<double> w;
  std::vector<double> diag;  // mode-dependent diagonal
};

}  // namespace

double quadratic_value(const SymOperator& op, std::span<const double> x) {
  std::vector<double> y(op.dim, 0.0);
  op.apply(x, y);
  return dot(x, y);
}

LocalOperator make_local_operator(const WeightedGraph& g, const VertexSet& domain,
                                  OperatorMode mode) {
  if (domain.empty()) throw std::invalid_argument("operator domain is empty");
  LocalOperator lo;
  lo.verts = domain.ids;
  const std::size_t m = lo.verts.size();

  std::vector<int> local_of(g.vertex_count(), -1);
  for (std::size_t i = 0; i < m; ++i) local_of[lo.verts[i]] = static_cast<int>(i);

  auto csr = std::make_shared<LocalCsr>();
  csr->off.assign(m + 1, 0);
  csr->diag.assign(m, 0.0);

  if (mode == OperatorMode::mass) {
    for (std::size_t i = 0; i < m; ++i) csr->diag[i] = g.vertex_mass(lo.verts[i]);
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      int v = lo.verts[i];
      auto nb = g.neighbors(v);
      std::size_t inside = 0;
      for (int y : nb)
        if (local_of[y] >= 0) ++inside;
      csr->off[i + 1] = csr->off[i] + inside;
    }
    csr->nbr.resize(csr->off[m]);
    csr->w.resize(csr->off[m]);
    for (std::size_t i = 0; i < m; ++i) {
      int v = lo.verts[i];
      auto nb = g.neighbors(v);
      auto wt = g.weights(v);
      std::size_t at = csr->off[i];
      double inside_mass = 0.0;
      for (std::size_t j = 0; j < nb.size(); ++j) {
        int loc = local_of[nb[j]];
        if (loc >= 0) {
          csr->nbr[at] = loc;
          csr->w[at] = wt[j];
          ++at;
          inside_mass += wt[j];
        }
      }
      // Dirichlet keeps the full mass on the diagonal (edges leaving the set
      // act as absorption); Neumann sees only internal edges.
      csr->diag[i] = mode == OperatorMode::dirichlet ? g.vertex_mass(v) : inside_mass;
    }
  }

  lo.op.dim = m;
  lo.op.jacobi_diag = csr->diag;
  if (mode == OperatorMode::mass) {
    lo.op.apply = [csr](std::span<const double> x, std::span<double> y) {
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = csr->diag[i] * x[i];
    };
  } else {
    lo.op.apply = [csr](std::span<const double> x, std::span<double> y) {
      const std::size_t m = x.size();
      for (std::size_t i = 0; i < m; ++i) {
        double acc = csr->diag[i] * x[i];
        for (std::size_t j = csr->off[i]; j < csr->off[i + 1]; ++j)
          acc -= csr->w[j] * x[csr->nbr[j]];
        y[i] = acc;
      }
    };
  }
  return lo;
}

CgResult cg_solve(const SymOperator& op, std::span<const double> rhs, double rel_tol,
                  int max_iter) {
  const std::size_t n = op.dim;
  if (rhs.size() != n) throw std::invalid_argument("rhs size mismatch");
  if (max_iter < 0) max_iter = static_cast<int>(20.0 * std::sqrt(static_cast<double>(n))) + 200;

  CgResult res;
  res.x.assign(n, 0.0);
  res.rhs_norm = norm2(rhs);
  if (res.rhs_norm == 0.0) {
    res.converged = true;
    return res;
  }
  const double target = rel_tol * res.rhs_norm;

  std::vector<double> precond(n, 1.0);
  if (!op.jacobi_diag.empty()) {
    for (std::size_t i = 0; i < n; ++i)
      if (op.jacobi_diag[i] > 0.0) precond[i] = 1.0 / op.jacobi_diag[i];
  }

  std::vector<double> r(rhs.begin(), rhs.end());
  std::vector<double> z(n), p(n), ap(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = precond[i] * r[i];
  p = z;
  double rz = dot(r, z);
  double res_norm = res.rhs_norm;

  auto true_residual = [&] {
    op.apply(res.x, ap);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = rhs[i] - ap[i];
      s += d * d;
    }
    return std::sqrt(s);
  };

  for (int it = 1; it <= max_iter; ++it) {
    op.apply(p, ap);
    double pap = dot(p, ap);
    if (!(pap > 0.0)) {
      // Not positive definite along p; report the best point reached.
      res.iterations = it - 1;
      res.residual = true_residual();
      res.converged = res.residual <= target;
      return res;
    }
    double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      res.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    double nr = norm2(r);
    if (nr > res_norm) res.residual_monotone = false;
    res_norm = nr;
    res.iterations = it;
    if (nr <= target) {
      res.residual = true_residual();
      if (res.residual <= target) {
        res.converged = true;
        return res;
      }
      // Recurrence drifted; refresh and keep going.
      op.apply(res.x, ap);
      for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
      res_norm = norm2(r);
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = precond[i] * r[i];
    double rz_next = dot(r, z);
    double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  res.residual = true_residual();
  res.converged = res.residual <= target;
  return res;
}

RayleighResult rayleigh_max_deflated(const SymOperator& a, const SymOperator& b,
                                     std::span<const std::vector<double>> deflate,
                                     double rel_tol, int max_iter, std::uint64_t seed) {
  const std::size_t n = a.dim;
  if (b.dim != n) throw std::invalid_argument("operator dimensions differ");

  // Orthonormalize the deflation basis once (plain Gram-Schmidt).
  std::vector<std::vector<double>> q;
  for (const auto& d : deflate) {
    if (d.size() != n) throw std::invalid_argument("deflation vector size mismatch");
    std::vector<double> v = d;
    for (const auto& prev : q) {
      double c = dot(v, prev);
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * prev[i];
    }
    double nv = norm2(v);
    if (nv > 1e-14) {
      for (auto& x : v) x /= nv;
      q.push_back(std::move(v));
    }
  }
  auto project = [&](std::vector<double>& v) {
    for (const auto& prev : q) {
      double c = dot(v, prev);
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * prev[i];
    }
  };

  RayleighResult out;
  std::mt19937_64 rng(seed);
  std::vector<double> f(n);
  for (auto& x : f) x = (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
  project(f);
  double nf = norm2(f);
  if (nf == 0.0) return out;
  for (auto& x : f) x /= nf;

  std::vector<double> g(n);
  double prev = 0.0;
  int stable = 0;
  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    a.apply(f, g);
    if (norm2(g) == 0.0) {
      // f is in the kernel of A; the quotient is 0 along this direction.
      out.value = 0.0;
      out.vec = f;
      out.converged = true;
      return out;
    }
    CgResult sol = cg_solve(b, g, 1e-10, -1);
    f = std::move(sol.x);
    project(f);
    double bf = quadratic_value(b, f);
    if (!(bf > 0.0)) {
      out.value = 0.0;
      out.vec = f;
      return out;
    }
    double af = quadratic_value(a, f);
    double rho = af / bf;
    double scale = 1.0 / std::sqrt(bf);
    for (auto& x : f) x *= scale;
    if (std::abs(rho - prev) <= rel_tol * std::max(std::abs(rho), 1e-300)) {
      if (++stable >= 2) {
        out.value = rho;
        out.vec = f;
        out.converged = true;
        return out;
      }
    } else {
      stable = 0;
    }
    prev = rho;
  }
  out.value = prev;
  out.vec = f;
  return out;
}

}  // namespace subgauss
