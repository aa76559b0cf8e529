#include "subgauss/linalg.hpp"

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "subgauss/generators.hpp"
#include "subgauss/graph.hpp"
#include "support/oracles.hpp"

using namespace subgauss;

namespace {

SymOperator wrap_dense(const Eigen::MatrixXd& m) {
  SymOperator op;
  op.dim = static_cast<std::size_t>(m.rows());
  op.apply = [m](std::span<const double> x, std::span<double> y) {
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), m.rows());
    Eigen::Map<Eigen::VectorXd> yv(y.data(), m.rows());
    yv = m * xv;
  };
  op.jacobi_diag.assign(m.diagonal().data(), m.diagonal().data() + m.rows());
  return op;
}

Eigen::MatrixXd local_matrix(const LocalOperator& local) {
  const int m = static_cast<int>(local.op.dim);
  Eigen::MatrixXd out(m, m);
  std::vector<double> x(m, 0.0), y(m, 0.0);
  for (int j = 0; j < m; ++j) {
    x.assign(m, 0.0);
    x[j] = 1.0;
    local.op.apply(x, y);
    for (int i = 0; i < m; ++i) out(i, j) = y[i];
  }
  return out;
}

}  // namespace

TEST_CASE("local operators match their dense definitions") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    WeightedGraph g = oracle::random_connected_graph(rng, 6);
    const int n = g.vertex_count();
    VertexSet domain = ball(g, 0, 1);
    if (static_cast<int>(domain.size()) == n) {
      domain = VertexSet::of(g, {0});
    }
    Eigen::MatrixXd lap = oracle::dense_laplacian(g);
    const int m = static_cast<int>(domain.size());

    LocalOperator dir = make_local_operator(g, domain, OperatorMode::dirichlet);
    Eigen::MatrixXd dir_dense(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) dir_dense(i, j) = lap(domain.ids[i], domain.ids[j]);
    CHECK((local_matrix(dir) - dir_dense).cwiseAbs().maxCoeff() < 1e-12);

    LocalOperator neu = make_local_operator(g, domain, OperatorMode::neumann);
    Eigen::MatrixXd neu_dense = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        double w = g.conductance(domain.ids[i], domain.ids[j]);
        neu_dense(i, j) -= w;
        neu_dense(i, i) += w;
      }
    }
    CHECK((local_matrix(neu) - neu_dense).cwiseAbs().maxCoeff() < 1e-12);

    LocalOperator mass = make_local_operator(g, domain, OperatorMode::mass);
    Eigen::MatrixXd mass_dense = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) mass_dense(i, i) = g.vertex_mass(domain.ids[i]);
    CHECK((local_matrix(mass) - mass_dense).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("quadratic_value evaluates x^T A x") {
  Eigen::MatrixXd m(2, 2);
  m << 2.0, 1.0, 1.0, 3.0;
  SymOperator op = wrap_dense(m);
  std::vector<double> x{1.0, -2.0};
  // 2*1 + 3*4 + 2*1*(-2) = 10.
  CHECK(quadratic_value(op, x) == doctest::Approx(10.0));
}

TEST_CASE("cg_solve agrees with a dense solver") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    WeightedGraph g = oracle::random_connected_graph(rng, 6);
    const int n = g.vertex_count();
    std::vector<int> inside;
    for (int v = 0; v + 1 < n; ++v) inside.push_back(v);
    VertexSet domain = VertexSet::of(g, std::move(inside));

    LocalOperator dir = make_local_operator(g, domain, OperatorMode::dirichlet);
    const int m = static_cast<int>(dir.op.dim);
    std::vector<double> rhs(m);
    for (double& x : rhs) x = unit(rng);

    CgResult got = cg_solve(dir.op, rhs, 1e-12);
    CHECK(got.converged);
    CHECK(got.residual <= 1e-12 * got.rhs_norm + 1e-300);

    Eigen::MatrixXd a = local_matrix(dir);
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), m);
    Eigen::VectorXd want = a.ldlt().solve(b);
    for (int i = 0; i < m; ++i) CHECK(got.x[i] == doctest::Approx(want(i)).epsilon(1e-8));
  }
}

TEST_CASE("rayleigh_max_deflated finds generalized eigenvalues") {
  Eigen::MatrixXd a(3, 3);
  a << 4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0;
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(3, 3) * 2.0;

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dense(a, b);
  double top = dense.eigenvalues().maxCoeff();

  RayleighResult got = rayleigh_max_deflated(wrap_dense(a), wrap_dense(b), {});
  CHECK(got.converged);
  CHECK(got.value == doctest::Approx(top).epsilon(1e-6));

  // Deflating the top eigenvector exposes the second eigenvalue.
  Eigen::VectorXd v_top = dense.eigenvectors().col(2);
  std::vector<std::vector<double>> deflate{
      std::vector<double>(v_top.data(), v_top.data() + 3)};
  RayleighResult second = rayleigh_max_deflated(wrap_dense(a), wrap_dense(b), deflate);
  CHECK(second.converged);
  CHECK(second.value == doctest::Approx(dense.eigenvalues()(1)).epsilon(1e-6));
}
