#include "subgauss/inequalities.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "subgauss/generators.hpp"
#include "subgauss/graph.hpp"
#include "support/oracles.hpp"

using namespace subgauss;

TEST_CASE("fit_loglog recovers exact power laws") {
  std::vector<int> radii{2, 4, 8, 16, 32};
  std::vector<double> values;
  for (int r : radii) values.push_back(3.0 * std::pow(r, 2.5));
  ExponentFit fit = fit_loglog(radii, values);
  CHECK(fit.exponent == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(fit.log_prefactor == doctest::Approx(std::log(3.0)).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.radii == radii);
}

TEST_CASE("fit_loglog validates input") {
  std::vector<double> two_vals{1.0, 2.0};
  std::vector<int> two{1, 2};
  CHECK_THROWS_AS((void)fit_loglog(two, two_vals), std::invalid_argument);

  std::vector<int> unsorted{1, 3, 2};
  std::vector<double> vals{1.0, 2.0, 3.0};
  CHECK_THROWS_AS((void)fit_loglog(unsorted, vals), std::invalid_argument);

  std::vector<int> low{0, 1, 2};
  CHECK_THROWS_AS((void)fit_loglog(low, vals), std::invalid_argument);

  std::vector<int> ok{1, 2, 3};
  std::vector<double> nonpos{1.0, 0.0, 2.0};
  CHECK_THROWS_AS((void)fit_loglog(ok, nonpos), std::invalid_argument);

  // Constant ordinates: exponent 0 with r_squared 1 by convention.
  std::vector<double> flat{5.0, 5.0, 5.0};
  ExponentFit fit = fit_loglog(ok, flat);
  CHECK(fit.exponent == doctest::Approx(0.0));
  CHECK(fit.r_squared == doctest::Approx(1.0));
}

TEST_CASE("finalize_spread verdicts") {
  ConditionReport r;
  r.condition = "demo";
  r.threshold = 2.0;
  r.scales = {{1, 1.0, ""}, {2, 1.5, ""}, {4, 1.9, ""}};
  finalize_spread(r);
  CHECK(r.pass);
  REQUIRE(r.stats.size() == 3);
  CHECK(r.stats[0].first == "min");
  CHECK(r.stats[0].second == doctest::Approx(1.0));
  CHECK(r.stats[1].second == doctest::Approx(1.9));
  CHECK(r.stats[2].first == "spread");
  CHECK(r.stats[2].second == doctest::Approx(1.9));

  ConditionReport wide;
  wide.threshold = 2.0;
  wide.scales = {{1, 1.0, ""}, {2, 2.5, ""}};
  finalize_spread(wide);
  CHECK_FALSE(wide.pass);

  ConditionReport bad;
  bad.threshold = 2.0;
  bad.scales = {{1, 0.0, ""}, {2, 1.0, ""}};
  finalize_spread(bad);
  CHECK_FALSE(bad.pass);

  ConditionReport empty;
  empty.threshold = 2.0;
  finalize_spread(empty);
  CHECK_FALSE(empty.pass);
}

TEST_CASE("volume_fit stays inside the audit window") {
  WeightedGraph g = lattice(1, 65);  // center 32, eccentricity 32, window 16
  std::vector<int> ok{2, 4, 8, 16};
  ExponentFit fit = volume_fit(g, 32, ok);
  CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.1));

  std::vector<int> wide{4, 8, 32};
  CHECK_THROWS_AS((void)volume_fit(g, 32, wide), std::invalid_argument);
}

TEST_CASE("volume_condition constants on a path") {
  WeightedGraph g = lattice(1, 129);
  std::vector<int> radii{4, 8, 16, 32};
  ConditionReport rep = volume_condition(g, 64, radii, 1.0);
  CHECK(rep.condition == "V(d_f)");
  CHECK(rep.pass);
  REQUIRE(rep.scales.size() == 4);
  // Interior ball mass is 2(2r+1); constants 2(2r+1)/r.
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double r = radii[i];
    CHECK(rep.scales[i].constant == doctest::Approx(2.0 * (2.0 * r + 1.0) / r));
  }
}

TEST_CASE("p0_condition") {
  ConditionReport rep = p0_condition(lattice(2, 9));
  CHECK(rep.condition == "p0");
  CHECK(rep.pass);
  REQUIRE(rep.scales.size() == 1);
  CHECK(rep.scales[0].constant == doctest::Approx(0.25));
}

TEST_CASE("capacity_scaling_audit on a path matches series law") {
  WeightedGraph g = lattice(1, 257);  // center 128, window 64
  std::vector<int> radii{4, 8, 16, 32, 48};
  ConditionReport rep = capacity_scaling_audit(g, 128, radii, 2.0);
  CHECK(rep.condition == "Cap(d_w)<=");
  CHECK(rep.pass);
  // 2r must stay inside the window: r = 48 is dropped with a note.
  REQUIRE(rep.scales.size() == 4);
  CHECK(rep.notes.size() == 1);
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    double r = radii[i];
    // Cap = 2/r, V = 2(2r+1): constant = 2 r^2 / (r * 2(2r+1)) = r/(2r+1).
    CHECK(rep.scales[i].constant == doctest::Approx(r / (2.0 * r + 1.0)).epsilon(1e-8));
  }
}

TEST_CASE("poincare_constant matches the dense eigensolver") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 8; ++trial) {
    WeightedGraph g = oracle::random_connected_graph(rng, 6);
    double got = poincare_constant(g, 0, 1);
    double want = oracle::dense_poincare_constant(g, 0, 1);
    CHECK(got == doctest::Approx(want).epsilon(1e-5));
  }

  WeightedGraph grid = lattice(2, 17);
  int c = approximate_center(grid);
  CHECK(poincare_constant(grid, c, 3) ==
        doctest::Approx(oracle::dense_poincare_constant(grid, c, 3)).epsilon(1e-5));

  WeightedGraph gasket = sierpinski_gasket(4);
  CHECK(poincare_constant(gasket, 0, 4) ==
        doctest::Approx(oracle::dense_poincare_constant(gasket, 0, 4)).epsilon(1e-5));

  // Singleton inner ball carries no variance.
  CHECK(poincare_constant(lattice(1, 9), 4, 0) == 0.0);
}

TEST_CASE("poincare_scaling_audit drops radii that swallow the graph") {
  WeightedGraph g = lattice(1, 65);  // center 32, eccentricity 32
  std::vector<int> radii{4, 8, 16};
  ConditionReport rep = poincare_scaling_audit(g, 32, radii, 2.0);
  CHECK(rep.condition == "PI(d_w)");
  // 2*16 = 32 reaches the eccentricity: dropped.
  CHECK(rep.scales.size() == 2);
  CHECK_FALSE(rep.notes.empty());
  CHECK(rep.pass);
}

TEST_CASE("hypothesis_gate truth table") {
  CHECK(hypothesis_gate(1.5, 2.0));
  CHECK(hypothesis_gate(2.9, 2.0));
  CHECK_FALSE(hypothesis_gate(3.0, 2.0));   // d_f = 1 + d_w exactly
  CHECK_FALSE(hypothesis_gate(1.5, 1.99));  // d_w below 2
  CHECK(hypothesis_gate(1.585, 2.3219));

  ConditionReport rep = hypothesis_gate_report(1.585, 2.3219);
  CHECK(rep.condition == "hypothesis-gate");
  CHECK(rep.mode == "gate");
  CHECK(rep.pass);
  CHECK(rep.scales.empty());

  ConditionReport bad = hypothesis_gate_report(3.5, 2.0);
  CHECK_FALSE(bad.pass);
}
