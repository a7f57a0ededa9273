#include "aqec/variance.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

using namespace aqec;

namespace {

Region window(int d) {
  Region r(d);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

// ||psi_R - Gamma_R||_1 by dense partial traces.
double dense_deviation(const CodeSpace& code, const CVec& psi, const Region& region) {
  const auto a = partial_trace(PureState(code.n, psi), region);
  CMat g = CMat::Zero(a.rho.rows(), a.rho.cols());
  for (const auto& b : code.dense) g += partial_trace(b, region).rho / static_cast<double>(code.dim);
  return trace_norm_distance(a.rho, g);
}

}  // namespace

TEST(Variance, StabilizerCodesAreExactBelowDistance) {
  for (const auto& [name, dist] : std::vector<std::pair<std::string, int>>{{"4_2_2", 2}, {"5_1_3", 3}, {"steane", 3}}) {
    const auto code = stabilizer_code(name);
    const auto rep = overall_variance(code, AdjacencyGraph::complete(code.n), dist - 1);
    EXPECT_LE(rep.value, 1e-8) << name;
  }
}

TEST(Variance, ToricCodeL3) {
  const auto code = toric_code(3);
  const auto g = TorusEdges(3).qubit_graph();
  EXPECT_LE(overall_variance(code, g, 2).value, 1e-8);
  EXPECT_NEAR(overall_variance(code, g, 3).value, 1.0, 1e-6);
}

TEST(Variance, MomentumEigenstateDeviationMatchesDense) {
  const int n = 10;
  const auto code = momentum_full_code(n);
  for (int d : {2, 4, 6}) {
    const double fast = state_deviation(code, code.sector[1], window(d));
    CVec w = CVec::Zero(1 << n);  // single excitation at site x, momentum 2 pi / n
    for (int x = 0; x < n; ++x) w(1 << (n - 1 - x)) = std::polar(1.0 / std::sqrt(n), 2.0 * std::numbers::pi * (x + 1) / n);
    // Gamma is the uniform mixture of the n single-excitation states.
    CMat gamma = CMat::Zero(1 << n, 1 << n);
    for (int x = 0; x < n; ++x) gamma(1 << (n - 1 - x), 1 << (n - 1 - x)) = 1.0 / n;
    const auto a = partial_trace(PureState(n, w), window(d));
    EXPECT_NEAR(fast, trace_norm_distance(a.rho, partial_trace_op(gamma, n, window(d))), 1e-12);
    EXPECT_NEAR(fast, 2.0 * (d - 1) / n, 1e-12);
  }
}

TEST(Variance, BlochGridNeverBeatsOptimizer) {
  Rng rng(21);
  const auto code = random_code(4, 1, rng);
  const Region region{0, 1};
  const auto blocks = region_blocks(code, region);
  Rng opt_rng(4);
  const auto best = optimize_pure_max(blocks, OptimizerBudget{}, opt_rng);
  double grid = 0.0;
  for (int i = 0; i <= 180; ++i)
    for (int j = 0; j <= 360; ++j) {
      const double th = std::numbers::pi * i / 180.0, ph = 2.0 * std::numbers::pi * j / 360.0;
      CVec c(2);
      c << std::cos(th / 2), std::polar(std::sin(th / 2), ph);
      grid = std::max(grid, trace_norm_distance(blocks.reduced(c), blocks.gamma));
    }
  EXPECT_GE(best.value, grid - 1e-9);
  EXPECT_LE(best.value - grid, 1e-3);
  EXPECT_NEAR(best.value, dense_deviation(code, encode(code, best.coords).amp, region), 1e-10);
  EXPECT_LE(best.diagnostics.stationarity, 1e-6);
}

TEST(Variance, OptimizerValueIsAttainedOnDenseState) {
  Rng rng(5);
  const auto code = random_code(5, 2, rng);
  const auto rv = region_variance(code, {1, 2, 3});
  EXPECT_EQ(rv.method, "optimized");
  EXPECT_NEAR(rv.value, dense_deviation(code, encode(code, rv.coords).amp, {1, 2, 3}), 1e-10);
}

TEST(Variance, MonotoneInRegionSize) {
  Rng rng(6);
  const auto code = random_code(5, 1, rng);
  const auto g = AdjacencyGraph::ring(5);
  double prev = 0.0;
  for (int d = 1; d <= 4; ++d) {
    const double v = overall_variance(code, g, d).value;
    EXPECT_GE(v, prev - 1e-9);
    prev = v;
  }
}

TEST(Variance, HeisenbergAnalyticMatchesDense) {
  const auto code = heisenberg_code(12, 6, 6);
  const auto ms = heisenberg_magnetizations(12, 6, 6);
  for (int d : {1, 2, 3}) {
    const auto vals = heisenberg_variances(12, ms, d);
    for (std::size_t i = 0; i < ms.size(); ++i)
      EXPECT_NEAR(vals[i], dense_deviation(code, code.dense[i].amp, window(d)), 1e-10);
  }
}

TEST(Variance, HeisenbergVarianceGrowsWithM) {
  const int n = 40, d = 2;
  double prev = 0.0;
  for (int M : {4, 8, 12, 16}) {
    const auto vals = heisenberg_variances(n, heisenberg_magnetizations(n, M, 4), d);
    const double v = *std::max_element(vals.begin(), vals.end());
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Variance, RegionPruningKeepsMaximalRegions) {
  const auto code = toric_code(3);
  const auto g = TorusEdges(3).qubit_graph();
  for (const auto& r : variance_regions(code, g, 2)) EXPECT_EQ(r.size(), 2u);
  const auto ring_code = momentum_full_code(30);
  EXPECT_EQ(variance_regions(ring_code, AdjacencyGraph::ring(30), 4).size(), 1u);
}

TEST(Variance, RejectsRegionsOutsideTheCode) {
  EXPECT_ANY_THROW(region_variance(stabilizer_code("4_2_2"), {4}));
}
