#include "aqec/complexity.hpp"
#include "aqec/variance.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace aqec;

TEST(Complexity, BinaryEntropyValues) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.25), 0.811278124459133, 1e-14);
  EXPECT_NEAR(binary_entropy(0.11), 0.499915958164528, 1e-12);
  EXPECT_THROW(binary_entropy(0.5), InapplicableError);
  EXPECT_THROW(binary_entropy(-0.1), InapplicableError);
}

TEST(Complexity, FannesAudenaertShape) {
  double prev = 0.0;
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    const double f = fannes_audenaert(t, 8.0);
    EXPECT_GE(f, prev - 1e-12);
    EXPECT_LE(f, 3.0 + 1e-12);
    prev = f;
  }
  EXPECT_NEAR(fannes_audenaert(1.0, 8.0), 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(fannes_audenaert(0.0, 8.0), 0.0);
  // t log(dim - 1) + H2(t) below saturation
  EXPECT_NEAR(fannes_audenaert(0.1, 4.0), 0.1 * std::log2(3.0) + binary_entropy(0.1), 1e-12);
}

TEST(Complexity, ExactCodesAreNontrivialEverywhere) {
  ThresholdInput in{100, 1.0, 16, 2, 0.0, 0.0, false, 0};
  const auto a = verdict_all_to_all(in);
  ASSERT_TRUE(a.nontrivial());
  EXPECT_DOUBLE_EQ(*a.bound, 4.0);
  const auto l = verdict_lattice(in);
  ASSERT_TRUE(l.nontrivial());
  EXPECT_DOUBLE_EQ(*l.bound, 1.5);
  const auto g = verdict_graph(in, AdjacencyGraph::ring(100));
  ASSERT_TRUE(g.nontrivial());
  EXPECT_DOUBLE_EQ(*g.bound, 7.0);
}

TEST(Complexity, ThresholdEdges) {
  // H2(x) < k/n with x = eps/2
  const int n = 100;
  const double k = 10.0;
  ThresholdInput below{n, k, 4, 1, 0.0, 2 * 0.0125, false, 0};  // H2(0.0125) ~ 0.097
  EXPECT_TRUE(verdict_all_to_all(below).nontrivial());
  ThresholdInput above{n, k, 4, 1, 0.0, 2 * 0.02, false, 0};  // H2(0.02) ~ 0.141
  EXPECT_FALSE(verdict_all_to_all(above).nontrivial());
  ThresholdInput big{n, k, 4, 1, 0.0, 1.5, false, 0};
  const auto v = verdict_all_to_all(big);
  EXPECT_EQ(v.status, VerdictStatus::Inapplicable);
  EXPECT_FALSE(v.bound.has_value());
  ThresholdInput inacc{n, k, 4, 1, 0.0, 0.3, true, 0};
  EXPECT_EQ(verdict_all_to_all(inacc).status, VerdictStatus::Inapplicable);
}

TEST(Complexity, RefinedLatticeForm) {
  const auto ring = AdjacencyGraph::ring(50);
  ThresholdInput in{50, 1.0, 10, 1, 0.0, 2e-4, false, 2};
  const auto v = verdict_lattice(in, &ring);
  // lhs = C [H2(x) + x log2(2^2 - 1)], C = 25 blocks of 2 sites
  const double x = 1e-4;
  EXPECT_NEAR(v.lhs, 25 * (binary_entropy(x) + x * std::log2(3.0)), 1e-12);
  ASSERT_TRUE(v.nontrivial());
  EXPECT_NEAR(*v.bound, 0.5 * 10 * (1 - 0.2), 1e-12);
  EXPECT_ANY_THROW(verdict_lattice(in));  // refined form needs the graph
}

TEST(Complexity, PhaseCells) {
  EXPECT_EQ(phase_cell(0.0, false, 1, 100), PhaseCell::Nontrivial);
  EXPECT_EQ(phase_cell(0.0, true, 1, 100), PhaseCell::Nontrivial);
  EXPECT_EQ(phase_cell(1.0, false, 1, 100), PhaseCell::Unboundable);
  EXPECT_EQ(phase_cell(0.5, false, 1, 100), PhaseCell::Unboundable);
  // Inaccuracy form: outside the H2(2 eps) condition but k > n H2(2^{-k-1} eps^2).
  EXPECT_EQ(phase_cell(0.1, true, 50, 100), PhaseCell::BoundaryBand);
  EXPECT_EQ(phase_cell(0.9, true, 1, 100), PhaseCell::Unboundable);
}

TEST(Complexity, RegimeTags) {
  std::vector<RegimeSample> fast, edge, rate, flat;
  for (int n : {16, 32, 64, 128, 256}) {
    fast.push_back({n, 1.0, std::pow(n, -2.0)});
    edge.push_back({n, 1.0, 1.0 / n});
    rate.push_back({n, n / 4.0, std::pow(n, -0.5)});
    flat.push_back({n, 1.0, 0.3});
  }
  EXPECT_EQ(regime_classify(fast).tag, "nontrivial (k=O(1), eps=o(1/n))");
  EXPECT_EQ(regime_classify(edge).tag, "boundary");
  EXPECT_EQ(regime_classify(rate).tag, "nontrivial (k=Omega(n))");
  EXPECT_EQ(regime_classify(flat).tag, "outside");
  std::vector<RegimeSample> zero{{4, 1, 0}, {8, 1, 0}, {16, 1, 0}, {32, 1, 0}};
  EXPECT_EQ(regime_classify(zero).tag, "nontrivial (eps=0)");
  EXPECT_ANY_THROW(regime_classify({{4, 1, 0.1}, {8, 1, 0.1}}));
}

TEST(Complexity, ProofReplayChainHolds) {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial % 4;
    const auto g = AdjacencyGraph::ring(n);
    const auto c = random_circuit(g, 1 + trial % 2, rng);
    const PureState psi(n, c.apply(PureState::basis(n, 0).amp));
    const auto code = code_containing(psi, 1, rng);
    EXPECT_NEAR(std::abs(code.dense[0].amp.dot(psi.amp)), 1.0, 1e-10);
    const auto rep = proof_replay(code, c);
    EXPECT_GE(rep.min_slack(), -1e-7);
    EXPECT_LE(rep.max_light_cone, std::min(n, 2 * c.depth() + 1) + 1);
  }
}

TEST(Complexity, ProofReplayOnExactCodeStateIsTight) {
  // psi = U|0> and a 1-dimensional code {psi}: Gamma is pure, every unit entropy vanishes.
  Rng rng(3);
  const auto g = AdjacencyGraph::ring(5);
  const auto c = random_circuit(g, 2, rng);
  const PureState psi(5, c.apply(PureState::basis(5, 0).amp));
  const auto code = make_dense_code("single", {psi});
  const auto rep = proof_replay(code, c);
  EXPECT_NEAR(rep.gamma_entropy, 0.0, 1e-10);
  EXPECT_NEAR(rep.sum_unit_entropy, 0.0, 1e-8);
  EXPECT_NEAR(rep.max_light_cone_distance, 0.0, 1e-10);
}

TEST(Complexity, DepthOneWitness) {
  const auto w = depth_one_witness(stabilizer_code("5_1_3"));
  EXPECT_TRUE(w.passes);
  EXPECT_LT(w.variance_two, 1e-8);
  EXPECT_FALSE(depth_one_witness(redundant_code(1, 3)).passes);
}
