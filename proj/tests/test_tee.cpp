#include "aqec/complexity.hpp"
#include "aqec/random.hpp"
#include "aqec/tee.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace aqec;

TEST(Tee, PixelTopology) {
  const PixelTorus grid(3);
  EXPECT_EQ(grid.side(), 6);
  EXPECT_EQ(grid.qubit(grid.id(1, 0)), grid.torus.h(0, 0));
  EXPECT_EQ(grid.qubit(grid.id(0, 1)), grid.torus.v(0, 0));
  EXPECT_EQ(grid.qubit(grid.id(0, 0)), -1);
  const auto box = grid.rect(1, 1, 3, 3);
  EXPECT_TRUE(pixel_contractible(grid, box));
  EXPECT_EQ(pixel_boundaries(grid, box), 1);
  const auto row = grid.rect(0, 2, 6, 1);
  EXPECT_TRUE(pixel_wraps(grid, row));
  EXPECT_FALSE(pixel_contractible(grid, row));
  // Square annulus: two boundary curves.
  std::vector<int> ring;
  for (int p : grid.rect(0, 0, 5, 5))
    if (std::find(box.begin(), box.end(), p) == box.end() || p == -1) ring.push_back(p);
  EXPECT_EQ(pixel_components(grid, ring), 1);
  EXPECT_EQ(pixel_boundaries(grid, ring), 2);
  EXPECT_THROW(grid.rect(0, 0, 7, 1), TeeError);
}

TEST(Tee, SchedulesSatisfyTheirInvariants) {
  for (const auto& [L, d] : std::vector<std::pair<int, int>>{{3, 9}, {3, 14}, {4, 16}, {4, 24}, {5, 30}}) {
    const auto s = build_schedule(L, d);
    EXPECT_NO_THROW(s.validate()) << L << " " << d;
    EXPECT_EQ(s.m(), 3 + 2 * s.bridges);
    for (const auto& [a, b, c] : s.regions()) EXPECT_LE(b.size() + c.size(), static_cast<std::size_t>(d));
  }
  EXPECT_THROW(build_schedule(3, 2), TeeError);
  EXPECT_EQ(paper_step_count(18, 9), 3);
  EXPECT_EQ(paper_step_count(100, 10), 11);
}

TEST(Tee, MarkovCombinationBoundsEntropyOfAnyState) {
  const auto s = build_schedule(3, 9);
  Rng rng(13);
  const auto dim = Eigen::Index{1} << 18;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<CVec> states{random_unit_vector(dim, rng), random_unit_vector(dim, rng)};
    const auto rep = markov_combination(states, {0.25, 0.75}, s);
    EXPECT_GE(rep.slack, -1e-9);
    // nearly orthogonal states in 2^18 dimensions
    EXPECT_NEAR(rep.full_entropy, binary_entropy(0.25), 1e-2);
  }
}

TEST(Tee, ToricMarkovBoundAndAreaLaw) {
  const auto toric = toric_code(3);
  const TorusEdges t(3);
  const auto rep = markov_bound(toric, build_schedule(3, 9));
  EXPECT_NEAR(rep.full_entropy, 2.0, 1e-9);
  EXPECT_GE(rep.slack, -1e-9);
  EXPECT_GE(rep.gamma_lower, 1.0 - 1e-12);
  const auto entries = area_law_entries(toric.dense[0], t, toric_cluster_regions(t));
  const auto fit = area_law_fit(entries);
  EXPECT_NEAR(fit.gamma, 1.0, 1e-6);
  EXPECT_NEAR(fit.slope, 1.0, 1e-6);
  EXPECT_LE(fit.gamma_spread, 1e-9);
  // Single edge: maximally mixed qubit, S = l - gamma with l = 2 cut stars.
  EXPECT_NEAR(entanglement_entropy(toric.dense[0], {t.h(1, 1)}), 1.0, 1e-10);
  EXPECT_EQ(cut_stars(t, {t.h(1, 1)}), 2);
  EXPECT_EQ(crossing_edges(t, {t.h(1, 1)}), 6);
}

TEST(Tee, AreaLawFitNeedsDistinctBoundaries) {
  std::vector<AreaLawEntry> e{{"a", {0}, 2, 1}, {"b", {1}, 2, 1}, {"c", {2}, 2, 1}};
  EXPECT_THROW(area_law_fit(e), TeeError);
}

TEST(Tee, ExpansionAlgebra) {
  const auto g = AdjacencyGraph::ring(12);
  const CorrectabilityCertificate seed{{5}, 0.01, 1};
  const CorrectabilityCertificate shell{{4, 6}, 0.02, 1};
  const auto c = expansion_compose(seed, shell, g);
  EXPECT_EQ(c.region, (Region{4, 5, 6}));
  EXPECT_NEAR(c.eps, 0.03, 1e-15);
  EXPECT_THROW(expansion_compose(seed, {{4, 6}, 0.02, 2}, g), TeeError);
  EXPECT_THROW(expansion_compose(seed, {{4}, 0.02, 1}, g), TeeError);
  const auto chain = expansion_chain(seed, g, 3, 0.01);
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(chain.back().region.size(), 7u);
  EXPECT_NEAR(chain.back().eps, 0.04, 1e-15);
  // the seventh expansion would need qubits beyond the whole ring
  EXPECT_THROW(expansion_chain(seed, g, 7, 0.01), TeeError);
}

TEST(Tee, StringnetDeviationGrowsLikeRootVolume) {
  for (int L : {2, 3}) {
    const auto rep = stringnet_variance_check(L);
    double prev = 0.0;
    for (const auto& row : rep.rows) {
      EXPECT_GE(row.sqrt_ratio, 0.5);
      EXPECT_LE(row.sqrt_ratio, 2.0);
      EXPECT_GE(row.exact, prev);
      EXPECT_LE(row.n_c, rep.N_C);
      prev = row.exact;
    }
  }
  EXPECT_EQ(stringnet_variance_check(3).N_C, 51);
}
