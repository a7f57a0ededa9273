#include "aqec/geometry.hpp"
#include "aqec/random.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <queue>
#include <set>

using namespace aqec;

namespace {

bool bfs_connected(const AdjacencyGraph& g, std::uint64_t mask) {
  if (mask == 0) return false;
  int start = 0;
  while (!((mask >> start) & 1)) ++start;
  std::uint64_t seen = std::uint64_t{1} << start;
  std::queue<int> q;
  q.push(start);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : g.adj[v])
      if (((mask >> w) & 1) && !((seen >> w) & 1)) {
        seen |= std::uint64_t{1} << w;
        q.push(w);
      }
  }
  return seen == mask;
}

// Connected subsets of size <= d by scanning every subset.
std::set<Region> brute_regions(const AdjacencyGraph& g, int d) {
  std::set<Region> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << g.n); ++mask) {
    if (std::popcount(mask) > d || !bfs_connected(g, mask)) continue;
    Region r;
    for (int v = 0; v < g.n; ++v)
      if ((mask >> v) & 1) r.push_back(v);
    out.insert(r);
  }
  return out;
}

}  // namespace

TEST(Geometry, RegionEnumerationMatchesSubsetScan) {
  const std::vector<std::pair<AdjacencyGraph, int>> cases{
      {AdjacencyGraph::ring(9), 4},
      {AdjacencyGraph::lattice({3, 3}, true), 4},
      {AdjacencyGraph::lattice({3, 4}, false), 5},
      {AdjacencyGraph::complete(6), 6},
      {TorusEdges(2).qubit_graph(), 8},
  };
  for (const auto& [g, d] : cases) {
    const auto fast = connected_regions(g, d);
    const std::set<Region> unique(fast.begin(), fast.end());
    EXPECT_EQ(unique.size(), fast.size()) << g.describe();
    EXPECT_EQ(unique, brute_regions(g, d)) << g.describe();
    EXPECT_EQ(count_connected_regions(g, d), fast.size());
  }
}

TEST(Geometry, RingArcCount) {
  // n arcs of each length below n, plus the whole ring.
  EXPECT_EQ(count_connected_regions(AdjacencyGraph::ring(12), 3), 36u);
  EXPECT_EQ(count_connected_regions(AdjacencyGraph::ring(12), 12), 12u * 11u + 1u);
  EXPECT_EQ(count_connected_regions(AdjacencyGraph::complete(5), 5), 31u);
}

TEST(Geometry, LatticeAdjacency) {
  const auto g = AdjacencyGraph::lattice({3, 4}, true);
  EXPECT_EQ(g.dimension(), 2);
  for (int v = 0; v < g.n; ++v) EXPECT_EQ(g.adj[v].size(), 4u);
  const auto open = AdjacencyGraph::lattice({3, 4}, false);
  EXPECT_EQ(open.edges().size(), 3u * 3u + 2u * 4u);
  EXPECT_TRUE(is_connected(g, {0, 1, 2}));
  EXPECT_FALSE(is_connected(open, {0, 2}));
}

TEST(Geometry, LightConeContainsEveryInfluence) {
  // Scrambling the qubits outside the light cone must leave the target marginal unchanged.
  Rng rng(17);
  const int n = 8;
  const auto g = AdjacencyGraph::ring(n);
  for (int depth = 1; depth <= 3; ++depth) {
    const auto circuit = random_circuit(g, depth, rng);
    circuit.validate(g);
    const Region target{3};
    const Region cone = light_cone(circuit, target);
    EXPECT_TRUE(std::find(cone.begin(), cone.end(), 3) != cone.end());
    EXPECT_LE(static_cast<int>(cone.size()), 2 * depth + 1);
    CVec a = random_unit_vector(1 << n, rng);
    // Apply a random unitary on the complement of the cone by rebuilding a with a fresh
    // component there: psi = phi_cone (x) chi with two different chi.
    const Region outside = complement(cone, n);
    if (outside.empty()) continue;
    const CVec phi = random_unit_vector(Eigen::Index{1} << cone.size(), rng);
    auto product = [&](const CVec& chi) {
      CVec v = CVec::Zero(1 << n);
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
        std::uint64_t ci = 0, oi = 0;
        for (int q = 0; q < n; ++q) {
          const std::uint64_t bit = (idx >> (n - 1 - q)) & 1;
          if (std::find(cone.begin(), cone.end(), q) != cone.end()) ci = (ci << 1) | bit;
          else oi = (oi << 1) | bit;
        }
        v(static_cast<Eigen::Index>(idx)) = phi(static_cast<Eigen::Index>(ci)) * chi(static_cast<Eigen::Index>(oi));
      }
      return v;
    };
    const auto dim_out = Eigen::Index{1} << outside.size();
    const CVec x = circuit.apply(product(random_unit_vector(dim_out, rng)));
    const CVec y = circuit.apply(product(random_unit_vector(dim_out, rng)));
    EXPECT_NEAR((partial_trace(PureState(n, x), target).rho - partial_trace(PureState(n, y), target).rho).norm(), 0.0,
                1e-10);
  }
}

TEST(Geometry, CircuitInverseUndoes) {
  Rng rng(1);
  const auto c = brickwork_circuit(6, 3, rng);
  const CVec v = random_unit_vector(64, rng);
  EXPECT_NEAR((c.inverse().apply(c.apply(v)) - v).norm(), 0.0, 1e-12);
}

TEST(Geometry, CoveringBlocksCoverEverySite) {
  const auto ring = AdjacencyGraph::ring(12);
  EXPECT_EQ(covering_number(ring, 3), 4);
  EXPECT_EQ(covering_number(ring, 1), 12);
  const auto lat = AdjacencyGraph::lattice({4, 4}, true);
  const auto cov = covering(lat, 4);
  EXPECT_EQ(cov.count, 4);
  std::vector<int> hits(lat.n, 0);
  for (const auto& b : cov.blocks) {
    EXPECT_LE(b.size(), 4u);
    for (int v : b) ++hits[v];
  }
  for (int h : hits) EXPECT_GE(h, 1);
}

TEST(Geometry, LightConeGrowth) {
  const auto ring = AdjacencyGraph::ring(100);
  EXPECT_EQ(max_lightcone_growth(ring, 3), 7);
  EXPECT_EQ(lightcone_inverse(ring, 15), 7);
  EXPECT_EQ(max_lightcone_growth(AdjacencyGraph::complete(64), 4), 16);
  // Star graph: the centre reaches every leaf in one layer.
  std::vector<std::pair<int, int>> star;
  for (int v = 1; v < 9; ++v) star.emplace_back(0, v);
  const auto g = AdjacencyGraph::from_edges(9, star);
  EXPECT_EQ(max_lightcone_growth(g, 0), 1);
  EXPECT_EQ(max_lightcone_growth(g, 1), 9);
  EXPECT_EQ(lightcone_inverse(g, 8), 0);
}

TEST(Geometry, TorusStarsAndPlaquettes) {
  const TorusEdges t(3);
  std::vector<int> in_stars(t.n(), 0), in_plaquettes(t.n(), 0);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      const auto s = t.star(x, y);
      const auto p = t.plaquette(x, y);
      EXPECT_EQ(std::set<int>(s.begin(), s.end()).size(), 4u);
      for (int e : s) ++in_stars[e];
      for (int e : p) ++in_plaquettes[e];
    }
  for (int e = 0; e < t.n(); ++e) {
    EXPECT_EQ(in_stars[e], 2);
    EXPECT_EQ(in_plaquettes[e], 2);
  }
  EXPECT_TRUE(torus_region_winds(t, {t.h(0, 1), t.h(1, 1), t.h(2, 1)}));
  EXPECT_FALSE(torus_region_winds(t, {t.h(0, 1), t.h(1, 1)}));
}
