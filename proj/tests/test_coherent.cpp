#include "aqec/coherent.hpp"

#include <gtest/gtest.h>

using namespace aqec;

TEST(Coherent, InDistanceErasureKeepsEveryLogicalBit) {
  const auto code = stabilizer_code("4_2_2");
  for (int q = 0; q < 4; ++q) {
    const auto rep = coherent_information(code, {q});
    EXPECT_NEAR(rep.coherent_information, 2.0, 1e-10);
    EXPECT_NEAR(rep.gap, 0.0, 1e-10);
  }
  // Erasing two qubits of [[4,2,2]] leaks everything.
  EXPECT_NEAR(coherent_information(code, {0, 1}).gap, 2.0, 1e-10);
}

TEST(Coherent, MatchesFullOutputWhereAvailable) {
  Rng rng(7);
  const auto code = random_code(4, 1, rng);
  const auto rep = coherent_information(code, {2});
  ASSERT_TRUE(rep.full_output_value.has_value());
  EXPECT_NEAR(rep.coherent_information, *rep.full_output_value, 1e-10);
  EXPECT_NEAR(rep.coherent_information + rep.mutual_information, rep.k, 1e-10);
}

TEST(Coherent, BoundsHoldOnRandomCodes) {
  Rng rng(8);
  for (int trial = 0; trial < 12; ++trial) {
    const auto code = random_code(4 + trial % 3, 1, rng);
    for (const Region& r : {Region{0}, Region{0, 1}}) {
      VarianceOptions opt;
      opt.seed = static_cast<std::uint64_t>(trial);
      const auto b = coherent_variance_bounds(code, r, opt);
      EXPECT_GE(b.lower_slack, -1e-7);
      if (b.upper_slack) EXPECT_GE(*b.upper_slack, -1e-7);
    }
  }
}

TEST(Coherent, PinskerConnectsGapAndCorrelation) {
  Rng rng(9);
  const auto code = random_code(5, 1, rng);
  const auto rep = coherent_information(code, {0, 1});
  // I(A:R) >= (1/2 ln 2) ||rho_AR - rho_A (x) rho_R||_1^2 in bits.
  EXPECT_GE(rep.mutual_information + 1e-10, rep.pinsker_lhs / std::log(2.0));
}
