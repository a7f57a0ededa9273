#include "aqec/channels.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace aqec;

namespace {

CMat encoded(const CodeSpace& code, const CMat& logical) {
  const auto N = code.dense.front().amp.size();
  CMat out = CMat::Zero(N, N);
  for (std::size_t i = 0; i < code.dim; ++i)
    for (std::size_t j = 0; j < code.dim; ++j)
      out += logical(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * code.dense[i].amp *
             code.dense[j].amp.adjoint();
  return out;
}

LinearChannel qubit_channel(const std::function<CMat(const CMat&)>& f) {
  LinearChannel ch;
  ch.in_dim = 2;
  ch.out_dim = 2;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CMat e = CMat::Zero(2, 2);
      e(i, j) = 1.0;
      ch.images.push_back(f(e));
    }
  return ch;
}

}  // namespace

TEST(Channels, KrausOperatorsAreComplete) {
  Rng rng(1);
  const int n = 3;
  for (const auto& noise : {NoiseSpec::erasure({0, 2}), NoiseSpec::complete_depolarizing({1}),
                            NoiseSpec::replacement({1}, random_density_matrix(2, 2, rng)),
                            NoiseSpec::partial_depolarizing(0, 0.3)}) {
    const auto ks = kraus_operators(noise, n);
    const auto dim = ks.front().op.cols();
    CMat sum = CMat::Zero(dim, dim);
    for (const auto& k : ks) sum += k.op.adjoint() * k.op;
    EXPECT_NEAR((sum - CMat::Identity(dim, dim)).norm(), 0.0, 1e-12) << noise.describe();
  }
}

TEST(Channels, ComplementaryChannelIsValid) {
  Rng rng(2);
  const auto code = random_code(4, 1, rng);
  const auto res = residue(code, NoiseSpec::erasure({0, 1}));
  res.complementary.validate();
  res.lambda_channel().validate();
  // B vanishes on the maximally mixed logical state.
  EXPECT_NEAR(res.apply(CMat::Identity(2, 2) / 2.0).norm(), 0.0, 1e-12);
}

TEST(Channels, ReplacementResidueEqualsMarginalDeviation) {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 3;
    const auto code = random_code(n, 1 + trial % 2, rng);
    const Region region = trial % 2 ? Region{0} : Region{1, n - 1};
    const auto noise = trial % 4 < 2 ? NoiseSpec::erasure(region) : NoiseSpec::complete_depolarizing(region);
    const auto logical = random_density_matrix(static_cast<Eigen::Index>(code.dim), 1 + trial % 2, rng);
    const double lhs = trace_norm(hermitian_part(residue(code, noise).apply(logical)));
    const auto sigma = partial_trace(MixedState(n, encoded(code, logical)), region);
    const auto gamma = partial_trace(maximally_mixed(code), region);
    EXPECT_NEAR(lhs, trace_norm_distance(sigma.rho, gamma.rho), 1e-8);
  }
}

TEST(Channels, StabilizerResidueVanishesForCorrectableErasure) {
  const auto code = stabilizer_code("5_1_3");
  EXPECT_LE(residue_norm(code, NoiseSpec::erasure({0, 3})), 1e-10);
  EXPECT_GT(residue_norm(code, NoiseSpec::erasure({0, 1, 2})), 0.5);
}

TEST(Channels, PurifiedDistanceOfDephasing) {
  // Worst input is maximally entangled: F^2 = 1 - p.
  const auto id = qubit_channel([](const CMat& x) { return x; });
  for (double p : {0.05, 0.2, 0.5}) {
    const auto deph = qubit_channel([p](const CMat& x) {
      CMat z = CMat::Identity(2, 2);
      z(1, 1) = -1.0;
      return ((1 - p) * x + p * z * x * z).eval();
    });
    PurifiedDistanceOptions opt;
    opt.restarts = 16;
    const auto r = channel_purified_distance(id, deph, opt);
    EXPECT_NEAR(r.value, std::sqrt(p), 1e-6);
  }
}

TEST(Channels, PurifiedDistanceGridOnTwoDimensionalInputs) {
  // Grid over pure inputs cos(t)|00> + e^{i f} sin(t)|11> never exceeds the optimizer.
  const auto id = qubit_channel([](const CMat& x) { return x; });
  const auto amp = qubit_channel([](const CMat& x) {
    const double g = 0.3;
    CMat k0 = CMat::Zero(2, 2), k1 = CMat::Zero(2, 2);
    k0(0, 0) = 1.0, k0(1, 1) = std::sqrt(1 - g);
    k1(0, 1) = std::sqrt(g);
    return (k0 * x * k0.adjoint() + k1 * x * k1.adjoint()).eval();
  });
  const auto r = channel_purified_distance(id, amp);
  double grid = 0.0;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 40; ++j) {
      const double t = 0.5 * M_PI * i / 200, f = 2 * M_PI * j / 40;
      CMat psi = CMat::Zero(2, 2);
      psi(0, 0) = std::cos(t);
      psi(1, 1) = std::polar(std::sin(t), f);
      const double F = output_fidelity(id, amp, psi);
      grid = std::max(grid, std::sqrt(std::max(0.0, 1 - F * F)));
    }
  EXPECT_GE(r.value, grid - 1e-9);
  EXPECT_LE(r.value - grid, 1e-3);
}

TEST(Channels, RedundantBracketFollowsClosedForm) {
  for (int n : {3, 4, 5}) {
    const auto br = inaccuracy_two_approx(redundant_code(1, n), NoiseSpec::randomized_location_erasure(1));
    EXPECT_NEAR(br.v, std::sqrt(1.0 / n - 1.0 / (4.0 * n * n)), 1e-5);
    EXPECT_NEAR(br.lower, br.v / 2, 1e-15);
  }
  EXPECT_NEAR(redundant_inaccuracy_formula(4, 1, 1), std::sqrt(0.25), 1e-12);
}

TEST(Channels, SandwichOnRandomCode) {
  Rng rng(4);
  const auto code = random_code(4, 1, rng);
  const Region region{0};
  const double eps = region_variance(code, region).value;
  const auto br = inaccuracy_two_approx(code, NoiseSpec::complete_depolarizing(region));
  EXPECT_LE(eps / 4, br.v + 1e-3);
  EXPECT_LE(br.v / 2, std::sqrt(2.0) * std::sqrt(eps) + 1e-3);
}

TEST(Channels, RejectsBadNoise) {
  EXPECT_THROW(NoiseSpec::partial_depolarizing(0, 1.5), ChannelError);
  EXPECT_THROW(NoiseSpec::replacement({0}, CMat::Identity(4, 4)), ChannelError);
}
