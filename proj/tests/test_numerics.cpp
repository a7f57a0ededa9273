#include "aqec/numerics.hpp"
#include "aqec/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace aqec;

namespace {

// Reference partial trace by explicit index loops.
CMat loop_partial_trace(const CVec& psi, int n, const Region& keep) {
  const int r = static_cast<int>(keep.size());
  CMat out = CMat::Zero(1 << r, 1 << r);
  auto local = [&](std::uint64_t idx) {
    std::uint64_t c = 0;
    for (int q : keep) c = (c << 1) | ((idx >> (n - 1 - q)) & 1);
    return c;
  };
  auto rest = [&](std::uint64_t idx) {
    std::uint64_t c = 0;
    for (int q = 0; q < n; ++q)
      if (std::find(keep.begin(), keep.end(), q) == keep.end()) c = (c << 1) | ((idx >> (n - 1 - q)) & 1);
    return c;
  };
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < dim; ++a)
    for (std::uint64_t b = 0; b < dim; ++b)
      if (rest(a) == rest(b)) out(local(a), local(b)) += psi(a) * std::conj(psi(b));
  return out;
}

}  // namespace

TEST(Numerics, GhzMarginals) {
  CVec ghz = CVec::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  const PureState psi(3, ghz);
  const auto one = partial_trace(psi, {1});
  EXPECT_NEAR((one.rho - CMat::Identity(2, 2) / 2.0).norm(), 0.0, 1e-12);
  const auto two = partial_trace(psi, {0, 2});
  CMat expect = CMat::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 0.5;
  EXPECT_NEAR((two.rho - expect).norm(), 0.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(two), 1.0, 1e-12);
}

TEST(Numerics, QubitZeroIsMostSignificant) {
  const auto psi = PureState::basis(3, 0b100);
  EXPECT_NEAR(std::abs(partial_trace(psi, {0}).rho(1, 1)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(partial_trace(psi, {2}).rho(0, 0)), 1.0, 1e-12);
  EXPECT_EQ(qubit_mask(3, 0), 4u);
}

TEST(Numerics, PartialTraceMatchesLoops) {
  Rng rng(11);
  const int n = 5;
  const CVec psi = random_unit_vector(1 << n, rng);
  for (const Region& keep : {Region{0}, Region{1, 3}, Region{0, 2, 4}, Region{4}}) {
    const auto fast = partial_trace(PureState(n, psi), keep);
    EXPECT_NEAR((fast.rho - loop_partial_trace(psi, n, keep)).norm(), 0.0, 1e-12);
  }
}

TEST(Numerics, MixedPartialTraceComposes) {
  Rng rng(3);
  const CMat rho = random_density_matrix(16, 3, rng);
  const MixedState m(4, rho);
  const auto ab = partial_trace(m, {1, 2});
  const auto a = partial_trace(ab, {0});
  const auto direct = partial_trace(m, {1});
  EXPECT_NEAR((a.rho - direct.rho).norm(), 0.0, 1e-12);
}

TEST(Numerics, TraceDistanceOfPureStates) {
  CVec zero = CVec::Zero(2), plus = CVec::Ones(2) / std::sqrt(2.0);
  zero(0) = 1.0;
  const CMat a = zero * zero.adjoint(), b = plus * plus.adjoint();
  // 2 sqrt(1 - |<a|b>|^2)
  EXPECT_NEAR(trace_norm_distance(a, b), std::sqrt(2.0), 1e-12);
}

TEST(Numerics, FidelityOfCommutingStates) {
  for (double p : {0.1, 0.5, 0.9})
    for (double q : {0.0, 0.3, 1.0}) {
      CMat a = CMat::Zero(2, 2), b = CMat::Zero(2, 2);
      a(0, 0) = p, a(1, 1) = 1 - p;
      b(0, 0) = q, b(1, 1) = 1 - q;
      const double f = std::sqrt(p * q) + std::sqrt((1 - p) * (1 - q));
      EXPECT_NEAR(fidelity(a, b), f, 1e-7);
      EXPECT_NEAR(purified_distance(a, b), std::sqrt(std::max(0.0, 1 - f * f)), 1e-6);
    }
}

TEST(Numerics, PsdSqrtSquares) {
  Rng rng(5);
  const CMat rho = random_density_matrix(6, 6, rng);
  const CMat s = psd_sqrt(rho);
  EXPECT_NEAR((s * s - rho).norm(), 0.0, 1e-10);
}

TEST(Numerics, SectorTracerMatchesDense) {
  const int n = 6;
  std::vector<Excitation> terms;
  for (int x = 0; x < n; ++x) terms.push_back({x});
  terms.push_back({});
  auto layout = std::make_shared<const SectorLayout>(n, terms);
  Rng rng(9);
  const SectorState s(layout, random_unit_vector(n + 1, rng));
  const Region region{1, 2, 4};
  const SectorTracer tracer(region, {layout});
  const auto local = tracer.reduced(s);
  const auto dense = partial_trace(s.expand(), region);
  EXPECT_NEAR((local.dense() - dense.rho).norm(), 0.0, 1e-12);
}

TEST(Numerics, MixtureSpectrumMatchesExplicitSum) {
  Rng rng(2);
  const int n = 5;
  std::vector<CVec> states{random_unit_vector(32, rng), random_unit_vector(32, rng)};
  const std::vector<double> w{0.3, 0.7};
  for (const Region& keep : {Region{0}, Region{0, 1, 2, 3}}) {
    CMat sum = CMat::Zero(1 << keep.size(), 1 << keep.size());
    for (int i = 0; i < 2; ++i) sum += w[i] * partial_trace(PureState(n, states[i]), keep).rho;
    const double s_explicit = von_neumann_entropy(sum);
    EXPECT_NEAR(entropy_of_spectrum(mixture_reduced_spectrum(states, w, n, keep)), s_explicit, 1e-10);
  }
}

TEST(Numerics, EntropyOfMaximallyMixed) {
  EXPECT_NEAR(von_neumann_entropy(MixedState::maximally_mixed(3)), 3.0, 1e-12);
}

TEST(Numerics, RejectsBadRegions) {
  EXPECT_THROW(validate_region({0, 0}, 3), NumericsError);
  EXPECT_THROW(validate_region({3}, 3), NumericsError);
  EXPECT_THROW(PureState(2, CVec::Ones(4)), NumericsError);
}

TEST(Random, DerivedSeedsAreStableAndDistinct) {
  EXPECT_EQ(derive_seed(1, "a", 2, 3), derive_seed(1, "a", 2, 3));
  EXPECT_NE(derive_seed(1, "a", 2, 3), derive_seed(1, "a", 2, 4));
  EXPECT_NE(derive_seed(1, "a", 2, 3), derive_seed(1, "b", 2, 3));
  Rng rng(4);
  const CMat u = haar_unitary(4, rng);
  EXPECT_NEAR((u.adjoint() * u - CMat::Identity(4, 4)).norm(), 0.0, 1e-12);
}
