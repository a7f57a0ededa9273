#include "aqec/codes.hpp"
#include "aqec/random.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <numeric>
#include <numbers>

using namespace aqec;

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

void expect_stabilized(const CodeSpace& code, const std::vector<PauliString>& stabilizers) {
  for (const auto& psi : code.dense)
    for (const auto& s : stabilizers) EXPECT_NEAR((apply_pauli(s, psi.amp) - psi.amp).norm(), 0.0, 1e-10) << s.ops;
}

}  // namespace

TEST(Codes, StabilizerCodesAreStabilized) {
  for (const auto& name : builtin_stabilizer_names()) {
    const auto spec = builtin_stabilizer(name);
    const auto code = stabilizer_code(spec);
    EXPECT_EQ(code.n, spec.n);
    EXPECT_EQ(code.dim, std::size_t{1} << spec.logical_x.size());
    code.validate();
    expect_stabilized(code, spec.generators);
  }
}

TEST(Codes, ToricGroundSpace) {
  const auto code = toric_code(3);
  EXPECT_EQ(code.dim, 4u);
  code.validate();
  expect_stabilized(code, toric_stabilizers(3));
}

TEST(Codes, HeisenbergWeightsAreHypergeometric) {
  for (int n : {6, 9, 12})
    for (int m = -n; m <= n; m += 2)
      for (int d = 1; d <= 4; ++d) {
        const auto w = heisenberg_weights(m, n, d);
        const int up = (n + m) / 2;
        ASSERT_EQ(w.size(), static_cast<std::size_t>(d + 1));
        for (int j = 0; j <= d; ++j) {
          // probability that j of the d window sites are up; index j is r = 2 j - d
          const double p = binom(up, j) * binom(n - up, d - j) / binom(n, d);
          EXPECT_NEAR(w[j], p, 1e-12) << n << " " << m << " " << d;
        }
      }
}

TEST(Codes, HeisenbergMarginalMatchesDense) {
  for (int n : {8, 12})
    for (int m : {-n + 2, 0, 2})
      for (int d : {1, 2, 3, 5}) {
        Region first(d);
        std::iota(first.begin(), first.end(), 0);
        const auto dense = partial_trace(dicke_state(n, m), first);
        EXPECT_NEAR((heisenberg_reduced(m, n, d).rho - dense.rho).norm(), 0.0, 1e-9);
      }
}

TEST(Codes, MomentumStatesAreTranslationEigenstates) {
  const int n = 12;
  const auto code = momentum_code(n, 2, {0, 1, 5});
  code.validate();
  const std::vector<int> ms{0, 1, 5};
  for (std::size_t i = 0; i < code.sector.size(); ++i) {
    const auto shifted = translate(code.sector[i], -1).expand();
    const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * ms[i] / n);
    EXPECT_NEAR((shifted.amp - phase * code.sector[i].expand().amp).norm(), 0.0, 1e-12);
  }
}

TEST(Codes, RedundantCodeLayout) {
  const auto code = redundant_code(1, 3);
  ASSERT_EQ(code.dim, 2u);
  EXPECT_NEAR(std::abs(code.dense[0].amp(0b011)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(code.dense[1].amp(0b111)), 1.0, 1e-12);
}

TEST(Codes, MinimalLoopsMatchExhaustiveSearch) {
  const int L = 3;
  const TorusEdges t(L);
  // Closed configurations: every vertex has even degree.
  std::map<std::pair<int, int>, std::pair<int, int>> best;  // class -> (weight, count)
  for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << t.n()); ++cfg) {
    bool closed = true;
    for (int x = 0; x < L && closed; ++x)
      for (int y = 0; y < L && closed; ++y) {
        int deg = 0;
        for (int e : t.star(x, y)) deg += static_cast<int>((cfg >> e) & 1);
        closed = deg % 2 == 0;
      }
    if (!closed) continue;
    int cross_x = 0, cross_y = 0;
    for (int y = 0; y < L; ++y) cross_x += static_cast<int>((cfg >> t.h(0, y)) & 1);
    for (int x = 0; x < L; ++x) cross_y += static_cast<int>((cfg >> t.v(x, 0)) & 1);
    const auto key = std::make_pair(cross_x % 2, cross_y % 2);
    const int w = std::popcount(cfg);
    auto it = best.find(key);
    if (it == best.end() || w < it->second.first) best[key] = {w, 1};
    else if (w == it->second.first) ++it->second.second;
  }
  const auto classes = minimal_loop_classes(L);
  ASSERT_EQ(classes.size(), 4u);
  for (const auto& c : classes) {
    const auto& [w, count] = best.at({c.wind_x, c.wind_y});
    EXPECT_EQ(c.min_weight, w);
    EXPECT_EQ(static_cast<int>(c.minimal.size()), count);
  }
  EXPECT_EQ(best.at({1, 0}).first, 3);
  EXPECT_EQ(best.at({1, 1}).first, 6);
}

TEST(Codes, StringnetCodeIsOrthonormal) {
  for (int L : {2, 3}) {
    const auto code = stringnet_tension_code(L);
    EXPECT_EQ(code.dim, 4u);
    code.validate();
  }
}

TEST(Codes, TfimGroundEnergyMatchesDenseAndFreeFermions) {
  const int n = 8;
  const Eigen::Index N = 1 << n;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index s = 0; s < N; ++s) {
    for (int i = 0; i < n; ++i) {
      const int a = (s >> (n - 1 - i)) & 1, b = (s >> (n - 1 - (i + 1) % n)) & 1;
      H(s, s) -= a == b ? 1.0 : -1.0;
      H(s ^ (Eigen::Index{1} << (n - 1 - i)), s) -= 1.0;
    }
  }
  const double dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H).eigenvalues()(0);
  double fermions = 0.0;  // antiperiodic modes k = (2j+1) pi / n
  for (int j = 0; j < n; ++j) fermions -= 2.0 * std::abs(std::cos((2 * j + 1) * std::numbers::pi / (2.0 * n)));
  TfimSpectrum spec;
  const auto code = tfim_low_energy_code(n, 2, &spec);
  EXPECT_NEAR(spec.energies[0], dense, 1e-8);
  EXPECT_NEAR(fermions, dense, 1e-10);
  EXPECT_NEAR(tfim_ground_energy_free_fermion(n), dense, 1e-10);
  code.validate();
}

TEST(Codes, RandomCodeIsOrthonormal) {
  Rng rng(8);
  const auto code = random_code(5, 2, rng);
  EXPECT_EQ(code.dim, 4u);
  code.validate();
}

TEST(Codes, GammaIsBasisIndependent) {
  Rng rng(12);
  const auto code = random_code(4, 1, rng);
  const auto rotated = rotate_basis(code, haar_unitary(2, rng));
  EXPECT_NEAR((maximally_mixed(code).rho - maximally_mixed(rotated).rho).norm(), 0.0, 1e-12);
}

TEST(Codes, RejectsBadParameters) {
  EXPECT_THROW(heisenberg_code(12, 2, 3), CodeError);
  EXPECT_THROW(stabilizer_code("nope"), CodeError);
}
