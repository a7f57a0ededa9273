#pragma once

#include "aqec/codes.hpp"
#include "aqec/variance.hpp"

#include <string>
#include <vector>

namespace aqec {

class ChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NoiseKind { Replacement, Erasure, CompleteDepolarizing, RandomizedLocationErasure, PartialDepolarizing };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::Erasure;
  Region region;       // acted-on qubits (unused for randomized-location erasure)
  CMat output;         // replacement output state on the region
  int count = 1;       // erased qubits per location (randomized-location erasure)
  double p = 0.0;      // partial depolarizing strength (single qubit)

  static NoiseSpec replacement(Region region, CMat output);
  static NoiseSpec erasure(Region region);
  static NoiseSpec complete_depolarizing(Region region);
  // Erases `count` qubits at a uniformly random location; the environment keeps the location.
  static NoiseSpec randomized_location_erasure(int count);
  static NoiseSpec partial_depolarizing(int qubit, double p);

  bool is_replacement() const;
  std::string describe() const;
};

// Kraus operator acting on `region` (2^|region| inputs); operators in different blocks
// leave orthogonal records in the environment.
struct LocalKraus {
  Region region;
  CMat op;
  int block = 0;
};

std::vector<LocalKraus> kraus_operators(const NoiseSpec& noise, int n);

// Linear map on dim x dim matrices stored through the images of |i><j|.
struct LinearChannel {
  std::size_t in_dim = 0;
  Eigen::Index out_dim = 0;
  std::vector<CMat> images;  // index i * in_dim + j
  // Output is block diagonal with these block sizes (empty: one block).
  std::vector<Eigen::Index> blocks;

  CMat apply(const CMat& rho) const;
  CMat choi() const;  // sum_ij |i><j| (x) N(|i><j|)
  // Trace preserving and Choi positive within tol.
  void validate(double tol = 1e-8) const;
  // (N (x) id)(|Psi><Psi|) for Psi given as an in_dim x ref_dim matrix.
  CMat apply_extended(const CMat& psi) const;
};

// Complementary map C(rho)_{ab} = Tr(sigma K_b^dag K_a) of noise after encoding, lambda = C(Gamma) and
// the residue B(rho) = C(rho) - Tr(rho) lambda.
struct KLResidue {
  LinearChannel complementary;
  CMat lambda;

  std::size_t logical_dim() const { return complementary.in_dim; }
  LinearChannel lambda_channel() const;
  CMat apply(const CMat& rho) const;
  // Residue in the form accepted by the pure-state maximizer.
  RegionBlocks as_blocks() const;
};

KLResidue residue(const CodeSpace& code, const NoiseSpec& noise);
double residue_norm(const KLResidue& res, const OptimizerBudget& budget, std::uint64_t seed,
                    const std::vector<CVec>& starts = {});
double residue_norm(const CodeSpace& code, const NoiseSpec& noise, const OptimizerBudget& budget = {},
                    std::uint64_t seed = 0);

struct PurifiedDistanceOptions {
  int restarts = 64;
  int max_evaluations = 4000;
  double tolerance = 1e-12;
  std::uint64_t seed = 0;
  std::vector<CMat> starts;  // extra pure inputs (in_dim x in_dim)
};

struct PurifiedDistanceResult {
  double value = 0.0;     // sqrt(1 - F^2) at the best input found; one-sided estimate
  double fidelity = 1.0;  // smallest output fidelity found
  CMat input;
  int restarts = 0;
  bool improved_by_restarts = false;
};

double output_fidelity(const LinearChannel& a, const LinearChannel& b, const CMat& psi);
PurifiedDistanceResult channel_purified_distance(const LinearChannel& a, const LinearChannel& b,
                                                 const PurifiedDistanceOptions& options = {});

struct InaccuracyBracket {
  double v = 0.0;
  double lower = 0.0;  // V / 2
  double upper = 0.0;  // V
  PurifiedDistanceResult detail;
};

// V = P(Lambda, Lambda + B); the inaccuracy lies in [V/2, V].
InaccuracyBracket inaccuracy_two_approx(const CodeSpace& code, const NoiseSpec& noise,
                                        const PurifiedDistanceOptions& options = {});

// sqrt(1 - C(n-k, d) / C(n, d)).
double redundant_inaccuracy_formula(int n, int k, int d);

}  // namespace aqec
