#pragma once

#include "aqec/codes.hpp"
#include "aqec/geometry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aqec {

// Raised when a threshold formula is evaluated outside its hypotheses (H2 argument >= 1/2).
class InapplicableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ComplexityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// -p log p - (1-p) log(1-p) for 0 <= p < 1/2.
double binary_entropy(double p);
// S(rho) <= bound for a state at trace distance t (half trace norm) from a pure state of
// dimension dim; saturates at log dim, nondecreasing in t.
double fannes_audenaert(double t, double dim);

struct ThresholdInput {
  int n = 0;
  double k = 0.0;  // log2 of the code (or reference) dimension
  int d = 0;
  int D = 0;  // lattice dimension (lattice verdicts)
  double delta = 0.0;
  double eps = 0.0;  // subsystem variance, or inaccuracy when eps_is_inaccuracy
  bool eps_is_inaccuracy = false;
  int d_tilde = 0;  // refined lattice form when > 0

  void validate() const;
  // eps/2 + delta/2, or 2 eps~ + delta/2 for the inaccuracy form.
  double h2_argument() const;
};

enum class VerdictStatus { Nontrivial, Inapplicable };

struct Verdict {
  VerdictStatus status = VerdictStatus::Inapplicable;
  std::optional<double> bound;  // complexity lower bound, present iff nontrivial
  double h2_argument = 0.0;
  double lhs = 0.0;  // compared quantity
  double rhs = 0.0;  // threshold
  std::string condition;
  std::string reason;

  bool nontrivial() const { return status == VerdictStatus::Nontrivial; }
};

std::string to_string(VerdictStatus s);

// Complexity > log2 d when H2(x) < k/n.
Verdict verdict_all_to_all(const ThresholdInput& in);
// Simplified form: > (d^{1/D} - 1)/2 when H2(x) < k/n. Refined form (d_tilde > 0):
// > d^{1/D}(1 - (d_tilde/d)^{1/D})/2 when k > C [H2(x) + x log2(2^d_tilde - 1)], C the covering number.
Verdict verdict_lattice(const ThresholdInput& in, const AdjacencyGraph* graph = nullptr);
// > f^{-1}(d) when H2(x) < k/n, f the single-site light-cone growth of the graph.
Verdict verdict_graph(const ThresholdInput& in, const AdjacencyGraph& graph);

struct RegimeSample {
  int n = 0;
  double k = 0.0;
  double eps = 0.0;
};

struct RegimeReport {
  std::string tag;  // "nontrivial (k=O(1), eps=o(1/n))", "nontrivial (k=Omega(n))", "boundary", "outside"
  double eps_slope = 0.0;
  double eps_intercept = 0.0;
  double k_slope = 0.0;
  std::vector<double> residuals;
  std::vector<bool> pointwise;  // H2(eps/2) < k/n per sample
  std::string rule;
};

// Least-squares fit of log eps and log k against log n; rules are listed in `rule`.
RegimeReport regime_classify(const std::vector<RegimeSample>& samples);

enum class PhaseCell { Nontrivial, BoundaryBand, Unboundable };
std::string to_string(PhaseCell c);
// Status of a point of the (error, k/n) plane; the inaccuracy form has an intermediate band
// between H2(2 eps~) < k/n and k <= n H2(2^{-k-1} eps~^2).
PhaseCell phase_cell(double error, bool is_inaccuracy, double k, int n);

struct ChainUnit {
  Region unit;
  Region light_cone;
  double entropy = 0.0;           // S(tr_{unit^c} U^dag Gamma U)
  double distance_to_zero = 0.0;  // half trace distance of that marginal to |0..0>
  double light_cone_distance = 0.0;  // half ||psi_L - Gamma_L||_1
  double fannes_bound = 0.0;      // fannes_audenaert(distance_to_zero)
};

struct ChainReport {
  double gamma_entropy = 0.0;
  double sum_unit_entropy = 0.0;
  double sum_fannes = 0.0;
  double sum_fannes_light_cone = 0.0;
  std::vector<ChainUnit> units;
  double max_light_cone_distance = 0.0;
  std::optional<double> final_bound;  // n H2(max) or C [H2(max) + max log2(2^{|C|max} - 1)]
  std::vector<std::pair<std::string, double>> slacks;  // every link, rhs - lhs
  bool final_link_skipped = false;     // max >= 1/2
  int max_light_cone = 0;
  double min_slack() const;
};

// Replays the entropy chain for psi = U|0...0> against the code's Gamma, per qubit or per block.
ChainReport proof_replay(const CodeSpace& code, const LayeredCircuit& circuit,
                         const std::vector<Region>& blocks = {});

// 2^k-dimensional code with psi as its first basis state; the rest of the basis is Haar random.
CodeSpace code_containing(const PureState& psi, int k, Rng& rng);

struct DepthOneWitness {
  double max_marginal_deviation = 0.0;  // max over <= 2-qubit regions of ||Gamma_R - I/2^|R|||_1
  double variance_two = 0.0;            // overall variance at d = 2 on the complete graph
  bool passes = false;
};
// A depth-1 circuit leaves every qubit in a pure marginal of at most two qubits; a code whose
// code-state marginals on all pairs are maximally mixed contains no depth-1 output.
DepthOneWitness depth_one_witness(const CodeSpace& code);

}  // namespace aqec
