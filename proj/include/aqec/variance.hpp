#pragma once

#include "aqec/codes.hpp"
#include "aqec/geometry.hpp"

#include <string>
#include <vector>

namespace aqec {

class VarianceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VarianceMethod { Auto, Analytic, Optimize };

struct OptimizerBudget {
  int restarts = 32;
  int max_steps = 500;
  double tolerance = 1e-9;  // minimum improvement over `patience` steps
  int patience = 25;
};

struct VarianceOptions {
  VarianceMethod method = VarianceMethod::Auto;
  OptimizerBudget budget;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct OptimizerDiagnostics {
  int restarts = 0;
  int steps = 0;
  double second_best = 0.0;
  double gap = 0.0;           // best minus second-best restart value
  double stationarity = 0.0;  // ||A c - (c^dag A c) c|| at the returned point
  bool converged = true;
  bool heuristic = false;  // no global-optimality claim (k >= 3)
};

struct RegionVariance {
  Region region;
  double value = 0.0;
  CVec coords;  // maximizing code state in the code basis; empty when the basis is not stored
  std::string state_label;
  std::string method;  // "analytic", "optimized" or "exact"
  OptimizerDiagnostics diagnostics;
};

struct VarianceReport {
  std::string code_id;
  std::string graph;
  int d = 0;
  std::vector<RegionVariance> regions;
  std::size_t argmax = 0;
  double value = 0.0;
  std::string method;

  const RegionVariance& best() const { return regions.at(argmax); }
};

// Reduced cross blocks M_ij = tr_{R^c}|psi_i><psi_j| and Gamma_R on a common local basis.
struct RegionBlocks {
  Region region;
  std::vector<std::uint64_t> configs;  // local basis (region configurations)
  std::size_t dim = 0;
  std::vector<CMat> cross;  // index i * dim + j
  CMat gamma;

  const CMat& at(std::size_t i, std::size_t j) const { return cross[i * dim + j]; }
  CMat reduced(const CVec& coords) const;
  // Largest entry of M_ij - delta_ij Gamma_R.
  double deviation_from_exact() const;
};

RegionBlocks region_blocks(const CodeSpace& code, const Region& region);

// ||psi_R - Gamma_R||_1 for one state of the code.
double state_deviation(const CodeSpace& code, const SectorState& state, const Region& region);
double state_deviation(const CodeSpace& code, const PureState& state, const Region& region);

struct PureMaxResult {
  CVec coords;
  double value = 0.0;
  OptimizerDiagnostics diagnostics;
};

// Maximizes ||sum_ij c_i c_j^* M_ij - Gamma_R||_1 over unit c. Each step moves to the top
// eigenvector of A_ji = Tr(S M_ij), S the sign operator at the current point; by convexity
// the value never decreases.
PureMaxResult optimize_pure_max(const RegionBlocks& blocks, const OptimizerBudget& budget, Rng& rng,
                                const std::vector<CVec>& starts = {});

// max_m ||rho_d(m,n) - Gamma_d||_1 per magnetization, from binomial weights.
std::vector<double> heisenberg_variances(int n, const std::vector<int>& ms, int d);

bool has_analytic_variance(const CodeSpace& code, const Region& region);
RegionVariance region_variance(const CodeSpace& code, const Region& region, const VarianceOptions& options = {});

// Regions that realize the maximum over connected regions of size <= d: by monotonicity under
// partial trace only maximal ones are kept, and ring-translation-invariant codes on a ring
// need a single arc.
std::vector<Region> variance_regions(const CodeSpace& code, const AdjacencyGraph& graph, int d);
VarianceReport overall_variance(const CodeSpace& code, const AdjacencyGraph& graph, int d,
                                const VarianceOptions& options = {});

}  // namespace aqec
