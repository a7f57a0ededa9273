#pragma once

#include "aqec/codes.hpp"
#include "aqec/geometry.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace aqec {

struct TeeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fine 2L x 2L pixel grid of an L x L torus. Pixel (2x+1, 2y) holds edge h(x,y), pixel (2x, 2y+1)
// holds edge v(x,y); vertex and plaquette pixels hold no qubit. Pixel id = y * 2L + x.
struct PixelTorus {
  TorusEdges torus;

  explicit PixelTorus(int L) : torus(L) {}
  int side() const { return 2 * torus.L; }
  int id(int x, int y) const;
  // Qubit held by a pixel, or -1.
  int qubit(int pixel) const;
  Region qubits(const std::vector<int>& pixels) const;
  std::vector<int> rect(int x0, int y0, int w, int h) const;  // wraps, sorted
};

// Connected components under 4-adjacency.
int pixel_components(const PixelTorus& grid, const std::vector<int>& pixels);
// Number of closed boundary curves (P kept on the left, 4-connectivity for P).
int pixel_boundaries(const PixelTorus& grid, const std::vector<int>& pixels);
// True if some component wraps around the torus.
bool pixel_wraps(const PixelTorus& grid, const std::vector<int>& pixels);
// Topological disk: connected, no wrapping, one boundary curve.
bool pixel_contractible(const PixelTorus& grid, const std::vector<int>& pixels);

struct MarkovStep {
  std::vector<int> a, b, c;  // disjoint pixel sets
};

struct MarkovSchedule {
  int L = 0;
  int d = 0;
  int bridges = 0;  // holes opened and later capped; m = 3 + 2 * bridges
  std::vector<MarkovStep> steps;

  int m() const { return static_cast<int>(steps.size()); }
  // Qubit regions (A_i, B_i, C_i) per step.
  std::vector<std::array<Region, 3>> regions() const;
  // Throws TeeError naming the first violated condition.
  void validate() const;
};

// Smallest-m schedule whose regions A_1B_1 and B_iC_i hold at most d qubits.
MarkovSchedule build_schedule(int L, int d);
int paper_step_count(int n, int d);  // max{3, 2 floor(n / 2d) + 1}

struct MarkovReport {
  int m = 0;
  double k = 0.0;  // log2 of the code dimension
  double full_entropy = 0.0;
  double combination = 0.0;  // S(A1B1) + sum_i [S(BiCi) - S(Bi)]
  double slack = 0.0;        // combination - full_entropy
  double gamma_lower = 0.0;  // k / (m - 1)
  double s_a1b1 = 0.0;
  std::vector<double> s_bc, s_b;
  // Same signed combination of cut-star boundary lengths; the area-law terms leave a * boundary_sum.
  double boundary_sum = 0.0;

  // Gamma implied by S = a l - b gamma on every schedule region.
  double gamma_estimate(double slope) const { return (combination - slope * boundary_sum) / (m - 1); }
};

// Markov combination for the mixture sum_j w_j |v_j><v_j| on 2L^2 qubits.
MarkovReport markov_combination(const std::vector<CVec>& states, const std::vector<double>& weights,
                                const MarkovSchedule& schedule);
// Evaluated on the maximally mixed code state.
MarkovReport markov_bound(const CodeSpace& code, const MarkovSchedule& schedule);

double entanglement_entropy(const PureState& state, const Region& region);

// Vertices with incident edges both inside and outside the region.
int cut_stars(const TorusEdges& torus, const Region& region);
// Edges outside the region sharing a vertex with it.
int crossing_edges(const TorusEdges& torus, const Region& region);

struct AreaLawEntry {
  std::string label;
  Region region;
  double boundary = 0.0;
  double entropy = 0.0;
};

struct AreaLawFit {
  double slope = 0.0;
  double gamma = 0.0;  // minus the intercept
  std::vector<double> residuals;
  std::vector<double> region_gamma;  // slope * l - S per region
  double gamma_spread = 0.0;
};

AreaLawFit area_law_fit(const std::vector<AreaLawEntry>& entries);

// Small contractible clusters: edge, corner, star, plaquette, star plus plaquette.
std::vector<std::pair<std::string, Region>> toric_cluster_regions(const TorusEdges& torus);
std::vector<AreaLawEntry> area_law_entries(const PureState& state, const TorusEdges& torus,
                                           const std::vector<std::pair<std::string, Region>>& regions);

struct CorrectabilityCertificate {
  Region region;
  double eps = 0.0;
  int ell = 0;

  void validate() const;
};

// Nodes within graph distance ell of the region, region excluded.
Region neighborhood_shell(const AdjacencyGraph& g, const Region& region, int ell);
CorrectabilityCertificate expansion_compose(const CorrectabilityCertificate& a, const CorrectabilityCertificate& b,
                                            const AdjacencyGraph& g);
// Repeated expansion where every shell carries shell_eps. Returns the certificate after each step.
std::vector<CorrectabilityCertificate> expansion_chain(const CorrectabilityCertificate& seed, const AdjacencyGraph& g,
                                                       int expansions, double shell_eps);

struct StringnetRow {
  int s = 0;  // block side in vertices
  int d = 0;  // 2 s^2 qubits
  double exact = 0.0;  // || tr rho_0 - tr Gamma ||_1
  long long n_c = 0;   // minimal (1,1) loops touching the block
  double formula = 0.0;
  double sqrt_ratio = 0.0;  // exact / sqrt(d / n)
};

struct StringnetReport {
  int L = 0;
  int n = 0;
  long long N_C = 0;
  std::vector<StringnetRow> rows;
};

StringnetReport stringnet_variance_check(int L);

}  // namespace aqec
