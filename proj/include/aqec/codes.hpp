#pragma once

#include "aqec/geometry.hpp"
#include "aqec/numerics.hpp"
#include "aqec/random.hpp"

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace aqec {

class CodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Orthonormal basis of a code subspace, dense or sector-backed.
// A code may also be analytic-only (no stored basis) when it is too large to build.
struct CodeSpace {
  int n = 0;
  std::size_t dim = 0;
  std::string family;
  std::map<std::string, double> params;

  std::vector<PureState> dense;
  std::vector<SectorState> sector;

  // Gamma = sum_t gamma_weights[t] |t><t| over the configurations of gamma_layout, when set.
  std::shared_ptr<const SectorLayout> gamma_layout;
  std::vector<double> gamma_weights;

  // States of the code worth evaluating as variance candidates (e.g. product states).
  std::vector<CVec> dense_candidates;
  std::vector<SectorState> sector_candidates;
  std::vector<std::string> candidate_labels;

  // Code is mapped to itself (up to logical phases) by ring translations.
  bool ring_translation_invariant = false;

  double k() const { return std::log2(static_cast<double>(dim)); }
  bool is_dense() const { return !dense.empty(); }
  bool is_sector() const { return !sector.empty(); }
  bool has_basis() const { return is_dense() || is_sector(); }
  double param(const std::string& key) const;
  std::string id() const;
  std::vector<std::shared_ptr<const SectorLayout>> layouts() const;

  // Pairwise inner products equal delta_ij within tolerance.
  void validate(double tol = 1e-9) const;
};

CodeSpace make_dense_code(std::string family, std::vector<PureState> basis);
CodeSpace make_sector_code(std::string family, std::vector<SectorState> basis);

// Gamma for dense codes.
MixedState maximally_mixed(const CodeSpace& code);
// Gamma reduced to a region on an explicit local basis (works for both backings).
LocalOperator reduced_gamma(const CodeSpace& code, const Region& region);

PureState encode(const CodeSpace& code, const CVec& coords);
SectorState encode_sector(const CodeSpace& code, const CVec& coords);
// Same code with basis |psi'_j> = sum_i u_ij |psi_i>.
CodeSpace rotate_basis(const CodeSpace& code, const CMat& unitary);

// Logical block on the first k qubits, garbage |1> on the rest.
CodeSpace redundant_code(int k, int n);

// |h_m^n>: uniform superposition over configurations with (#up - #down) = m; up spins are |1>.
PureState dicke_state(int n, int m);
// Weights of |h_r^d><h_r^d| in the d-site marginal of |h_m^n>, r = -d, -d+2, ..., d.
std::vector<double> heisenberg_weights(int m, int n, int d);
MixedState heisenberg_reduced(int m, int n, int d);
std::vector<int> heisenberg_magnetizations(int n, int M, int spacing);
// Basis |h_m^n> for m = -M, -M+spacing, ..., M; dense when n <= 16, analytic-only otherwise.
CodeSpace heisenberg_code(int n, int M, int spacing);

// |W_{p,xi}> = n^{-1/2} sum_x e^{i p x} |x~_xi>, sites numbered x = 1..n in the phase,
// |x~_xi> = excitations on sites x..x+xi-1 (cyclic). Momentum p = 2 pi m / n.
CodeSpace momentum_code(int n, int xi, const std::vector<int>& momenta);
CodeSpace momentum_full_code(int n, int xi = 1);
CodeSpace momentum_pair_fragment(int n, int m, int xi = 1);
// Moves every excitation by `shift` sites; T = translate(., -1) has T|W_p> = e^{ip}|W_p>.
SectorState translate(const SectorState& state, int shift);

struct PauliString {
  std::string ops;  // characters I, X, Y, Z; position q acts on qubit q
};
CVec apply_pauli(const PauliString& p, const CVec& v);

struct StabilizerSpec {
  std::string name;
  int n = 0;
  int distance = 0;
  std::vector<PauliString> generators;
  std::vector<PauliString> logical_x;
  std::vector<PauliString> logical_z;
};

StabilizerSpec builtin_stabilizer(const std::string& name);  // "4_2_2", "5_1_3", "steane"
std::vector<std::string> builtin_stabilizer_names();
CodeSpace stabilizer_code(const StabilizerSpec& spec);
CodeSpace stabilizer_code(const std::string& name);

// Toric code on an L x L torus (qubits on edges), loop basis with vertex terms prod Z and
// plaquette terms prod X. Basis labelled by winding parities (a, b).
CodeSpace toric_code(int L);
std::vector<PauliString> toric_stabilizers(int L);

// Closed-loop configurations (edge bitmasks) of the L x L torus with their winding parities.
struct LoopClass {
  int wind_x = 0;  // horizontal winding parity
  int wind_y = 0;  // vertical winding parity
  int min_weight = 0;
  std::vector<std::uint64_t> minimal;  // all minimal-weight configurations in the class
};
std::vector<LoopClass> minimal_loop_classes(int L);
int loop_wind_x(int L, std::uint64_t config);
int loop_wind_y(int L, std::uint64_t config);

// Infinite-tension string-net code: no-loop state and uniform superpositions of minimal
// loops in the classes (1,0), (0,1), (1,1).
CodeSpace stringnet_tension_code(int L, double mu = std::numeric_limits<double>::infinity());

struct TfimSpectrum {
  std::vector<double> energies;
  std::vector<double> residuals;
  bool degenerate_block = false;
};
// Critical transverse-field Ising ring H = -sum Z_i Z_{i+1} - sum X_i.
CodeSpace tfim_low_energy_code(int n, int levels = 2, TfimSpectrum* spectrum = nullptr);
double tfim_ground_energy_free_fermion(int n);

// Haar-random isometry image (property tests only).
CodeSpace random_code(int n, int k, Rng& rng);

}  // namespace aqec
