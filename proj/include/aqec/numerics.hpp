#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace aqec {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

// Sorted list of qubit (node) indices.
using Region = std::vector<int>;

class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kStateTol = 1e-9;
inline constexpr double kNegativeClamp = 1e-8;
inline constexpr int kDenseQubitLimit = 20;

// Qubit 0 is the most significant bit of the amplitude index.
inline std::uint64_t qubit_mask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

struct PureState {
  int n = 0;
  CVec amp;

  PureState() = default;
  PureState(int n, CVec amplitudes);

  static PureState basis(int n, std::uint64_t index);
  static PureState normalized(int n, CVec amplitudes);
};

struct MixedState {
  int n = 0;
  CMat rho;

  MixedState() = default;
  MixedState(int n, CMat matrix);

  static MixedState from_pure(const PureState& psi);
  static MixedState maximally_mixed(int n);
};

// Excited sites of one basis configuration, sorted ascending.
using Excitation = std::vector<int>;

// Shared list of computational configurations used by sector states.
struct SectorLayout {
  int n = 0;
  std::vector<Excitation> terms;

  SectorLayout(int n, std::vector<Excitation> terms);
};

// Superposition over a small set of computational configurations of n qubits.
struct SectorState {
  std::shared_ptr<const SectorLayout> layout;
  CVec coeff;

  SectorState() = default;
  SectorState(std::shared_ptr<const SectorLayout> layout, CVec coefficients);

  int n() const { return layout->n; }
  PureState expand() const;
};

cplx inner(const SectorState& a, const SectorState& b);

// Operator on a region written over an explicit list of region configurations.
// Configuration bits follow the region order, first region site most significant.
struct LocalOperator {
  Region region;
  std::vector<std::uint64_t> configs;
  CMat mat;

  CMat dense() const;
};

// Reduced cross operators tr_{R^c} |a><b| for sector states on a fixed region.
// The local basis is the union of the region configurations of all registered layouts.
class SectorTracer {
 public:
  SectorTracer(Region region, const std::vector<std::shared_ptr<const SectorLayout>>& layouts);

  const Region& region() const { return region_; }
  const std::vector<std::uint64_t>& configs() const { return configs_; }
  int dim() const { return static_cast<int>(configs_.size()); }

  CMat cross(const SectorState& a, const SectorState& b) const;
  LocalOperator reduced(const SectorState& a) const;
  // sum_t w_t tr_{R^c}|t><t| for the configurations of a registered layout.
  CMat diagonal_mixture(const SectorLayout& layout, const std::vector<double>& weights) const;

 private:
  struct Pair {
    int ta, tb, ia, ib;
  };
  struct PairTable {
    const SectorLayout* a;
    const SectorLayout* b;
    std::vector<Pair> pairs;
  };
  const PairTable& table(const SectorLayout* a, const SectorLayout* b) const;

  Region region_;
  std::vector<std::uint64_t> configs_;
  std::vector<PairTable> tables_;
  std::vector<std::pair<const SectorLayout*, std::vector<int>>> in_index_;
};

// Pure-state and operator partial traces.
CMat reduce_cross(const CVec& a, const CVec& b, int n, const Region& keep);
// All tr_{keep^c}|a_i><a_j|, index i * states.size() + j.
std::vector<CMat> reduce_all_crosses(const std::vector<CVec>& states, int n, const Region& keep);
MixedState partial_trace(const PureState& state, const Region& keep);
MixedState partial_trace(const MixedState& state, const Region& keep);
CMat partial_trace_op(const CMat& op, int n, const Region& keep);

void validate_region(const Region& region, int n);
Region complement(const Region& region, int n);

CMat hermitian_part(const CMat& m);
RVec hermitian_eigenvalues(const CMat& m);
double trace_norm(const CMat& hermitian);
double trace_norm_distance(const CMat& a, const CMat& b);
double trace_norm_distance(const MixedState& a, const MixedState& b);

// Square root of a positive semidefinite operator through its spectral decomposition.
CMat psd_sqrt(const CMat& m);
double fidelity(const CMat& a, const CMat& b);
double fidelity(const MixedState& a, const MixedState& b);
double purified_distance(const CMat& a, const CMat& b);
double purified_distance(const MixedState& a, const MixedState& b);

double entropy_of_spectrum(const RVec& eigenvalues);
double von_neumann_entropy(const CMat& rho);
double von_neumann_entropy(const MixedState& rho);

// Nonzero spectrum of sum_i w_i tr_{keep^c}|v_i><v_i|, computed on whichever side is smaller.
RVec mixture_reduced_spectrum(const std::vector<CVec>& states, const std::vector<double>& weights,
                              int n, const Region& keep);

CMat kron(const CMat& a, const CMat& b);

}  // namespace aqec
