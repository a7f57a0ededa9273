#include "aqec/numerics.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace aqec {

namespace {

std::uint64_t dim_of(int n) {
  if (n < 0 || n > 30) throw NumericsError("qubit count out of range: " + std::to_string(n));
  return std::uint64_t{1} << n;
}

// Full index = keep_part[k] | rest_part[j] for kept configuration k and traced configuration j.
struct SplitIndex {
  std::vector<std::uint64_t> keep_part;
  std::vector<std::uint64_t> rest_part;
};

std::vector<std::uint64_t> scatter_masks(int n, const Region& qubits) {
  const int r = static_cast<int>(qubits.size());
  std::vector<std::uint64_t> out(std::size_t{1} << r, 0);
  for (std::uint64_t k = 0; k < out.size(); ++k)
    for (int b = 0; b < r; ++b)
      if (k >> (r - 1 - b) & 1) out[k] |= qubit_mask(n, qubits[static_cast<std::size_t>(b)]);
  return out;
}

SplitIndex split_index(int n, const Region& keep) {
  dim_of(n);
  validate_region(keep, n);
  return {scatter_masks(n, keep), scatter_masks(n, complement(keep, n))};
}

CMat gather(const CVec& v, const SplitIndex& s) {
  CMat out(static_cast<Eigen::Index>(s.keep_part.size()), static_cast<Eigen::Index>(s.rest_part.size()));
  for (std::size_t j = 0; j < s.rest_part.size(); ++j)
    for (std::size_t k = 0; k < s.keep_part.size(); ++k)
      out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = v[static_cast<Eigen::Index>(s.keep_part[k] | s.rest_part[j])];
  return out;
}

void check_hermitian(const CMat& m, const char* what) {
  if (m.rows() != m.cols()) throw NumericsError(std::string(what) + ": matrix not square");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kStateTol)
    throw NumericsError(std::string(what) + ": matrix not Hermitian");
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

PureState::PureState(int n_, CVec amplitudes) : n(n_), amp(std::move(amplitudes)) {
  if (static_cast<std::uint64_t>(amp.size()) != dim_of(n))
    throw NumericsError("amplitude vector length does not match 2^n");
  if (std::abs(amp.squaredNorm() - 1.0) > kStateTol) throw NumericsError("pure state not normalized");
}

PureState PureState::basis(int n, std::uint64_t index) {
  CVec v = CVec::Zero(dim_of(n));
  if (index >= static_cast<std::uint64_t>(v.size())) throw NumericsError("basis index out of range");
  v[index] = 1.0;
  return PureState(n, std::move(v));
}

PureState PureState::normalized(int n, CVec amplitudes) {
  const double norm = amplitudes.norm();
  if (norm < 1e-14) throw NumericsError("cannot normalize zero vector");
  return PureState(n, amplitudes / norm);
}

MixedState::MixedState(int n_, CMat matrix) : n(n_), rho(std::move(matrix)) {
  if (static_cast<std::uint64_t>(rho.rows()) != dim_of(n)) throw NumericsError("density matrix dimension mismatch");
  check_hermitian(rho, "mixed state");
  if (std::abs(rho.trace().real() - 1.0) > kStateTol) throw NumericsError("mixed state trace differs from 1");
  if (hermitian_eigenvalues(rho).minCoeff() < -kNegativeClamp) throw NumericsError("mixed state not positive semidefinite");
}

MixedState MixedState::from_pure(const PureState& psi) {
  MixedState out;
  out.n = psi.n;
  out.rho = psi.amp * psi.amp.adjoint();
  return out;
}

MixedState MixedState::maximally_mixed(int n) {
  const auto dim = static_cast<Eigen::Index>(dim_of(n));
  MixedState out;
  out.n = n;
  out.rho = CMat::Identity(dim, dim) / static_cast<double>(dim);
  return out;
}

SectorLayout::SectorLayout(int n_, std::vector<Excitation> t) : n(n_), terms(std::move(t)) {
  if (n <= 0) throw NumericsError("sector layout needs n > 0");
  std::set<Excitation> seen;
  for (const auto& e : terms) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] >= n) throw NumericsError("excited site out of range");
      if (i > 0 && e[i] <= e[i - 1]) throw NumericsError("excitation sites must be strictly increasing");
    }
    if (!seen.insert(e).second) throw NumericsError("duplicate sector configuration");
  }
}

SectorState::SectorState(std::shared_ptr<const SectorLayout> l, CVec c) : layout(std::move(l)), coeff(std::move(c)) {
  if (!layout) throw NumericsError("sector state without layout");
  if (static_cast<std::size_t>(coeff.size()) != layout->terms.size())
    throw NumericsError("coefficient count does not match layout");
  if (std::abs(coeff.squaredNorm() - 1.0) > kStateTol) throw NumericsError("sector state not normalized");
}

PureState SectorState::expand() const {
  const int nq = n();
  if (nq > kDenseQubitLimit) throw NumericsError("sector state too large to expand densely");
  CVec v = CVec::Zero(dim_of(nq));
  for (std::size_t t = 0; t < layout->terms.size(); ++t) {
    std::uint64_t idx = 0;
    for (int s : layout->terms[t]) idx |= qubit_mask(nq, s);
    v[idx] += coeff[static_cast<Eigen::Index>(t)];
  }
  return PureState(nq, std::move(v));
}

cplx inner(const SectorState& a, const SectorState& b) {
  if (a.layout == b.layout) return a.coeff.dot(b.coeff);
  if (a.n() != b.n()) throw NumericsError("sector states on different qubit counts");
  std::map<Excitation, int> index;
  for (std::size_t t = 0; t < b.layout->terms.size(); ++t) index.emplace(b.layout->terms[t], static_cast<int>(t));
  cplx s = 0.0;
  for (std::size_t t = 0; t < a.layout->terms.size(); ++t) {
    auto it = index.find(a.layout->terms[t]);
    if (it != index.end()) s += std::conj(a.coeff[static_cast<Eigen::Index>(t)]) * b.coeff[it->second];
  }
  return s;
}

CMat LocalOperator::dense() const {
  const int r = static_cast<int>(region.size());
  if (r > 14) throw NumericsError("local operator too large to densify");
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << r);
  CMat out = CMat::Zero(dim, dim);
  for (std::size_t i = 0; i < configs.size(); ++i)
    for (std::size_t j = 0; j < configs.size(); ++j)
      out(static_cast<Eigen::Index>(configs[i]), static_cast<Eigen::Index>(configs[j])) =
          mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

SectorTracer::SectorTracer(Region region, const std::vector<std::shared_ptr<const SectorLayout>>& layouts)
    : region_(std::move(region)) {
  if (layouts.empty()) throw NumericsError("sector tracer needs at least one layout");
  const int n = layouts.front()->n;
  validate_region(region_, n);
  if (region_.size() > 62) throw NumericsError("region too large for sector tracing");
  std::vector<int> pos(n, -1);
  const int r = static_cast<int>(region_.size());
  for (int j = 0; j < r; ++j) pos[region_[j]] = j;

  struct Split {
    std::vector<std::uint64_t> in;
    std::vector<std::vector<int>> out;
  };
  std::vector<const SectorLayout*> unique;
  for (const auto& l : layouts) {
    if (l->n != n) throw NumericsError("layouts on different qubit counts");
    if (std::find(unique.begin(), unique.end(), l.get()) == unique.end()) unique.push_back(l.get());
  }
  std::vector<Split> splits(unique.size());
  std::set<std::uint64_t> config_set;
  for (std::size_t u = 0; u < unique.size(); ++u) {
    const auto& terms = unique[u]->terms;
    splits[u].in.resize(terms.size());
    splits[u].out.resize(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) {
      std::uint64_t c = 0;
      for (int s : terms[t]) {
        if (pos[s] >= 0) c |= std::uint64_t{1} << (r - 1 - pos[s]);
        else splits[u].out[t].push_back(s);
      }
      splits[u].in[t] = c;
      config_set.insert(c);
    }
  }
  configs_.assign(config_set.begin(), config_set.end());
  std::unordered_map<std::uint64_t, int> config_index;
  for (std::size_t i = 0; i < configs_.size(); ++i) config_index.emplace(configs_[i], static_cast<int>(i));

  for (std::size_t u = 0; u < unique.size(); ++u) {
    std::vector<int> idx(splits[u].in.size());
    for (std::size_t t = 0; t < idx.size(); ++t) idx[t] = config_index.at(splits[u].in[t]);
    in_index_.emplace_back(unique[u], std::move(idx));
  }

  for (std::size_t ub = 0; ub < unique.size(); ++ub) {
    std::unordered_map<std::vector<int>, std::vector<int>, VecHash> by_out;
    for (std::size_t t = 0; t < splits[ub].out.size(); ++t) by_out[splits[ub].out[t]].push_back(static_cast<int>(t));
    for (std::size_t ua = 0; ua < unique.size(); ++ua) {
      PairTable table{unique[ua], unique[ub], {}};
      for (std::size_t ta = 0; ta < splits[ua].out.size(); ++ta) {
        auto it = by_out.find(splits[ua].out[ta]);
        if (it == by_out.end()) continue;
        const int ia = config_index.at(splits[ua].in[ta]);
        for (int tb : it->second)
          table.pairs.push_back({static_cast<int>(ta), tb, ia, config_index.at(splits[ub].in[tb])});
      }
      tables_.push_back(std::move(table));
    }
  }
}

const SectorTracer::PairTable& SectorTracer::table(const SectorLayout* a, const SectorLayout* b) const {
  for (const auto& t : tables_)
    if (t.a == a && t.b == b) return t;
  throw NumericsError("sector layout not registered with tracer");
}

CMat SectorTracer::cross(const SectorState& a, const SectorState& b) const {
  const auto& t = table(a.layout.get(), b.layout.get());
  CMat out = CMat::Zero(dim(), dim());
  for (const auto& p : t.pairs) out(p.ia, p.ib) += a.coeff[p.ta] * std::conj(b.coeff[p.tb]);
  return out;
}

CMat SectorTracer::diagonal_mixture(const SectorLayout& layout, const std::vector<double>& weights) const {
  for (const auto& [l, idx] : in_index_) {
    if (l != &layout) continue;
    if (weights.size() != idx.size()) throw NumericsError("weight count does not match layout");
    CMat out = CMat::Zero(dim(), dim());
    for (std::size_t t = 0; t < idx.size(); ++t) out(idx[t], idx[t]) += weights[t];
    return out;
  }
  throw NumericsError("sector layout not registered with tracer");
}

LocalOperator SectorTracer::reduced(const SectorState& a) const {
  return LocalOperator{region_, configs_, cross(a, a)};
}

void validate_region(const Region& region, int n) {
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (region[i] < 0 || region[i] >= n) throw NumericsError("region index out of range");
    if (i > 0 && region[i] <= region[i - 1]) throw NumericsError("region must be sorted without duplicates");
  }
}

Region complement(const Region& region, int n) {
  Region out;
  std::size_t j = 0;
  for (int q = 0; q < n; ++q) {
    if (j < region.size() && region[j] == q) ++j;
    else out.push_back(q);
  }
  return out;
}

CMat reduce_cross(const CVec& a, const CVec& b, int n, const Region& keep) {
  if (a.size() != b.size() || static_cast<std::uint64_t>(a.size()) != dim_of(n))
    throw NumericsError("vector dimension mismatch in partial trace");
  const auto split = split_index(n, keep);
  const CMat A = gather(a, split);
  if (&a == &b) return A * A.adjoint();
  const CMat B = gather(b, split);
  return A * B.adjoint();
}

std::vector<CMat> reduce_all_crosses(const std::vector<CVec>& states, int n, const Region& keep) {
  const auto split = split_index(n, keep);
  std::vector<CMat> g;
  for (const auto& v : states) {
    if (static_cast<std::uint64_t>(v.size()) != dim_of(n)) throw NumericsError("vector dimension mismatch in partial trace");
    g.push_back(gather(v, split));
  }
  const std::size_t m = states.size();
  std::vector<CMat> out(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      out[i * m + j] = g[i] * g[j].adjoint();
      if (j != i) out[j * m + i] = out[i * m + j].adjoint();
    }
  return out;
}

MixedState partial_trace(const PureState& state, const Region& keep) {
  MixedState out;
  out.n = static_cast<int>(keep.size());
  out.rho = reduce_cross(state.amp, state.amp, state.n, keep);
  return out;
}

CMat partial_trace_op(const CMat& op, int n, const Region& keep) {
  if (static_cast<std::uint64_t>(op.rows()) != dim_of(n) || op.rows() != op.cols())
    throw NumericsError("operator dimension mismatch in partial trace");
  const auto split = split_index(n, keep);
  const auto keep_dim = split.keep_part.size();
  CMat out = CMat::Zero(static_cast<Eigen::Index>(keep_dim), static_cast<Eigen::Index>(keep_dim));
  for (std::size_t k = 0; k < keep_dim; ++k)
    for (std::size_t kp = 0; kp < keep_dim; ++kp) {
      cplx s = 0.0;
      for (std::uint64_t j : split.rest_part)
        s += op(static_cast<Eigen::Index>(split.keep_part[k] | j), static_cast<Eigen::Index>(split.keep_part[kp] | j));
      out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(kp)) = s;
    }
  return out;
}

MixedState partial_trace(const MixedState& state, const Region& keep) {
  MixedState out;
  out.n = static_cast<int>(keep.size());
  out.rho = partial_trace_op(state.rho, state.n, keep);
  return out;
}

CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

RVec hermitian_eigenvalues(const CMat& m) {
  if (m.rows() != m.cols()) throw NumericsError("eigenvalues of non-square matrix");
  if (m.rows() == 0) return RVec();
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericsError("Hermitian eigensolver failed");
  return es.eigenvalues();
}

double trace_norm(const CMat& hermitian) { return hermitian_eigenvalues(hermitian).cwiseAbs().sum(); }

double trace_norm_distance(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw NumericsError("dimension mismatch in trace distance");
  return trace_norm(a - b);
}

double trace_norm_distance(const MixedState& a, const MixedState& b) { return trace_norm_distance(a.rho, b.rho); }

CMat psd_sqrt(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m));
  if (es.info() != Eigen::Success) throw NumericsError("Hermitian eigensolver failed");
  RVec w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < -kNegativeClamp) throw NumericsError("operator not positive semidefinite");
    w[i] = w[i] > 0 ? std::sqrt(w[i]) : 0.0;
  }
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows()) throw NumericsError("dimension mismatch in fidelity");
  const CMat sa = psd_sqrt(a);
  // ||sqrt(a) sqrt(b)||_1 = tr sqrt(sqrt(a) b sqrt(a))
  const RVec w = hermitian_eigenvalues(sa * b * sa);
  double f = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < -kNegativeClamp) throw NumericsError("operator not positive semidefinite");
    if (w[i] > 0) f += std::sqrt(w[i]);
  }
  return f;
}

double fidelity(const MixedState& a, const MixedState& b) { return std::min(1.0, fidelity(a.rho, b.rho)); }

double purified_distance(const CMat& a, const CMat& b) {
  const double f = std::min(1.0, fidelity(a, b));
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

double purified_distance(const MixedState& a, const MixedState& b) { return purified_distance(a.rho, b.rho); }

double entropy_of_spectrum(const RVec& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues[i];
    if (l < -kNegativeClamp) throw NumericsError("negative eigenvalue in entropy");
    if (l > 1e-15) s -= l * std::log2(l);
  }
  return std::max(0.0, s);
}

double von_neumann_entropy(const CMat& rho) { return entropy_of_spectrum(hermitian_eigenvalues(rho)); }

double von_neumann_entropy(const MixedState& rho) { return von_neumann_entropy(rho.rho); }

RVec mixture_reduced_spectrum(const std::vector<CVec>& states, const std::vector<double>& weights, int n,
                              const Region& keep) {
  if (states.size() != weights.size() || states.empty()) throw NumericsError("mixture weights mismatch");
  const auto split = split_index(n, keep);
  const auto keep_dim = static_cast<Eigen::Index>(split.keep_part.size());
  const auto rest_dim = static_cast<Eigen::Index>(split.rest_part.size());
  const auto m = static_cast<Eigen::Index>(states.size());
  CMat W(keep_dim, m * rest_dim);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (weights[static_cast<std::size_t>(i)] < 0) throw NumericsError("negative mixture weight");
    W.middleCols(i * rest_dim, rest_dim) = std::sqrt(weights[static_cast<std::size_t>(i)]) * gather(states[static_cast<std::size_t>(i)], split);
  }
  if (W.rows() <= W.cols()) return hermitian_eigenvalues(W * W.adjoint());
  return hermitian_eigenvalues(W.adjoint() * W);
}

CMat kron(const CMat& a, const CMat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

}  // namespace aqec
