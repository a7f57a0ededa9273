#include "aqec/complexity.hpp"

#include "aqec/variance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aqec {

namespace {

double h2_unchecked(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a(i, 0) = x[static_cast<std::size_t>(i)];
    a(i, 1) = 1.0;
    b[i] = y[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
  LineFit f{c[0], c[1], {}};
  for (Eigen::Index i = 0; i < m; ++i) f.residuals.push_back(b[i] - a.row(i).dot(c));
  return f;
}

Verdict inapplicable(double x, std::string reason) {
  Verdict v;
  v.status = VerdictStatus::Inapplicable;
  v.h2_argument = x;
  v.reason = std::move(reason);
  return v;
}

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0)) throw InapplicableError("binary entropy argument negative");
  if (p >= 0.5) throw InapplicableError("binary entropy argument >= 1/2");
  return h2_unchecked(p);
}

double fannes_audenaert(double t, double dim) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0 - 1.0 / dim) return std::log2(dim);
  return h2_unchecked(t) + t * std::log2(dim - 1.0);
}

void ThresholdInput::validate() const {
  if (n <= 0 || d <= 0 || d > n) throw ComplexityError("threshold input needs 0 < d <= n");
  if (k < 0 || eps < 0 || delta < 0) throw ComplexityError("threshold input needs k, eps, delta >= 0");
  if (d_tilde < 0) throw ComplexityError("d_tilde must be nonnegative");
}

double ThresholdInput::h2_argument() const {
  return eps_is_inaccuracy ? 2.0 * eps + delta / 2.0 : eps / 2.0 + delta / 2.0;
}

std::string to_string(VerdictStatus s) { return s == VerdictStatus::Nontrivial ? "nontrivial" : "inapplicable"; }

namespace {

// Shared H2(x) < k/n test; fills the trace and returns whether it holds.
bool rate_condition(const ThresholdInput& in, Verdict& v) {
  const double x = in.h2_argument();
  v.h2_argument = x;
  const double err = in.eps_is_inaccuracy ? 4.0 * in.eps : in.eps;
  if (err + in.delta >= 1.0) {
    v.reason = "eps + delta >= 1";
    return false;
  }
  if (x >= 0.5) {
    v.reason = "H2 argument >= 1/2";
    return false;
  }
  v.lhs = binary_entropy(x);
  v.rhs = in.k / in.n;
  v.condition = "H2(x) < k/n";
  if (!(v.lhs < v.rhs)) {
    v.reason = "H2(x) >= k/n";
    return false;
  }
  return true;
}

}  // namespace

Verdict verdict_all_to_all(const ThresholdInput& in) {
  in.validate();
  Verdict v;
  if (rate_condition(in, v)) {
    v.status = VerdictStatus::Nontrivial;
    v.bound = std::log2(static_cast<double>(in.d));
  }
  return v;
}

Verdict verdict_lattice(const ThresholdInput& in, const AdjacencyGraph* graph) {
  in.validate();
  if (in.D <= 0) throw ComplexityError("lattice verdict needs D >= 1");
  const double root = std::pow(static_cast<double>(in.d), 1.0 / in.D);
  if (in.d_tilde == 0) {
    Verdict v;
    if (rate_condition(in, v)) {
      v.status = VerdictStatus::Nontrivial;
      v.bound = (root - 1.0) / 2.0;
    }
    return v;
  }
  if (in.d_tilde >= in.d) throw ComplexityError("refined form needs d_tilde < d");
  if (!graph) throw ComplexityError("refined form needs the lattice for the covering number");
  const double x = in.h2_argument();
  const double err = in.eps_is_inaccuracy ? 4.0 * in.eps : in.eps;
  if (err + in.delta >= 1.0) return inapplicable(x, "eps + delta >= 1");
  if (x >= 0.5) return inapplicable(x, "H2 argument >= 1/2");
  const double c = covering_number(*graph, in.d_tilde);
  Verdict v;
  v.h2_argument = x;
  v.lhs = c * (binary_entropy(x) + x * std::log2(std::pow(2.0, in.d_tilde) - 1.0));
  v.rhs = in.k;
  v.condition = "C [H2(x) + x log2(2^d_tilde - 1)] < k";
  if (v.lhs < v.rhs) {
    v.status = VerdictStatus::Nontrivial;
    v.bound = 0.5 * root * (1.0 - std::pow(static_cast<double>(in.d_tilde) / in.d, 1.0 / in.D));
  } else {
    v.reason = "covering sum >= k";
  }
  return v;
}

Verdict verdict_graph(const ThresholdInput& in, const AdjacencyGraph& graph) {
  in.validate();
  if (graph.n != in.n) throw ComplexityError("graph size differs from n");
  Verdict v;
  if (rate_condition(in, v)) {
    v.status = VerdictStatus::Nontrivial;
    v.bound = lightcone_inverse(graph, in.d);
  }
  return v;
}

RegimeReport regime_classify(const std::vector<RegimeSample>& samples) {
  if (samples.size() < 4) throw ComplexityError("regime classification needs at least 4 samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].n <= samples[i - 1].n) throw ComplexityError("samples must increase in n");
  RegimeReport rep;
  rep.rule =
      "all eps <= 1e-12: nontrivial; k slope > 0.9 and eps slope < -0.05: nontrivial (k=Omega(n)); "
      "k slope < 0.5 and eps slope < -1.15: nontrivial (k=O(1), eps=o(1/n)); "
      "k slope < 0.5 and |eps slope + 1| <= 0.15: boundary; otherwise outside";
  for (const auto& s : samples) {
    const double x = s.eps / 2.0;
    rep.pointwise.push_back(x < 0.5 && s.k > 0 && h2_unchecked(x) < s.k / s.n);
  }
  bool all_zero = true;
  for (const auto& s : samples) all_zero = all_zero && s.eps <= 1e-12;
  if (all_zero) {
    rep.tag = "nontrivial (eps=0)";
    rep.eps_slope = -std::numeric_limits<double>::infinity();
    return rep;
  }
  std::vector<double> ln, le, lk;
  for (const auto& s : samples) {
    if (s.eps <= 0.0 || s.k <= 0.0) throw ComplexityError("log-log fit needs positive eps and k");
    ln.push_back(std::log(static_cast<double>(s.n)));
    le.push_back(std::log(s.eps));
    lk.push_back(std::log(s.k));
  }
  const LineFit fe = fit_line(ln, le);
  const LineFit fk = fit_line(ln, lk);
  rep.eps_slope = fe.slope;
  rep.eps_intercept = fe.intercept;
  rep.k_slope = fk.slope;
  rep.residuals = fe.residuals;
  if (fk.slope > 0.9 && fe.slope < -0.05) rep.tag = "nontrivial (k=Omega(n))";
  else if (fk.slope < 0.5 && fe.slope < -1.15) rep.tag = "nontrivial (k=O(1), eps=o(1/n))";
  else if (fk.slope < 0.5 && std::abs(fe.slope + 1.0) <= 0.15) rep.tag = "boundary";
  else rep.tag = "outside";
  return rep;
}

std::string to_string(PhaseCell c) {
  switch (c) {
    case PhaseCell::Nontrivial: return "nontrivial";
    case PhaseCell::BoundaryBand: return "boundary band";
    case PhaseCell::Unboundable: return "unboundable";
  }
  return "";
}

PhaseCell phase_cell(double error, bool is_inaccuracy, double k, int n) {
  const double rate = k / n;
  const double x = is_inaccuracy ? 2.0 * error : error / 2.0;
  const bool holds = x < 0.5 && h2_unchecked(x) < rate && (is_inaccuracy ? 4.0 * error : error) < 1.0;
  if (holds) return PhaseCell::Nontrivial;
  if (!is_inaccuracy) return PhaseCell::Unboundable;
  // Some code state has variance >= 2^-k eps~^2, which rules the bound out for every code.
  const double y = std::pow(2.0, -k - 1.0) * error * error;
  if (y < 0.5 && k <= n * h2_unchecked(y)) return PhaseCell::Unboundable;
  if (y >= 0.5) return PhaseCell::Unboundable;
  return PhaseCell::BoundaryBand;
}

double ChainReport::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [name, s] : slacks) m = std::min(m, s);
  return m;
}

ChainReport proof_replay(const CodeSpace& code, const LayeredCircuit& circuit, const std::vector<Region>& blocks) {
  if (!code.is_dense() || code.n > 10) throw ComplexityError("proof replay needs a dense code with n <= 10");
  if (circuit.n != code.n) throw ComplexityError("circuit and code sizes differ");
  const int n = code.n;
  std::vector<Region> units = blocks;
  if (units.empty())
    for (int q = 0; q < n; ++q) units.push_back({q});
  {
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (const auto& u : units) {
      validate_region(u, n);
      for (int q : u) ++seen[static_cast<std::size_t>(q)];
    }
    for (int c : seen)
      if (c != 1) throw ComplexityError("units must partition the qubits");
  }
  const CVec psi = circuit.apply(PureState::basis(n, 0).amp);
  const LayeredCircuit inv = circuit.inverse();
  std::vector<CVec> back;
  std::vector<double> w;
  for (const auto& s : code.dense) {
    back.push_back(inv.apply(s.amp));
    w.push_back(1.0 / static_cast<double>(code.dim));
  }

  ChainReport rep;
  rep.gamma_entropy = std::log2(static_cast<double>(code.dim));
  double max_unit = 0;
  for (const auto& u : units) {
    ChainUnit cu;
    cu.unit = u;
    cu.light_cone = light_cone(inv, u);
    const auto dim = Eigen::Index{1} << u.size();
    CMat rho = CMat::Zero(dim, dim);
    for (std::size_t j = 0; j < back.size(); ++j) rho += w[j] * reduce_cross(back[j], back[j], n, u);
    cu.entropy = von_neumann_entropy(rho);
    CMat zero = CMat::Zero(dim, dim);
    zero(0, 0) = 1.0;
    cu.distance_to_zero = 0.5 * trace_norm_distance(rho, zero);
    cu.fannes_bound = fannes_audenaert(cu.distance_to_zero, static_cast<double>(dim));
    const CMat psi_l = reduce_cross(psi, psi, n, cu.light_cone);
    cu.light_cone_distance = 0.5 * trace_norm_distance(psi_l, reduced_gamma(code, cu.light_cone).mat);
    rep.sum_unit_entropy += cu.entropy;
    rep.sum_fannes += cu.fannes_bound;
    rep.sum_fannes_light_cone += fannes_audenaert(cu.light_cone_distance, static_cast<double>(dim));
    rep.max_light_cone_distance = std::max(rep.max_light_cone_distance, cu.light_cone_distance);
    rep.max_light_cone = std::max(rep.max_light_cone, static_cast<int>(cu.light_cone.size()));
    max_unit = std::max(max_unit, static_cast<double>(u.size()));
    rep.slacks.emplace_back("fannes-audenaert unit " + std::to_string(rep.units.size()), cu.fannes_bound - cu.entropy);
    rep.slacks.emplace_back("light-cone monotonicity unit " + std::to_string(rep.units.size()),
                            cu.light_cone_distance - cu.distance_to_zero);
    rep.units.push_back(std::move(cu));
  }
  rep.slacks.emplace_back("subadditivity", rep.sum_unit_entropy - rep.gamma_entropy);
  rep.slacks.emplace_back("light-cone substitution", rep.sum_fannes_light_cone - rep.sum_fannes);
  const double x = rep.max_light_cone_distance;
  if (x < 0.5) {
    const double c = static_cast<double>(units.size());
    rep.final_bound = c * (h2_unchecked(x) + x * std::log2(std::pow(2.0, max_unit) - 1.0));
    rep.slacks.emplace_back("max over units", *rep.final_bound - rep.sum_fannes_light_cone);
  } else {
    rep.final_link_skipped = true;
  }
  return rep;
}

CodeSpace code_containing(const PureState& psi, int k, Rng& rng) {
  const auto full = psi.amp.size();
  const auto dim = Eigen::Index{1} << k;
  if (dim > full) throw ComplexityError("code dimension exceeds the Hilbert space");
  CMat m(full, dim);
  m.col(0) = psi.amp;
  for (Eigen::Index j = 1; j < dim; ++j) m.col(j) = random_complex_vector(full, rng);
  Eigen::HouseholderQR<CMat> qr(m);
  const CMat q = qr.householderQ() * CMat::Identity(full, dim);
  std::vector<PureState> basis{psi};
  for (Eigen::Index j = 1; j < dim; ++j) basis.emplace_back(psi.n, q.col(j));
  CodeSpace c = make_dense_code("containing", std::move(basis));
  c.params = {{"k", k}};
  c.validate();
  return c;
}

DepthOneWitness depth_one_witness(const CodeSpace& code) {
  if (!code.is_dense()) throw ComplexityError("witness needs a dense code");
  DepthOneWitness w;
  for (int a = 0; a < code.n; ++a)
    for (int b = a; b < code.n; ++b) {
      const Region r = a == b ? Region{a} : Region{a, b};
      const auto dim = Eigen::Index{1} << r.size();
      const CMat mixed = CMat::Identity(dim, dim) / static_cast<double>(dim);
      w.max_marginal_deviation = std::max(w.max_marginal_deviation, trace_norm_distance(reduced_gamma(code, r).mat, mixed));
    }
  w.variance_two = overall_variance(code, AdjacencyGraph::complete(code.n), std::min(2, code.n)).value;
  w.passes = w.max_marginal_deviation < 1e-8 && w.variance_two < 1e-8;
  return w;
}

}  // namespace aqec
