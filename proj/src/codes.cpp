#include "aqec/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace aqec {

namespace {

double log_choose(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void require_dense_size(int n) {
  if (n > kDenseQubitLimit) throw CodeError("memory guard: dense code needs n <= 20, got " + std::to_string(n));
}

std::uint64_t edge_mask_to_index(int n, std::uint64_t edges) {
  std::uint64_t idx = 0;
  for (int e = 0; e < n; ++e)
    if (edges >> e & 1) idx |= qubit_mask(n, e);
  return idx;
}

Excitation mask_to_excitation(std::uint64_t mask) {
  Excitation e;
  for (int b = 0; b < 64; ++b)
    if (mask >> b & 1) e.push_back(b);
  return e;
}

std::uint64_t plaquette_mask(const TorusEdges& t, int x, int y) {
  std::uint64_t m = 0;
  for (int e : t.plaquette(x, y)) m ^= std::uint64_t{1} << e;
  return m;
}

std::uint64_t row_loop_mask(const TorusEdges& t) {
  std::uint64_t m = 0;
  for (int x = 0; x < t.L; ++x) m |= std::uint64_t{1} << t.h(x, 0);
  return m;
}

std::uint64_t column_loop_mask(const TorusEdges& t) {
  std::uint64_t m = 0;
  for (int y = 0; y < t.L; ++y) m |= std::uint64_t{1} << t.v(0, y);
  return m;
}

// All XOR combinations of the generators, visited in Gray-code order.
template <class F>
void for_each_span(const std::vector<std::uint64_t>& gens, std::uint64_t base, F&& f) {
  const std::uint64_t count = std::uint64_t{1} << gens.size();
  std::uint64_t cur = base;
  f(cur);
  for (std::uint64_t i = 1; i < count; ++i) {
    cur ^= gens[std::countr_zero(i)];
    f(cur);
  }
}

}  // namespace

double CodeSpace::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw CodeError("code parameter missing: " + key);
  return it->second;
}

std::string CodeSpace::id() const {
  std::ostringstream os;
  os << family << "(n=" << n;
  for (const auto& [k, v] : params) os << "," << k << "=" << v;
  os << ")";
  return os.str();
}

std::vector<std::shared_ptr<const SectorLayout>> CodeSpace::layouts() const {
  std::vector<std::shared_ptr<const SectorLayout>> out;
  auto add = [&](const std::shared_ptr<const SectorLayout>& l) {
    if (l && std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  };
  for (const auto& s : sector) add(s.layout);
  for (const auto& s : sector_candidates) add(s.layout);
  add(gamma_layout);
  return out;
}

void CodeSpace::validate(double tol) const {
  if (dim == 0) throw CodeError("code has zero dimension");
  if (std::log2(static_cast<double>(dim)) > n + 1e-12) throw CodeError("code dimension exceeds 2^n");
  if (is_dense()) {
    if (dense.size() != dim) throw CodeError("dense basis size does not match dimension");
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i; j < dim; ++j) {
        const cplx ip = dense[i].amp.dot(dense[j].amp);
        if (std::abs(ip - (i == j ? 1.0 : 0.0)) > tol) throw CodeError("code basis not orthonormal");
      }
  }
  if (is_sector()) {
    if (sector.size() != dim) throw CodeError("sector basis size does not match dimension");
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i; j < dim; ++j) {
        const cplx ip = inner(sector[i], sector[j]);
        if (std::abs(ip - (i == j ? 1.0 : 0.0)) > tol) throw CodeError("code basis not orthonormal");
      }
  }
}

CodeSpace make_dense_code(std::string family, std::vector<PureState> basis) {
  if (basis.empty()) throw CodeError("empty code basis");
  CodeSpace c;
  c.n = basis.front().n;
  for (const auto& b : basis)
    if (b.n != c.n) throw CodeError("basis states on different qubit counts");
  c.dim = basis.size();
  c.family = std::move(family);
  c.dense = std::move(basis);
  return c;
}

CodeSpace make_sector_code(std::string family, std::vector<SectorState> basis) {
  if (basis.empty()) throw CodeError("empty code basis");
  CodeSpace c;
  c.n = basis.front().n();
  c.dim = basis.size();
  c.family = std::move(family);
  c.sector = std::move(basis);
  return c;
}

MixedState maximally_mixed(const CodeSpace& code) {
  if (!code.is_dense()) throw CodeError("maximally_mixed needs a dense basis; use reduced_gamma");
  const auto dim = static_cast<Eigen::Index>(code.dense.front().amp.size());
  CMat g = CMat::Zero(dim, dim);
  for (const auto& s : code.dense) g.noalias() += s.amp * s.amp.adjoint();
  // PSD with unit trace by construction; skip the eigenvalue check of the MixedState constructor
  MixedState out;
  out.n = code.n;
  out.rho = g / static_cast<double>(code.dim);
  return out;
}

LocalOperator reduced_gamma(const CodeSpace& code, const Region& region) {
  if (code.is_dense()) {
    const int r = static_cast<int>(region.size());
    LocalOperator out;
    out.region = region;
    out.configs.resize(std::size_t{1} << r);
    for (std::size_t i = 0; i < out.configs.size(); ++i) out.configs[i] = i;
    out.mat = CMat::Zero(Eigen::Index{1} << r, Eigen::Index{1} << r);
    for (const auto& s : code.dense) out.mat += reduce_cross(s.amp, s.amp, code.n, region);
    out.mat /= static_cast<double>(code.dim);
    return out;
  }
  SectorTracer tracer(region, code.layouts());
  LocalOperator out{region, tracer.configs(), CMat()};
  if (code.gamma_layout) {
    out.mat = tracer.diagonal_mixture(*code.gamma_layout, code.gamma_weights);
  } else if (code.is_sector()) {
    out.mat = CMat::Zero(tracer.dim(), tracer.dim());
    for (const auto& s : code.sector) out.mat += tracer.cross(s, s);
    out.mat /= static_cast<double>(code.dim);
  } else {
    throw CodeError("code has neither basis nor Gamma representation");
  }
  return out;
}

PureState encode(const CodeSpace& code, const CVec& coords) {
  if (!code.is_dense()) throw CodeError("encode needs a dense basis");
  if (static_cast<std::size_t>(coords.size()) != code.dim) throw CodeError("coordinate length mismatch");
  CVec v = CVec::Zero(code.dense.front().amp.size());
  for (std::size_t i = 0; i < code.dim; ++i) v += coords[static_cast<Eigen::Index>(i)] * code.dense[i].amp;
  return PureState::normalized(code.n, v);
}

SectorState encode_sector(const CodeSpace& code, const CVec& coords) {
  if (!code.is_sector()) throw CodeError("encode_sector needs a sector basis");
  if (static_cast<std::size_t>(coords.size()) != code.dim) throw CodeError("coordinate length mismatch");
  const auto& layout = code.sector.front().layout;
  CVec c = CVec::Zero(code.sector.front().coeff.size());
  for (std::size_t i = 0; i < code.dim; ++i) {
    if (code.sector[i].layout != layout) throw CodeError("encode_sector needs a shared layout");
    c += coords[static_cast<Eigen::Index>(i)] * code.sector[i].coeff;
  }
  return SectorState(layout, c / c.norm());
}

CodeSpace rotate_basis(const CodeSpace& code, const CMat& u) {
  if (static_cast<std::size_t>(u.rows()) != code.dim || u.rows() != u.cols()) throw CodeError("rotation size mismatch");
  CodeSpace out = code;
  for (std::size_t j = 0; j < code.dim; ++j) {
    if (code.is_dense()) {
      CVec v = CVec::Zero(code.dense.front().amp.size());
      for (std::size_t i = 0; i < code.dim; ++i)
        v += u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * code.dense[i].amp;
      out.dense[j] = PureState::normalized(code.n, v);
    } else if (code.is_sector()) {
      CVec c = CVec::Zero(code.sector.front().coeff.size());
      for (std::size_t i = 0; i < code.dim; ++i) {
        if (code.sector[i].layout != code.sector.front().layout) throw CodeError("rotation needs a shared layout");
        c += u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * code.sector[i].coeff;
      }
      out.sector[j] = SectorState(code.sector.front().layout, c / c.norm());
    }
  }
  return out;
}

CodeSpace redundant_code(int k, int n) {
  if (k < 0 || k >= n) throw CodeError("redundant code needs 0 <= k < n");
  require_dense_size(n);
  const std::uint64_t garbage = (std::uint64_t{1} << (n - k)) - 1;
  std::vector<PureState> basis;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) basis.push_back(PureState::basis(n, (x << (n - k)) | garbage));
  CodeSpace c = make_dense_code("redundant", std::move(basis));
  c.params = {{"k", k}};
  return c;
}

PureState dicke_state(int n, int m) {
  if (std::abs(m) > n || (n + m) % 2 != 0) throw CodeError("magnetization parity mismatch or out of range");
  require_dense_size(n);
  const int up = (n + m) / 2;
  const double a = std::exp(-0.5 * log_choose(n, up));
  CVec v = CVec::Zero(Eigen::Index{1} << n);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i)
    if (std::popcount(i) == up) v[static_cast<Eigen::Index>(i)] = a;
  return PureState(n, std::move(v));
}

std::vector<double> heisenberg_weights(int m, int n, int d) {
  if (std::abs(m) > n || (n + m) % 2 != 0) throw CodeError("magnetization parity mismatch or out of range");
  if (d < 0 || d > n) throw CodeError("window size out of range");
  std::vector<double> w;
  const double norm = log_choose(n, (n + m) / 2);
  for (int r = -d; r <= d; r += 2) {
    const int up_in = (d + r) / 2;
    const int up_out = (n + m) / 2 - up_in;
    const double lw = log_choose(d, up_in) + log_choose(n - d, up_out) - norm;
    w.push_back(std::isfinite(lw) ? std::exp(lw) : 0.0);
  }
  return w;
}

MixedState heisenberg_reduced(int m, int n, int d) {
  if (d > 12) throw CodeError("dense reduced state limited to d <= 12");
  const auto w = heisenberg_weights(m, n, d);
  const auto dim = Eigen::Index{1} << d;
  CMat rho = CMat::Zero(dim, dim);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] == 0.0) continue;
    const int r = -d + 2 * static_cast<int>(j);
    const CVec h = dicke_state(d, r).amp;
    rho += w[j] * h * h.adjoint();
  }
  return MixedState(d, rho);
}

std::vector<int> heisenberg_magnetizations(int n, int M, int spacing) {
  if (spacing <= 0 || M < 0) throw CodeError("invalid Heisenberg code parameters");
  if ((2 * M) % spacing != 0) throw CodeError("2M must be a multiple of the spacing");
  std::vector<int> ms;
  for (int m = -M; m <= M; m += spacing) {
    if (std::abs(m) > n || (n + m) % 2 != 0) throw CodeError("magnetization parity mismatch: m=" + std::to_string(m));
    ms.push_back(m);
  }
  return ms;
}

CodeSpace heisenberg_code(int n, int M, int spacing) {
  const auto ms = heisenberg_magnetizations(n, M, spacing);
  CodeSpace c;
  c.n = n;
  c.dim = ms.size();
  c.family = "heisenberg";
  c.params = {{"M", M}, {"spacing", spacing}};
  if (n <= 16)
    for (int m : ms) c.dense.push_back(dicke_state(n, m));
  return c;
}

CodeSpace momentum_code(int n, int xi, const std::vector<int>& momenta) {
  if (xi < 1 || xi >= n) throw CodeError("momentum code needs 1 <= xi < n");
  if (momenta.empty()) throw CodeError("momentum code needs at least one momentum");
  std::set<int> seen;
  for (int m : momenta)
    if (!seen.insert(((m % n) + n) % n).second) throw CodeError("duplicate momentum");
  std::vector<Excitation> terms(n);
  for (int x = 0; x < n; ++x) {
    for (int j = 0; j < xi; ++j) terms[x].push_back((x + j) % n);
    std::sort(terms[x].begin(), terms[x].end());
  }
  auto layout = std::make_shared<const SectorLayout>(n, std::move(terms));
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<SectorState> basis;
  for (int m : momenta) {
    const double p = 2.0 * std::numbers::pi * m / n;
    CVec c(n);
    for (int x = 0; x < n; ++x) c[x] = a * std::polar(1.0, p * (x + 1));
    basis.emplace_back(layout, std::move(c));
  }
  CodeSpace code = make_sector_code("momentum", std::move(basis));
  code.params = {{"xi", xi}, {"momenta", static_cast<double>(momenta.size())}};
  code.ring_translation_invariant = true;
  return code;
}

CodeSpace momentum_full_code(int n, int xi) {
  if (xi < 1 || xi >= n) throw CodeError("momentum code needs 1 <= xi < n");
  CodeSpace code;
  if (n <= 512) {
    std::vector<int> all(n);
    for (int m = 0; m < n; ++m) all[m] = m;
    code = momentum_code(n, xi, all);
  } else {
    // Too many basis states to store; keep the representations the analytic paths need.
    code.n = n;
    code.dim = static_cast<std::size_t>(n);
    code.family = "momentum";
    code.params = {{"xi", xi}, {"momenta", n}};
    code.ring_translation_invariant = true;
    const CodeSpace pair = momentum_code(n, xi, {0, 1});
    code.sector_candidates = pair.sector;
    code.candidate_labels = {"eigenstate m=0", "eigenstate m=1"};
  }
  code.family = "momentum_full";
  const auto layout = code.is_sector() ? code.sector.front().layout : code.sector_candidates.front().layout;
  // The code spans every window configuration, so Gamma is their uniform mixture.
  code.gamma_layout = layout;
  code.gamma_weights.assign(n, 1.0 / n);
  CVec product = CVec::Zero(n);
  product[0] = 1.0;
  code.sector_candidates.emplace_back(layout, product);
  code.candidate_labels.push_back("product state at site 0");
  return code;
}

CodeSpace momentum_pair_fragment(int n, int m, int xi) {
  CodeSpace c = momentum_code(n, xi, {m, (m + 1) % n});
  c.family = "momentum_pair";
  c.params["m"] = m;
  return c;
}

SectorState translate(const SectorState& state, int shift) {
  const int n = state.n();
  std::vector<Excitation> terms;
  terms.reserve(state.layout->terms.size());
  for (const auto& e : state.layout->terms) {
    Excitation t;
    for (int s : e) t.push_back((((s + shift) % n) + n) % n);
    std::sort(t.begin(), t.end());
    terms.push_back(std::move(t));
  }
  return SectorState(std::make_shared<const SectorLayout>(n, std::move(terms)), state.coeff);
}

CVec apply_pauli(const PauliString& p, const CVec& v) {
  const int n = static_cast<int>(p.ops.size());
  if (v.size() != (Eigen::Index{1} << n)) throw CodeError("Pauli string length does not match state");
  std::uint64_t flip = 0, phase_mask = 0;
  int ys = 0;
  for (int q = 0; q < n; ++q) {
    const char o = p.ops[q];
    if (o == 'X' || o == 'Y') flip |= qubit_mask(n, q);
    if (o == 'Z' || o == 'Y') phase_mask |= qubit_mask(n, q);
    if (o == 'Y') ++ys;
    if (o != 'I' && o != 'X' && o != 'Y' && o != 'Z') throw CodeError("invalid Pauli character");
  }
  static const cplx ipow[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  CVec out = CVec::Zero(v.size());
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(v.size()); ++i) {
    const double sign = (std::popcount(i & phase_mask) % 2) ? -1.0 : 1.0;
    out[static_cast<Eigen::Index>(i ^ flip)] += ipow[ys % 4] * sign * v[static_cast<Eigen::Index>(i)];
  }
  return out;
}

StabilizerSpec builtin_stabilizer(const std::string& name) {
  auto ps = [](std::initializer_list<const char*> l) {
    std::vector<PauliString> out;
    for (const char* s : l) out.push_back({s});
    return out;
  };
  if (name == "4_2_2")
    return {"4_2_2", 4, 2, ps({"XXXX", "ZZZZ"}), ps({"XXII", "XIXI"}), ps({"ZIZI", "ZZII"})};
  if (name == "5_1_3")
    return {"5_1_3", 5, 3, ps({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}), ps({"XXXXX"}), ps({"ZZZZZ"})};
  if (name == "steane")
    return {"steane", 7, 3, ps({"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"}), ps({"XXXXXXX"}),
            ps({"ZZZZZZZ"})};
  throw CodeError("unknown stabilizer code: " + name);
}

std::vector<std::string> builtin_stabilizer_names() { return {"4_2_2", "5_1_3", "steane"}; }

CodeSpace stabilizer_code(const StabilizerSpec& spec) {
  require_dense_size(spec.n);
  const int k = static_cast<int>(spec.logical_x.size());
  if (static_cast<int>(spec.logical_z.size()) != k) throw CodeError("logical operator count mismatch");
  auto project = [&](CVec v) {
    for (const auto& g : spec.generators) v = 0.5 * (v + apply_pauli(g, v));
    for (const auto& z : spec.logical_z) v = 0.5 * (v + apply_pauli(z, v));
    return v;
  };
  CVec zero;
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << spec.n); ++j) {
    CVec v = project(PureState::basis(spec.n, j).amp);
    if (v.norm() > 1e-6) {
      zero = v / v.norm();
      break;
    }
  }
  if (zero.size() == 0) throw CodeError("stabilizer group has no common +1 eigenvector");
  std::vector<PureState> basis;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
    CVec v = zero;
    for (int j = 0; j < k; ++j)
      if (x >> (k - 1 - j) & 1) v = apply_pauli(spec.logical_x[j], v);
    for (const auto& g : spec.generators)
      if ((apply_pauli(g, v) - v).norm() > 1e-9) throw CodeError("basis state not stabilized");
    basis.emplace_back(spec.n, v);
  }
  CodeSpace c = make_dense_code("stabilizer_" + spec.name, std::move(basis));
  c.params = {{"distance", spec.distance}};
  c.validate();
  return c;
}

CodeSpace stabilizer_code(const std::string& name) { return stabilizer_code(builtin_stabilizer(name)); }

std::vector<PauliString> toric_stabilizers(int L) {
  const TorusEdges t(L);
  std::vector<PauliString> out;
  for (int y = 0; y < L; ++y)
    for (int x = 0; x < L; ++x) {
      PauliString s{std::string(t.n(), 'I')}, p{std::string(t.n(), 'I')};
      for (int e : t.star(x, y)) s.ops[e] = 'Z';
      for (int e : t.plaquette(x, y)) p.ops[e] = 'X';
      out.push_back(s);
      out.push_back(p);
    }
  return out;
}

CodeSpace toric_code(int L) {
  const TorusEdges t(L);
  require_dense_size(t.n());
  std::vector<std::uint64_t> gens;
  for (int y = 0; y < L; ++y)
    for (int x = 0; x < L; ++x)
      if (!(x == L - 1 && y == L - 1)) gens.push_back(plaquette_mask(t, x, y));
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(gens.size()));
  std::vector<PureState> basis;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const std::uint64_t base = (a ? row_loop_mask(t) : 0) ^ (b ? column_loop_mask(t) : 0);
      CVec v = CVec::Zero(Eigen::Index{1} << t.n());
      for_each_span(gens, base, [&](std::uint64_t cfg) { v[static_cast<Eigen::Index>(edge_mask_to_index(t.n(), cfg))] += amp; });
      basis.emplace_back(t.n(), std::move(v));
    }
  CodeSpace c = make_dense_code("toric", std::move(basis));
  c.params = {{"L", L}, {"distance", L}};
  return c;
}

int loop_wind_x(int L, std::uint64_t config) {
  const TorusEdges t(L);
  int c = 0;
  for (int y = 0; y < L; ++y) c += static_cast<int>(config >> t.h(0, y) & 1);
  return c % 2;
}

int loop_wind_y(int L, std::uint64_t config) {
  const TorusEdges t(L);
  int c = 0;
  for (int x = 0; x < L; ++x) c += static_cast<int>(config >> t.v(x, 0) & 1);
  return c % 2;
}

std::vector<LoopClass> minimal_loop_classes(int L) {
  const TorusEdges t(L);
  if (t.n() > 64) throw CodeError("torus too large for loop enumeration");
  std::vector<std::uint64_t> gens;
  for (int y = 0; y < L; ++y)
    for (int x = 0; x < L; ++x)
      if (!(x == L - 1 && y == L - 1)) gens.push_back(plaquette_mask(t, x, y));
  gens.push_back(row_loop_mask(t));
  gens.push_back(column_loop_mask(t));
  std::vector<LoopClass> classes(4);
  for (int c = 0; c < 4; ++c) {
    classes[c].wind_x = c / 2;
    classes[c].wind_y = c % 2;
    classes[c].min_weight = std::numeric_limits<int>::max();
  }
  for_each_span(gens, 0, [&](std::uint64_t cfg) {
    auto& cls = classes[2 * loop_wind_x(L, cfg) + loop_wind_y(L, cfg)];
    const int w = std::popcount(cfg);
    if (w < cls.min_weight) {
      cls.min_weight = w;
      cls.minimal.clear();
    }
    if (w == cls.min_weight) cls.minimal.push_back(cfg);
  });
  for (auto& cls : classes) std::sort(cls.minimal.begin(), cls.minimal.end());
  return classes;
}

CodeSpace stringnet_tension_code(int L, double mu) {
  if (!std::isinf(mu) || mu < 0) throw CodeError("only the infinite-tension limit is implemented");
  if (L < 2 || L > 4) throw CodeError("string-net code needs L in {2,3,4}");
  const TorusEdges t(L);
  const auto classes = minimal_loop_classes(L);
  std::vector<SectorState> basis;
  // order: no loop, horizontal, vertical, both
  for (int c : {0, 2, 1, 3}) {
    std::vector<Excitation> terms;
    for (auto cfg : classes[c].minimal) terms.push_back(mask_to_excitation(cfg));
    const auto count = static_cast<Eigen::Index>(terms.size());
    auto layout = std::make_shared<const SectorLayout>(t.n(), std::move(terms));
    basis.emplace_back(layout, CVec::Constant(count, 1.0 / std::sqrt(static_cast<double>(count))));
  }
  CodeSpace code = make_sector_code("stringnet", std::move(basis));
  code.params = {{"L", L}, {"N_C", static_cast<double>(classes[3].minimal.size())}};
  return code;
}

double tfim_ground_energy_free_fermion(int n) {
  if (n < 2) throw CodeError("chain too short");
  return -2.0 / std::sin(std::numbers::pi / (2.0 * n));
}

CodeSpace tfim_low_energy_code(int n, int levels, TfimSpectrum* spectrum) {
  if (n < 2 || n > 16) throw CodeError("TFIM diagonalization limited to 2 <= n <= 16");
  if (levels < 1 || (levels & (levels - 1)) != 0 || levels > (1 << n) / 2)
    throw CodeError("levels must be a power of two below the Hilbert space dimension");
  const Eigen::Index N = Eigen::Index{1} << n;
  RVec diag(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    double e = 0.0;
    for (int q = 0; q < n; ++q) {
      const int a = (i & static_cast<Eigen::Index>(qubit_mask(n, q))) ? -1 : 1;
      const int b = (i & static_cast<Eigen::Index>(qubit_mask(n, (q + 1) % n))) ? -1 : 1;
      e -= a * b;
    }
    diag[i] = e;
  }
  auto apply_h = [&](const RVec& v) {
    RVec out = diag.cwiseProduct(v);
    for (Eigen::Index i = 0; i < N; ++i)
      for (int q = 0; q < n; ++q) out[i] -= v[i ^ static_cast<Eigen::Index>(qubit_mask(n, q))];
    return out;
  };

  // Lanczos with full reorthogonalization from a fixed pseudo-random start vector.
  const Eigen::Index max_steps = std::min<Eigen::Index>(N, 400);
  Eigen::MatrixXd V(N, max_steps);
  std::vector<double> alpha, beta;
  Rng rng(0x7f4a7c15u);
  std::normal_distribution<double> g;
  RVec v(N);
  for (Eigen::Index i = 0; i < N; ++i) v[i] = g(rng);
  V.col(0) = v / v.norm();
  Eigen::MatrixXd ritz;
  RVec theta;
  Eigen::Index steps = 0;
  for (Eigen::Index j = 0; j < max_steps; ++j) {
    RVec w = apply_h(V.col(j));
    alpha.push_back(V.col(j).dot(w));
    for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    steps = j + 1;
    const double b = w.norm();
    bool done = b < 1e-12 || steps == max_steps;
    if (!done && steps >= 2 * levels + 2 && steps % 10 == 0) {
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(steps, steps);
      for (Eigen::Index i = 0; i < steps; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < steps) T(i, i + 1) = T(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      done = true;
      for (int l = 0; l <= levels; ++l)
        if (std::abs(b * es.eigenvectors()(steps - 1, l)) > 1e-11) done = false;
    }
    if (done) break;
    beta.push_back(b);
    V.col(j + 1) = w / b;
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(steps, steps);
  for (Eigen::Index i = 0; i < steps; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < steps) T(i, i + 1) = T(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
  theta = es.eigenvalues();
  ritz = V.leftCols(steps) * es.eigenvectors();

  TfimSpectrum spec;
  if (theta.size() > levels && theta[levels] - theta[levels - 1] < 1e-8)
    throw CodeError("requested levels split a degenerate eigenspace");
  std::vector<RVec> vecs;
  for (int l = 0; l < levels; ++l) vecs.push_back(ritz.col(l).normalized());
  // Degenerate blocks: rebuild the block from projected computational basis vectors in index order.
  for (int start = 0; start < levels;) {
    int end = start + 1;
    while (end < levels && theta[end] - theta[start] < 1e-8) ++end;
    if (end - start > 1) {
      spec.degenerate_block = true;
      Eigen::MatrixXd B(N, end - start);
      for (int l = start; l < end; ++l) B.col(l - start) = vecs[l];
      std::vector<RVec> fresh;
      for (Eigen::Index i = 0; i < N && static_cast<int>(fresh.size()) < end - start; ++i) {
        RVec u = B * B.row(i).transpose();
        for (const auto& f : fresh) u -= f.dot(u) * f;
        if (u.norm() > 1e-6) fresh.push_back(u.normalized());
      }
      for (int l = start; l < end; ++l) vecs[l] = fresh[l - start];
    }
    start = end;
  }
  std::vector<PureState> basis;
  for (int l = 0; l < levels; ++l) {
    RVec x = vecs[l];
    Eigen::Index imax = 0;
    const double mx = x.cwiseAbs().maxCoeff();
    while (std::abs(x[imax]) < mx - 1e-12) ++imax;
    if (x[imax] < 0) x = -x;
    const double resid = (apply_h(x) - theta[l] * x).norm();
    if (resid > 1e-8) throw CodeError("TFIM eigenvector residual above tolerance");
    spec.energies.push_back(theta[l]);
    spec.residuals.push_back(resid);
    basis.emplace_back(n, x.cast<cplx>());
  }
  if (spectrum) *spectrum = spec;
  CodeSpace c = make_dense_code("tfim", std::move(basis));
  c.params = {{"levels", levels}};
  c.ring_translation_invariant = false;
  return c;
}

CodeSpace random_code(int n, int k, Rng& rng) {
  if (n > 10 || k < 0 || k > n) throw CodeError("random code limited to n <= 10 and 0 <= k <= n");
  const CMat u = haar_unitary(Eigen::Index{1} << n, rng);
  std::vector<PureState> basis;
  for (Eigen::Index j = 0; j < (Eigen::Index{1} << k); ++j) basis.emplace_back(n, u.col(j));
  CodeSpace c = make_dense_code("random", std::move(basis));
  c.params = {{"k", k}};
  return c;
}

}  // namespace aqec
