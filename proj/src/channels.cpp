#include "aqec/channels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace aqec {

namespace {

const CMat& pauli(int a) {
  static const std::vector<CMat> p = [] {
    std::vector<CMat> v(4, CMat::Zero(2, 2));
    v[0] << 1, 0, 0, 1;
    v[1] << 0, 1, 1, 0;
    v[2] << 0, cplx(0, -1), cplx(0, 1), 0;
    v[3] << 1, 0, 0, -1;
    return v;
  }();
  return p[static_cast<std::size_t>(a)];
}

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void combinations(int n, int k, std::vector<Region>& out) {
  Region cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Region cross blocks embedded into the full 2^r local basis.
std::vector<CMat> full_local_blocks(const RegionBlocks& b) {
  const auto full = Eigen::Index{1} << b.region.size();
  if (static_cast<Eigen::Index>(b.configs.size()) == full) return b.cross;
  std::vector<CMat> out;
  for (const auto& m : b.cross) {
    CMat e = CMat::Zero(full, full);
    for (std::size_t i = 0; i < b.configs.size(); ++i)
      for (std::size_t j = 0; j < b.configs.size(); ++j)
        e(static_cast<Eigen::Index>(b.configs[i]), static_cast<Eigen::Index>(b.configs[j])) =
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    out.push_back(std::move(e));
  }
  return out;
}

// Lower-triangular representative of a pure input up to a reference unitary:
// real diagonal (D values) then the strictly lower entries (real, imaginary).
CMat params_to_input(const RVec& x, Eigen::Index d) {
  CMat l = CMat::Zero(d, d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) l(i, i) = x[k++];
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      l(i, j) = cplx(x[k], x[k + 1]);
      k += 2;
    }
  const double nrm = l.norm();
  if (nrm < 1e-300) return CMat::Identity(d, d) / std::sqrt(static_cast<double>(d));
  return l / nrm;
}

RVec input_to_params(const CMat& psi) {
  const Eigen::Index d = psi.rows();
  // psi = L Q with L lower triangular: psi^dag = Q^dag L^dag is a QR factorization.
  Eigen::HouseholderQR<CMat> qr(psi.adjoint());
  CMat l = qr.matrixQR().triangularView<Eigen::Upper>();
  l = l.adjoint().eval();
  for (Eigen::Index j = 0; j < d; ++j) {
    const cplx dj = l(j, j);
    if (std::abs(dj) > 1e-300) l.col(j) *= std::conj(dj) / std::abs(dj);
  }
  RVec x(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) x[k++] = l(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      x[k++] = l(i, j).real();
      x[k++] = l(i, j).imag();
    }
  return x;
}

struct NelderMeadResult {
  RVec x;
  double f = 0.0;
  int evaluations = 0;
};

template <class F>
NelderMeadResult nelder_mead(F&& f, const RVec& x0, double step, int max_evals, double tol) {
  const Eigen::Index m = x0.size();
  std::vector<RVec> pts(static_cast<std::size_t>(m + 1), x0);
  std::vector<double> val(static_cast<std::size_t>(m + 1));
  for (Eigen::Index i = 0; i < m; ++i) pts[static_cast<std::size_t>(i + 1)][i] += step;
  int evals = 0;
  for (std::size_t i = 0; i < pts.size(); ++i, ++evals) val[i] = f(pts[i]);
  std::vector<std::size_t> order(pts.size());
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    const std::size_t lo = order.front(), hi = order.back(), nh = order[order.size() - 2];
    double spread = 0.0;
    for (const auto& q : pts) spread = std::max(spread, (q - pts[lo]).cwiseAbs().maxCoeff());
    if (val[hi] - val[lo] < tol || spread < 1e-9) break;
    RVec centroid = RVec::Zero(m);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != hi) centroid += pts[i];
    centroid /= static_cast<double>(m);
    const RVec xr = centroid + (centroid - pts[hi]);
    const double fr = f(xr);
    ++evals;
    if (fr < val[lo]) {
      const RVec xe = centroid + 2.0 * (centroid - pts[hi]);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        pts[hi] = xe;
        val[hi] = fe;
      } else {
        pts[hi] = xr;
        val[hi] = fr;
      }
    } else if (fr < val[nh]) {
      pts[hi] = xr;
      val[hi] = fr;
    } else {
      const RVec xc = fr < val[hi] ? RVec(centroid + 0.5 * (xr - centroid)) : RVec(centroid + 0.5 * (pts[hi] - centroid));
      const double fc = f(xc);
      ++evals;
      if (fc < std::min(fr, val[hi])) {
        pts[hi] = xc;
        val[hi] = fc;
      } else {
        for (std::size_t i = 0; i < pts.size(); ++i) {
          if (i == lo) continue;
          pts[i] = pts[lo] + 0.5 * (pts[i] - pts[lo]);
          val[i] = f(pts[i]);
          ++evals;
        }
      }
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(val.begin(), val.end()) - val.begin());
  return {pts[best], val[best], evals};
}

}  // namespace

NoiseSpec NoiseSpec::replacement(Region region, CMat output) {
  NoiseSpec s;
  s.kind = NoiseKind::Replacement;
  s.region = std::move(region);
  const auto dim = Eigen::Index{1} << s.region.size();
  if (output.rows() != dim || output.cols() != dim) throw ChannelError("replacement output has wrong dimension");
  MixedState check(static_cast<int>(s.region.size()), output);  // validates the state
  s.output = std::move(output);
  return s;
}

NoiseSpec NoiseSpec::erasure(Region region) {
  NoiseSpec s;
  s.kind = NoiseKind::Erasure;
  s.region = std::move(region);
  return s;
}

NoiseSpec NoiseSpec::complete_depolarizing(Region region) {
  NoiseSpec s;
  s.kind = NoiseKind::CompleteDepolarizing;
  s.region = std::move(region);
  return s;
}

NoiseSpec NoiseSpec::randomized_location_erasure(int count) {
  if (count < 1) throw ChannelError("randomized-location erasure needs count >= 1");
  NoiseSpec s;
  s.kind = NoiseKind::RandomizedLocationErasure;
  s.count = count;
  return s;
}

NoiseSpec NoiseSpec::partial_depolarizing(int qubit, double p) {
  if (p < 0.0 || p > 4.0 / 3.0) throw ChannelError("depolarizing strength out of range");
  NoiseSpec s;
  s.kind = NoiseKind::PartialDepolarizing;
  s.region = {qubit};
  s.p = p;
  return s;
}

bool NoiseSpec::is_replacement() const {
  return kind == NoiseKind::Replacement || kind == NoiseKind::Erasure || kind == NoiseKind::CompleteDepolarizing;
}

std::string NoiseSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case NoiseKind::Replacement: os << "replacement"; break;
    case NoiseKind::Erasure: os << "erasure"; break;
    case NoiseKind::CompleteDepolarizing: os << "complete-depolarizing"; break;
    case NoiseKind::RandomizedLocationErasure: os << "randomized-location-erasure(" << count << ")"; break;
    case NoiseKind::PartialDepolarizing: os << "partial-depolarizing(" << p << ")"; break;
  }
  if (kind != NoiseKind::RandomizedLocationErasure) {
    os << "[";
    for (std::size_t i = 0; i < region.size(); ++i) os << (i ? " " : "") << region[i];
    os << "]";
  }
  return os.str();
}

std::vector<LocalKraus> kraus_operators(const NoiseSpec& noise, int n) {
  std::vector<LocalKraus> out;
  auto erasure_ops = [&](const Region& r, double weight, int block) {
    const auto dim = Eigen::Index{1} << r.size();
    for (Eigen::Index i = 0; i < dim; ++i) {
      CMat k = CMat::Zero(1, dim);
      k(0, i) = std::sqrt(weight);
      out.push_back({r, k, block});
    }
  };
  if (noise.kind != NoiseKind::RandomizedLocationErasure) validate_region(noise.region, n);
  const auto dim = Eigen::Index{1} << noise.region.size();
  switch (noise.kind) {
    case NoiseKind::Erasure:
      erasure_ops(noise.region, 1.0, 0);
      break;
    case NoiseKind::Replacement: {
      Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(noise.output));
      for (Eigen::Index a = 0; a < dim; ++a) {
        const double c = std::max(0.0, es.eigenvalues()[a]);
        if (c < 1e-15) continue;
        for (Eigen::Index i = 0; i < dim; ++i) {
          CMat k = std::sqrt(c) * es.eigenvectors().col(a) * CVec::Unit(dim, i).transpose();
          out.push_back({noise.region, k, static_cast<int>(a)});
        }
      }
      break;
    }
    case NoiseKind::CompleteDepolarizing:
      for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index i = 0; i < dim; ++i) {
          CMat k = CMat::Zero(dim, dim);
          k(a, i) = 1.0 / std::sqrt(static_cast<double>(dim));
          out.push_back({noise.region, k, static_cast<int>(a)});
        }
      break;
    case NoiseKind::RandomizedLocationErasure: {
      if (noise.count > n) throw ChannelError("more erased qubits than the system has");
      std::vector<Region> locs;
      combinations(n, noise.count, locs);
      for (std::size_t l = 0; l < locs.size(); ++l)
        erasure_ops(locs[l], 1.0 / static_cast<double>(locs.size()), static_cast<int>(l));
      break;
    }
    case NoiseKind::PartialDepolarizing:
      out.push_back({noise.region, std::sqrt(std::max(0.0, 1.0 - 3.0 * noise.p / 4.0)) * pauli(0), 0});
      for (int a = 1; a < 4; ++a) out.push_back({noise.region, std::sqrt(noise.p / 4.0) * pauli(a), 0});
      break;
  }
  return out;
}

CMat LinearChannel::apply(const CMat& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != in_dim) throw ChannelError("channel input dimension mismatch");
  CMat out = CMat::Zero(out_dim, out_dim);
  for (std::size_t i = 0; i < in_dim; ++i)
    for (std::size_t j = 0; j < in_dim; ++j) {
      const cplx r = rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (r != cplx(0.0)) out += r * images[i * in_dim + j];
    }
  return out;
}

CMat LinearChannel::choi() const {
  const auto d = static_cast<Eigen::Index>(in_dim);
  CMat c = CMat::Zero(d * out_dim, d * out_dim);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      c.block(i * out_dim, j * out_dim, out_dim, out_dim) = images[static_cast<std::size_t>(i * d + j)];
  return c;
}

void LinearChannel::validate(double tol) const {
  if (images.size() != in_dim * in_dim) throw ChannelError("channel image count mismatch");
  for (std::size_t i = 0; i < in_dim; ++i)
    for (std::size_t j = 0; j < in_dim; ++j) {
      const cplx t = images[i * in_dim + j].trace();
      if (std::abs(t - (i == j ? 1.0 : 0.0)) > tol) throw ChannelError("channel is not trace preserving");
    }
  const RVec w = hermitian_eigenvalues(choi());
  if (w.minCoeff() < -tol) throw ChannelError("channel is not completely positive");
}

CMat LinearChannel::apply_extended(const CMat& psi) const {
  const Eigen::Index r = psi.cols();
  CMat out = CMat::Zero(out_dim * r, out_dim * r);
  for (std::size_t i = 0; i < in_dim; ++i)
    for (std::size_t j = 0; j < in_dim; ++j) {
      const CMat x = psi.row(static_cast<Eigen::Index>(i)).transpose() * psi.row(static_cast<Eigen::Index>(j)).conjugate();
      out += kron(images[i * in_dim + j], x);
    }
  return out;
}

LinearChannel KLResidue::lambda_channel() const {
  LinearChannel l;
  l.in_dim = complementary.in_dim;
  l.out_dim = complementary.out_dim;
  l.blocks = complementary.blocks;
  l.images.assign(l.in_dim * l.in_dim, CMat::Zero(l.out_dim, l.out_dim));
  for (std::size_t i = 0; i < l.in_dim; ++i) l.images[i * l.in_dim + i] = lambda;
  return l;
}

CMat KLResidue::apply(const CMat& rho) const { return complementary.apply(rho) - rho.trace() * lambda; }

RegionBlocks KLResidue::as_blocks() const {
  RegionBlocks b;
  b.dim = complementary.in_dim;
  b.cross = complementary.images;
  b.gamma = lambda;
  return b;
}

KLResidue residue(const CodeSpace& code, const NoiseSpec& noise) {
  if (!code.has_basis()) throw ChannelError("residue needs a stored code basis");
  KLResidue res;
  LinearChannel& c = res.complementary;
  c.in_dim = code.dim;
  const std::size_t d2 = code.dim * code.dim;

  if (noise.kind == NoiseKind::Erasure && noise.region.size() > 4) {
    // Environment receives the erased qubits; restrict it to the support of the code marginals.
    const RegionBlocks b = region_blocks(code, noise.region);
    c.out_dim = static_cast<Eigen::Index>(b.configs.size());
    c.images = b.cross;
  } else {
    if (noise.kind != NoiseKind::RandomizedLocationErasure && noise.region.size() > 4)
      throw ChannelError("Kraus representation limited to regions of at most 4 qubits");
    const auto kraus = kraus_operators(noise, code.n);
    c.out_dim = static_cast<Eigen::Index>(kraus.size());
    c.images.assign(d2, CMat::Zero(c.out_dim, c.out_dim));
    std::size_t start = 0;
    while (start < kraus.size()) {
      std::size_t end = start;
      while (end < kraus.size() && kraus[end].block == kraus[start].block) ++end;
      c.blocks.push_back(static_cast<Eigen::Index>(end - start));
      const RegionBlocks b = region_blocks(code, kraus[start].region);
      const auto m = full_local_blocks(b);
      for (std::size_t a = start; a < end; ++a)
        for (std::size_t bb = start; bb < end; ++bb) {
          const CMat prod_t = (kraus[bb].op.adjoint() * kraus[a].op).transpose();
          for (std::size_t ij = 0; ij < d2; ++ij)
            c.images[ij](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(bb)) = m[ij].cwiseProduct(prod_t).sum();
        }
      start = end;
    }
  }
  res.lambda = CMat::Zero(c.out_dim, c.out_dim);
  for (std::size_t i = 0; i < code.dim; ++i) res.lambda += c.images[i * code.dim + i];
  res.lambda /= static_cast<double>(code.dim);
  return res;
}

double residue_norm(const KLResidue& res, const OptimizerBudget& budget, std::uint64_t seed,
                    const std::vector<CVec>& starts) {
  Rng rng(derive_seed(seed, "residue-norm"));
  return optimize_pure_max(res.as_blocks(), budget, rng, starts).value;
}

double residue_norm(const CodeSpace& code, const NoiseSpec& noise, const OptimizerBudget& budget, std::uint64_t seed) {
  return residue_norm(residue(code, noise), budget, seed);
}

double output_fidelity(const LinearChannel& a, const LinearChannel& b, const CMat& psi) {
  return std::min(1.0, fidelity(a.apply_extended(psi), b.apply_extended(psi)));
}

namespace {

// Choi factor G with choi = G G^dag; rows indexed by (input i, output e).
CMat choi_factor(const LinearChannel& ch) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(ch.choi()));
  const RVec& w = es.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w[i] > 1e-14) keep.push_back(i);
  CMat g(w.size(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    g.col(static_cast<Eigen::Index>(c)) = std::sqrt(w[keep[c]]) * es.eigenvectors().col(keep[c]);
  return g;
}

// Factor Y of (N (x) id)(|Psi><Psi|) = Y Y^dag, Y = sum_i G_i (x) psi.row(i)^T.
CMat output_factor(const CMat& g, Eigen::Index out_dim, const CMat& psi) {
  const Eigen::Index d = psi.rows(), r = psi.cols();
  CMat y = CMat::Zero(out_dim * r, g.cols());
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto gi = g.middleRows(i * out_dim, out_dim);
    for (Eigen::Index e = 0; e < out_dim; ++e)
      for (Eigen::Index a = 0; a < r; ++a) y.row(e * r + a) += psi(i, a) * gi.row(e);
  }
  return y;
}

double factored_fidelity(const CMat& x, const CMat& y) {
  // ||sqrt(X X^dag) sqrt(Y Y^dag)||_1 = ||X^dag Y||_1
  const CMat m = x.adjoint() * y;
  const CMat small = m.rows() <= m.cols() ? CMat(m * m.adjoint()) : CMat(m.adjoint() * m);
  const RVec w = hermitian_eigenvalues(small);
  double f = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w[i] > 0) f += std::sqrt(w[i]);
  return f;
}

}  // namespace

PurifiedDistanceResult channel_purified_distance(const LinearChannel& a, const LinearChannel& b,
                                                 const PurifiedDistanceOptions& options) {
  if (a.in_dim != b.in_dim || a.out_dim != b.out_dim) throw ChannelError("channels act on different spaces");
  a.validate();
  b.validate();
  const auto d = static_cast<Eigen::Index>(a.in_dim);
  // Block-diagonal outputs: the fidelity is the sum of blockwise fidelities.
  std::vector<Eigen::Index> blocks = a.blocks == b.blocks ? a.blocks : std::vector<Eigen::Index>{};
  if (blocks.empty()) blocks.push_back(a.out_dim);
  std::vector<std::pair<CMat, CMat>> factors;
  Eigen::Index offset = 0;
  for (Eigen::Index size : blocks) {
    auto restrict = [&](const LinearChannel& ch) {
      LinearChannel r;
      r.in_dim = ch.in_dim;
      r.out_dim = size;
      for (const auto& m : ch.images) r.images.push_back(m.block(offset, offset, size, size));
      return choi_factor(r);
    };
    factors.emplace_back(restrict(a), restrict(b));
    offset += size;
  }
  auto objective = [&](const RVec& x) {
    const CMat psi = params_to_input(x, d);
    double f = 0.0;
    for (std::size_t k = 0; k < blocks.size(); ++k)
      f += factored_fidelity(output_factor(factors[k].first, blocks[k], psi), output_factor(factors[k].second, blocks[k], psi));
    return std::min(1.0, f);
  };

  std::vector<RVec> inits;
  inits.push_back(input_to_params(CMat::Identity(d, d) / std::sqrt(static_cast<double>(d))));
  for (const auto& s : options.starts) {
    if (s.rows() != d || s.cols() != d) throw ChannelError("start input has wrong shape");
    inits.push_back(input_to_params(s / s.norm()));
  }
  Rng rng(derive_seed(options.seed, "purified-distance"));
  std::normal_distribution<double> g;
  while (static_cast<int>(inits.size()) < options.restarts + 1 + static_cast<int>(options.starts.size())) {
    RVec x(d * d);
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = g(rng);
    inits.push_back(x);
  }
  PurifiedDistanceResult out;
  std::size_t best_index = 0;
  for (std::size_t r = 0; r < inits.size(); ++r) {
    auto nm = nelder_mead(objective, inits[r], 0.25, options.max_evaluations, options.tolerance);
    // Restart once from the optimum to escape a collapsed simplex.
    nm = nelder_mead(objective, nm.x, 0.05, options.max_evaluations, options.tolerance);
    if (r == 0 || nm.f < out.fidelity) {
      out.fidelity = nm.f;
      out.input = params_to_input(nm.x, d);
      best_index = r;
    }
  }
  out.restarts = static_cast<int>(inits.size());
  out.improved_by_restarts = best_index > 0;
  out.value = std::sqrt(std::max(0.0, 1.0 - out.fidelity * out.fidelity));
  return out;
}

InaccuracyBracket inaccuracy_two_approx(const CodeSpace& code, const NoiseSpec& noise,
                                        const PurifiedDistanceOptions& options) {
  if (!noise.is_replacement() && noise.kind != NoiseKind::RandomizedLocationErasure)
    throw ChannelError("inaccuracy estimate needs replacement noise");
  const KLResidue res = residue(code, noise);
  PurifiedDistanceOptions opts = options;
  // Seed with the product input carrying the state of largest residue.
  Rng rng(derive_seed(options.seed, "inaccuracy-seed"));
  const auto top = optimize_pure_max(res.as_blocks(), OptimizerBudget{}, rng);
  CMat psi = CMat::Zero(static_cast<Eigen::Index>(code.dim), static_cast<Eigen::Index>(code.dim));
  psi.col(0) = top.coords;
  opts.starts.push_back(psi);
  InaccuracyBracket out;
  out.detail = channel_purified_distance(res.lambda_channel(), res.complementary, opts);
  out.v = out.detail.value;
  out.lower = out.v / 2.0;
  out.upper = out.v;
  return out;
}

double redundant_inaccuracy_formula(int n, int k, int d) {
  if (n < 1 || k < 0 || d < 0 || d > n - k) throw ChannelError("invalid redundant-code combinatorics");
  if (d == 0) return 0.0;
  const double ratio = std::exp(log_choose(n - k, d) - log_choose(n, d));
  return std::sqrt(std::max(0.0, 1.0 - ratio));
}

}  // namespace aqec
