#include "aqec/variance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <exception>
#include <thread>

namespace aqec {

namespace {

struct Evaluation {
  double value = 0.0;
  CMat sign;
};

Evaluation evaluate(const RegionBlocks& b, const CVec& c) {
  const CMat delta = hermitian_part(b.reduced(c) - b.gamma);
  Eigen::SelfAdjointEigenSolver<CMat> es(delta);
  if (es.info() != Eigen::Success) throw VarianceError("eigensolver failed in variance evaluation");
  const RVec& w = es.eigenvalues();
  RVec s(w.size());
  double v = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    v += std::abs(w[i]);
    s[i] = w[i] > 1e-10 ? 1.0 : (w[i] < -1e-10 ? -1.0 : 0.0);
  }
  return {v, es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint()};
}

CMat linearization(const RegionBlocks& b, const CMat& sign) {
  const auto dim = static_cast<Eigen::Index>(b.dim);
  CMat a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      a(j, i) = (sign.cwiseProduct(b.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).transpose())).sum();
  return hermitian_part(a);
}

double stationarity(const CMat& a, const CVec& c) {
  const cplx q = c.dot(a * c);
  return (a * c - q * c).norm();
}

std::uint64_t region_key(const Region& r) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (int s : r) h = mix64(h ^ static_cast<std::uint64_t>(s));
  return h;
}

CVec momentum_product_coords(const CodeSpace& code, int site) {
  const int n = code.n;
  CVec c(static_cast<Eigen::Index>(code.dim));
  for (int m = 0; m < n; ++m) c[m] = std::polar(1.0 / std::sqrt(static_cast<double>(n)), -2.0 * std::numbers::pi * m * (site + 1) / n);
  return c;
}

}  // namespace

CMat RegionBlocks::reduced(const CVec& c) const {
  CMat out = CMat::Zero(gamma.rows(), gamma.cols());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const cplx w = c[static_cast<Eigen::Index>(i)] * std::conj(c[static_cast<Eigen::Index>(j)]);
      if (w != cplx(0.0)) out += w * at(i, j);
    }
  return out;
}

double RegionBlocks::deviation_from_exact() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const CMat d = i == j ? CMat(at(i, j) - gamma) : at(i, j);
      if (d.size()) m = std::max(m, d.cwiseAbs().maxCoeff());
    }
  return m;
}

RegionBlocks region_blocks(const CodeSpace& code, const Region& region) {
  validate_region(region, code.n);
  if (!code.has_basis()) throw VarianceError("code " + code.id() + " has no stored basis");
  RegionBlocks b;
  b.region = region;
  b.dim = code.dim;
  b.cross.resize(code.dim * code.dim);
  if (code.is_dense()) {
    std::vector<CVec> amps;
    for (const auto& s : code.dense) amps.push_back(s.amp);
    b.cross = reduce_all_crosses(amps, code.n, region);
    b.configs.resize(std::size_t{1} << region.size());
    for (std::size_t i = 0; i < b.configs.size(); ++i) b.configs[i] = i;
  } else {
    const SectorTracer tracer(region, code.layouts());
    b.configs = tracer.configs();
    for (std::size_t i = 0; i < code.dim; ++i)
      for (std::size_t j = i; j < code.dim; ++j) {
        b.cross[i * code.dim + j] = tracer.cross(code.sector[i], code.sector[j]);
        if (j != i) b.cross[j * code.dim + i] = b.cross[i * code.dim + j].adjoint();
      }
    if (code.gamma_layout) {
      b.gamma = tracer.diagonal_mixture(*code.gamma_layout, code.gamma_weights);
      return b;
    }
  }
  b.gamma = CMat::Zero(b.cross.front().rows(), b.cross.front().cols());
  for (std::size_t i = 0; i < code.dim; ++i) b.gamma += b.at(i, i);
  b.gamma /= static_cast<double>(code.dim);
  return b;
}

double state_deviation(const CodeSpace& code, const SectorState& state, const Region& region) {
  auto layouts = code.layouts();
  if (std::find(layouts.begin(), layouts.end(), state.layout) == layouts.end()) layouts.push_back(state.layout);
  const SectorTracer tracer(region, layouts);
  CMat gamma;
  if (code.gamma_layout) {
    gamma = tracer.diagonal_mixture(*code.gamma_layout, code.gamma_weights);
  } else if (code.is_sector()) {
    gamma = CMat::Zero(tracer.dim(), tracer.dim());
    for (const auto& s : code.sector) gamma += tracer.cross(s, s);
    gamma /= static_cast<double>(code.dim);
  } else {
    throw VarianceError("sector state deviation needs a sector code");
  }
  return trace_norm_distance(tracer.cross(state, state), gamma);
}

double state_deviation(const CodeSpace& code, const PureState& state, const Region& region) {
  if (!code.is_dense()) throw VarianceError("dense state deviation needs a dense code");
  const CMat psi = reduce_cross(state.amp, state.amp, code.n, region);
  return trace_norm_distance(psi, reduced_gamma(code, region).mat);
}

PureMaxResult optimize_pure_max(const RegionBlocks& blocks, const OptimizerBudget& budget, Rng& rng,
                                const std::vector<CVec>& starts) {
  if (budget.restarts < 0 || budget.max_steps <= 0 || budget.patience <= 0 || budget.tolerance <= 0)
    throw VarianceError("invalid optimizer budget");
  const auto dim = static_cast<Eigen::Index>(blocks.dim);
  PureMaxResult best;
  best.value = -1.0;
  if (dim == 1) {
    best.coords = CVec::Ones(1);
    best.value = evaluate(blocks, best.coords).value;
    return best;
  }
  std::vector<CVec> inits;
  for (Eigen::Index i = 0; i < dim; ++i) inits.push_back(CVec::Unit(dim, i));
  for (const auto& s : starts)
    if (s.size() == dim && s.norm() > 0) inits.push_back(s / s.norm());
  for (int r = 0; r < budget.restarts; ++r) inits.push_back(random_unit_vector(dim, rng));

  std::vector<double> finals;
  for (const auto& init : inits) {
    CVec c = init;
    Evaluation ev = evaluate(blocks, c);
    double anchor = ev.value;
    int since = 0, steps = 0;
    bool converged = false;
    for (; steps < budget.max_steps; ++steps) {
      const CMat a = linearization(blocks, ev.sign);
      Eigen::SelfAdjointEigenSolver<CMat> es(a);
      CVec next = es.eigenvectors().col(dim - 1);
      const Evaluation nev = evaluate(blocks, next);
      if (nev.value < ev.value) {
        // Degenerate sign operator; the linearization bound does not certify the move.
        converged = true;
        break;
      }
      const bool same = std::abs(std::abs(next.dot(c)) - 1.0) < 1e-14;
      c = next;
      ev = nev;
      if (same) {
        converged = true;
        break;
      }
      if (ev.value > anchor + budget.tolerance) {
        anchor = ev.value;
        since = 0;
      } else if (++since >= budget.patience) {
        converged = true;
        break;
      }
    }
    finals.push_back(ev.value);
    best.diagnostics.steps += steps;
    if (ev.value > best.value) {
      best.value = ev.value;
      best.coords = c;
      best.diagnostics.converged = converged;
      best.diagnostics.stationarity = stationarity(linearization(blocks, ev.sign), c);
    }
  }
  std::sort(finals.rbegin(), finals.rend());
  best.diagnostics.restarts = static_cast<int>(inits.size());
  best.diagnostics.second_best = finals.size() > 1 ? finals[1] : finals[0];
  best.diagnostics.gap = finals[0] - best.diagnostics.second_best;
  best.diagnostics.heuristic = dim > 4;
  return best;
}

std::vector<double> heisenberg_variances(int n, const std::vector<int>& ms, int d) {
  if (ms.empty()) throw VarianceError("no magnetizations");
  std::vector<std::vector<double>> w;
  for (int m : ms) w.push_back(heisenberg_weights(m, n, d));
  std::vector<double> gamma(w.front().size(), 0.0);
  for (const auto& wm : w)
    for (std::size_t r = 0; r < gamma.size(); ++r) gamma[r] += wm[r] / static_cast<double>(ms.size());
  std::vector<double> out;
  for (const auto& wm : w) {
    double v = 0.0;
    for (std::size_t r = 0; r < gamma.size(); ++r) v += std::abs(wm[r] - gamma[r]);
    out.push_back(v);
  }
  return out;
}

bool has_analytic_variance(const CodeSpace& code, const Region& region) {
  if (code.family == "momentum_full") return code.param("xi") == 1.0 && !region.empty();
  if (code.family == "heisenberg") return code.param("spacing") > 2.0 * static_cast<double>(region.size());
  return false;
}

RegionVariance region_variance(const CodeSpace& code, const Region& region, const VarianceOptions& options) {
  validate_region(region, code.n);
  RegionVariance out;
  out.region = region;
  const bool analytic = has_analytic_variance(code, region);
  if (options.method == VarianceMethod::Analytic && !analytic)
    throw VarianceError("analytic variance requested for unregistered family " + code.family);
  if (analytic && options.method != VarianceMethod::Optimize) {
    out.method = "analytic";
    if (code.family == "momentum_full") {
      // A single excitation inside the region: 2 - 2/n for every nonempty region.
      out.value = 2.0 - 2.0 / code.n;
      out.state_label = "product state at site " + std::to_string(region.front());
      if (code.has_basis()) out.coords = momentum_product_coords(code, region.front());
    } else {
      const auto ms = heisenberg_magnetizations(code.n, static_cast<int>(code.param("M")),
                                                static_cast<int>(code.param("spacing")));
      const auto v = heisenberg_variances(code.n, ms, static_cast<int>(region.size()));
      const auto it = std::max_element(v.begin(), v.end());
      const auto idx = static_cast<Eigen::Index>(it - v.begin());
      out.value = *it;
      out.state_label = "magnetization m=" + std::to_string(ms[static_cast<std::size_t>(idx)]);
      out.coords = CVec::Unit(static_cast<Eigen::Index>(code.dim), idx);
    }
    return out;
  }
  const RegionBlocks blocks = region_blocks(code, region);
  if (blocks.deviation_from_exact() < 1e-12) {
    out.method = "exact";
    out.value = 0.0;
    out.coords = CVec::Unit(static_cast<Eigen::Index>(code.dim), 0);
    out.state_label = "any";
    return out;
  }
  std::vector<CVec> starts;
  for (const auto& c : code.dense_candidates) starts.push_back(c);
  if (code.is_sector())
    for (const auto& s : code.sector_candidates) {
      CVec c(static_cast<Eigen::Index>(code.dim));
      for (std::size_t i = 0; i < code.dim; ++i) c[static_cast<Eigen::Index>(i)] = inner(code.sector[i], s);
      if (c.norm() > 1.0 - 1e-9) starts.push_back(c);
    }
  Rng rng(derive_seed(options.seed, "region-variance", region_key(region)));
  const PureMaxResult r = optimize_pure_max(blocks, options.budget, rng, starts);
  out.method = "optimized";
  out.value = r.value;
  out.coords = r.coords;
  out.state_label = "optimized";
  out.diagnostics = r.diagnostics;
  return out;
}

std::vector<Region> variance_regions(const CodeSpace& code, const AdjacencyGraph& graph, int d) {
  if (graph.n != code.n) throw VarianceError("graph and code sizes differ");
  if (d < 1 || d > code.n) throw VarianceError("region size out of range");
  auto arc = [](int m) {
    Region r(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) r[static_cast<std::size_t>(i)] = i;
    return r;
  };
  if (code.family == "heisenberg") return {arc(d)};  // permutation-symmetric states
  if (code.ring_translation_invariant && graph.kind == GraphKind::Ring) return {arc(d)};

  // Component sizes cap the useful region size.
  std::vector<int> comp(static_cast<std::size_t>(graph.n), -1);
  std::vector<int> comp_size;
  for (int s = 0; s < graph.n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(comp_size.size());
    comp_size.push_back(0);
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = id;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      ++comp_size.back();
      for (int v : graph.adj[static_cast<std::size_t>(u)])
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = id;
          stack.push_back(v);
        }
    }
  }
  std::vector<Region> out;
  for_each_connected_region(graph, d, [&](const Region& r) {
    const int target = std::min(d, comp_size[static_cast<std::size_t>(comp[static_cast<std::size_t>(r.front())])]);
    if (static_cast<int>(r.size()) == target) out.push_back(r);
  });
  std::sort(out.begin(), out.end());
  return out;
}

VarianceReport overall_variance(const CodeSpace& code, const AdjacencyGraph& graph, int d,
                                const VarianceOptions& options) {
  VarianceReport rep;
  rep.code_id = code.id();
  rep.graph = graph.describe();
  rep.d = d;
  const auto regions = variance_regions(code, graph, d);
  rep.regions.resize(regions.size());
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(regions.size())));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  auto work = [&](int t) {
    try {
      for (std::size_t i = static_cast<std::size_t>(t); i < regions.size(); i += static_cast<std::size_t>(threads))
        rep.regions[i] = region_variance(code, regions[i], options);
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (std::size_t i = 0; i < rep.regions.size(); ++i)
    if (rep.regions[i].value > rep.regions[rep.argmax].value) rep.argmax = i;
  rep.value = rep.regions[rep.argmax].value;
  rep.method = rep.regions[rep.argmax].method;
  for (const auto& r : rep.regions)
    if (r.method == "optimized") rep.method = "optimized";
  return rep;
}

}  // namespace aqec
