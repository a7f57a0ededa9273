#include "aqec/coherent.hpp"

#include "aqec/complexity.hpp"

#include <cmath>

namespace aqec {

CoherentReport coherent_information(const CodeSpace& code, const Region& region) {
  validate_region(region, code.n);
  const RegionBlocks b = region_blocks(code, region);
  const auto local = b.gamma.rows();
  const auto dd = static_cast<Eigen::Index>(code.dim);
  if (local * dd > (Eigen::Index{1} << 16)) throw CoherentError("dimension guard: |A| + k too large");

  // rho_AR = (1/D) sum_ij M_ij (x) |i><j|, reference last.
  CMat rho_ar = CMat::Zero(local * dd, local * dd);
  for (Eigen::Index i = 0; i < dd; ++i)
    for (Eigen::Index j = 0; j < dd; ++j) {
      const CMat& m = b.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      for (Eigen::Index x = 0; x < local; ++x)
        for (Eigen::Index y = 0; y < local; ++y) rho_ar(x * dd + i, y * dd + j) = m(x, y) / static_cast<double>(dd);
    }
  const CMat rho_r = CMat::Identity(dd, dd) / static_cast<double>(dd);
  const double s_a = von_neumann_entropy(b.gamma);
  const double s_ar = von_neumann_entropy(rho_ar);
  const double s_r = std::log2(static_cast<double>(dd));

  CoherentReport rep;
  rep.code_id = code.id();
  rep.region = region;
  rep.k = code.k();
  rep.coherent_information = s_ar - s_a;
  rep.mutual_information = s_a + s_r - s_ar;
  rep.gap = rep.k - rep.coherent_information;
  const double dist = trace_norm_distance(rho_ar, kron(b.gamma, rho_r));
  rep.pinsker_lhs = 0.5 * dist * dist;

  // Same quantity from the unreduced output: S(Q') - S(Q'R) with Q' = complement of A plus the
  // replaced region, whose entropy cancels.
  if (code.is_dense() && code.n + static_cast<int>(std::ceil(std::log2(static_cast<double>(dd)))) <= 16) {
    const Region rest = complement(region, code.n);
    std::vector<CVec> states;
    std::vector<double> weights;
    for (const auto& s : code.dense) {
      states.push_back(s.amp);
      weights.push_back(1.0 / static_cast<double>(dd));
    }
    const double s_rest = entropy_of_spectrum(mixture_reduced_spectrum(states, weights, code.n, rest));
    const int rq = static_cast<int>(std::ceil(std::log2(static_cast<double>(dd))));
    const auto full = Eigen::Index{1} << (code.n + rq);
    CVec phi = CVec::Zero(full);
    for (Eigen::Index i = 0; i < dd; ++i)
      for (Eigen::Index x = 0; x < code.dense[static_cast<std::size_t>(i)].amp.size(); ++x)
        phi[(x << rq) | i] = code.dense[static_cast<std::size_t>(i)].amp[x] / std::sqrt(static_cast<double>(dd));
    Region rest_ref = rest;
    for (int q = 0; q < rq; ++q) rest_ref.push_back(code.n + q);
    const double s_rest_ref = entropy_of_spectrum(mixture_reduced_spectrum({phi}, {1.0}, code.n + rq, rest_ref));
    rep.full_output_value = s_rest - s_rest_ref;
    if (std::abs(*rep.full_output_value - rep.coherent_information) > 1e-8)
      throw CoherentError("coherent information cross-check failed");
  }
  return rep;
}

CoherentBounds coherent_variance_bounds(const CoherentReport& report, double variance, int d) {
  CoherentBounds out;
  const double k = report.k;
  out.variance = variance;
  out.gap = report.gap;
  out.lower = std::pow(2.0, -2.0 * k - d - 1.0) * variance * variance;
  out.lower_slack = out.gap - out.lower;
  const double x = std::pow(2.0, k) * variance;
  if (x < 0.5) {
    out.upper = std::pow(2.0, k) * std::log2(std::pow(2.0, d + k) - 1.0) * variance + binary_entropy(x);
    out.upper_slack = *out.upper - out.gap;
  } else {
    out.note = "upper bound skipped: 2^k eps >= 1/2";
  }
  return out;
}

CoherentBounds coherent_variance_bounds(const CodeSpace& code, const Region& region, const VarianceOptions& options) {
  const CoherentReport rep = coherent_information(code, region);
  const double eps = region_variance(code, region, options).value;
  return coherent_variance_bounds(rep, eps, static_cast<int>(region.size()));
}

}  // namespace aqec
