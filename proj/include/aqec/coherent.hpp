#pragma once

#include "aqec/codes.hpp"
#include "aqec/variance.hpp"

#include <optional>
#include <string>

namespace aqec {

class CoherentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoherentReport {
  std::string code_id;
  Region region;
  double k = 0.0;
  double coherent_information = 0.0;  // S(AR) - S(A) for the maximally entangled code state
  double mutual_information = 0.0;    // I(A:R)
  double gap = 0.0;                   // k - I_c
  std::optional<double> full_output_value;  // S(Q') - S(Q'R) from the full state, small n only
  double pinsker_lhs = 0.0;                 // (1/2) ||rho_AR - rho_A (x) rho_R||_1^2
};

// Coherent information of the code under any replacement channel on `region`; the output state
// on the region factors out, so only A and the reference enter.
CoherentReport coherent_information(const CodeSpace& code, const Region& region);

struct CoherentBounds {
  double variance = 0.0;
  double gap = 0.0;
  double lower = 0.0;  // 2^(-2k-d-1) eps^2
  double lower_slack = 0.0;
  std::optional<double> upper;  // 2^k log2(2^(d+k) - 1) eps + H2(2^k eps), when 2^k eps < 1/2
  std::optional<double> upper_slack;
  std::string note;
};

CoherentBounds coherent_variance_bounds(const CodeSpace& code, const Region& region, const VarianceOptions& options = {});
CoherentBounds coherent_variance_bounds(const CoherentReport& report, double variance, int d);

}  // namespace aqec
