// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include "aqec/channels.hpp"
#include "aqec/cli.hpp"
#include "aqec/coherent.hpp"
#include "aqec/complexity.hpp"
#include "aqec/tee.hpp"
#include "aqec/variance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

using namespace aqec;
using aqec::cli::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Region first_sites(int d) {
  Region r(static_cast<std::size_t>(d));
  std::iota(r.begin(), r.end(), 0);
  return r;
}

std::string fmt(double x) { return cli::format_double(x); }

cli::ExperimentResult run(const json& doc) { return cli::run_experiment(cli::load_config(doc)); }

std::size_t column(const cli::Table& t, const std::string& name) {
  return static_cast<std::size_t>(std::find(t.header.begin(), t.header.end(), name) - t.header.begin());
}

Outcome exactness() {
  std::ostringstream os;
  bool ok = true;
  auto check = [&](const std::string& label, const CodeSpace& code, const AdjacencyGraph& g, int d) {
    const double v = overall_variance(code, g, d).value;
    ok = ok && v <= 1e-8;
    os << label << "=" << fmt(v) << " ";
  };
  check("4_2_2", stabilizer_code("4_2_2"), AdjacencyGraph::complete(4), 1);
  check("5_1_3", stabilizer_code("5_1_3"), AdjacencyGraph::complete(5), 2);
  check("steane", stabilizer_code("steane"), AdjacencyGraph::complete(7), 2);
  check("toric3", toric_code(3), TorusEdges(3).qubit_graph(), 2);
  return {ok, os.str()};
}

Outcome momentum_values() {
  double worst_law = 0.0, min_full = 1e9, worst_pair = -1e9;
  for (int n : {100, 1000, 10000}) {
    const auto full = momentum_full_code(n);
    const auto pair = momentum_pair_fragment(n, 0);
    const auto ring = AdjacencyGraph::ring(n);
    // large momentum codes keep only candidate states, not the full basis
    std::vector<SectorState> eigenstates = full.sector;
    for (std::size_t i = 0; i < full.sector_candidates.size(); ++i)
      if (full.candidate_labels[i].rfind("eigenstate", 0) == 0) eigenstates.push_back(full.sector_candidates[i]);
    for (int d : {4, 8, 16}) {
      for (const auto& s : eigenstates)
        worst_law = std::max(worst_law, std::abs(state_deviation(full, s, first_sites(d)) - 2.0 * (d - 1) / n));
      min_full = std::min(min_full, overall_variance(full, ring, d).value - (2.0 - 2.0 / n));
      worst_pair = std::max(worst_pair, overall_variance(pair, ring, d).value - 5.0 * d / n);
    }
  }
  return {worst_law <= 1e-10 && min_full >= -1e-10 && worst_pair <= 0.0,
          "max |dev - 2(d-1)/n|=" + fmt(worst_law) + " min(full - (2-2/n))=" + fmt(min_full) +
              " max(pair - 5d/n)=" + fmt(worst_pair)};
}

Outcome verdict_flip() {
  const int n = 10000;
  const int d = static_cast<int>(std::floor(std::pow(n, 0.3) + 1e-9));
  const auto full = momentum_full_code(n);
  const auto ring = AdjacencyGraph::ring(n);
  const double full_eps = overall_variance(full, ring, d).value;
  const auto fv = verdict_lattice({n, std::log2(double(n)), d, 1, 0.0, full_eps, false, 0});
  // All pair fragments are related by single-site phase gates; a spread of them is evaluated.
  bool ok = fv.status == VerdictStatus::Inapplicable;
  double min_bound = 1e9, max_lhs = 0.0;
  for (int m : {0, 1, 17, n / 3, n / 2, n - 1}) {
    const auto frag = momentum_pair_fragment(n, m);
    double dev = 0.0;
    for (const auto& s : frag.sector) dev = std::max(dev, state_deviation(frag, s, first_sites(d)));
    const auto v = verdict_lattice({n, 1.0, d, 1, 0.0, dev, false, 1}, &ring);
    ok = ok && v.nontrivial();
    min_bound = std::min(min_bound, v.bound.value_or(-1.0));
    max_lhs = std::max(max_lhs, v.lhs);
  }
  const double target = 0.5 * d * (1.0 - 1.0 / d);
  ok = ok && min_bound >= target - 1e-12;
  return {ok, "d=" + std::to_string(d) + " full=" + to_string(fv.status) + " pair min bound=" + fmt(min_bound) +
                  " (need " + fmt(target) + ") max lhs=" + fmt(max_lhs)};
}

Outcome heisenberg_oracle() {
  double worst = 0.0;
  for (int n = 4; n <= 12; ++n)
    for (int m = -n; m <= n; m += 2)
      for (int d = 1; d <= std::min(n, 6); ++d) {
        const auto dense = partial_trace(dicke_state(n, m), first_sites(d));
        worst = std::max(worst, (heisenberg_reduced(m, n, d).rho - dense.rho).cwiseAbs().maxCoeff());
      }
  bool increasing = true;
  std::string trend;
  for (int d : {2, 3}) {
    double prev = -1.0;
    for (int M : {4, 8, 12, 16, 20}) {
      const auto vals = heisenberg_variances(60, heisenberg_magnetizations(60, M, 4), d);
      const double v = *std::max_element(vals.begin(), vals.end());
      increasing = increasing && v > prev;
      prev = v;
    }
    trend += "d=" + std::to_string(d) + " max=" + fmt(prev) + " ";
  }
  return {worst <= 1e-9 && increasing, "max entry error=" + fmt(worst) + " increasing=" + (increasing ? "yes " : "no ") + trend};
}

Outcome sandwich() {
  const auto res = run({{"experiment", "inaccuracy"}, {"seed", 2024}});
  const auto& t = res.table;
  const auto lo = column(t, "eps_over_4_le_V"), hi = column(t, "half_V_le_root");
  std::size_t bad = 0;
  for (const auto& r : t.rows) bad += (r[lo] != "true") + (r[hi] != "true");
  return {bad == 0 && t.rows.size() == 300,
          std::to_string(t.rows.size()) + " (code, region, noise) points, " + std::to_string(bad) + " violations"};
}

Outcome replacement_equality() {
  Rng rng(derive_seed(99, "replacement-equality"));
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + i % 4;
    const auto code = random_code(n, 1 + i % 2, rng);
    Region region{i % n};
    if (i % 3 == 0) region = {0, n - 1};
    const auto noise = i % 2 ? NoiseSpec::erasure(region) : NoiseSpec::complete_depolarizing(region);
    const auto dim = static_cast<Eigen::Index>(code.dim);
    const CMat logical = random_density_matrix(dim, 1 + i % dim, rng);
    const double lhs = trace_norm(hermitian_part(residue(code, noise).apply(logical)));
    CMat sigma = CMat::Zero(code.dense[0].amp.size(), code.dense[0].amp.size());
    for (Eigen::Index a = 0; a < dim; ++a)
      for (Eigen::Index b = 0; b < dim; ++b)
        sigma += logical(a, b) * code.dense[static_cast<std::size_t>(a)].amp *
                 code.dense[static_cast<std::size_t>(b)].amp.adjoint();
    const double rhs = trace_norm_distance(partial_trace(MixedState(n, sigma), region).rho,
                                           partial_trace(maximally_mixed(code), region).rho);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst <= 1e-8, "max |‖B(rho)‖ - ‖sigma_R - Gamma_R‖|=" + fmt(worst)};
}

Outcome redundant_bracket() {
  bool ok = true;
  std::ostringstream os;
  for (int n : {3, 4, 5, 6}) {
    PurifiedDistanceOptions po;
    po.seed = derive_seed(7, "redundant", static_cast<std::uint64_t>(n));
    const auto br = inaccuracy_two_approx(redundant_code(1, n), NoiseSpec::randomized_location_erasure(1), po);
    const double t = std::sqrt(1.0 / n);
    const bool in = t >= br.lower - 1e-3 && t <= br.upper + 1e-3;
    ok = ok && in;
    os << "n=" << n << " [" << fmt(br.lower) << "," << fmt(br.upper) << "] vs " << fmt(t) << (in ? " in; " : " out; ");
  }
  return {ok, os.str()};
}

Outcome coherent_bounds() {
  const auto res = run({{"experiment", "coherent"}, {"seed", 2024}});
  const auto& t = res.table;
  const auto ls = column(t, "lower_slack"), us = column(t, "upper_slack"), code = column(t, "code"),
             reg = column(t, "region"), ic = column(t, "coherent_information");
  double min_slack = 1e9;
  bool exact = false;
  for (const auto& r : t.rows) {
    min_slack = std::min(min_slack, std::stod(r[ls]));
    if (!r[us].empty()) min_slack = std::min(min_slack, std::stod(r[us]));
    if (r[code].find("4_2_2") != std::string::npos && r[reg].find(' ') == std::string::npos)
      exact = std::abs(std::stod(r[ic]) - 2.0) <= 1e-10;
  }
  return {min_slack >= -1e-7 && exact,
          std::to_string(t.rows.size()) + " rows, min slack=" + fmt(min_slack) + ", [[4,2,2]] I_c=k: " + (exact ? "yes" : "no")};
}

Outcome proof_chain() {
  const auto res = run({{"experiment", "proof-replay"}, {"seed", 2024}});
  const auto ms = column(res.table, "min_slack");
  double worst = 1e9;
  for (const auto& r : res.table.rows) worst = std::min(worst, std::stod(r[ms]));
  const bool witness = res.report["witness"]["passes"].get<bool>();
  return {worst >= -1e-7 && witness && res.table.rows.size() == 100,
          std::to_string(res.table.rows.size()) + " circuits, min slack=" + fmt(worst) +
              ", [[5,1,3]] depth-1 witness " + (witness ? "passes" : "fails")};
}

Outcome tee() {
  const auto toric = toric_code(3);
  const TorusEdges t(3);
  const auto fit = area_law_fit(area_law_entries(toric.dense[0], t, toric_cluster_regions(t)));
  const auto rep = markov_bound(toric, build_schedule(3, 9));
  const bool ok = std::abs(fit.gamma - 1.0) <= 1e-6 && rep.gamma_lower >= 1.0 - 1e-12 && rep.slack >= -1e-9;
  return {ok, "fit gamma=" + fmt(fit.gamma) + " markov gamma>=" + fmt(rep.gamma_lower) + " (m=" +
                  std::to_string(rep.m) + ") slack=" + fmt(rep.slack)};
}

Outcome stringnet() {
  bool ok = true;
  std::ostringstream os;
  for (int L : {2, 3}) {
    const auto rep = stringnet_variance_check(L);
    os << "L=" << L << " N_C=" << rep.N_C << " ratios";
    for (const auto& r : rep.rows) {
      ok = ok && r.sqrt_ratio >= 0.5 && r.sqrt_ratio <= 2.0;
      os << " d=" << r.d << ":" << fmt(r.sqrt_ratio) << "(n_C=" << r.n_c << ")";
    }
    os << "; ";
  }
  return {ok, os.str()};
}

Outcome cft() {
  const auto res = run({{"experiment", "cft-scaling"}, {"seed", 2024}});
  const double slope = res.report["slope"].get<double>();
  const bool dec = res.report["strictly_decreasing"].get<bool>();
  return {dec && slope >= -0.5 && slope <= -0.02,
          std::string("strictly decreasing=") + (dec ? "yes" : "no") + " slope=" + fmt(slope)};
}

Outcome determinism() {
  const std::vector<json> docs{
      {{"experiment", "variance-scan"},
       {"params", {{"codes", {{{"family", "stabilizer"}, {"name", "4_2_2"}}, {{"family", "random"}, {"n", 4}, {"k", 1}}}}}}},
      {{"experiment", "inaccuracy"}, {"params", {{"codes", 3}, {"restarts", 8}, {"max_evaluations", 400}}}},
      {{"experiment", "coherent"}, {"params", {{"codes", 4}}}},
      {{"experiment", "verdict-sweep"}},
      {{"experiment", "proof-replay"}, {"params", {{"circuits", 10}}}},
      {{"experiment", "tee"}, {"params", {{"stringnet_L", {2}}}}},
      {{"experiment", "momentum-scaling"}, {"params", {{"n", {100, 1000}}}}},
      {{"experiment", "heisenberg-scaling"}},
      {{"experiment", "redundant-scaling"}, {"params", {{"restarts", 8}, {"max_evaluations", 400}}}},
      {{"experiment", "cft-scaling"}, {"params", {{"n", {8, 10}}}}},
  };
  std::vector<std::string> differing;
  for (auto doc : docs) {
    doc["seed"] = 31337;
    const auto a = cli::to_csv(run(doc).table);
    doc["threads"] = 2;
    const auto b = cli::to_csv(run(doc).table);
    if (a != b) differing.push_back(doc["experiment"]);
  }
  std::string detail = std::to_string(docs.size()) + " experiments run twice";
  for (const auto& d : differing) detail += ", differs: " + d;
  return {differing.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exactness baseline", exactness},
      {"momentum exact values", momentum_values},
      {"fragmentation verdict flip", verdict_flip},
      {"Heisenberg oracle equivalence", heisenberg_oracle},
      {"two-way sandwich", sandwich},
      {"replacement equality", replacement_equality},
      {"redundant encoding bracket", redundant_bracket},
      {"coherent-information bounds", coherent_bounds},
      {"proof replay", proof_chain},
      {"TEE", tee},
      {"string-net variance", stringnet},
      {"CFT trend", cft},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
