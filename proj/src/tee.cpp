#include "aqec/tee.hpp"

#include "aqec/variance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <set>

namespace aqec {

namespace {

constexpr std::array<std::array<int, 2>, 4> kDirs{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<int> sorted_minus(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.empty();
}

std::vector<char> membership(const PixelTorus& grid, const std::vector<int>& pixels) {
  std::vector<char> in(static_cast<std::size_t>(grid.side() * grid.side()), 0);
  for (int p : pixels) in[static_cast<std::size_t>(p)] = 1;
  return in;
}

int step_pixel(const PixelTorus& grid, int p, int dir) {
  const int N = grid.side();
  const int x = (p % N + kDirs[static_cast<std::size_t>(dir)][0] + N) % N;
  const int y = (p / N + kDirs[static_cast<std::size_t>(dir)][1] + N) % N;
  return y * N + x;
}

double full_entropy(const std::vector<CVec>& states, const std::vector<double>& weights) {
  const auto m = static_cast<Eigen::Index>(states.size());
  CMat g(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      g(i, j) = std::sqrt(weights[static_cast<std::size_t>(i)] * weights[static_cast<std::size_t>(j)]) *
                states[static_cast<std::size_t>(i)].dot(states[static_cast<std::size_t>(j)]);
  return entropy_of_spectrum(hermitian_eigenvalues(g));
}

}  // namespace

int PixelTorus::id(int x, int y) const {
  const int N = side();
  return ((y % N + N) % N) * N + (x % N + N) % N;
}

int PixelTorus::qubit(int pixel) const {
  const int N = side();
  const int x = pixel % N, y = pixel / N;
  if (x % 2 == 1 && y % 2 == 0) return torus.h(x / 2, y / 2);
  if (x % 2 == 0 && y % 2 == 1) return torus.v(x / 2, y / 2);
  return -1;
}

Region PixelTorus::qubits(const std::vector<int>& pixels) const {
  Region r;
  for (int p : pixels)
    if (const int q = qubit(p); q >= 0) r.push_back(q);
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<int> PixelTorus::rect(int x0, int y0, int w, int h) const {
  if (w < 0 || h < 0 || w > side() || h > side()) throw TeeError("rectangle larger than the torus");
  std::vector<int> out;
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) out.push_back(id(x0 + i, y0 + j));
  std::sort(out.begin(), out.end());
  return out;
}

int pixel_components(const PixelTorus& grid, const std::vector<int>& pixels) {
  auto in = membership(grid, pixels);
  int count = 0;
  for (int start : pixels) {
    if (in[static_cast<std::size_t>(start)] != 1) continue;
    ++count;
    std::deque<int> queue{start};
    in[static_cast<std::size_t>(start)] = 2;
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      for (int dir = 0; dir < 4; ++dir) {
        const int q = step_pixel(grid, p, dir);
        if (in[static_cast<std::size_t>(q)] == 1) {
          in[static_cast<std::size_t>(q)] = 2;
          queue.push_back(q);
        }
      }
    }
  }
  return count;
}

int pixel_boundaries(const PixelTorus& grid, const std::vector<int>& pixels) {
  const auto in = membership(grid, pixels);
  auto inside = [&](int p) { return in[static_cast<std::size_t>(p)] != 0; };
  // Segment (p, s): side s of pixel p in P whose neighbour is outside. Walking with P on the
  // left means heading in direction s + 1.
  std::map<std::pair<int, int>, char> seen;
  for (int p : pixels)
    for (int s = 0; s < 4; ++s)
      if (!inside(step_pixel(grid, p, s))) seen[{p, s}] = 0;
  int curves = 0;
  for (auto& [seg, done] : seen) {
    if (done) continue;
    ++curves;
    auto cur = seg;
    while (!seen[cur]) {
      seen[cur] = 1;
      const auto [p, s] = cur;
      const int w = (s + 1) % 4;
      const int a = step_pixel(grid, p, w);
      const int b = step_pixel(grid, step_pixel(grid, p, s), w);
      if (inside(a) && inside(b)) cur = {b, (s + 3) % 4};
      else if (inside(a)) cur = {a, s};
      else cur = {p, w};
    }
  }
  return curves;
}

bool pixel_wraps(const PixelTorus& grid, const std::vector<int>& pixels) {
  const int N = grid.side();
  const auto in = membership(grid, pixels);
  std::map<int, std::pair<int, int>> lift;
  for (int start : pixels) {
    if (lift.count(start)) continue;
    lift[start] = {start % N, start / N};
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      const auto [lx, ly] = lift[p];
      for (int dir = 0; dir < 4; ++dir) {
        const int q = step_pixel(grid, p, dir);
        if (!in[static_cast<std::size_t>(q)]) continue;
        const std::pair<int, int> lq{lx + kDirs[static_cast<std::size_t>(dir)][0], ly + kDirs[static_cast<std::size_t>(dir)][1]};
        auto it = lift.find(q);
        if (it == lift.end()) {
          lift[q] = lq;
          queue.push_back(q);
        } else if (it->second != lq) {
          return true;
        }
      }
    }
  }
  return false;
}

bool pixel_contractible(const PixelTorus& grid, const std::vector<int>& pixels) {
  return !pixels.empty() && pixel_components(grid, pixels) == 1 && !pixel_wraps(grid, pixels) &&
         pixel_boundaries(grid, pixels) == 1;
}

std::vector<std::array<Region, 3>> MarkovSchedule::regions() const {
  const PixelTorus grid(L);
  std::vector<std::array<Region, 3>> out;
  for (const auto& s : steps) out.push_back({grid.qubits(s.a), grid.qubits(s.b), grid.qubits(s.c)});
  return out;
}

void MarkovSchedule::validate() const {
  const PixelTorus grid(L);
  const int N = grid.side();
  const int mm = m();
  if (mm < 3 || mm % 2 == 0) throw TeeError("schedule needs an odd number of steps, at least 3");
  for (int i = 0; i < mm; ++i) {
    const auto& s = steps[static_cast<std::size_t>(i)];
    const std::string at = " at step " + std::to_string(i + 1);
    if (!disjoint(s.a, s.b) || !disjoint(s.b, s.c) || !disjoint(s.a, s.c)) throw TeeError("A, B, C overlap" + at);
    if (s.b.empty() || s.c.empty()) throw TeeError("empty B or C" + at);
    const auto ab = sorted_union(s.a, s.b);
    const auto bc = sorted_union(s.b, s.c);
    const auto abc = sorted_union(ab, s.c);
    if (i == 0) {
      if (!pixel_contractible(grid, ab)) throw TeeError("A1B1 not contractible");
      if (static_cast<int>(grid.qubits(ab).size()) > d) throw TeeError("A1B1 exceeds d qubits");
    }
    if (!pixel_contractible(grid, bc)) throw TeeError("BC not contractible" + at);
    if (static_cast<int>(grid.qubits(bc).size()) > d) throw TeeError("BC exceeds d qubits" + at);
    if (pixel_boundaries(grid, s.b) - pixel_boundaries(grid, bc) != 1) throw TeeError("b(B) - b(BC) != 1" + at);
    if (i + 1 < mm) {
      const auto& next = steps[static_cast<std::size_t>(i + 1)];
      if (sorted_union(next.a, next.b) != abc) throw TeeError("ABC differs from the next AB" + at);
    } else if (static_cast<int>(abc.size()) != N * N) {
      throw TeeError("last step does not cover the torus");
    }
  }
}

int paper_step_count(int n, int d) {
  if (d <= 0) throw TeeError("d must be positive");
  return std::max(3, 2 * (n / (2 * d)) + 1);
}

namespace {

// Evenly spread two-pixel bars over [lo, hi), leaving at least one pixel between them. Two
// pixels across always include a qubit, so every bar end touches one.
std::optional<std::vector<int>> spread_bars(int lo, int hi, int count) {
  const int free = hi - lo - 2 * count;
  if (free < count + 1) return std::nullopt;
  std::vector<int> bars;
  int x = lo;
  for (int b = 0; b < count; ++b) {
    x += free / (count + 1) + (b < free % (count + 1) ? 1 : 0);
    bars.push_back(x);
    x += 2;
  }
  return bars;
}

// Intervals left between bars inside [lo, hi).
std::vector<std::pair<int, int>> gaps(int lo, int hi, const std::vector<int>& bars) {
  std::vector<std::pair<int, int>> out;
  int start = lo;
  for (int b : bars) {
    out.emplace_back(start, b);
    start = b + 2;
  }
  out.emplace_back(start, hi);
  return out;
}

// Strip of height h grown from a width-a rectangle, then a width-w column closing the vertical
// direction. The remaining hole is cut by full-height column bars and then by row bars inside each
// column piece; every cut is a bridge step. Each final piece is capped with its one-pixel frame.
MarkovSchedule strip_schedule(const PixelTorus& grid, int h, int a, int w, const std::vector<int>& cols,
                              const std::vector<int>& rows) {
  const int N = grid.side();
  MarkovSchedule s;
  s.L = grid.torus.L;
  auto push = [&](const std::vector<int>& current, const std::vector<int>& b, const std::vector<int>& c) {
    s.steps.push_back({sorted_minus(current, b), b, c});
  };
  push(grid.rect(0, 0, a, h), sorted_union(grid.rect(0, 0, 1, h), grid.rect(a - 1, 0, 1, h)), grid.rect(a, 0, N - a, h));
  auto current = grid.rect(0, 0, N, h);
  auto add = [&](const std::vector<int>& b, const std::vector<int>& c) {
    push(current, b, c);
    current = sorted_union(current, c);
  };
  add(sorted_union(grid.rect(0, h - 1, w, 1), grid.rect(0, 0, w, 1)), grid.rect(0, h, w, N - h));
  for (int x : cols) add(sorted_union(grid.rect(x, h - 1, 2, 1), grid.rect(x, 0, 2, 1)), grid.rect(x, h, 2, N - h));
  const auto col_gaps = gaps(w, N, cols);
  for (const auto& [x0, x1] : col_gaps)
    for (int y : rows) add(sorted_union(grid.rect(x0 - 1, y, 1, 2), grid.rect(x1, y, 1, 2)), grid.rect(x0, y, x1 - x0, 2));
  for (const auto& [x0, x1] : col_gaps)
    for (const auto& [y0, y1] : gaps(h, N, rows)) {
      auto c = grid.rect(x0, y0, x1 - x0, y1 - y0);
      add(sorted_minus(grid.rect(x0 - 1, y0 - 1, x1 - x0 + 2, y1 - y0 + 2), c), c);
    }
  s.bridges = (s.m() - 3) / 2;
  return s;
}

// Every B component and every C must hold at least one qubit.
bool holds_qubits(const PixelTorus& grid, const MarkovSchedule& s) {
  for (const auto& st : s.steps) {
    if (grid.qubits(st.c).empty()) return false;
    const auto in = membership(grid, st.b);
    std::set<int> done;
    for (int start : st.b) {
      if (done.count(start)) continue;
      bool has = false;
      std::deque<int> queue{start};
      done.insert(start);
      while (!queue.empty()) {
        const int p = queue.front();
        queue.pop_front();
        has = has || grid.qubit(p) >= 0;
        for (int dir = 0; dir < 4; ++dir) {
          const int q = step_pixel(grid, p, dir);
          if (in[static_cast<std::size_t>(q)] && done.insert(q).second) queue.push_back(q);
        }
      }
      if (!has) return false;
    }
  }
  return true;
}

int largest_region(const PixelTorus& grid, const MarkovSchedule& s) {
  int m = static_cast<int>(grid.qubits(sorted_union(s.steps[0].a, s.steps[0].b)).size());
  for (const auto& st : s.steps) m = std::max(m, static_cast<int>(grid.qubits(sorted_union(st.b, st.c)).size()));
  return m;
}

}  // namespace

MarkovSchedule build_schedule(int L, int d) {
  if (L < 2) throw TeeError("torus side must be at least 2");
  if (d <= 0) throw TeeError("d must be positive");
  const PixelTorus grid(L);
  const int N = grid.side();
  std::optional<MarkovSchedule> best;
  int best_size = 0;
  for (int h = 3; h <= N - 1; ++h)
    for (int a = 3; a <= N - 1; ++a)
      for (int w = 1; w <= N - 2; ++w)
        for (int nc = 0; nc < N; ++nc)
          for (int nr = 0; nr < N; ++nr) {
            const auto cols = spread_bars(w, N, nc);
            const auto rows = spread_bars(h, N, nr);
            if (!cols || !rows) continue;
            const int m = 3 + 2 * (nc + nr * (nc + 1));
            if (best && m > best->m()) continue;
            try {
              MarkovSchedule s = strip_schedule(grid, h, a, w, *cols, *rows);
              s.d = d;
              if (!holds_qubits(grid, s)) continue;
              const int size = largest_region(grid, s);
              if (size > d || (best && m == best->m() && size >= best_size)) continue;
              s.validate();
              best = std::move(s);
              best_size = size;
            } catch (const TeeError&) {
              // pieces wider than the torus or an invalid topology; try the next shape
            }
          }
  if (!best) throw TeeError("no schedule keeps every region within " + std::to_string(d) + " qubits");
  return *best;
}

MarkovReport markov_combination(const std::vector<CVec>& states, const std::vector<double>& weights,
                                const MarkovSchedule& schedule) {
  schedule.validate();
  const int n = 2 * schedule.L * schedule.L;
  for (const auto& v : states)
    if (v.size() != (Eigen::Index{1} << n)) throw TeeError("state size does not match the torus");
  auto entropy = [&](const Region& r) { return entropy_of_spectrum(mixture_reduced_spectrum(states, weights, n, r)); };
  MarkovReport rep;
  rep.m = schedule.m();
  const auto regions = schedule.regions();
  Region ab1 = regions[0][0];
  ab1.insert(ab1.end(), regions[0][1].begin(), regions[0][1].end());
  std::sort(ab1.begin(), ab1.end());
  const TorusEdges torus(schedule.L);
  rep.s_a1b1 = entropy(ab1);
  rep.combination = rep.s_a1b1;
  rep.boundary_sum = cut_stars(torus, ab1);
  for (const auto& [a, b, c] : regions) {
    Region bc = b;
    bc.insert(bc.end(), c.begin(), c.end());
    std::sort(bc.begin(), bc.end());
    rep.s_bc.push_back(entropy(bc));
    rep.s_b.push_back(entropy(b));
    rep.combination += rep.s_bc.back() - rep.s_b.back();
    rep.boundary_sum += cut_stars(torus, bc) - cut_stars(torus, b);
  }
  rep.full_entropy = full_entropy(states, weights);
  rep.slack = rep.combination - rep.full_entropy;
  return rep;
}

MarkovReport markov_bound(const CodeSpace& code, const MarkovSchedule& schedule) {
  if (!code.is_dense()) throw TeeError("Markov bound needs a dense code");
  if (code.n != 2 * schedule.L * schedule.L) throw TeeError("code does not live on the schedule's torus");
  std::vector<CVec> states;
  for (const auto& s : code.dense) states.push_back(s.amp);
  const std::vector<double> weights(states.size(), 1.0 / static_cast<double>(states.size()));
  MarkovReport rep = markov_combination(states, weights, schedule);
  rep.k = code.k();
  rep.gamma_lower = rep.k / (rep.m - 1);
  return rep;
}

double entanglement_entropy(const PureState& state, const Region& region) {
  validate_region(region, state.n);
  if (region.empty() || static_cast<int>(region.size()) == state.n) return 0.0;
  return entropy_of_spectrum(mixture_reduced_spectrum({state.amp}, {1.0}, state.n, region));
}

int cut_stars(const TorusEdges& torus, const Region& region) {
  const std::set<int> in(region.begin(), region.end());
  int count = 0;
  for (int y = 0; y < torus.L; ++y)
    for (int x = 0; x < torus.L; ++x) {
      int inside = 0;
      for (int e : torus.star(x, y)) inside += static_cast<int>(in.count(e));
      if (inside > 0 && inside < 4) ++count;
    }
  return count;
}

int crossing_edges(const TorusEdges& torus, const Region& region) {
  const std::set<int> in(region.begin(), region.end());
  std::set<int> crossing;
  for (int y = 0; y < torus.L; ++y)
    for (int x = 0; x < torus.L; ++x) {
      const auto star = torus.star(x, y);
      if (std::none_of(star.begin(), star.end(), [&](int e) { return in.count(e) > 0; })) continue;
      for (int e : star)
        if (!in.count(e)) crossing.insert(e);
    }
  return static_cast<int>(crossing.size());
}

AreaLawFit area_law_fit(const std::vector<AreaLawEntry>& entries) {
  std::set<double> lengths;
  for (const auto& e : entries) lengths.insert(e.boundary);
  if (lengths.size() < 3) throw TeeError("area-law fit needs at least 3 distinct boundary lengths");
  const auto m = static_cast<Eigen::Index>(entries.size());
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd s(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a(i, 0) = entries[static_cast<std::size_t>(i)].boundary;
    a(i, 1) = 1.0;
    s[i] = entries[static_cast<std::size_t>(i)].entropy;
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(s);
  AreaLawFit fit;
  fit.slope = c[0];
  fit.gamma = -c[1];
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Eigen::Index i = 0; i < m; ++i) {
    fit.residuals.push_back(s[i] - a.row(i).dot(c));
    const double g = fit.slope * a(i, 0) - s[i];
    fit.region_gamma.push_back(g);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  fit.gamma_spread = hi - lo;
  return fit;
}

std::vector<std::pair<std::string, Region>> toric_cluster_regions(const TorusEdges& t) {
  if (t.L < 3) throw TeeError("cluster regions need L >= 3");
  auto sorted = [](std::set<int> s) { return Region(s.begin(), s.end()); };
  const auto star = t.star(1, 1);
  const auto plaq = t.plaquette(1, 1);
  std::set<int> both(star.begin(), star.end());
  both.insert(plaq.begin(), plaq.end());
  return {
      {"edge", {t.h(1, 1)}},
      {"corner", sorted({t.h(1, 1), t.v(1, 1)})},
      {"star", sorted({star.begin(), star.end()})},
      {"plaquette", sorted({plaq.begin(), plaq.end()})},
      {"star+plaquette", sorted(both)},
  };
}

std::vector<AreaLawEntry> area_law_entries(const PureState& state, const TorusEdges& torus,
                                           const std::vector<std::pair<std::string, Region>>& regions) {
  if (state.n != torus.n()) throw TeeError("state does not live on the torus");
  std::vector<AreaLawEntry> out;
  for (const auto& [label, r] : regions)
    out.push_back({label, r, static_cast<double>(cut_stars(torus, r)), entanglement_entropy(state, r)});
  return out;
}

void CorrectabilityCertificate::validate() const {
  if (ell < 0) throw TeeError("recovery radius must be nonnegative");
  if (!(eps >= 0.0)) throw TeeError("certificate error must be nonnegative");
}

Region neighborhood_shell(const AdjacencyGraph& g, const Region& region, int ell) {
  validate_region(region, g.n);
  std::vector<int> dist(static_cast<std::size_t>(g.n), -1);
  std::deque<int> queue;
  for (int q : region) {
    dist[static_cast<std::size_t>(q)] = 0;
    queue.push_back(q);
  }
  Region shell;
  while (!queue.empty()) {
    const int p = queue.front();
    queue.pop_front();
    if (dist[static_cast<std::size_t>(p)] == ell) continue;
    for (int q : g.adj[static_cast<std::size_t>(p)])
      if (dist[static_cast<std::size_t>(q)] < 0) {
        dist[static_cast<std::size_t>(q)] = dist[static_cast<std::size_t>(p)] + 1;
        shell.push_back(q);
        queue.push_back(q);
      }
  }
  std::sort(shell.begin(), shell.end());
  return shell;
}

CorrectabilityCertificate expansion_compose(const CorrectabilityCertificate& a, const CorrectabilityCertificate& b,
                                            const AdjacencyGraph& g) {
  a.validate();
  b.validate();
  if (a.ell != b.ell) throw TeeError("certificates use different recovery radii");
  if (neighborhood_shell(g, a.region, a.ell) != b.region)
    throw TeeError("second region is not the recovery-radius shell of the first");
  Region u = a.region;
  u.insert(u.end(), b.region.begin(), b.region.end());
  std::sort(u.begin(), u.end());
  return {u, a.eps + b.eps, a.ell};
}

std::vector<CorrectabilityCertificate> expansion_chain(const CorrectabilityCertificate& seed, const AdjacencyGraph& g,
                                                       int expansions, double shell_eps) {
  if (expansions < 0) throw TeeError("expansion count must be nonnegative");
  std::vector<CorrectabilityCertificate> out;
  CorrectabilityCertificate cur = seed;
  for (int i = 0; i < expansions; ++i) {
    CorrectabilityCertificate shell{neighborhood_shell(g, cur.region, cur.ell), shell_eps, cur.ell};
    if (shell.region.empty()) throw TeeError("region cannot expand further");
    cur = expansion_compose(cur, shell, g);
    out.push_back(cur);
  }
  return out;
}

StringnetReport stringnet_variance_check(int L) {
  if (L < 2 || L > 4) throw TeeError("string-net check needs L in {2,3,4}");
  const CodeSpace code = stringnet_tension_code(L);
  const TorusEdges t(L);
  const auto classes = minimal_loop_classes(L);
  StringnetReport rep;
  rep.L = L;
  rep.n = t.n();
  rep.N_C = static_cast<long long>(classes[3].minimal.size());
  const double n = rep.n;
  for (int s = 1; s <= L; ++s) {
    Region r;
    std::uint64_t mask = 0;
    for (int y = 0; y < s; ++y)
      for (int x = 0; x < s; ++x)
        for (int e : {t.h(x, y), t.v(x, y)}) {
          r.push_back(e);
          mask |= std::uint64_t{1} << e;
        }
    std::sort(r.begin(), r.end());
    StringnetRow row;
    row.s = s;
    row.d = static_cast<int>(r.size());
    row.exact = state_deviation(code, code.sector[0], r);
    for (auto cfg : classes[3].minimal)
      if (cfg & mask) ++row.n_c;
    const double nc = static_cast<double>(rep.N_C);
    row.formula = std::sqrt(row.d) / (2.0 * std::sqrt(n)) + static_cast<double>(row.n_c) / nc + 1.0 / (2.0 * std::sqrt(n)) +
                  1.0 / (4.0 * nc);
    row.sqrt_ratio = row.exact / std::sqrt(row.d / n);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace aqec
