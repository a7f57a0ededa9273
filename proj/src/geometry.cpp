#include "aqec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace aqec {

namespace {

void add_edge(std::vector<std::vector<int>>& adj, int a, int b) {
  if (a == b) return;
  if (std::find(adj[a].begin(), adj[a].end(), b) == adj[a].end()) adj[a].push_back(b);
  if (std::find(adj[b].begin(), adj[b].end(), a) == adj[b].end()) adj[b].push_back(a);
}

void sort_adjacency(std::vector<std::vector<int>>& adj) {
  for (auto& a : adj) std::sort(a.begin(), a.end());
}

std::vector<int> bfs_distances(const AdjacencyGraph& g, int src) {
  std::vector<int> dist(g.n, -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int w : g.adj[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

long long ball_size(const AdjacencyGraph& g, int src, int t) {
  const auto dist = bfs_distances(g, src);
  return std::count_if(dist.begin(), dist.end(), [t](int x) { return x >= 0 && x <= t; });
}

void apply_gate(CVec& v, int n, const Gate& gate) {
  const std::uint64_t ma = qubit_mask(n, gate.a);
  const std::uint64_t mb = qubit_mask(n, gate.b);
  const std::uint64_t dim = static_cast<std::uint64_t>(v.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & (ma | mb)) continue;
    const std::uint64_t idx[4] = {i, i | mb, i | ma, i | ma | mb};
    cplx in[4], out[4];
    for (int r = 0; r < 4; ++r) in[r] = v[static_cast<Eigen::Index>(idx[r])];
    for (int r = 0; r < 4; ++r) {
      out[r] = 0.0;
      for (int c = 0; c < 4; ++c) out[r] += gate.u(r, c) * in[c];
    }
    for (int r = 0; r < 4; ++r) v[static_cast<Eigen::Index>(idx[r])] = out[r];
  }
}

struct WindEdge {
  int to;
  int dx, dy;
};

bool has_winding_cycle(int nodes, int L, const std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>& edges) {
  // edges: ((from, to), (dx, dy)) on an L x L periodic grid of nodes indexed y*L+x
  std::vector<std::vector<WindEdge>> adj(nodes);
  for (const auto& [ft, d] : edges) {
    adj[ft.first].push_back({ft.second, d.first, d.second});
    adj[ft.second].push_back({ft.first, -d.first, -d.second});
  }
  std::vector<std::array<long, 2>> pos(nodes);
  std::vector<char> seen(nodes, 0);
  for (int s = 0; s < nodes; ++s) {
    if (seen[s] || adj[s].empty()) continue;
    seen[s] = 1;
    pos[s] = {s % L, s / L};
    std::deque<int> q{s};
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (const auto& e : adj[u]) {
        const std::array<long, 2> want{pos[u][0] + e.dx, pos[u][1] + e.dy};
        if (!seen[e.to]) {
          seen[e.to] = 1;
          pos[e.to] = want;
          q.push_back(e.to);
        } else if (pos[e.to] != want) {
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

AdjacencyGraph AdjacencyGraph::complete(int n) {
  if (n < 1) throw GeometryError("graph needs at least one node");
  AdjacencyGraph g;
  g.n = n;
  g.kind = GraphKind::Complete;
  g.adj.assign(n, {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) g.adj[a].push_back(b);
  return g;
}

AdjacencyGraph AdjacencyGraph::ring(int n) {
  if (n < 1) throw GeometryError("graph needs at least one node");
  AdjacencyGraph g;
  g.n = n;
  g.kind = GraphKind::Ring;
  g.sides = {n};
  g.periodic = true;
  g.adj.assign(n, {});
  for (int a = 0; a < n; ++a) add_edge(g.adj, a, (a + 1) % n);
  sort_adjacency(g.adj);
  return g;
}

AdjacencyGraph AdjacencyGraph::lattice(std::vector<int> sides, bool periodic) {
  if (sides.empty()) throw GeometryError("lattice needs at least one dimension");
  long long total = 1;
  for (int s : sides) {
    if (s < 1) throw GeometryError("lattice side must be positive");
    total *= s;
  }
  if (total > 100000000) throw GeometryError("lattice too large");
  AdjacencyGraph g;
  g.n = static_cast<int>(total);
  g.kind = GraphKind::Lattice;
  g.sides = sides;
  g.periodic = periodic;
  g.adj.assign(g.n, {});
  const int D = static_cast<int>(sides.size());
  std::vector<int> stride(D, 1);
  for (int i = D - 2; i >= 0; --i) stride[i] = stride[i + 1] * sides[i + 1];
  for (int site = 0; site < g.n; ++site) {
    for (int ax = 0; ax < D; ++ax) {
      const int c = (site / stride[ax]) % sides[ax];
      int nc = c + 1;
      if (nc == sides[ax]) {
        if (!periodic) continue;
        nc = 0;
      }
      add_edge(g.adj, site, site + (nc - c) * stride[ax]);
    }
  }
  sort_adjacency(g.adj);
  return g;
}

AdjacencyGraph AdjacencyGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1) throw GeometryError("graph needs at least one node");
  AdjacencyGraph g;
  g.n = n;
  g.kind = GraphKind::Explicit;
  g.adj.assign(n, {});
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw GeometryError("edge endpoint out of range");
    if (a == b) throw GeometryError("self loops are not allowed");
    add_edge(g.adj, a, b);
  }
  sort_adjacency(g.adj);
  return g;
}

bool AdjacencyGraph::has_edge(int a, int b) const {
  if (a < 0 || a >= n) return false;
  return std::binary_search(adj[a].begin(), adj[a].end(), b) ||
         std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
}

int AdjacencyGraph::dimension() const {
  if (kind == GraphKind::Ring) return 1;
  if (kind == GraphKind::Lattice) return static_cast<int>(sides.size());
  throw GeometryError("graph has no lattice dimension");
}

std::vector<std::pair<int, int>> AdjacencyGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b : adj[a])
      if (a < b) out.emplace_back(a, b);
  return out;
}

std::string AdjacencyGraph::describe() const {
  std::ostringstream os;
  switch (kind) {
    case GraphKind::Complete: os << "complete(" << n << ")"; break;
    case GraphKind::Ring: os << "ring(" << n << ")"; break;
    case GraphKind::Lattice: {
      os << "lattice(";
      for (std::size_t i = 0; i < sides.size(); ++i) os << (i ? "x" : "") << sides[i];
      os << (periodic ? ",periodic)" : ",open)");
      break;
    }
    case GraphKind::Explicit: os << "explicit(" << n << " nodes, " << edges().size() << " edges)"; break;
  }
  return os.str();
}

bool is_connected(const AdjacencyGraph& g, const Region& region) {
  if (region.empty()) return false;
  std::set<int> members(region.begin(), region.end());
  std::set<int> seen{region.front()};
  std::deque<int> q{region.front()};
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    for (int w : g.adj[u])
      if (members.count(w) && seen.insert(w).second) q.push_back(w);
  }
  return seen.size() == members.size();
}

void for_each_connected_region(const AdjacencyGraph& g, int d, const std::function<void(const Region&)>& visit) {
  if (d < 1 || d > g.n) throw GeometryError("region size out of range");
  std::vector<int> sub;
  std::vector<int> closed(g.n, 0);  // number of sub members whose closed neighbourhood contains the node
  auto mark = [&](int w, int delta) {
    closed[w] += delta;
    for (int u : g.adj[w]) closed[u] += delta;
  };
  std::function<void(std::vector<int>, int)> extend = [&](std::vector<int> ext, int root) {
    Region r = sub;
    std::sort(r.begin(), r.end());
    visit(r);
    if (static_cast<int>(sub.size()) == d) return;
    while (!ext.empty()) {
      const int w = ext.back();
      ext.pop_back();
      std::vector<int> next = ext;
      for (int u : g.adj[w])
        if (u > root && closed[u] == 0) next.push_back(u);
      sub.push_back(w);
      mark(w, +1);
      extend(std::move(next), root);
      mark(w, -1);
      sub.pop_back();
    }
  };
  for (int v = 0; v < g.n; ++v) {
    sub = {v};
    mark(v, +1);
    std::vector<int> ext;
    for (int u : g.adj[v])
      if (u > v) ext.push_back(u);
    extend(std::move(ext), v);
    mark(v, -1);
  }
}

std::vector<Region> connected_regions(const AdjacencyGraph& g, int d) {
  std::vector<Region> out;
  for_each_connected_region(g, d, [&](const Region& r) { out.push_back(r); });
  return out;
}

std::size_t count_connected_regions(const AdjacencyGraph& g, int d) {
  std::size_t c = 0;
  for_each_connected_region(g, d, [&](const Region&) { ++c; });
  return c;
}

void LayeredCircuit::validate(const AdjacencyGraph& g) const {
  if (g.n != n) throw GeometryError("circuit and graph sizes differ");
  for (const auto& layer : layers) {
    std::vector<char> used(n, 0);
    for (const auto& gate : layer) {
      if (!g.has_edge(gate.a, gate.b)) throw GeometryError("gate placed on a non-edge");
      if (used[gate.a] || used[gate.b]) throw GeometryError("gates within a layer overlap");
      used[gate.a] = used[gate.b] = 1;
      if (gate.u.rows() != 4 || gate.u.cols() != 4) throw GeometryError("gate must be 4x4");
      if ((gate.u.adjoint() * gate.u - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() > 1e-9)
        throw GeometryError("gate is not unitary");
    }
  }
}

LayeredCircuit LayeredCircuit::inverse() const {
  LayeredCircuit inv;
  inv.n = n;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    std::vector<Gate> layer;
    for (const auto& gate : *it) layer.push_back({gate.a, gate.b, gate.u.adjoint()});
    inv.layers.push_back(std::move(layer));
  }
  return inv;
}

CVec LayeredCircuit::apply(const CVec& state) const {
  CVec v = state;
  for (const auto& layer : layers)
    for (const auto& gate : layer) apply_gate(v, n, gate);
  return v;
}

CMat LayeredCircuit::apply_conjugation(const CMat& rho) const {
  CMat x = rho;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    CVec col = x.col(c);
    x.col(c) = apply(col);
  }
  CMat y = x.adjoint();
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    CVec col = y.col(c);
    y.col(c) = apply(col);
  }
  return y.adjoint();
}

LayeredCircuit random_circuit(const AdjacencyGraph& g, int depth, Rng& rng) {
  LayeredCircuit c;
  c.n = g.n;
  auto all = g.edges();
  for (int l = 0; l < depth; ++l) {
    auto edges = all;
    // Fisher-Yates with an explicit draw so the sequence does not depend on the library's shuffle.
    for (std::size_t i = edges.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(edges[i - 1], edges[j]);
    }
    std::vector<char> used(g.n, 0);
    std::vector<Gate> layer;
    for (const auto& [a, b] : edges) {
      if (used[a] || used[b]) continue;
      used[a] = used[b] = 1;
      layer.push_back({a, b, haar_unitary(4, rng)});
    }
    c.layers.push_back(std::move(layer));
  }
  return c;
}

LayeredCircuit brickwork_circuit(int n, int depth, Rng& rng) {
  LayeredCircuit c;
  c.n = n;
  for (int l = 0; l < depth; ++l) {
    std::vector<Gate> layer;
    for (int i = l % 2; i + 1 < n; i += 2) layer.push_back({i, i + 1, haar_unitary(4, rng)});
    if (l % 2 == 1 && n % 2 == 0 && n > 2) layer.push_back({n - 1, 0, haar_unitary(4, rng)});
    c.layers.push_back(std::move(layer));
  }
  return c;
}

Region light_cone(const LayeredCircuit& circuit, const Region& target) {
  validate_region(target, circuit.n);
  std::vector<char> in(circuit.n, 0);
  for (int q : target) in[q] = 1;
  for (auto it = circuit.layers.rbegin(); it != circuit.layers.rend(); ++it)
    for (const auto& gate : *it)
      if (in[gate.a] || in[gate.b]) in[gate.a] = in[gate.b] = 1;
  Region out;
  for (int q = 0; q < circuit.n; ++q)
    if (in[q]) out.push_back(q);
  return out;
}

Covering covering(const AdjacencyGraph& g, int d_tilde) {
  if (g.kind != GraphKind::Lattice && g.kind != GraphKind::Ring) throw GeometryError("covering requires a lattice");
  if (d_tilde < 1) throw GeometryError("block size must be positive");
  const int D = static_cast<int>(g.sides.size());
  int b = static_cast<int>(std::lround(std::pow(static_cast<double>(d_tilde), 1.0 / D)));
  auto power = [D](long long x) {
    long long p = 1;
    for (int i = 0; i < D; ++i) p *= x;
    return p;
  };
  while (b > 1 && power(b) > d_tilde) --b;
  while (power(b + 1) <= d_tilde) ++b;
  if (power(b) != d_tilde) throw GeometryError("block size is not a D-th power");
  Covering cov;
  cov.block_side = b;
  std::vector<int> counts(D), stride(D, 1);
  for (int i = D - 2; i >= 0; --i) stride[i] = stride[i + 1] * g.sides[i + 1];
  int total = 1;
  for (int ax = 0; ax < D; ++ax) {
    counts[ax] = (g.sides[ax] + b - 1) / b;
    total *= counts[ax];
  }
  cov.count = total;
  for (int blk = 0; blk < total; ++blk) {
    std::vector<int> lo(D), hi(D);
    int rem = blk;
    for (int ax = D - 1; ax >= 0; --ax) {
      lo[ax] = (rem % counts[ax]) * b;
      hi[ax] = std::min(lo[ax] + b, g.sides[ax]);
      rem /= counts[ax];
    }
    Region r;
    std::vector<int> c = lo;
    while (true) {
      int idx = 0;
      for (int ax = 0; ax < D; ++ax) idx += c[ax] * stride[ax];
      r.push_back(idx);
      int ax = D - 1;
      while (ax >= 0) {
        if (++c[ax] < hi[ax]) break;
        c[ax] = lo[ax];
        --ax;
      }
      if (ax < 0) break;
    }
    std::sort(r.begin(), r.end());
    cov.blocks.push_back(std::move(r));
  }
  return cov;
}

int covering_number(const AdjacencyGraph& g, int d_tilde) { return covering(g, d_tilde).count; }

long long max_lightcone_growth(const AdjacencyGraph& g, int t) {
  if (t < 0) throw GeometryError("depth must be nonnegative");
  switch (g.kind) {
    case GraphKind::Complete:
      if (t >= 62) return g.n;
      return std::min<long long>(1LL << t, g.n);
    case GraphKind::Ring:
      return std::min<long long>(2LL * t + 1, g.n);
    case GraphKind::Lattice:
      if (g.periodic) return ball_size(g, 0, t);
      [[fallthrough]];
    case GraphKind::Explicit: {
      long long best = 0;
      for (int v = 0; v < g.n; ++v) best = std::max(best, ball_size(g, v, t));
      return best;
    }
  }
  return g.n;
}

int lightcone_inverse(const AdjacencyGraph& g, long long d) {
  if (d < 1) throw GeometryError("region budget must be positive");
  int t = 0;
  while (t < g.n && max_lightcone_growth(g, t + 1) <= d) ++t;
  return t;
}

TorusEdges::TorusEdges(int L_) : L(L_) {
  if (L < 2) throw GeometryError("torus needs L >= 2");
}

int TorusEdges::h(int x, int y) const { return wrap(y) * L + wrap(x); }
int TorusEdges::v(int x, int y) const { return L * L + wrap(y) * L + wrap(x); }

std::array<int, 4> TorusEdges::star(int x, int y) const { return {h(x, y), h(x - 1, y), v(x, y), v(x, y - 1)}; }

std::array<int, 4> TorusEdges::plaquette(int x, int y) const { return {h(x, y), h(x, y + 1), v(x, y), v(x + 1, y)}; }

std::pair<std::array<int, 2>, std::array<int, 2>> TorusEdges::endpoints(int e) const {
  if (e < 0 || e >= n()) throw GeometryError("edge index out of range");
  const bool vertical = e >= L * L;
  const int i = vertical ? e - L * L : e;
  const int x = i % L, y = i / L;
  if (vertical) return {{x, y}, {x, wrap(y + 1)}};
  return {{x, y}, {wrap(x + 1), y}};
}

AdjacencyGraph TorusEdges::qubit_graph() const {
  std::vector<std::pair<int, int>> edges;
  for (int y = 0; y < L; ++y)
    for (int x = 0; x < L; ++x) {
      const auto s = star(x, y);
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (s[i] != s[j]) edges.emplace_back(s[i], s[j]);
    }
  return AdjacencyGraph::from_edges(n(), edges);
}

bool torus_region_winds(const TorusEdges& torus, const Region& region) {
  validate_region(region, torus.n());
  const int L = torus.L;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> primal, dual;
  for (int e : region) {
    const bool vertical = e >= L * L;
    const int i = vertical ? e - L * L : e;
    const int x = i % L, y = i / L;
    if (vertical) {
      primal.push_back({{y * L + x, torus.wrap(y + 1) * L + x}, {0, 1}});
      // v(x,y) separates plaquettes (x-1,y) and (x,y)
      dual.push_back({{y * L + torus.wrap(x - 1), y * L + x}, {1, 0}});
    } else {
      primal.push_back({{y * L + x, y * L + torus.wrap(x + 1)}, {1, 0}});
      // h(x,y) separates plaquettes (x,y-1) and (x,y)
      dual.push_back({{torus.wrap(y - 1) * L + x, y * L + x}, {0, 1}});
    }
  }
  return has_winding_cycle(L * L, L, primal) || has_winding_cycle(L * L, L, dual);
}

}  // namespace aqec
