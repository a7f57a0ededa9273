#pragma once

#include "aqec/numerics.hpp"
#include "aqec/random.hpp"

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace aqec {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GraphKind { Complete, Ring, Lattice, Explicit };

struct AdjacencyGraph {
  int n = 0;
  GraphKind kind = GraphKind::Explicit;
  std::vector<int> sides;  // lattice side lengths (ring: {n})
  bool periodic = false;
  std::vector<std::vector<int>> adj;

  static AdjacencyGraph complete(int n);
  static AdjacencyGraph ring(int n);
  // Sites indexed row-major, last coordinate fastest.
  static AdjacencyGraph lattice(std::vector<int> sides, bool periodic);
  static AdjacencyGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  bool has_edge(int a, int b) const;
  int dimension() const;  // lattice dimension; 1 for rings
  std::vector<std::pair<int, int>> edges() const;
  std::string describe() const;
};

bool is_connected(const AdjacencyGraph& g, const Region& region);

// Streams every connected region of size 1..d exactly once (ESU-style canonical extension).
void for_each_connected_region(const AdjacencyGraph& g, int d, const std::function<void(const Region&)>& visit);
std::vector<Region> connected_regions(const AdjacencyGraph& g, int d);
std::size_t count_connected_regions(const AdjacencyGraph& g, int d);

// Two-qubit gate; the 4x4 unitary acts on (a, b) with a as the more significant bit.
struct Gate {
  int a = 0;
  int b = 0;
  CMat u;
};

struct LayeredCircuit {
  int n = 0;
  std::vector<std::vector<Gate>> layers;

  int depth() const { return static_cast<int>(layers.size()); }
  void validate(const AdjacencyGraph& g) const;
  LayeredCircuit inverse() const;
  CVec apply(const CVec& state) const;
  CMat apply_conjugation(const CMat& rho) const;  // U rho U^dagger
};

// Layers of randomly chosen disjoint graph edges carrying Haar-random gates.
LayeredCircuit random_circuit(const AdjacencyGraph& g, int depth, Rng& rng);
// Alternating nearest-neighbour pairs on a ring (open chain if n is odd).
LayeredCircuit brickwork_circuit(int n, int depth, Rng& rng);

// Input wires that can influence the target wires at the output (backward light cone).
Region light_cone(const LayeredCircuit& circuit, const Region& target);

struct Covering {
  int count = 0;
  int block_side = 0;
  std::vector<Region> blocks;
};

// Axis-aligned hypercube cover of a lattice or ring by blocks of side d_tilde^(1/D).
Covering covering(const AdjacencyGraph& g, int d_tilde);
int covering_number(const AdjacencyGraph& g, int d_tilde);

// f(t): largest single-site light cone after t layers.
long long max_lightcone_growth(const AdjacencyGraph& g, int t);
// max{t : f(t) <= d}; capped at n when f saturates below d.
int lightcone_inverse(const AdjacencyGraph& g, long long d);

// L x L periodic square lattice with qubits on edges.
struct TorusEdges {
  int L = 0;

  explicit TorusEdges(int L);
  int n() const { return 2 * L * L; }
  int wrap(int c) const { return ((c % L) + L) % L; }
  int h(int x, int y) const;  // edge (x,y)-(x+1,y)
  int v(int x, int y) const;  // edge (x,y)-(x,y+1)
  std::array<int, 4> star(int x, int y) const;
  std::array<int, 4> plaquette(int x, int y) const;  // plaquette with lower-left corner (x,y)
  std::pair<std::array<int, 2>, std::array<int, 2>> endpoints(int e) const;
  // Qubits adjacent when their edges share a vertex.
  AdjacencyGraph qubit_graph() const;
};

// True if the region contains a loop winding around the torus, on the primal or dual lattice.
bool torus_region_winds(const TorusEdges& torus, const Region& region);

}  // namespace aqec
