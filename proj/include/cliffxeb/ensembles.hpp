// Copyright 2026 The cliffxeb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Per-cycle gate-distribution samplers. Every sampler is a pure function of
// its arguments and the rng stream, with pinned draw orders, so a seed fully
// determines the sampled circuit on every platform.

#ifndef CLIFFXEB_ENSEMBLES_HPP
#define CLIFFXEB_ENSEMBLES_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cliffxeb/bits.hpp"
#include "cliffxeb/circuit.hpp"
#include "cliffxeb/noise.hpp"

namespace cliffxeb {

enum class EnsembleKind : uint8_t {
    kChain1d,
    kGrid2d,
    kApproxTwirlStar,
    kApproxTwirlGraph,
};

const char *topology_name(EnsembleKind kind);

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::kChain1d;
    int n = 0;
    int rows = 0, cols = 0;  // grid only; rows * cols == n
    // Number of repetitions of the inner twirl block per cycle.
    int twirl_reps = 2;
    // Connectivity for the general-graph twirl, as an undirected edge list.
    std::vector<std::pair<int, int>> edges;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Shortest-path spanning tree with deterministic structure: adjacency is
// visited in sorted order, so equal inputs give equal trees.
struct RootedTree {
    int n = 0;
    int root = 0;
    std::vector<int> parent;                 // parent[root] == -1
    std::vector<std::vector<int>> children;  // ascending within each vertex
    std::vector<int> depth_of;
    int depth = 0;       // D: maximum depth over vertices
    int max_degree = 0;  // max tree degree over all vertices, root included
};

// BFS tree of a connected graph. When no root is given, the root is a graph
// center (minimum eccentricity, smallest index on ties), which minimizes the
// tree depth. Throws std::invalid_argument on malformed edges or a
// disconnected graph.
RootedTree spanning_tree(int n, const std::vector<std::pair<int, int>> &edges,
                         std::optional<int> root = std::nullopt);

// The tree the twirl ensembles route their parity gadget over: qubit 0 as
// the hub for the star kind, a center-rooted BFS tree of `edges` otherwise.
RootedTree make_twirl_tree(const EnsembleSpec &spec);

// One cycle of the 1-D chain ensemble: [C1 on all] [CNOT (0,1)(2,3)...]
// [C1 on all] [CNOT (1,2)(3,4)...]. The last layer is present even when it
// is empty (n = 2). Controls sit on the lower qubit index.
Cycle sample_cycle_chain1d(const EnsembleSpec &spec, Rng &rng);

enum class GridMatching : uint8_t { kA, kB, kC, kD };

// The four disjoint partial matchings that partition the grid's edges,
// keyed by the coordinate parity of the left/top endpoint (r, c):
// A horizontal with r+c even, B horizontal odd, C vertical even, D vertical
// odd. Qubit numbering is row-major; control = left/top endpoint.
std::vector<GateOp> grid_matching(GridMatching which, int rows, int cols);

// One cycle of the 2-D grid ensemble: [C1 on all] [one of A/B/C/D uniformly].
Cycle sample_cycle_grid2d(const EnsembleSpec &spec, Rng &rng);

// The star parity gadget: one layer of CNOTs from each of qubits 1..n-1 onto
// qubit 0, each present independently with probability 3/4, ascending. The
// returned layer may be empty. The gates share the target, commute, and are
// applied in listed order.
Layer sample_random_xor_star(int n, Rng &rng);

// The general parity gadget over a rooted tree: `layers` XORs the parity of
// the drawn member set into the root and restores every other qubit;
// `members` records the drawn set as a bitset over qubits. An empty member
// set yields no layers. The layer count is at most 2 * depth * max_degree.
struct XorFragment {
    std::vector<Layer> layers;
    std::vector<uint64_t> members;
};

XorFragment random_xor_general(const RootedTree &tree, Rng &rng);

// One cycle of the approximate-twirl ensemble: a Pauli layer on all qubits,
// then `twirl_reps` repetitions of the inner block (single-qubit twirl
// layers around three parity gadgets, with the hub qubit receiving the H and
// coin-flip S gates). `tree` must come from make_twirl_tree(spec).
Cycle sample_cycle_approx_twirl(const EnsembleSpec &spec, const RootedTree &tree,
                                Rng &rng);
// Convenience overload that builds the tree on each call.
Cycle sample_cycle_approx_twirl(const EnsembleSpec &spec, Rng &rng);

// Dispatch on spec.kind. `tree` is ignored by the chain and grid kinds.
Cycle sample_cycle(const EnsembleSpec &spec, const RootedTree &tree, Rng &rng);

// Expected per-cycle fidelity under the gate-fault model, averaged over the
// cycle distribution: closed form for chain, grid and star-twirl; a
// fixed-seed Monte Carlo average for the graph twirl.
double ensemble_cycle_fidelity(const EnsembleSpec &spec, const NoiseModel &model);

}  // namespace cliffxeb

#endif  // CLIFFXEB_ENSEMBLES_HPP
