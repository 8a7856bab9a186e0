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

#include "cliffxeb/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "cliffxeb/clifford1.hpp"

namespace cliffxeb {

const char *topology_name(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::kChain1d: return "chain";
        case EnsembleKind::kGrid2d: return "grid";
        case EnsembleKind::kApproxTwirlStar: return "twirl_star";
        case EnsembleKind::kApproxTwirlGraph: return "twirl_graph";
    }
    return "unknown";
}

void EnsembleSpec::validate() const {
    if (n < 1) throw std::invalid_argument("ensemble: n must be at least 1");
    switch (kind) {
        case EnsembleKind::kChain1d:
            break;
        case EnsembleKind::kGrid2d:
            if (rows < 1 || cols < 1) {
                throw std::invalid_argument("ensemble: rows and cols must be at least 1");
            }
            if (rows * cols != n) {
                throw std::invalid_argument("ensemble: rows * cols must equal n");
            }
            break;
        case EnsembleKind::kApproxTwirlStar:
        case EnsembleKind::kApproxTwirlGraph:
            if (n < 2) {
                throw std::invalid_argument("ensemble: the twirl kinds need n >= 2");
            }
            if (twirl_reps < 1) {
                throw std::invalid_argument("ensemble: twirl_reps must be at least 1");
            }
            if (kind == EnsembleKind::kApproxTwirlGraph) {
                if (edges.empty()) {
                    throw std::invalid_argument("ensemble: the graph twirl needs an edge list");
                }
                for (const auto &[u, v] : edges) {
                    if (u < 0 || u >= n || v < 0 || v >= n) {
                        throw std::invalid_argument(
                            "ensemble: edge endpoint out of range, got " +
                            std::to_string(u) + "-" + std::to_string(v));
                    }
                    if (u == v) {
                        throw std::invalid_argument("ensemble: self-loop edge on qubit " +
                                                    std::to_string(u));
                    }
                }
            }
            break;
    }
}

namespace {

std::vector<std::vector<int>> sorted_adjacency(int n,
                                               const std::vector<std::pair<int, int>> &edges) {
    std::vector<std::vector<int>> adj(n);
    for (const auto &[u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw std::invalid_argument("spanning tree: edge endpoint out of range");
        }
        if (u == v) throw std::invalid_argument("spanning tree: self-loop edge");
        adj[(size_t)u].push_back(v);
        adj[(size_t)v].push_back(u);
    }
    for (auto &nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return adj;
}

// Distances from s; -1 marks unreachable vertices.
std::vector<int> bfs_distances(const std::vector<std::vector<int>> &adj, int s) {
    std::vector<int> dist(adj.size(), -1);
    std::queue<int> q;
    dist[(size_t)s] = 0;
    q.push(s);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj[(size_t)u]) {
            if (dist[(size_t)v] < 0) {
                dist[(size_t)v] = dist[(size_t)u] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

}  // namespace

RootedTree spanning_tree(int n, const std::vector<std::pair<int, int>> &edges,
                         std::optional<int> root) {
    if (n < 1) throw std::invalid_argument("spanning tree: need at least one vertex");
    const std::vector<std::vector<int>> adj = sorted_adjacency(n, edges);

    int r;
    if (root.has_value()) {
        if (*root < 0 || *root >= n) {
            throw std::invalid_argument("spanning tree: root out of range");
        }
        r = *root;
    } else {
        // Graph center: minimize the eccentricity so the tree is as shallow
        // as the graph allows; smallest index breaks ties.
        int best = -1, best_ecc = std::numeric_limits<int>::max();
        for (int s = 0; s < n; s++) {
            const std::vector<int> dist = bfs_distances(adj, s);
            int ecc = 0;
            for (int d : dist) {
                if (d < 0) {
                    throw std::invalid_argument("spanning tree: graph is not connected");
                }
                ecc = std::max(ecc, d);
            }
            if (ecc < best_ecc) {
                best_ecc = ecc;
                best = s;
            }
        }
        r = best;
    }

    RootedTree t;
    t.n = n;
    t.root = r;
    t.parent.assign((size_t)n, -1);
    t.children.assign((size_t)n, {});
    t.depth_of.assign((size_t)n, -1);
    std::queue<int> q;
    t.depth_of[(size_t)r] = 0;
    q.push(r);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj[(size_t)u]) {
            if (t.depth_of[(size_t)v] < 0) {
                t.depth_of[(size_t)v] = t.depth_of[(size_t)u] + 1;
                t.parent[(size_t)v] = u;
                t.children[(size_t)u].push_back(v);
                q.push(v);
            }
        }
    }
    for (int v = 0; v < n; v++) {
        if (t.depth_of[(size_t)v] < 0) {
            throw std::invalid_argument("spanning tree: graph is not connected");
        }
        t.depth = std::max(t.depth, t.depth_of[(size_t)v]);
    }
    for (int v = 0; v < n; v++) {
        const int deg = (int)t.children[(size_t)v].size() + (v == r ? 0 : 1);
        t.max_degree = std::max(t.max_degree, deg);
    }
    return t;
}

RootedTree make_twirl_tree(const EnsembleSpec &spec) {
    spec.validate();
    if (spec.kind == EnsembleKind::kApproxTwirlGraph) {
        return spanning_tree(spec.n, spec.edges);
    }
    // Star with qubit 0 as the hub (also used, unread, by chain and grid).
    RootedTree t;
    t.n = spec.n;
    t.root = 0;
    t.parent.assign((size_t)spec.n, 0);
    t.parent[0] = -1;
    t.children.assign((size_t)spec.n, {});
    t.depth_of.assign((size_t)spec.n, 1);
    t.depth_of[0] = 0;
    for (int q = 1; q < spec.n; q++) t.children[0].push_back(q);
    t.depth = spec.n > 1 ? 1 : 0;
    t.max_degree = spec.n > 1 ? spec.n - 1 : 0;
    return t;
}

namespace {

Layer random_c1_layer(int n, Cycle &cy, Rng &rng) {
    Layer l;
    l.kind = LayerKind::kSingleQubit;
    l.ops.reserve((size_t)n);
    for (int q = 0; q < n; q++) {
        l.ops.push_back({GateKind::kSingleClifford, (uint16_t)q,
                         (uint16_t)rng.below(kNumC1)});
    }
    cy.n1q += (uint64_t)n;
    return l;
}

}  // namespace

Cycle sample_cycle_chain1d(const EnsembleSpec &spec, Rng &rng) {
    const int n = spec.n;
    Cycle cy;
    auto brick_layer = [&](int start) {
        Layer l;
        l.kind = LayerKind::kEntangling;
        for (int q = start; q + 1 < n; q += 2) {
            l.ops.push_back({GateKind::kCnot, (uint16_t)q, (uint16_t)(q + 1)});
            cy.n2q++;
        }
        return l;
    };
    cy.layers.push_back(random_c1_layer(n, cy, rng));
    cy.layers.push_back(brick_layer(0));
    cy.layers.push_back(random_c1_layer(n, cy, rng));
    // Kept even when empty (n = 2) so every chain cycle has four layers.
    cy.layers.push_back(brick_layer(1));
    return cy;
}

std::vector<GateOp> grid_matching(GridMatching which, int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("grid matching: rows and cols must be at least 1");
    }
    const bool horizontal = which == GridMatching::kA || which == GridMatching::kB;
    const int parity = (which == GridMatching::kA || which == GridMatching::kC) ? 0 : 1;
    std::vector<GateOp> out;
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c < cols; c++) {
            if (((r + c) & 1) != parity) continue;
            const int q = r * cols + c;
            if (horizontal && c + 1 < cols) {
                out.push_back({GateKind::kCnot, (uint16_t)q, (uint16_t)(q + 1)});
            } else if (!horizontal && r + 1 < rows) {
                out.push_back({GateKind::kCnot, (uint16_t)q, (uint16_t)(q + cols)});
            }
        }
    }
    return out;
}

Cycle sample_cycle_grid2d(const EnsembleSpec &spec, Rng &rng) {
    Cycle cy;
    cy.layers.push_back(random_c1_layer(spec.n, cy, rng));
    const auto which = (GridMatching)rng.below(4);
    Layer l;
    l.kind = LayerKind::kEntangling;
    l.ops = grid_matching(which, spec.rows, spec.cols);
    cy.n2q += l.ops.size();
    // The matching layer is structural and kept even when empty (1-row or
    // 1-column grids have no vertical edges).
    cy.layers.push_back(std::move(l));
    return cy;
}

Layer sample_random_xor_star(int n, Rng &rng) {
    if (n < 2) throw std::invalid_argument("star parity gadget needs n >= 2");
    Layer l;
    l.kind = LayerKind::kEntangling;
    for (int q = 1; q < n; q++) {
        if (rng.bernoulli(0.75)) {
            l.ops.push_back({GateKind::kCnot, (uint16_t)q, 0});
        }
    }
    return l;
}

XorFragment random_xor_general(const RootedTree &tree, Rng &rng) {
    const int n = tree.n;
    XorFragment frag;
    frag.members.assign(words_for_bits((size_t)n), 0);
    std::vector<char> member((size_t)n, 0);
    bool any = false;
    for (int q = 0; q < n; q++) {
        if (q == tree.root) continue;
        if (rng.bernoulli(0.75)) {
            member[(size_t)q] = 1;
            set_bit(frag.members, (size_t)q, true);
            any = true;
        }
    }
    if (!any) return frag;

    // active = "subtree contains a member"; computed bottom-up by depth.
    std::vector<int> by_depth((size_t)n);
    std::iota(by_depth.begin(), by_depth.end(), 0);
    std::sort(by_depth.begin(), by_depth.end(), [&](int a, int b) {
        if (tree.depth_of[(size_t)a] != tree.depth_of[(size_t)b]) {
            return tree.depth_of[(size_t)a] > tree.depth_of[(size_t)b];
        }
        return a < b;
    });
    std::vector<char> active((size_t)n, 0);
    for (int v : by_depth) {
        active[(size_t)v] = member[(size_t)v];
        for (int c : tree.children[(size_t)v]) active[(size_t)v] |= active[(size_t)c];
    }

    // Accumulation pass: level by level toward the root, each active vertex
    // gathering its active children's parities. A non-member vertex first
    // parks its own bit on its first active child so the gather leaves it
    // holding the pure subtree parity. Gates of different vertices at one
    // level touch disjoint pairs, so slot s across vertices forms a matching.
    std::vector<Layer> gather;
    for (int l = tree.depth - 1; l >= 1; l--) {
        std::vector<std::vector<GateOp>> per_vertex;
        size_t slots = 0;
        for (int x = 0; x < n; x++) {
            if (tree.depth_of[(size_t)x] != l || !active[(size_t)x]) continue;
            std::vector<GateOp> ops;
            if (!member[(size_t)x]) {
                for (int c : tree.children[(size_t)x]) {
                    if (active[(size_t)c]) {
                        ops.push_back({GateKind::kCnot, (uint16_t)x, (uint16_t)c});
                        break;
                    }
                }
            }
            for (int c : tree.children[(size_t)x]) {
                if (active[(size_t)c]) {
                    ops.push_back({GateKind::kCnot, (uint16_t)c, (uint16_t)x});
                }
            }
            slots = std::max(slots, ops.size());
            per_vertex.push_back(std::move(ops));
        }
        for (size_t s = 0; s < slots; s++) {
            Layer lay;
            lay.kind = LayerKind::kEntangling;
            for (const auto &ops : per_vertex) {
                if (s < ops.size()) lay.ops.push_back(ops[s]);
            }
            gather.push_back(std::move(lay));
        }
    }

    // Fan-in of the depth-1 parities onto the root: shared target, commuting,
    // applied in listed order.
    Layer fan;
    fan.kind = LayerKind::kEntangling;
    for (int x : tree.children[(size_t)tree.root]) {
        if (active[(size_t)x]) {
            fan.ops.push_back({GateKind::kCnot, (uint16_t)x, (uint16_t)tree.root});
        }
    }

    frag.layers = gather;
    if (!fan.ops.empty()) frag.layers.push_back(std::move(fan));
    // Uncompute: the gather layers in reverse order restore every non-root
    // qubit (disjoint CNOTs within a layer are their own inverse).
    for (auto it = gather.rbegin(); it != gather.rend(); ++it) {
        frag.layers.push_back(*it);
    }
    return frag;
}

namespace {

void append_xor(const EnsembleSpec &spec, const RootedTree &tree, Cycle &cy, Rng &rng) {
    if (spec.kind == EnsembleKind::kApproxTwirlStar) {
        Layer l = sample_random_xor_star(spec.n, rng);
        cy.n2q += l.ops.size();
        if (!l.ops.empty()) cy.layers.push_back(std::move(l));
    } else {
        XorFragment f = random_xor_general(tree, rng);
        for (Layer &l : f.layers) {
            cy.n2q += l.ops.size();
            cy.layers.push_back(std::move(l));
        }
    }
}

Layer twirl_layer_all(int n, Cycle &cy, Rng &rng) {
    Layer l;
    l.kind = LayerKind::kSingleQubit;
    for (int q = 0; q < n; q++) {
        l.ops.push_back({GateKind::kSingleClifford, (uint16_t)q,
                         kTwirlSet6[rng.below(6)]});
    }
    cy.n1q += (uint64_t)n;
    return l;
}

Layer twirl_layer_hub_h(int n, int root, Cycle &cy, Rng &rng) {
    Layer l;
    l.kind = LayerKind::kSingleQubit;
    l.ops.push_back({GateKind::kSingleClifford, (uint16_t)root, (uint16_t)kC1H});
    for (int q = 0; q < n; q++) {
        if (q == root) continue;
        l.ops.push_back({GateKind::kSingleClifford, (uint16_t)q,
                         kTwirlSet6[rng.below(6)]});
    }
    cy.n1q += (uint64_t)n;
    return l;
}

}  // namespace

Cycle sample_cycle_approx_twirl(const EnsembleSpec &spec, const RootedTree &tree,
                                Rng &rng) {
    if (spec.kind != EnsembleKind::kApproxTwirlStar &&
        spec.kind != EnsembleKind::kApproxTwirlGraph) {
        throw std::invalid_argument("twirl sampler called for a non-twirl ensemble");
    }
    const int n = spec.n;
    const int root = tree.root;
    Cycle cy;

    // Pauli randomization on every qubit, once per cycle; identity draws are
    // emitted so the layer shape and gate count are constant.
    {
        Layer l;
        l.kind = LayerKind::kSingleQubit;
        for (int q = 0; q < n; q++) {
            l.ops.push_back({GateKind::kSingleClifford, (uint16_t)q,
                             kPauliSet4[rng.below(4)]});
        }
        cy.n1q += (uint64_t)n;
        cy.layers.push_back(std::move(l));
    }

    for (int rep = 0; rep < spec.twirl_reps; rep++) {
        cy.layers.push_back(twirl_layer_all(n, cy, rng));
        append_xor(spec, tree, cy, rng);
        cy.layers.push_back(twirl_layer_hub_h(n, root, cy, rng));
        append_xor(spec, tree, cy, rng);
        cy.layers.push_back(twirl_layer_hub_h(n, root, cy, rng));
        if (rng.coin()) {
            Layer l;
            l.kind = LayerKind::kSingleQubit;
            l.ops.push_back({GateKind::kSingleClifford, (uint16_t)root, (uint16_t)kC1S});
            cy.n1q += 1;
            cy.layers.push_back(std::move(l));
        }
        append_xor(spec, tree, cy, rng);
        {
            Layer l;
            l.kind = LayerKind::kSingleQubit;
            l.ops.push_back({GateKind::kSingleClifford, (uint16_t)root,
                             kTwirlSet6[rng.below(6)]});
            cy.n1q += 1;
            cy.layers.push_back(std::move(l));
        }
    }
    return cy;
}

Cycle sample_cycle_approx_twirl(const EnsembleSpec &spec, Rng &rng) {
    const RootedTree tree = make_twirl_tree(spec);
    return sample_cycle_approx_twirl(spec, tree, rng);
}

Cycle sample_cycle(const EnsembleSpec &spec, const RootedTree &tree, Rng &rng) {
    switch (spec.kind) {
        case EnsembleKind::kChain1d:
            return sample_cycle_chain1d(spec, rng);
        case EnsembleKind::kGrid2d:
            return sample_cycle_grid2d(spec, rng);
        case EnsembleKind::kApproxTwirlStar:
        case EnsembleKind::kApproxTwirlGraph:
            return sample_cycle_approx_twirl(spec, tree, rng);
    }
    throw std::invalid_argument("ensemble: unknown kind");
}

double ensemble_cycle_fidelity(const EnsembleSpec &spec, const NoiseModel &model) {
    spec.validate();
    model.validate();
    const double a1 = 1.0 - model.p1;
    const double a2 = 1.0 - model.p2;
    switch (spec.kind) {
        case EnsembleKind::kChain1d:
            return std::pow(a1, 2.0 * spec.n) * std::pow(a2, (double)(spec.n - 1));
        case EnsembleKind::kGrid2d: {
            double mean = 0.0;
            for (auto which : {GridMatching::kA, GridMatching::kB, GridMatching::kC,
                               GridMatching::kD}) {
                const size_t cnots = grid_matching(which, spec.rows, spec.cols).size();
                mean += std::pow(a2, (double)cnots);
            }
            return std::pow(a1, (double)spec.n) * (mean / 4.0);
        }
        case EnsembleKind::kApproxTwirlStar: {
            // Fixed single-qubit count n + k(3n+1), a coin-flip S per
            // repetition, and 3k parity layers with n-1 CNOTs at rate 3/4.
            const double k = (double)spec.twirl_reps;
            return std::pow(a1, spec.n + k * (3.0 * spec.n + 1.0)) *
                   std::pow(1.0 - 0.5 * model.p1, k) *
                   std::pow(1.0 - 0.75 * model.p2, 3.0 * k * (spec.n - 1.0));
        }
        case EnsembleKind::kApproxTwirlGraph: {
            // The executed CNOT count depends on the drawn member sets and
            // the tree shape; average the per-cycle prediction by fixed-seed
            // Monte Carlo.
            const RootedTree tree = make_twirl_tree(spec);
            Rng rng(derive_seed(0x66696465u, 0));
            const int trials = 4096;
            double sum = 0.0;
            for (int t = 0; t < trials; t++) {
                sum += cycle_fidelity_prediction(
                    sample_cycle_approx_twirl(spec, tree, rng), model);
            }
            return sum / trials;
        }
    }
    throw std::invalid_argument("ensemble: unknown kind");
}

}  // namespace cliffxeb
