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

#ifndef CLIFFXEB_CIRCUIT_HPP
#define CLIFFXEB_CIRCUIT_HPP

#include <cstdint>
#include <vector>

namespace cliffxeb {

enum class GateKind : uint8_t {
    kSingleClifford,  // a = qubit, b = single-qubit Clifford index (0..23)
    kCnot,            // a = control, b = target
};

struct GateOp {
    GateKind kind;
    uint16_t a;
    uint16_t b;
};

enum class LayerKind : uint8_t {
    kSingleQubit,
    kEntangling,
};

// One layer of a cycle. Single-qubit layers touch each qubit at most once.
// Entangling layers from matchings are disjoint; entangling layers built from
// shared-qubit subroutines (the XOR fragments) list their gates in execution
// order and are always applied sequentially, so overlap is well defined.
struct Layer {
    LayerKind kind = LayerKind::kEntangling;
    std::vector<GateOp> ops;
};

// One cycle of an ensemble, plus the gate counts that feed the depolarizing
// fidelity prediction: every drawn single-qubit gate counts (identity draws
// included), and only CNOTs actually emitted count.
struct Cycle {
    std::vector<Layer> layers;
    uint64_t n1q = 0;
    uint64_t n2q = 0;
};

}  // namespace cliffxeb

#endif  // CLIFFXEB_CIRCUIT_HPP
