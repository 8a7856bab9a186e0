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

#ifndef CLIFFXEB_TWIRL_ORACLE_HPP
#define CLIFFXEB_TWIRL_ORACLE_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cliffxeb/circuit.hpp"
#include "cliffxeb/ensembles.hpp"

namespace cliffxeb {

// Raised when the assembled matrix fails its structural checks (leading
// singular values off 1), which indicates a bad measure description.
struct TwirlConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One independent layer factor of a per-cycle gate measure. Exactly one of
// the two descriptions is used:
//  - qubit_dists: independent per-qubit distributions over the 24
//    single-qubit gates (qubit_dists[q][c] = probability of gate index c);
//    rows must be full probability vectors.
//  - mixture: a finite mixture over deterministic gate sequences (each
//    applied left to right); probabilities must sum to 1. An empty sequence
//    is the identity.
struct TwirlLayerFactor {
    std::vector<std::vector<double>> qubit_dists;
    std::vector<std::pair<double, std::vector<GateOp>>> mixture;
};

// A cycle measure: independent layer factors in application order.
using CycleMeasure = std::vector<TwirlLayerFactor>;

// Averaged conjugation action of one random cycle on superoperators, in the
// Pauli-transfer representation: a real 16^n x 16^n matrix, n <= 2. Row and
// column indices are (row-pauli, col-pauli) pairs packed row-major; each
// pauli index is base-4 over qubits with qubit 0 the least significant
// digit (0=I, 1=X, 2=Y, 3=Z).
struct TwirlMatrix {
    int n = 0;
    size_t dim = 0;            // 16^n
    std::vector<double> data;  // row-major dim x dim

    double at(size_t r, size_t c) const { return data[r * dim + c]; }
    double &at(size_t r, size_t c) { return data[r * dim + c]; }
};

// Assembles the matrix as the ordered product of per-layer expectation
// factors (first layer leftmost). Independence across layers and across
// qubits within a single-qubit layer is exploited directly, so the product
// support of the measure is never enumerated.
TwirlMatrix build_twirl_matrix(const CycleMeasure &measure, int n);

// All singular values, descending.
std::vector<double> singular_values(const TwirlMatrix &t);

// Third-largest singular value. Verifies the two leading singular values
// equal 1 within 1e-9 first and throws TwirlConstructionError otherwise.
double third_singular_value(const TwirlMatrix &t);

// Uniform distribution over all 24 single-qubit gates on every qubit.
TwirlLayerFactor uniform_c1_layer(int n);

// Point mass at one deterministic gate sequence.
TwirlLayerFactor point_layer(std::vector<GateOp> ops);

// The reversed measure with every layer inverted: drawing from the result
// is distributed as the inverse of a draw from the input.
CycleMeasure invert_measure(const CycleMeasure &measure);

// The per-cycle measure of an ensemble at n <= 2, layer for layer the same
// distribution the cycle samplers draw from.
CycleMeasure ensemble_cycle_measure(const EnsembleSpec &spec);

}  // namespace cliffxeb

#endif  // CLIFFXEB_TWIRL_ORACLE_HPP
