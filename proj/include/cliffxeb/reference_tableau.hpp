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

#ifndef CLIFFXEB_REFERENCE_TABLEAU_HPP
#define CLIFFXEB_REFERENCE_TABLEAU_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cliffxeb/bits.hpp"
#include "cliffxeb/circuit.hpp"

namespace cliffxeb {

inline constexpr int kZeroAmplitude = -1;

// Textbook row-major stabilizer tableau, kept as an independent reference for
// the word-parallel production implementation: one byte per matrix entry, a
// scratch row for deterministic measurements, single-qubit Cliffords applied
// strictly by their H/S/Pauli letter decomposition, and the straightforward
// quadratic row-sum. Slow on purpose; used only by tests and the self-check
// suite.
//
// Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers, row 2n scratch.
// Measurement uses the lowest stabilizer row with an x-bit at the measured
// qubit as the pivot and consumes exactly one rng coin per random outcome, so
// any implementation following the same convention reproduces identical
// collapse trajectories from equal seeds.
class ReferenceTableau {
  public:
    explicit ReferenceTableau(int n);

    int num_qubits() const { return n_; }

    void apply_h(int q);
    void apply_s(int q);
    void apply_cnot(int control, int target);
    void apply_x(int q);
    void apply_y(int q);
    void apply_z(int q);
    // Applies the letter sequence of the canonical 24-element enumeration.
    void apply_c1(int q, int c1_index);
    void apply(const GateOp &op);
    void apply(const Layer &layer);
    void apply(const Cycle &cycle);

    // Z-basis measurement; returns (bit, was_random).
    std::pair<int, bool> measure(int q, Rng &rng);
    // Forces outcome `desired` when the outcome is random; returns 1 in that
    // case, 0 on a deterministic match, kZeroAmplitude on a deterministic
    // mismatch. Consumes no rng draws.
    int postselect(int q, int desired);
    // Exponent k with |<x|psi>|^2 = 2^{-k}, or kZeroAmplitude; pure.
    int amplitude_exponent(const std::vector<uint64_t> &xbits) const;

    bool x_bit(int row, int q) const { return x_[(size_t)row][(size_t)q] != 0; }
    bool z_bit(int row, int q) const { return z_[(size_t)row][(size_t)q] != 0; }
    bool sign_bit(int row) const { return r_[(size_t)row] != 0; }

    bool operator==(const ReferenceTableau &other) const;

  private:
    void row_sum_into(size_t h, size_t i);  // row h *= row i (phase-tracked)
    int collapse(int q, int pivot, int outcome);

    int n_;
    std::vector<std::vector<uint8_t>> x_, z_;  // (2n+1) rows by n columns
    std::vector<uint8_t> r_;                   // sign bit per row
};

}  // namespace cliffxeb

#endif  // CLIFFXEB_REFERENCE_TABLEAU_HPP
