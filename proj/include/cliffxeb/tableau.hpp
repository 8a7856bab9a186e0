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
// Generator-tableau simulator with a qubit-major bit-plane layout: for each
// qubit there is one contiguous bit vector holding that qubit's x bits across
// all 2n generator rows, and likewise for z. Gates touch only the planes of
// their support qubits, and the row multiplications triggered by measurement
// run word-parallel across all affected rows at once (64 rows per machine
// word), which is what makes repeated mid-size measurements affordable.

#ifndef CLIFFXEB_TABLEAU_HPP
#define CLIFFXEB_TABLEAU_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cliffxeb/bits.hpp"
#include "cliffxeb/circuit.hpp"
#include "cliffxeb/pauli.hpp"
#include "cliffxeb/reference_tableau.hpp"  // kZeroAmplitude

namespace cliffxeb {

class Tableau {
  public:
    // Initializes |0...0>: destabilizer row i is X_i, stabilizer row n+i is Z_i.
    explicit Tableau(int n);

    static Tableau new_zero_state(int n) { return Tableau(n); }

    int num_qubits() const { return n_; }

    void apply_h(int q);
    void apply_s(int q);
    void apply_cnot(int control, int target);
    // Any of the 24 single-qubit Cliffords in one fused plane pass, using the
    // precomputed bit-action masks.
    void apply_c1(int q, int c1_index);
    // Pauli gates update signs only. Codes follow the I/X/Y/Z order used for
    // fault sampling; code 0 is a no-op.
    void apply_pauli1(int q, int code);
    void apply_pauli(const PauliString &p);

    void apply(const GateOp &op);
    void apply(const Layer &layer);
    void apply(const Cycle &cycle);

    // Z-basis measurement; (bit, was_random). Random outcomes consume exactly
    // one coin from the rng; deterministic ones consume nothing.
    std::pair<int, bool> measure_z(int q, Rng &rng);
    // Measures every qubit in ascending order into bit i of `bits`.
    void measure_all(std::vector<uint64_t> &bits, Rng &rng);

    // Forces qubit q to the desired outcome. Returns 1 when the outcome was
    // random (the postselection halves the support), 0 when it was already
    // deterministic and matches, kZeroAmplitude when it cannot occur.
    int postselect(int q, int desired);

    // k such that |<x|psi>|^2 = 2^-k, or kZeroAmplitude when the amplitude
    // vanishes. Pure: works on a copy of the state.
    int amplitude_exponent(const std::vector<uint64_t> &xbits) const;
    // Same, but reuses the caller's scratch object to avoid reallocating.
    int amplitude_exponent_into(const std::vector<uint64_t> &xbits,
                                Tableau &scratch) const;

    // Words of uint64 storage one instance of this size allocates.
    static size_t memory_words(int n);

    bool x_bit(int row, int q) const {
        return (x_[(size_t)q * rw_ + ((size_t)row >> 6)] >> (row & 63)) & 1;
    }
    bool z_bit(int row, int q) const {
        return (z_[(size_t)q * rw_ + ((size_t)row >> 6)] >> (row & 63)) & 1;
    }
    bool sign_bit(int row) const { return (sign_[(size_t)row >> 6] >> (row & 63)) & 1; }

    bool operator==(const Tableau &other) const {
        return n_ == other.n_ && x_ == other.x_ && z_ == other.z_ &&
               sign_ == other.sign_;
    }

  private:
    void check_qubit(int q) const;
    // Finds the lowest stabilizer row with an x bit in column q; -1 if none.
    int stabilizer_pivot(int q) const;
    // Multiplies every row with an x bit in column q (except the pivot and
    // its destabilizer partner) by the pivot row, then rewrites the pair to
    // record the collapse.
    void collapse(int q, int pivot, int outcome);
    // Deterministic outcome: folds the stabilizer partners of all
    // destabilizers with an x bit in column q.
    int deterministic_outcome(int q) const;

    int n_;
    size_t rw_;  // words per 2n-row bit plane
    std::vector<uint64_t> x_;     // n planes of rw_ words each
    std::vector<uint64_t> z_;     // n planes of rw_ words each
    std::vector<uint64_t> sign_;  // rw_ words
    // Measurement scratch, kept allocated between calls.
    std::vector<uint64_t> sel_, cnt1_, cnt2_;
};

}  // namespace cliffxeb

#endif  // CLIFFXEB_TABLEAU_HPP
