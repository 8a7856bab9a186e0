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

#include "cliffxeb/reference_tableau.hpp"

#include <stdexcept>

#include "cliffxeb/clifford1.hpp"

namespace cliffxeb {

namespace {

// Phase contribution, as a multiple of i, from multiplying single-qubit Pauli
// (x1, z1) onto (x2, z2): the exponent g with
// (X^{x1}Z^{z1})(X^{x2}Z^{z2}) = i^g * X^{x1+x2}Z^{z1+z2} up to signs already
// tracked elsewhere. Values are in {-1, 0, 1}.
int phase_g(int x1, int z1, int x2, int z2) {
    if (x1 == 0 && z1 == 0) return 0;
    if (x1 == 1 && z1 == 1) return z2 - x2;
    if (x1 == 1) return z2 * (2 * x2 - 1);
    return x2 * (1 - 2 * z2);
}

}  // namespace

ReferenceTableau::ReferenceTableau(int n) : n_(n) {
    if (n < 1) {
        throw std::invalid_argument("tableau needs at least one qubit");
    }
    const size_t rows = 2 * (size_t)n + 1;
    x_.assign(rows, std::vector<uint8_t>((size_t)n, 0));
    z_.assign(rows, std::vector<uint8_t>((size_t)n, 0));
    r_.assign(rows, 0);
    for (size_t i = 0; i < (size_t)n; i++) {
        x_[i][i] = 1;             // destabilizer X_i
        z_[i + (size_t)n][i] = 1; // stabilizer Z_i
    }
}

void ReferenceTableau::apply_h(int q) {
    if (q < 0 || q >= n_) {
        throw std::out_of_range("tableau: qubit index out of range");
    }
    for (size_t i = 0; i < 2 * (size_t)n_; i++) {
        r_[i] ^= x_[i][(size_t)q] & z_[i][(size_t)q];
        std::swap(x_[i][(size_t)q], z_[i][(size_t)q]);
    }
}

void ReferenceTableau::apply_s(int q) {
    if (q < 0 || q >= n_) {
        throw std::out_of_range("tableau: qubit index out of range");
    }
    for (size_t i = 0; i < 2 * (size_t)n_; i++) {
        r_[i] ^= x_[i][(size_t)q] & z_[i][(size_t)q];
        z_[i][(size_t)q] ^= x_[i][(size_t)q];
    }
}

void ReferenceTableau::apply_cnot(int control, int target) {
    if (control < 0 || control >= n_ || target < 0 || target >= n_) {
        throw std::out_of_range("tableau: qubit index out of range");
    }
    if (control == target) {
        throw std::invalid_argument("tableau: CNOT control equals target");
    }
    const size_t c = (size_t)control, t = (size_t)target;
    for (size_t i = 0; i < 2 * (size_t)n_; i++) {
        r_[i] ^= x_[i][c] & z_[i][t] & (x_[i][t] ^ z_[i][c] ^ 1);
        x_[i][t] ^= x_[i][c];
        z_[i][c] ^= z_[i][t];
    }
}

void ReferenceTableau::apply_x(int q) {
    for (size_t i = 0; i < 2 * (size_t)n_; i++) {
        r_[i] ^= z_[i][(size_t)q];
    }
}

void ReferenceTableau::apply_y(int q) {
    for (size_t i = 0; i < 2 * (size_t)n_; i++) {
        r_[i] ^= x_[i][(size_t)q] ^ z_[i][(size_t)q];
    }
}

void ReferenceTableau::apply_z(int q) {
    for (size_t i = 0; i < 2 * (size_t)n_; i++) {
        r_[i] ^= x_[i][(size_t)q];
    }
}

void ReferenceTableau::apply_c1(int q, int c1_index) {
    for (C1Letter letter : c1_letters(c1_index)) {
        switch (letter) {
            case C1Letter::H: apply_h(q); break;
            case C1Letter::S: apply_s(q); break;
            case C1Letter::X: apply_x(q); break;
            case C1Letter::Y: apply_y(q); break;
            case C1Letter::Z: apply_z(q); break;
        }
    }
}

void ReferenceTableau::apply(const GateOp &op) {
    switch (op.kind) {
        case GateKind::kSingleClifford:
            apply_c1(op.a, op.b);
            break;
        case GateKind::kCnot:
            apply_cnot(op.a, op.b);
            break;
    }
}

void ReferenceTableau::apply(const Layer &layer) {
    for (const GateOp &op : layer.ops) {
        apply(op);
    }
}

void ReferenceTableau::apply(const Cycle &cycle) {
    for (const Layer &layer : cycle.layers) {
        apply(layer);
    }
}

void ReferenceTableau::row_sum_into(size_t h, size_t i) {
    // Row h becomes the Pauli product (row i) * (row h), phases included:
    // 2*r_h' = 2*r_h + 2*r_i + sum_j g_j (mod 4), and the sum is always even
    // for the products formed during measurement.
    int phase = 2 * (int)r_[h] + 2 * (int)r_[i];
    for (size_t j = 0; j < (size_t)n_; j++) {
        phase += phase_g(x_[i][j], z_[i][j], x_[h][j], z_[h][j]);
        x_[h][j] ^= x_[i][j];
        z_[h][j] ^= z_[i][j];
    }
    phase &= 3;
    if (phase != 0 && phase != 2) {
        throw std::logic_error("tableau row product acquired an odd phase");
    }
    r_[h] = phase == 2;
}

int ReferenceTableau::collapse(int q, int pivot, int outcome) {
    const size_t p = (size_t)pivot;
    const size_t d = p - (size_t)n_;
    // Row d is skipped: it may anticommute with the pivot (making the Pauli
    // product ill-defined up to a factor of i), and it is overwritten below
    // before anyone reads it.
    for (size_t i = 0; i < 2 * (size_t)n_; i++) {
        if (i != p && i != d && x_[i][(size_t)q]) {
            row_sum_into(i, p);
        }
    }
    // Old pivot row becomes the matching destabilizer; the pivot row becomes
    // +/- Z_q carrying the outcome.
    x_[d] = x_[p];
    z_[d] = z_[p];
    r_[d] = r_[p];
    std::fill(x_[p].begin(), x_[p].end(), (uint8_t)0);
    std::fill(z_[p].begin(), z_[p].end(), (uint8_t)0);
    z_[p][(size_t)q] = 1;
    r_[p] = (uint8_t)outcome;
    return outcome;
}

std::pair<int, bool> ReferenceTableau::measure(int q, Rng &rng) {
    if (q < 0 || q >= n_) {
        throw std::out_of_range("tableau: qubit index out of range");
    }
    int pivot = -1;
    for (int i = n_; i < 2 * n_; i++) {
        if (x_[(size_t)i][(size_t)q]) {
            pivot = i;
            break;
        }
    }
    if (pivot >= 0) {
        int outcome = (int)rng.coin();
        collapse(q, pivot, outcome);
        return {outcome, true};
    }
    // Deterministic: accumulate into the scratch row the stabilizer rows
    // selected by destabilizer x-bits at q; the result is +/- Z_q.
    const size_t scratch = 2 * (size_t)n_;
    std::fill(x_[scratch].begin(), x_[scratch].end(), (uint8_t)0);
    std::fill(z_[scratch].begin(), z_[scratch].end(), (uint8_t)0);
    r_[scratch] = 0;
    for (size_t i = 0; i < (size_t)n_; i++) {
        if (x_[i][(size_t)q]) {
            row_sum_into(scratch, i + (size_t)n_);
        }
    }
    return {(int)r_[scratch], false};
}

int ReferenceTableau::postselect(int q, int desired) {
    int pivot = -1;
    for (int i = n_; i < 2 * n_; i++) {
        if (x_[(size_t)i][(size_t)q]) {
            pivot = i;
            break;
        }
    }
    if (pivot >= 0) {
        collapse(q, pivot, desired);
        return 1;
    }
    const size_t scratch = 2 * (size_t)n_;
    std::fill(x_[scratch].begin(), x_[scratch].end(), (uint8_t)0);
    std::fill(z_[scratch].begin(), z_[scratch].end(), (uint8_t)0);
    r_[scratch] = 0;
    for (size_t i = 0; i < (size_t)n_; i++) {
        if (x_[i][(size_t)q]) {
            row_sum_into(scratch, i + (size_t)n_);
        }
    }
    return (int)r_[scratch] == desired ? 0 : kZeroAmplitude;
}

int ReferenceTableau::amplitude_exponent(const std::vector<uint64_t> &xbits) const {
    ReferenceTableau copy = *this;
    int k = 0;
    for (int q = 0; q < n_; q++) {
        int desired = get_bit(xbits, (size_t)q) ? 1 : 0;
        int res = copy.postselect(q, desired);
        if (res == kZeroAmplitude) {
            return kZeroAmplitude;
        }
        k += res;
    }
    return k;
}

bool ReferenceTableau::operator==(const ReferenceTableau &other) const {
    if (n_ != other.n_) {
        return false;
    }
    for (size_t i = 0; i < 2 * (size_t)n_; i++) {
        if (x_[i] != other.x_[i] || z_[i] != other.z_[i] || r_[i] != other.r_[i]) {
            return false;
        }
    }
    return true;
}

}  // namespace cliffxeb
