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

#include "cliffxeb/tableau.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

#include "cliffxeb/clifford1.hpp"

namespace cliffxeb {
namespace {

// 0 -> all zeros, 1 -> all ones.
inline uint64_t mask_of(uint32_t bit) {
    return uint64_t{0} - (uint64_t)(bit & 1);
}

}  // namespace

Tableau::Tableau(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("tableau: need at least one qubit");
    if (n > 65535) throw std::invalid_argument("tableau: qubit index field is 16 bits");
    rw_ = words_for_bits(2 * (size_t)n);
    x_.assign((size_t)n * rw_, 0);
    z_.assign((size_t)n * rw_, 0);
    sign_.assign(rw_, 0);
    sel_.assign(rw_, 0);
    cnt1_.assign(rw_, 0);
    cnt2_.assign(rw_, 0);
    for (int q = 0; q < n; q++) {
        const size_t col = (size_t)q * rw_;
        x_[col + ((size_t)q >> 6)] |= uint64_t{1} << (q & 63);
        const size_t stab = (size_t)(n + q);
        z_[col + (stab >> 6)] |= uint64_t{1} << (stab & 63);
    }
}

size_t Tableau::memory_words(int n) {
    // Two planes per qubit, plus the sign plane and three scratch planes.
    return (2 * (size_t)n + 4) * words_for_bits(2 * (size_t)n);
}

void Tableau::check_qubit(int q) const {
    if (q < 0 || q >= n_) {
        throw std::out_of_range("tableau: qubit " + std::to_string(q) +
                                " out of range for " + std::to_string(n_) +
                                " qubits");
    }
}

void Tableau::apply_h(int q) {
    check_qubit(q);
    uint64_t *xc = x_.data() + (size_t)q * rw_;
    uint64_t *zc = z_.data() + (size_t)q * rw_;
    for (size_t w = 0; w < rw_; w++) {
        const uint64_t x = xc[w], z = zc[w];
        sign_[w] ^= x & z;
        xc[w] = z;
        zc[w] = x;
    }
}

void Tableau::apply_s(int q) {
    check_qubit(q);
    uint64_t *xc = x_.data() + (size_t)q * rw_;
    uint64_t *zc = z_.data() + (size_t)q * rw_;
    for (size_t w = 0; w < rw_; w++) {
        const uint64_t x = xc[w], z = zc[w];
        sign_[w] ^= x & z;
        zc[w] = z ^ x;
    }
}

void Tableau::apply_cnot(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw std::invalid_argument("tableau: cnot needs two distinct qubits");
    }
    uint64_t *xc = x_.data() + (size_t)control * rw_;
    uint64_t *zc = z_.data() + (size_t)control * rw_;
    uint64_t *xt = x_.data() + (size_t)target * rw_;
    uint64_t *zt = z_.data() + (size_t)target * rw_;
    for (size_t w = 0; w < rw_; w++) {
        const uint64_t a = xc[w], b = zc[w], c = xt[w], d = zt[w];
        sign_[w] ^= a & d & ~(c ^ b);
        xt[w] = c ^ a;
        zc[w] = b ^ d;
    }
}

void Tableau::apply_c1(int q, int c1_index) {
    check_qubit(q);
    if (c1_index < 0 || c1_index >= kNumC1) {
        throw std::out_of_range("tableau: single-qubit gate index " +
                                std::to_string(c1_index) + " out of range");
    }
    const C1Action &a = kC1Action[c1_index];
    // The (x, z) update is linear over GF(2), so it is fully described by the
    // images of the X and Z inputs (truth-table bits 2 and 1). Sign toggles
    // are not linear and get one mask per nontrivial input pattern.
    const uint64_t mxx = mask_of(a.nx >> 2), mxz = mask_of(a.nx >> 1);
    const uint64_t mzx = mask_of(a.nz >> 2), mzz = mask_of(a.nz >> 1);
    const uint64_t d01 = mask_of(a.dr >> 1), d10 = mask_of(a.dr >> 2),
                   d11 = mask_of(a.dr >> 3);
    uint64_t *xc = x_.data() + (size_t)q * rw_;
    uint64_t *zc = z_.data() + (size_t)q * rw_;
    for (size_t w = 0; w < rw_; w++) {
        const uint64_t x = xc[w], z = zc[w];
        sign_[w] ^= (d01 & ~x & z) ^ (d10 & x & ~z) ^ (d11 & x & z);
        xc[w] = (x & mxx) ^ (z & mxz);
        zc[w] = (x & mzx) ^ (z & mzz);
    }
}

void Tableau::apply_pauli1(int q, int code) {
    check_qubit(q);
    if (code < 0 || code > 3) {
        throw std::out_of_range("tableau: pauli code " + std::to_string(code) +
                                " out of range");
    }
    if (code == 0) return;
    const uint64_t *xc = x_.data() + (size_t)q * rw_;
    const uint64_t *zc = z_.data() + (size_t)q * rw_;
    // Conjugating by a Pauli flips the sign of every row that anticommutes
    // with it at this qubit: X flips rows with z, Z flips rows with x, Y both.
    for (size_t w = 0; w < rw_; w++) {
        switch (code) {
            case 1: sign_[w] ^= zc[w]; break;
            case 2: sign_[w] ^= xc[w] ^ zc[w]; break;
            case 3: sign_[w] ^= xc[w]; break;
        }
    }
}

void Tableau::apply_pauli(const PauliString &p) {
    if (p.n != n_) {
        throw std::invalid_argument("tableau: pauli string is for " +
                                    std::to_string(p.n) + " qubits, state has " +
                                    std::to_string(n_));
    }
    for (int q = 0; q < n_; q++) {
        const int code = (p.x_bit(q) ? 1 : 0) | (p.z_bit(q) ? 2 : 0);
        // (x, z) -> code: X = 1, Z = 2, Y = 3 here; remap to I/X/Y/Z order.
        static constexpr int kRemap[4] = {0, 1, 3, 2};
        apply_pauli1(q, kRemap[code]);
    }
}

void Tableau::apply(const GateOp &op) {
    switch (op.kind) {
        case GateKind::kSingleClifford:
            apply_c1(op.a, op.b);
            break;
        case GateKind::kCnot:
            apply_cnot(op.a, op.b);
            break;
    }
}

void Tableau::apply(const Layer &layer) {
    for (const GateOp &op : layer.ops) apply(op);
}

void Tableau::apply(const Cycle &cycle) {
    for (const Layer &layer : cycle.layers) apply(layer);
}

int Tableau::stabilizer_pivot(int q) const {
    const uint64_t *xc = x_.data() + (size_t)q * rw_;
    const size_t wlo = (size_t)n_ >> 6;
    for (size_t w = wlo; w < rw_; w++) {
        uint64_t m = xc[w];
        if (w == wlo) m &= ~uint64_t{0} << (n_ & 63);
        if (m) return (int)(w * 64 + (size_t)__builtin_ctzll(m));
    }
    return -1;
}

void Tableau::collapse(int q, int pivot, int outcome) {
    const int d = pivot - n_;  // destabilizer partner row
    // Every other row with an x bit in this column picks up a factor of the
    // pivot row. The partner row d is excluded: it may anticommute with the
    // pivot (ill-defined product sign), and it is overwritten below anyway.
    {
        const uint64_t *xc = x_.data() + (size_t)q * rw_;
        for (size_t w = 0; w < rw_; w++) sel_[w] = xc[w];
        sel_[(size_t)pivot >> 6] &= ~(uint64_t{1} << (pivot & 63));
        sel_[(size_t)d >> 6] &= ~(uint64_t{1} << (d & 63));
    }

    // Batch row multiplication: per qubit column, classify each selected row
    // by the phase contribution of (pivot pauli) * (row pauli) and accumulate
    // it in two bit-sliced mod-4 counter planes.
    for (size_t w = 0; w < rw_; w++) {
        cnt1_[w] = 0;
        cnt2_[w] = 0;
    }
    for (int j = 0; j < n_; j++) {
        uint64_t *xc = x_.data() + (size_t)j * rw_;
        uint64_t *zc = z_.data() + (size_t)j * rw_;
        const int xp = (xc[(size_t)pivot >> 6] >> (pivot & 63)) & 1;
        const int zp = (zc[(size_t)pivot >> 6] >> (pivot & 63)) & 1;
        if (!xp && !zp) continue;  // identity at this qubit contributes nothing
        for (size_t w = 0; w < rw_; w++) {
            const uint64_t x = xc[w], z = zc[w];
            uint64_t plus, minus;
            if (xp && zp) {
                plus = ~x & z;
                minus = x & ~z;
            } else if (xp) {
                plus = x & z;
                minus = ~x & z;
            } else {
                plus = x & ~z;
                minus = x & z;
            }
            plus &= sel_[w];
            minus &= sel_[w];
            // counter += 1 on `plus` lanes, += 3 on `minus` lanes (mod 4).
            cnt2_[w] ^= cnt1_[w] & plus;
            cnt1_[w] ^= plus;
            cnt2_[w] ^= cnt1_[w] & minus;
            cnt1_[w] ^= minus;
            cnt2_[w] ^= minus;
            // The product row picks up the pivot's pauli at this qubit.
            if (xp) xc[w] = x ^ sel_[w];
            if (zp) zc[w] = z ^ sel_[w];
        }
    }
    const uint64_t rp = mask_of(sign_bit(pivot));
    for (size_t w = 0; w < rw_; w++) {
        // Selected rows commute with the pivot, so the phase count is even.
        assert((cnt1_[w] & sel_[w]) == 0);
        sign_[w] ^= (cnt2_[w] ^ rp) & sel_[w];
    }

    // Record the collapse: the old pivot row becomes the destabilizer of the
    // measured operator, and the pivot row becomes +-Z_q.
    const size_t pw = (size_t)pivot >> 6;
    const uint64_t pm = uint64_t{1} << (pivot & 63);
    const size_t dw = (size_t)d >> 6;
    const uint64_t dm = uint64_t{1} << (d & 63);
    for (int j = 0; j < n_; j++) {
        uint64_t *xc = x_.data() + (size_t)j * rw_;
        uint64_t *zc = z_.data() + (size_t)j * rw_;
        xc[dw] = (xc[dw] & ~dm) | (xc[pw] & pm ? dm : 0);
        zc[dw] = (zc[dw] & ~dm) | (zc[pw] & pm ? dm : 0);
        xc[pw] &= ~pm;
        zc[pw] = (zc[pw] & ~pm) | (j == q ? pm : 0);
    }
    sign_[dw] = (sign_[dw] & ~dm) | (sign_[pw] & pm ? dm : 0);
    sign_[pw] = (sign_[pw] & ~pm) | (outcome ? pm : 0);
}

int Tableau::deterministic_outcome(int q) const {
    // Fold the stabilizer partners of every destabilizer with an x bit in
    // column q; the product is +-Z_q and its sign is the outcome. Phases are
    // tracked mod 4 against the running prefix pauli.
    std::vector<uint64_t> px(words_for_bits((size_t)n_), 0);
    std::vector<uint64_t> pz(words_for_bits((size_t)n_), 0);
    int phase = 0;
    const uint64_t *xq = x_.data() + (size_t)q * rw_;
    for (int i = 0; i < n_; i++) {
        if (!((xq[(size_t)i >> 6] >> (i & 63)) & 1)) continue;
        const int s = n_ + i;
        phase += 2 * (int)sign_bit(s);
        for (int j = 0; j < n_; j++) {
            const int sx = (int)x_bit(s, j), sz = (int)z_bit(s, j);
            if (!sx && !sz) continue;
            const int ax = (int)get_bit(px, (size_t)j), az = (int)get_bit(pz, (size_t)j);
            if (sx && sz) {
                phase += az - ax;
            } else if (sx) {
                phase += az * (2 * ax - 1);
            } else {
                phase += ax * (1 - 2 * az);
            }
            if (sx) set_bit(px, (size_t)j, !ax);
            if (sz) set_bit(pz, (size_t)j, !az);
        }
    }
    assert((phase & 1) == 0);
    return ((phase % 4) + 4) % 4 == 2 ? 1 : 0;
}

std::pair<int, bool> Tableau::measure_z(int q, Rng &rng) {
    check_qubit(q);
    const int pivot = stabilizer_pivot(q);
    if (pivot >= 0) {
        const int outcome = rng.coin() ? 1 : 0;
        collapse(q, pivot, outcome);
        return {outcome, true};
    }
    return {deterministic_outcome(q), false};
}

void Tableau::measure_all(std::vector<uint64_t> &bits, Rng &rng) {
    bits.assign(words_for_bits((size_t)n_), 0);
    for (int q = 0; q < n_; q++) {
        if (measure_z(q, rng).first) bits[(size_t)q >> 6] |= uint64_t{1} << (q & 63);
    }
}

int Tableau::postselect(int q, int desired) {
    check_qubit(q);
    const int pivot = stabilizer_pivot(q);
    if (pivot >= 0) {
        collapse(q, pivot, desired);
        return 1;
    }
    return deterministic_outcome(q) == desired ? 0 : kZeroAmplitude;
}

int Tableau::amplitude_exponent_into(const std::vector<uint64_t> &xbits,
                                     Tableau &scratch) const {
    scratch = *this;
    int k = 0;
    for (int q = 0; q < n_; q++) {
        const int want = (int)((xbits[(size_t)q >> 6] >> (q & 63)) & 1);
        const int r = scratch.postselect(q, want);
        if (r == kZeroAmplitude) return kZeroAmplitude;
        k += r;
    }
    return k;
}

int Tableau::amplitude_exponent(const std::vector<uint64_t> &xbits) const {
    Tableau scratch = *this;
    return amplitude_exponent_into(xbits, scratch);
}

}  // namespace cliffxeb
