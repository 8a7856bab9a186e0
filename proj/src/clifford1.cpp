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

#include "cliffxeb/clifford1.hpp"

#include <stdexcept>

namespace cliffxeb {

namespace {

struct Slice {
    unsigned x, z, r;
};

// Single-qubit tableau update rules for the primitive letters. These are the
// standard generator-conjugation rules; everything else in the file is derived
// from them so the fused tables can never drift from the primitive path.
Slice apply_letter(Slice s, C1Letter l) {
    switch (l) {
        case C1Letter::H:
            return {s.z, s.x, s.r ^ (s.x & s.z)};
        case C1Letter::S:
            return {s.x, s.z ^ s.x, s.r ^ (s.x & s.z)};
        case C1Letter::X:
            return {s.x, s.z, s.r ^ s.z};
        case C1Letter::Y:
            return {s.x, s.z, s.r ^ s.x ^ s.z};
        case C1Letter::Z:
            return {s.x, s.z, s.r ^ s.x};
    }
    return s;
}

std::array<std::vector<C1Letter>, kNumC1> build_letters() {
    // Axis part in application order: "HS" is the matrix product H*S, so the
    // tableau sees S first.
    const std::vector<C1Letter> axis[6] = {
        {},
        {C1Letter::H},
        {C1Letter::S},
        {C1Letter::S, C1Letter::H},                // HS
        {C1Letter::H, C1Letter::S},                // SH
        {C1Letter::H, C1Letter::S, C1Letter::H},   // HSH
    };
    const C1Letter pauli[3] = {C1Letter::X, C1Letter::Y, C1Letter::Z};
    std::array<std::vector<C1Letter>, kNumC1> out;
    for (int p = 0; p < 4; p++) {
        for (int l = 0; l < 6; l++) {
            std::vector<C1Letter> seq = axis[l];
            if (p > 0) {
                seq.push_back(pauli[p - 1]);
            }
            out[6 * p + l] = std::move(seq);
        }
    }
    return out;
}

const std::array<std::vector<C1Letter>, kNumC1> kLetters = build_letters();

C1Action action_of_letters(const std::vector<C1Letter> &seq) {
    C1Action a{0, 0, 0};
    for (unsigned in = 0; in < 4; in++) {
        Slice s{(in >> 1) & 1, in & 1, 0};
        for (C1Letter l : seq) {
            s = apply_letter(s, l);
        }
        a.nx |= (uint8_t)(s.x << in);
        a.nz |= (uint8_t)(s.z << in);
        a.dr |= (uint8_t)(s.r << in);
    }
    return a;
}

std::array<C1Action, kNumC1> build_actions() {
    std::array<C1Action, kNumC1> out;
    for (int i = 0; i < kNumC1; i++) {
        out[i] = action_of_letters(kLetters[i]);
        // Conjugation is GF(2)-linear on (x, z) and fixes the identity.
        if ((out[i].nx & 1) || (out[i].nz & 1) || (out[i].dr & 1) ||
            ((out[i].nx >> 3) & 1) != (((out[i].nx >> 1) ^ (out[i].nx >> 2)) & 1) ||
            ((out[i].nz >> 3) & 1) != (((out[i].nz >> 1) ^ (out[i].nz >> 2)) & 1)) {
            throw std::logic_error("single-qubit table construction broke linearity");
        }
    }
    for (int i = 0; i < kNumC1; i++) {
        for (int j = 0; j < i; j++) {
            if (out[i].nx == out[j].nx && out[i].nz == out[j].nz && out[i].dr == out[j].dr) {
                throw std::logic_error("single-qubit enumeration has a duplicate element");
            }
        }
    }
    return out;
}

C1Action compose(const C1Action &a, const C1Action &b) {
    // Action of "b first, then a".
    C1Action r{0, 0, 0};
    for (unsigned in = 0; in < 4; in++) {
        unsigned bx = (b.nx >> in) & 1, bz = (b.nz >> in) & 1, br = (b.dr >> in) & 1;
        unsigned mid = (bx << 1) | bz;
        unsigned ax = (a.nx >> mid) & 1, az = (a.nz >> mid) & 1, ar = (a.dr >> mid) & 1;
        r.nx |= (uint8_t)(ax << in);
        r.nz |= (uint8_t)(az << in);
        r.dr |= (uint8_t)((br ^ ar) << in);
    }
    return r;
}

std::array<std::array<uint8_t, kNumC1>, kNumC1> build_mult() {
    std::array<std::array<uint8_t, kNumC1>, kNumC1> out;
    for (int a = 0; a < kNumC1; a++) {
        for (int b = 0; b < kNumC1; b++) {
            int idx = c1_index_of(compose(kC1Action[a], kC1Action[b]));
            if (idx < 0) {
                throw std::logic_error("single-qubit composition left the group");
            }
            out[a][b] = (uint8_t)idx;
        }
    }
    return out;
}

std::array<uint8_t, kNumC1> build_inverse() {
    std::array<uint8_t, kNumC1> out{};
    for (int a = 0; a < kNumC1; a++) {
        bool found = false;
        for (int b = 0; b < kNumC1; b++) {
            if (kC1Mult[a][b] == kC1Identity) {
                out[a] = (uint8_t)b;
                found = true;
            }
        }
        if (!found) {
            throw std::logic_error("single-qubit element without inverse");
        }
    }
    return out;
}

using C2 = std::complex<double>;
using Mat2 = std::array<C2, 4>;

Mat2 matmul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

std::array<Mat2, kNumC1> build_unitaries() {
    const double s = 0.70710678118654752440;
    const Mat2 kI{1, 0, 0, 1};
    const Mat2 kH{s, s, s, -s};
    const Mat2 kS{1, 0, 0, C2(0, 1)};
    const Mat2 kX{0, 1, 1, 0};
    const Mat2 kY{0, C2(0, -1), C2(0, 1), 0};
    const Mat2 kZ{1, 0, 0, -1};
    const Mat2 axis[6] = {kI, kH, kS, matmul(kH, kS), matmul(kS, kH),
                          matmul(kH, matmul(kS, kH))};
    const Mat2 pauli[4] = {kI, kX, kY, kZ};
    std::array<Mat2, kNumC1> out;
    for (int p = 0; p < 4; p++) {
        for (int l = 0; l < 6; l++) {
            out[6 * p + l] = matmul(pauli[p], axis[l]);
        }
    }
    return out;
}

std::array<uint8_t, 6> build_twirl_set() {
    // {I, S, H, SH, (SH)^2, SHS} with SH = S*H (H applied first).
    uint8_t sh = 4;  // index of the axis part "SH"
    uint8_t sh2 = kC1Mult[sh][sh];
    uint8_t shs = kC1Mult[sh][kC1S];
    return {kC1Identity, kC1S, kC1H, sh, sh2, shs};
}

}  // namespace

const std::array<C1Action, kNumC1> kC1Action = build_actions();
const std::array<std::array<uint8_t, kNumC1>, kNumC1> kC1Mult = build_mult();
const std::array<uint8_t, kNumC1> kC1Inverse = build_inverse();
const std::array<std::array<std::complex<double>, 4>, kNumC1> kC1Unitary = build_unitaries();
const std::array<uint8_t, 6> kTwirlSet6 = build_twirl_set();
const std::array<uint8_t, 4> kPauliSet4 = {kC1Identity, kC1PauliX, kC1PauliY, kC1PauliZ};

const std::vector<C1Letter> &c1_letters(int index) {
    return kLetters.at((size_t)index);
}

int c1_index_of(const C1Action &a) {
    for (int i = 0; i < kNumC1; i++) {
        if (kC1Action[i].nx == a.nx && kC1Action[i].nz == a.nz && kC1Action[i].dr == a.dr) {
            return i;
        }
    }
    return -1;
}

bool c1_generates_group(const std::vector<int> &support) {
    // Closure of {a^-1 * b : a, b in support} under multiplication.
    uint32_t seen = 1u << kC1Identity;
    std::vector<uint8_t> frontier{kC1Identity};
    std::vector<uint8_t> gens;
    for (int a : support) {
        for (int b : support) {
            gens.push_back(kC1Mult[kC1Inverse[(size_t)a]][(size_t)b]);
        }
    }
    while (!frontier.empty()) {
        uint8_t e = frontier.back();
        frontier.pop_back();
        for (uint8_t g : gens) {
            uint8_t f = kC1Mult[e][g];
            if (!(seen & (1u << f))) {
                seen |= 1u << f;
                frontier.push_back(f);
            }
        }
    }
    return seen == 0x00ffffffu;
}

}  // namespace cliffxeb
