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

#ifndef CLIFFXEB_CLIFFORD1_HPP
#define CLIFFXEB_CLIFFORD1_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace cliffxeb {

// Canonical enumeration of the 24 single-qubit Cliffords (modulo global phase):
// index = 6*p + l, where p indexes the Pauli left factor in {I, X, Y, Z} and
// l indexes the axis permutation part in {I, H, S, HS, SH, HSH}. "HS" is the
// matrix product H*S, i.e. S is applied first. This order is load-bearing:
// seeds reproduce circuits only because the enumeration is fixed.
constexpr int kNumC1 = 24;

// Bit-level action of one element on a generator-row slice (x, z) -> (x', z')
// plus a sign toggle. Entries are 4-bit truth tables indexed by (x << 1) | z.
struct C1Action {
    uint8_t nx;  // output x bit per input pattern
    uint8_t nz;  // output z bit per input pattern
    uint8_t dr;  // sign toggles per input pattern (bit 0 always clear)
};

// Primitive letters a C1 element decomposes into, in application order.
enum class C1Letter : uint8_t { H, S, X, Y, Z };

extern const std::array<C1Action, kNumC1> kC1Action;
extern const std::array<std::array<uint8_t, kNumC1>, kNumC1> kC1Mult;  // [a][b] = a*b (b applied first)
extern const std::array<uint8_t, kNumC1> kC1Inverse;
extern const std::array<std::array<std::complex<double>, 4>, kNumC1> kC1Unitary;  // row-major 2x2

// Well-known indices within the enumeration.
constexpr int kC1Identity = 0;
constexpr int kC1H = 1;
constexpr int kC1S = 2;
constexpr int kC1PauliX = 6;
constexpr int kC1PauliY = 12;
constexpr int kC1PauliZ = 18;

// The 6-element single-qubit twirl set {I, S, H, SH, (SH)^2, SHS} as indices.
extern const std::array<uint8_t, 6> kTwirlSet6;

// The 4 Pauli elements {I, X, Y, Z} as indices.
extern const std::array<uint8_t, 4> kPauliSet4;

// Letter decomposition (used by the reference simulator to cross-check the
// fused tables through an independent code path).
const std::vector<C1Letter> &c1_letters(int index);

// Index of the element with the given bit-level action; -1 if no match
// (cannot happen for actions composed from valid elements).
int c1_index_of(const C1Action &a);

// Whether the subgroup generated by A^{-1}A covers all 24 elements, for A the
// support of a single-qubit gate distribution.
bool c1_generates_group(const std::vector<int> &support);

}  // namespace cliffxeb

#endif
