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

#ifndef CLIFFXEB_PAULI_HPP
#define CLIFFXEB_PAULI_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cliffxeb/bits.hpp"

namespace cliffxeb {

// An n-qubit Pauli operator i^{phase_exp} · X^{x} · Z^{z} with the Y
// convention Y = i·X·Z. The phase exponent is tracked mod 4.
struct PauliString {
    int n = 0;
    std::vector<uint64_t> x;
    std::vector<uint64_t> z;
    uint8_t phase_exp = 0;

    PauliString() = default;

    explicit PauliString(int num_qubits)
        : n(num_qubits),
          x(words_for_bits((size_t)num_qubits)),
          z(words_for_bits((size_t)num_qubits)) {
        if (num_qubits < 1) {
            throw std::invalid_argument("PauliString needs at least one qubit");
        }
    }

    bool x_bit(int q) const { return get_bit(x, (size_t)q); }
    bool z_bit(int q) const { return get_bit(z, (size_t)q); }

    // code: 0 = I, 1 = X, 2 = Y, 3 = Z on qubit q. The phase exponent is left
    // untouched; conjugation does not depend on it.
    void set_pauli(int q, int code) {
        if (q < 0 || q >= n) {
            throw std::out_of_range("PauliString qubit index out of range");
        }
        set_bit(x, (size_t)q, code == 1 || code == 2);
        set_bit(z, (size_t)q, code == 2 || code == 3);
    }

    int pauli_at(int q) const {
        bool xb = x_bit(q), zb = z_bit(q);
        if (xb && zb) return 2;
        if (xb) return 1;
        if (zb) return 3;
        return 0;
    }

    int weight() const {
        int w = 0;
        for (int q = 0; q < n; q++) {
            w += pauli_at(q) != 0;
        }
        return w;
    }
};

}  // namespace cliffxeb

#endif  // CLIFFXEB_PAULI_HPP
