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

#include "cliffxeb/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "cliffxeb/tableau.hpp"

namespace cliffxeb {

void NoiseModel::validate() const {
    if (!(p1 >= 0.0 && p1 <= 1.0)) {
        throw std::invalid_argument("noise: p1 must lie in [0, 1]");
    }
    if (!(p2 >= 0.0 && p2 <= 1.0)) {
        throw std::invalid_argument("noise: p2 must lie in [0, 1]");
    }
    if (!(meas_flip >= 0.0 && meas_flip <= 1.0)) {
        throw std::invalid_argument("noise: meas_flip must lie in [0, 1]");
    }
}

void apply_noisy_gate(Tableau &t, const GateOp &g, const NoiseModel &model, Rng &rng) {
    t.apply(g);
    switch (g.kind) {
        case GateKind::kSingleClifford:
            if (model.p1 > 0.0 && rng.bernoulli(model.p1)) {
                t.apply_pauli1(g.a, (int)rng.below(3) + 1);
            }
            break;
        case GateKind::kCnot:
            if (model.p2 > 0.0 && rng.bernoulli(model.p2)) {
                const uint64_t code = rng.below(15) + 1;
                t.apply_pauli1(g.a, (int)(code >> 2));
                t.apply_pauli1(g.b, (int)(code & 3));
            }
            break;
    }
}

double cycle_fidelity_prediction(const Cycle &cycle, const NoiseModel &model) {
    return std::pow(1.0 - model.p1, (double)cycle.n1q) *
           std::pow(1.0 - model.p2, (double)cycle.n2q);
}

void apply_readout_flips(std::vector<uint64_t> &bits, int n, const NoiseModel &model,
                         Rng &rng) {
    if (model.meas_flip <= 0.0) return;
    for (int q = 0; q < n; q++) {
        if (rng.bernoulli(model.meas_flip)) {
            set_bit(bits, (size_t)q, !get_bit(bits, (size_t)q));
        }
    }
}

}  // namespace cliffxeb
