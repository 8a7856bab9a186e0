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

#ifndef CLIFFXEB_NOISE_HPP
#define CLIFFXEB_NOISE_HPP

#include "cliffxeb/bits.hpp"
#include "cliffxeb/circuit.hpp"

namespace cliffxeb {

class Tableau;

// Stochastic Pauli fault parameters. "Depolarizing probability p" here means:
// after the ideal gate, with probability p a uniformly random NON-IDENTITY
// Pauli is applied on the gate's support (3 choices for one qubit, 15 for
// two). This Pauli-fault convention differs from the (1-p)rho + p*I/d
// convention by a factor d^2/(d^2-1) in the effective depolarizing strength;
// it is used consistently for both simulation and the per-gate fidelity
// product below, so the two sides of every comparison share one convention.
struct NoiseModel {
    double p1 = 0.0;         // per single-qubit-gate fault probability
    double p2 = 0.0;         // per two-qubit-gate fault probability
    double meas_flip = 0.0;  // per-qubit classical readout flip probability

    bool is_noiseless() const { return p1 == 0.0 && p2 == 0.0 && meas_flip == 0.0; }
    void validate() const;
};

// Applies the ideal gate, then draws a fault with the arity-appropriate
// probability. Fault rng draws are consumed only when the relevant
// probability is nonzero, so a zero model is draw-for-draw identical to the
// ideal path.
void apply_noisy_gate(Tableau &t, const GateOp &g, const NoiseModel &model, Rng &rng);

// Predicted fidelity of one sampled cycle under the per-gate product rule:
// (1 - p1)^{#1q} * (1 - p2)^{#2q}, using the cycle's recorded gate counts.
// Every drawn single-qubit gate counts (identity draws included); only CNOTs
// actually emitted count.
double cycle_fidelity_prediction(const Cycle &cycle, const NoiseModel &model);

// Flips each of the n measured bits independently with probability
// model.meas_flip. Draws are consumed only when meas_flip > 0.
void apply_readout_flips(std::vector<uint64_t> &bits, int n, const NoiseModel &model,
                         Rng &rng);

}  // namespace cliffxeb

#endif  // CLIFFXEB_NOISE_HPP
