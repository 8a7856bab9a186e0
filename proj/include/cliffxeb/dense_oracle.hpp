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
// Brute-force verification backends. Everything here evolves full complex
// vectors or matrices and is deliberately independent of the tableau code
// paths it is used to check: gates come straight from the 2x2 unitaries and
// Kronecker structure, with no stabilizer bookkeeping anywhere.

#ifndef CLIFFXEB_DENSE_ORACLE_HPP
#define CLIFFXEB_DENSE_ORACLE_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "cliffxeb/bits.hpp"
#include "cliffxeb/circuit.hpp"
#include "cliffxeb/noise.hpp"

namespace cliffxeb {

inline constexpr int kDenseStateLimit = 12;
inline constexpr int kDenseDensityLimit = 4;

// Full statevector on up to kDenseStateLimit qubits, starting in |0...0>.
// Qubit q is bit q of the basis index (qubit 0 = least significant bit).
class DenseState {
  public:
    explicit DenseState(int n);

    int num_qubits() const { return n_; }

    void apply_c1(int q, int c1_index);
    void apply_h(int q);
    void apply_s(int q);
    void apply_cnot(int control, int target);
    void apply(const GateOp &op);
    void apply(const Layer &layer);
    void apply(const Cycle &cycle);

    std::complex<double> amplitude(uint64_t basis_index) const;
    double probability(uint64_t basis_index) const;
    // Sum over basis states of p_x^2; D times this is the collision value
    // beta = D * sum_x p_x^2 of the state.
    double sum_probability_squared() const;
    double norm() const;

    const std::vector<std::complex<double>> &amplitudes() const { return amp_; }

  private:
    void apply_2x2(int q, const std::array<std::complex<double>, 4> &u);

    int n_;
    std::vector<std::complex<double>> amp_;
};

// Runs the circuit on |0^n> and returns the exact |<x|psi>|^2.
double dense_run(const std::vector<Cycle> &circuit, int n, uint64_t x);

// Full density matrix on up to kDenseDensityLimit qubits. Supports the exact
// channel form of the stochastic Pauli fault model: after the ideal gate,
// rho <- (1-p) rho + p/(4^k - 1) * sum over non-identity k-qubit Paulis P of
// P rho P.
class DenseDensity {
  public:
    explicit DenseDensity(int n);

    int num_qubits() const { return n_; }

    void apply_c1(int q, int c1_index);
    void apply_cnot(int control, int target);
    void apply_gate(const GateOp &op);
    // The exact fault channel on the given support (1 or 2 distinct qubits).
    void apply_fault_channel(const std::vector<int> &qubits, double p);
    void apply_noisy_gate(const GateOp &op, const NoiseModel &model);
    void apply_noisy(const Cycle &cycle, const NoiseModel &model);

    double diagonal_probability(uint64_t basis_index) const;
    // Output distribution after independent classical readout flips.
    std::vector<double> measured_distribution(double meas_flip) const;
    double trace_real() const;

  private:
    void apply_left_1q(int q, const std::array<std::complex<double>, 4> &u);
    void apply_right_1q_dagger(int q, const std::array<std::complex<double>, 4> &u);
    void apply_unitary_1q(int q, const std::array<std::complex<double>, 4> &u);
    void apply_pauli_conjugation(int q, int code);

    int n_;
    size_t dim_;
    std::vector<std::complex<double>> rho_;  // row-major dim x dim
};

// Exact estimator expectation for ONE circuit: evolves the noisy density
// matrix and the ideal statevector, then returns
// q = D * sum_x P_noisy(x) * p_ideal(x) - 1, with readout flips folded into
// P_noisy. Averaging this over sampled circuits gives the ensemble value.
double density_xeb_exact_circuit(const std::vector<Cycle> &circuit, int n,
                                 const NoiseModel &model);

// Collision values beta = D * sum_x |a_x|^4 for states drawn uniformly from
// the unit sphere via normalized i.i.d. complex Gaussian amplitudes. The
// Gaussians come from an explicit Box-Muller transform on the caller's rng so
// results are reproducible across standard library implementations.
std::vector<double> sample_haar_beta(int n, size_t samples, Rng &rng);

}  // namespace cliffxeb

#endif  // CLIFFXEB_DENSE_ORACLE_HPP
