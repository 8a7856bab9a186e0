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

#include "cliffxeb/dense_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "cliffxeb/clifford1.hpp"

namespace cliffxeb {

namespace {

void check_qubit(int q, int n, const char *what) {
    if (q < 0 || q >= n) {
        throw std::out_of_range(std::string(what) + ": qubit index out of range");
    }
}

}  // namespace

DenseState::DenseState(int n) : n_(n) {
    if (n < 1 || n > kDenseStateLimit) {
        throw std::invalid_argument("DenseState supports 1 to 12 qubits");
    }
    amp_.assign((size_t)1 << n, 0.0);
    amp_[0] = 1.0;
}

void DenseState::apply_2x2(int q, const std::array<std::complex<double>, 4> &u) {
    check_qubit(q, n_, "DenseState");
    const size_t stride = (size_t)1 << q;
    for (size_t base = 0; base < amp_.size(); base += 2 * stride) {
        for (size_t i = base; i < base + stride; i++) {
            std::complex<double> a0 = amp_[i];
            std::complex<double> a1 = amp_[i + stride];
            amp_[i] = u[0] * a0 + u[1] * a1;
            amp_[i + stride] = u[2] * a0 + u[3] * a1;
        }
    }
}

void DenseState::apply_c1(int q, int c1_index) {
    if (c1_index < 0 || c1_index >= kNumC1) {
        throw std::out_of_range("DenseState: single-qubit Clifford index out of range");
    }
    apply_2x2(q, kC1Unitary[(size_t)c1_index]);
}

void DenseState::apply_h(int q) { apply_c1(q, kC1H); }
void DenseState::apply_s(int q) { apply_c1(q, kC1S); }

void DenseState::apply_cnot(int control, int target) {
    check_qubit(control, n_, "DenseState");
    check_qubit(target, n_, "DenseState");
    if (control == target) {
        throw std::invalid_argument("DenseState: CNOT control equals target");
    }
    const uint64_t cbit = (uint64_t)1 << control;
    const uint64_t tbit = (uint64_t)1 << target;
    for (uint64_t i = 0; i < amp_.size(); i++) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amp_[i], amp_[i | tbit]);
        }
    }
}

void DenseState::apply(const GateOp &op) {
    switch (op.kind) {
        case GateKind::kSingleClifford:
            apply_c1(op.a, op.b);
            break;
        case GateKind::kCnot:
            apply_cnot(op.a, op.b);
            break;
    }
}

void DenseState::apply(const Layer &layer) {
    for (const GateOp &op : layer.ops) {
        apply(op);
    }
}

void DenseState::apply(const Cycle &cycle) {
    for (const Layer &layer : cycle.layers) {
        apply(layer);
    }
}

std::complex<double> DenseState::amplitude(uint64_t basis_index) const {
    return amp_.at(basis_index);
}

double DenseState::probability(uint64_t basis_index) const {
    return std::norm(amp_.at(basis_index));
}

double DenseState::sum_probability_squared() const {
    double s = 0.0;
    for (const auto &a : amp_) {
        double p = std::norm(a);
        s += p * p;
    }
    return s;
}

double DenseState::norm() const {
    double s = 0.0;
    for (const auto &a : amp_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

double dense_run(const std::vector<Cycle> &circuit, int n, uint64_t x) {
    DenseState state(n);
    for (const Cycle &cycle : circuit) {
        state.apply(cycle);
    }
    return state.probability(x);
}

DenseDensity::DenseDensity(int n) : n_(n), dim_((size_t)1 << n) {
    if (n < 1 || n > kDenseDensityLimit) {
        throw std::invalid_argument("DenseDensity supports 1 to 4 qubits");
    }
    rho_.assign(dim_ * dim_, 0.0);
    rho_[0] = 1.0;  // |0...0><0...0|
}

void DenseDensity::apply_left_1q(int q, const std::array<std::complex<double>, 4> &u) {
    const size_t stride = (size_t)1 << q;
    for (size_t col = 0; col < dim_; col++) {
        for (size_t base = 0; base < dim_; base += 2 * stride) {
            for (size_t r = base; r < base + stride; r++) {
                std::complex<double> a0 = rho_[r * dim_ + col];
                std::complex<double> a1 = rho_[(r + stride) * dim_ + col];
                rho_[r * dim_ + col] = u[0] * a0 + u[1] * a1;
                rho_[(r + stride) * dim_ + col] = u[2] * a0 + u[3] * a1;
            }
        }
    }
}

void DenseDensity::apply_right_1q_dagger(int q,
                                         const std::array<std::complex<double>, 4> &u) {
    // rho <- rho * u^dagger; columns transform with the conjugate of u.
    const size_t stride = (size_t)1 << q;
    for (size_t row = 0; row < dim_; row++) {
        std::complex<double> *r = &rho_[row * dim_];
        for (size_t base = 0; base < dim_; base += 2 * stride) {
            for (size_t c = base; c < base + stride; c++) {
                std::complex<double> a0 = r[c];
                std::complex<double> a1 = r[c + stride];
                r[c] = a0 * std::conj(u[0]) + a1 * std::conj(u[1]);
                r[c + stride] = a0 * std::conj(u[2]) + a1 * std::conj(u[3]);
            }
        }
    }
}

void DenseDensity::apply_unitary_1q(int q, const std::array<std::complex<double>, 4> &u) {
    check_qubit(q, n_, "DenseDensity");
    apply_left_1q(q, u);
    apply_right_1q_dagger(q, u);
}

void DenseDensity::apply_c1(int q, int c1_index) {
    if (c1_index < 0 || c1_index >= kNumC1) {
        throw std::out_of_range("DenseDensity: single-qubit Clifford index out of range");
    }
    apply_unitary_1q(q, kC1Unitary[(size_t)c1_index]);
}

void DenseDensity::apply_pauli_conjugation(int q, int code) {
    static const int codes_to_c1[4] = {kC1Identity, kC1PauliX, kC1PauliY, kC1PauliZ};
    apply_unitary_1q(q, kC1Unitary[(size_t)codes_to_c1[code]]);
}

void DenseDensity::apply_cnot(int control, int target) {
    check_qubit(control, n_, "DenseDensity");
    check_qubit(target, n_, "DenseDensity");
    if (control == target) {
        throw std::invalid_argument("DenseDensity: CNOT control equals target");
    }
    const uint64_t cbit = (uint64_t)1 << control;
    const uint64_t tbit = (uint64_t)1 << target;
    // Row permutation, then the same permutation on columns.
    for (uint64_t r = 0; r < dim_; r++) {
        if ((r & cbit) && !(r & tbit)) {
            for (size_t col = 0; col < dim_; col++) {
                std::swap(rho_[r * dim_ + col], rho_[(r | tbit) * dim_ + col]);
            }
        }
    }
    for (uint64_t c = 0; c < dim_; c++) {
        if ((c & cbit) && !(c & tbit)) {
            for (size_t row = 0; row < dim_; row++) {
                std::swap(rho_[row * dim_ + c], rho_[row * dim_ + (c | tbit)]);
            }
        }
    }
}

void DenseDensity::apply_gate(const GateOp &op) {
    switch (op.kind) {
        case GateKind::kSingleClifford:
            apply_c1(op.a, op.b);
            break;
        case GateKind::kCnot:
            apply_cnot(op.a, op.b);
            break;
    }
}

void DenseDensity::apply_fault_channel(const std::vector<int> &qubits, double p) {
    if (p == 0.0) {
        return;
    }
    if (qubits.empty() || qubits.size() > 2) {
        throw std::invalid_argument("fault channel supports one- or two-qubit support");
    }
    const size_t num_paulis = qubits.size() == 1 ? 4 : 16;
    std::vector<std::complex<double>> mixed(dim_ * dim_, 0.0);
    std::vector<std::complex<double>> saved = rho_;
    for (size_t code = 1; code < num_paulis; code++) {
        rho_ = saved;
        if (qubits.size() == 1) {
            apply_pauli_conjugation(qubits[0], (int)code);
        } else {
            apply_pauli_conjugation(qubits[0], (int)(code >> 2));
            apply_pauli_conjugation(qubits[1], (int)(code & 3));
        }
        for (size_t i = 0; i < rho_.size(); i++) {
            mixed[i] += rho_[i];
        }
    }
    const double q = p / (double)(num_paulis - 1);
    for (size_t i = 0; i < rho_.size(); i++) {
        rho_[i] = (1.0 - p) * saved[i] + q * mixed[i];
    }
}

void DenseDensity::apply_noisy_gate(const GateOp &op, const NoiseModel &model) {
    apply_gate(op);
    switch (op.kind) {
        case GateKind::kSingleClifford:
            apply_fault_channel({(int)op.a}, model.p1);
            break;
        case GateKind::kCnot:
            apply_fault_channel({(int)op.a, (int)op.b}, model.p2);
            break;
    }
}

void DenseDensity::apply_noisy(const Cycle &cycle, const NoiseModel &model) {
    for (const Layer &layer : cycle.layers) {
        for (const GateOp &op : layer.ops) {
            apply_noisy_gate(op, model);
        }
    }
}

double DenseDensity::diagonal_probability(uint64_t basis_index) const {
    return rho_.at(basis_index * dim_ + basis_index).real();
}

std::vector<double> DenseDensity::measured_distribution(double meas_flip) const {
    std::vector<double> p(dim_);
    for (size_t x = 0; x < dim_; x++) {
        p[x] = diagonal_probability(x);
    }
    if (meas_flip == 0.0) {
        return p;
    }
    // Binary symmetric channel on each readout bit.
    for (int q = 0; q < n_; q++) {
        const size_t bit = (size_t)1 << q;
        std::vector<double> next(dim_, 0.0);
        for (size_t x = 0; x < dim_; x++) {
            next[x] += (1.0 - meas_flip) * p[x];
            next[x ^ bit] += meas_flip * p[x];
        }
        p.swap(next);
    }
    return p;
}

double DenseDensity::trace_real() const {
    double t = 0.0;
    for (size_t i = 0; i < dim_; i++) {
        t += rho_[i * dim_ + i].real();
    }
    return t;
}

double density_xeb_exact_circuit(const std::vector<Cycle> &circuit, int n,
                                 const NoiseModel &model) {
    DenseDensity noisy(n);
    DenseState ideal(n);
    for (const Cycle &cycle : circuit) {
        noisy.apply_noisy(cycle, model);
        ideal.apply(cycle);
    }
    std::vector<double> p_noisy = noisy.measured_distribution(model.meas_flip);
    const double dim = std::ldexp(1.0, n);
    double q = 0.0;
    for (size_t x = 0; x < p_noisy.size(); x++) {
        q += p_noisy[x] * ideal.probability(x);
    }
    return dim * q - 1.0;
}

std::vector<double> sample_haar_beta(int n, size_t samples, Rng &rng) {
    if (n < 1 || n > kDenseStateLimit) {
        throw std::invalid_argument("sample_haar_beta supports 1 to 12 qubits");
    }
    const size_t dim = (size_t)1 << n;
    const double dim_f = (double)dim;
    std::vector<double> betas;
    betas.reserve(samples);
    std::vector<double> p(dim);
    for (size_t s = 0; s < samples; s++) {
        double total = 0.0;
        for (size_t i = 0; i < dim; i++) {
            // Box-Muller: two uniform draws give one complex standard normal.
            double u1 = 1.0 - rng.uniform();  // in (0, 1], safe for log
            double u2 = rng.uniform();
            double r = std::sqrt(-2.0 * std::log(u1));
            double re = r * std::cos(2.0 * M_PI * u2);
            double im = r * std::sin(2.0 * M_PI * u2);
            p[i] = re * re + im * im;  // |amplitude|^2 before normalization
            total += p[i];
        }
        double beta = 0.0;
        for (size_t i = 0; i < dim; i++) {
            double prob = p[i] / total;
            beta += prob * prob;
        }
        betas.push_back(dim_f * beta);
    }
    return betas;
}

}  // namespace cliffxeb
