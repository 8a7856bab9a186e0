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

#include "cliffxeb/twirl_oracle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "cliffxeb/clifford1.hpp"

namespace cliffxeb {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using complexd = std::complex<double>;

constexpr double kProbTol = 1e-9;
constexpr double kLeadingTol = 1e-9;

MatrixXcd kron_c(const MatrixXcd &a, const MatrixXcd &b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++)
        for (Eigen::Index j = 0; j < a.cols(); j++)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

MatrixXd kron_d(const MatrixXd &a, const MatrixXd &b) {
    MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++)
        for (Eigen::Index j = 0; j < a.cols(); j++)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Single-qubit Pauli matrices, indexed 0=I, 1=X, 2=Y, 3=Z.
MatrixXcd pauli1(int i) {
    MatrixXcd p(2, 2);
    const complexd o(1, 0), j(0, 1);
    switch (i) {
        case 0: p << o, 0, 0, o; break;
        case 1: p << 0, o, o, 0; break;
        case 2: p << 0, -j, j, 0; break;
        default: p << o, 0, 0, -o; break;
    }
    return p;
}

// n-qubit Pauli for a packed base-4 index; qubit 0 is the least significant
// digit and sits rightmost in the tensor product (matching the state-index
// convention where bit 0 of a basis label is qubit 0).
MatrixXcd pauli_n(int idx, int n) {
    MatrixXcd p = pauli1(idx & 3);
    for (int q = 1; q < n; q++) p = kron_c(pauli1((idx >> (2 * q)) & 3), p);
    return p;
}

// Pauli-transfer matrix of a unitary: R(i, j) = tr(P_i U P_j U^dag) / 2^n.
MatrixXd ptm_of_unitary(const MatrixXcd &u, int n) {
    const int np = 1 << (2 * n);
    const double d = (double)(1 << n);
    std::vector<MatrixXcd> paulis;
    paulis.reserve((size_t)np);
    for (int i = 0; i < np; i++) paulis.push_back(pauli_n(i, n));
    MatrixXd r(np, np);
    const MatrixXcd udag = u.adjoint();
    for (int j = 0; j < np; j++) {
        const MatrixXcd conj = u * paulis[(size_t)j] * udag;
        for (int i = 0; i < np; i++)
            r(i, j) = (paulis[(size_t)i] * conj).trace().real() / d;
    }
    return r;
}

const std::vector<MatrixXd> &c1_ptms() {
    static const std::vector<MatrixXd> table = [] {
        std::vector<MatrixXd> t;
        t.reserve(kNumC1);
        for (int c = 0; c < kNumC1; c++) {
            MatrixXcd u(2, 2);
            u << kC1Unitary[(size_t)c][0], kC1Unitary[(size_t)c][1],
                kC1Unitary[(size_t)c][2], kC1Unitary[(size_t)c][3];
            t.push_back(ptm_of_unitary(u, 1));
        }
        return t;
    }();
    return table;
}

MatrixXd cnot_ptm(int control, int target) {
    MatrixXcd u = MatrixXcd::Zero(4, 4);
    for (int x = 0; x < 4; x++) {
        const int y = ((x >> control) & 1) ? x ^ (1 << target) : x;
        u(y, x) = complexd(1, 0);
    }
    return ptm_of_unitary(u, 2);
}

MatrixXd gate_ptm(const GateOp &g, int n) {
    if (g.kind == GateKind::kSingleClifford) {
        const MatrixXd &r = c1_ptms()[g.b];
        if (n == 1) return r;
        const MatrixXd eye = MatrixXd::Identity(4, 4);
        return g.a == 0 ? kron_d(eye, r) : kron_d(r, eye);
    }
    return cnot_ptm(g.a, g.b);
}

// Transfer matrix of a gate sequence applied left to right: later gates act
// on the result of earlier ones, so they multiply on the left.
MatrixXd seq_ptm(const std::vector<GateOp> &ops, int n) {
    MatrixXd r = MatrixXd::Identity(1 << (2 * n), 1 << (2 * n));
    for (const GateOp &g : ops) r = gate_ptm(g, n) * r;
    return r;
}

void check_gates(const std::vector<GateOp> &ops, int n) {
    for (const GateOp &g : ops) {
        if (g.kind == GateKind::kSingleClifford) {
            if (g.a >= (uint16_t)n)
                throw std::invalid_argument("measure: gate qubit out of range");
            if (g.b >= (uint16_t)kNumC1)
                throw std::invalid_argument("measure: single-qubit gate index out of range");
        } else {
            if (g.a >= (uint16_t)n || g.b >= (uint16_t)n || g.a == g.b)
                throw std::invalid_argument("measure: entangling gate endpoints invalid");
        }
    }
}

void check_prob_row(const std::vector<double> &p, size_t want, const char *what) {
    if (p.size() != want)
        throw std::invalid_argument(std::string("measure: ") + what + " has wrong length");
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0))
            throw std::invalid_argument(std::string("measure: ") + what +
                                        " has a negative probability");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kProbTol)
        throw std::invalid_argument(std::string("measure: ") + what +
                                    " probabilities do not sum to 1");
}

// Expectation factor of one independent layer: E[R^T (x) R^T] over the
// layer's distribution, a 16^n x 16^n matrix.
MatrixXd layer_factor(const TwirlLayerFactor &f, int n) {
    const int sdim = 1 << (4 * n);
    if (!f.qubit_dists.empty()) {
        if ((int)f.qubit_dists.size() != n)
            throw std::invalid_argument("measure: qubit_dists row count != n");
        // Per-qubit expectation of R^T (x) R^T over the 24 gates.
        std::vector<MatrixXd> m((size_t)n);
        for (int q = 0; q < n; q++) {
            check_prob_row(f.qubit_dists[(size_t)q], (size_t)kNumC1,
                           "single-qubit distribution");
            MatrixXd acc = MatrixXd::Zero(16, 16);
            for (int c = 0; c < kNumC1; c++) {
                const double p = f.qubit_dists[(size_t)q][(size_t)c];
                if (p == 0.0) continue;
                const MatrixXd rt = c1_ptms()[(size_t)c].transpose();
                acc += p * kron_d(rt, rt);
            }
            m[(size_t)q] = acc;
        }
        if (n == 1) return m[0];
        // The two qubits' tensor slots interleave inside R^T (x) R^T, so the
        // joint factor is the digit-wise product of the per-qubit factors.
        MatrixXd out(sdim, sdim);
        for (int a1 = 0; a1 < 4; a1++)
            for (int a0 = 0; a0 < 4; a0++)
                for (int b1 = 0; b1 < 4; b1++)
                    for (int b0 = 0; b0 < 4; b0++) {
                        const int row = ((a1 * 4 + a0) * 4 + b1) * 4 + b0;
                        for (int c1 = 0; c1 < 4; c1++)
                            for (int c0 = 0; c0 < 4; c0++)
                                for (int d1 = 0; d1 < 4; d1++)
                                    for (int d0 = 0; d0 < 4; d0++) {
                                        const int col =
                                            ((c1 * 4 + c0) * 4 + d1) * 4 + d0;
                                        out(row, col) = m[1](a1 * 4 + b1, c1 * 4 + d1) *
                                                        m[0](a0 * 4 + b0, c0 * 4 + d0);
                                    }
                    }
        return out;
    }
    if (f.mixture.empty())
        throw std::invalid_argument("measure: layer factor is empty");
    double sum = 0.0;
    MatrixXd acc = MatrixXd::Zero(sdim, sdim);
    for (const auto &[p, ops] : f.mixture) {
        if (!(p >= 0.0))
            throw std::invalid_argument("measure: mixture has a negative probability");
        sum += p;
        check_gates(ops, n);
        if (p == 0.0) continue;
        const MatrixXd rt = seq_ptm(ops, n).transpose();
        acc += p * kron_d(rt, rt);
    }
    if (std::abs(sum - 1.0) > kProbTol)
        throw std::invalid_argument("measure: mixture probabilities do not sum to 1");
    return acc;
}

Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
map_of(const TwirlMatrix &t) {
    return {t.data.data(), (Eigen::Index)t.dim, (Eigen::Index)t.dim};
}

TwirlLayerFactor six_set_layer(int n, int only_qubit) {
    TwirlLayerFactor f;
    f.qubit_dists.assign((size_t)n, std::vector<double>((size_t)kNumC1, 0.0));
    for (int q = 0; q < n; q++) {
        if (only_qubit >= 0 && q != only_qubit) {
            f.qubit_dists[(size_t)q][kC1Identity] = 1.0;
            continue;
        }
        for (uint8_t c : kTwirlSet6) f.qubit_dists[(size_t)q][c] = 1.0 / 6.0;
    }
    return f;
}

TwirlLayerFactor hub_h_layer(int n, int root) {
    TwirlLayerFactor f = six_set_layer(n, -1);
    f.qubit_dists[(size_t)root].assign((size_t)kNumC1, 0.0);
    f.qubit_dists[(size_t)root][kC1H] = 1.0;
    return f;
}

TwirlLayerFactor pauli_layer(int n) {
    TwirlLayerFactor f;
    f.qubit_dists.assign((size_t)n, std::vector<double>((size_t)kNumC1, 0.0));
    for (int q = 0; q < n; q++)
        for (uint8_t c : kPauliSet4) f.qubit_dists[(size_t)q][c] = 0.25;
    return f;
}

TwirlLayerFactor coin_s_layer(int n, int root) {
    TwirlLayerFactor f;
    f.qubit_dists.assign((size_t)n, std::vector<double>((size_t)kNumC1, 0.0));
    for (int q = 0; q < n; q++) {
        if (q == root) {
            f.qubit_dists[(size_t)q][kC1Identity] = 0.5;
            f.qubit_dists[(size_t)q][kC1S] = 0.5;
        } else {
            f.qubit_dists[(size_t)q][kC1Identity] = 1.0;
        }
    }
    return f;
}

// The star parity gadget at n = 2: the single spoke is present with
// probability 3/4.
TwirlLayerFactor xor_layer(int root, int leaf) {
    TwirlLayerFactor f;
    f.mixture.push_back({0.25, {}});
    f.mixture.push_back(
        {0.75, {GateOp{GateKind::kCnot, (uint16_t)leaf, (uint16_t)root}}});
    return f;
}

}  // namespace

TwirlMatrix build_twirl_matrix(const CycleMeasure &measure, int n) {
    if (n < 1 || n > 2)
        throw std::invalid_argument("twirl matrix: n must be 1 or 2");
    const int sdim = 1 << (4 * n);
    MatrixXd t = MatrixXd::Identity(sdim, sdim);
    for (const TwirlLayerFactor &f : measure) t *= layer_factor(f, n);
    TwirlMatrix out;
    out.n = n;
    out.dim = (size_t)sdim;
    out.data.resize((size_t)sdim * (size_t)sdim);
    for (int r = 0; r < sdim; r++)
        for (int c = 0; c < sdim; c++) out.data[(size_t)r * (size_t)sdim + (size_t)c] = t(r, c);
    return out;
}

std::vector<double> singular_values(const TwirlMatrix &t) {
    if (t.dim == 0 || t.data.size() != t.dim * t.dim)
        throw std::invalid_argument("twirl matrix: inconsistent dimensions");
    Eigen::BDCSVD<MatrixXd> svd(map_of(t));
    const auto &sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

double third_singular_value(const TwirlMatrix &t) {
    const std::vector<double> sv = singular_values(t);
    if (sv.size() < 3 || std::abs(sv[0] - 1.0) > kLeadingTol ||
        std::abs(sv[1] - 1.0) > kLeadingTol) {
        throw TwirlConstructionError(
            "twirl matrix: leading singular values are not 1; the measure does "
            "not describe trace-preserving unitary layers");
    }
    return sv[2];
}

TwirlLayerFactor uniform_c1_layer(int n) {
    TwirlLayerFactor f;
    f.qubit_dists.assign((size_t)n,
                         std::vector<double>((size_t)kNumC1, 1.0 / kNumC1));
    return f;
}

TwirlLayerFactor point_layer(std::vector<GateOp> ops) {
    TwirlLayerFactor f;
    f.mixture.push_back({1.0, std::move(ops)});
    return f;
}

CycleMeasure invert_measure(const CycleMeasure &measure) {
    CycleMeasure out;
    out.reserve(measure.size());
    for (auto it = measure.rbegin(); it != measure.rend(); ++it) {
        TwirlLayerFactor f;
        if (!it->qubit_dists.empty()) {
            f.qubit_dists.assign(it->qubit_dists.size(),
                                 std::vector<double>((size_t)kNumC1, 0.0));
            for (size_t q = 0; q < it->qubit_dists.size(); q++) {
                const auto &row = it->qubit_dists[q];
                if (row.size() != (size_t)kNumC1)
                    throw std::invalid_argument(
                        "measure: single-qubit distribution has wrong length");
                for (int c = 0; c < kNumC1; c++)
                    f.qubit_dists[q][kC1Inverse[(size_t)c]] += row[(size_t)c];
            }
        } else {
            for (const auto &[p, ops] : it->mixture) {
                std::vector<GateOp> inv;
                inv.reserve(ops.size());
                for (auto og = ops.rbegin(); og != ops.rend(); ++og) {
                    GateOp g = *og;
                    if (g.kind == GateKind::kSingleClifford) g.b = kC1Inverse[g.b];
                    inv.push_back(g);
                }
                f.mixture.push_back({p, std::move(inv)});
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

CycleMeasure ensemble_cycle_measure(const EnsembleSpec &spec) {
    spec.validate();
    if (spec.n > 2)
        throw std::invalid_argument(
            "cycle measure: only ensembles with at most 2 qubits are supported");
    CycleMeasure m;
    switch (spec.kind) {
        case EnsembleKind::kChain1d: {
            std::vector<GateOp> brick0;
            if (spec.n == 2) brick0.push_back({GateKind::kCnot, 0, 1});
            m.push_back(uniform_c1_layer(spec.n));
            m.push_back(point_layer(std::move(brick0)));
            m.push_back(uniform_c1_layer(spec.n));
            m.push_back(point_layer({}));  // the odd brick is empty below n = 3
            return m;
        }
        case EnsembleKind::kGrid2d: {
            m.push_back(uniform_c1_layer(spec.n));
            TwirlLayerFactor f;
            for (int w = 0; w < 4; w++)
                f.mixture.push_back(
                    {0.25, grid_matching((GridMatching)w, spec.rows, spec.cols)});
            m.push_back(std::move(f));
            return m;
        }
        case EnsembleKind::kApproxTwirlStar:
        case EnsembleKind::kApproxTwirlGraph: {
            const RootedTree tree = make_twirl_tree(spec);
            const int root = tree.root;
            const int leaf = 1 - root;
            m.push_back(pauli_layer(spec.n));
            for (int rep = 0; rep < spec.twirl_reps; rep++) {
                m.push_back(six_set_layer(spec.n, -1));
                m.push_back(xor_layer(root, leaf));
                m.push_back(hub_h_layer(spec.n, root));
                m.push_back(xor_layer(root, leaf));
                m.push_back(hub_h_layer(spec.n, root));
                m.push_back(coin_s_layer(spec.n, root));
                m.push_back(xor_layer(root, leaf));
                m.push_back(six_set_layer(spec.n, root));
            }
            return m;
        }
    }
    throw std::invalid_argument("cycle measure: unknown ensemble kind");
}

}  // namespace cliffxeb
