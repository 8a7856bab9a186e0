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
// Validates the verification backends themselves: the single-qubit gate
// tables against dense 2x2 conjugation, the byte-per-bit reference simulator
// against the statevector, and the Haar / density-matrix machinery against
// closed forms derived by hand.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "cliffxeb/bits.hpp"
#include "cliffxeb/clifford1.hpp"
#include "cliffxeb/dense_oracle.hpp"
#include "cliffxeb/ensembles.hpp"
#include "cliffxeb/reference_tableau.hpp"
#include "cliffxeb/twirl_oracle.hpp"
#include "test_helpers.hpp"

namespace cliffxeb {
namespace {

using test::random_circuit;

using Mat2 = std::array<std::complex<double>, 4>;

Mat2 matmul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 dagger(const Mat2 &a) {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

// Pauli matrix for an (x, z) bit pair, with (1,1) meaning Y = i X Z.
Mat2 pauli_matrix(int x, int z) {
    const std::complex<double> i(0.0, 1.0);
    if (x && z) return {0, -i, i, 0};
    if (x) return {0, 1, 1, 0};
    if (z) return {1, 0, 0, -1};
    return {1, 0, 0, 1};
}

bool approx_equal(const Mat2 &a, const Mat2 &b, double tol = 1e-12) {
    for (int k = 0; k < 4; k++) {
        if (std::abs(a[k] - b[k]) > tol) return false;
    }
    return true;
}

// Equality modulo a global phase factor.
bool proportional(const Mat2 &a, const Mat2 &b) {
    int ref = -1;
    for (int k = 0; k < 4; k++) {
        if (std::abs(a[k]) > 1e-9) {
            ref = k;
            break;
        }
    }
    REQUIRE(ref >= 0);
    if (std::abs(b[ref]) < 1e-9) return false;
    const std::complex<double> phase = b[ref] / a[ref];
    if (std::abs(std::abs(phase) - 1.0) > 1e-9) return false;
    for (int k = 0; k < 4; k++) {
        if (std::abs(phase * a[k] - b[k]) > 1e-9) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("single-qubit table has 24 distinct elements modulo phase") {
    for (int a = 0; a < kNumC1; a++) {
        for (int b = a + 1; b < kNumC1; b++) {
            CHECK_FALSE(proportional(kC1Unitary[a], kC1Unitary[b]));
        }
    }
}

TEST_CASE("hand-computed rows of the bit-action table") {
    // Input patterns index (x << 1) | z: 0 = I, 1 = Z, 2 = X, 3 = Y.
    CHECK(kC1Action[kC1Identity].nx == 0b1100);
    CHECK(kC1Action[kC1Identity].nz == 0b1010);
    CHECK(kC1Action[kC1Identity].dr == 0);
    // H swaps X and Z and negates Y.
    CHECK(kC1Action[kC1H].nx == 0b1010);
    CHECK(kC1Action[kC1H].nz == 0b1100);
    CHECK(kC1Action[kC1H].dr == 0b1000);
    // S maps X -> Y, Y -> -X, fixes Z.
    CHECK(kC1Action[kC1S].nx == 0b1100);
    CHECK(kC1Action[kC1S].nz == 0b0110);
    CHECK(kC1Action[kC1S].dr == 0b1000);
}

TEST_CASE("bit actions match dense conjugation for every element") {
    for (int idx = 0; idx < kNumC1; idx++) {
        const Mat2 &u = kC1Unitary[idx];
        const Mat2 ud = dagger(u);
        for (int pat = 1; pat < 4; pat++) {
            const int x = (pat >> 1) & 1;
            const int z = pat & 1;
            const Mat2 conj = matmul(matmul(u, pauli_matrix(x, z)), ud);
            const int nx = (kC1Action[idx].nx >> pat) & 1;
            const int nz = (kC1Action[idx].nz >> pat) & 1;
            const int dr = (kC1Action[idx].dr >> pat) & 1;
            Mat2 expect = pauli_matrix(nx, nz);
            if (dr) {
                for (auto &e : expect) e = -e;
            }
            CHECK(approx_equal(conj, expect));
        }
    }
}

TEST_CASE("unitaries are actually unitary") {
    const Mat2 id = {1, 0, 0, 1};
    for (int idx = 0; idx < kNumC1; idx++) {
        CHECK(approx_equal(matmul(kC1Unitary[idx], dagger(kC1Unitary[idx])), id));
    }
}

TEST_CASE("composition table matches matrix products") {
    for (int a = 0; a < kNumC1; a++) {
        for (int b = 0; b < kNumC1; b++) {
            const Mat2 prod = matmul(kC1Unitary[a], kC1Unitary[b]);
            CHECK(proportional(prod, kC1Unitary[kC1Mult[a][b]]));
        }
    }
}

TEST_CASE("group axioms of the composition and inverse tables") {
    for (int a = 0; a < kNumC1; a++) {
        CHECK(kC1Mult[a][kC1Identity] == a);
        CHECK(kC1Mult[kC1Identity][a] == a);
        CHECK(kC1Mult[a][kC1Inverse[a]] == kC1Identity);
        CHECK(kC1Mult[kC1Inverse[a]][a] == kC1Identity);
        // Latin-square property: each row and column is a permutation.
        uint32_t row = 0, col = 0;
        for (int b = 0; b < kNumC1; b++) {
            row |= uint32_t{1} << kC1Mult[a][b];
            col |= uint32_t{1} << kC1Mult[b][a];
        }
        CHECK(row == 0x00ffffffu);
        CHECK(col == 0x00ffffffu);
    }
    // Associativity, exhaustively over all 24^3 triples of table entries.
    for (int a = 0; a < kNumC1; a++) {
        for (int b = 0; b < kNumC1; b++) {
            for (int c = 0; c < kNumC1; c++) {
                CHECK(kC1Mult[kC1Mult[a][b]][c] == kC1Mult[a][kC1Mult[b][c]]);
            }
        }
    }
}

TEST_CASE("named indices point at the right matrices") {
    const double s = 0.70710678118654752440;
    const std::complex<double> i(0.0, 1.0);
    CHECK(proportional(kC1Unitary[kC1Identity], Mat2{1, 0, 0, 1}));
    CHECK(proportional(kC1Unitary[kC1H], Mat2{s, s, s, -s}));
    CHECK(proportional(kC1Unitary[kC1S], Mat2{1, 0, 0, i}));
    CHECK(proportional(kC1Unitary[kC1PauliX], pauli_matrix(1, 0)));
    CHECK(proportional(kC1Unitary[kC1PauliY], pauli_matrix(1, 1)));
    CHECK(proportional(kC1Unitary[kC1PauliZ], pauli_matrix(0, 1)));
}

TEST_CASE("six-element twirl set is a transversal of the Pauli subgroup") {
    // Distinct elements, and no two lie in the same Pauli coset; together
    // with |set| * 4 = 24 this means Pauli * set draws cover the whole group
    // uniformly.
    const Mat2 h = {0.70710678118654752440, 0.70710678118654752440,
                    0.70710678118654752440, -0.70710678118654752440};
    const Mat2 sgate = {1, 0, 0, std::complex<double>(0, 1)};
    const Mat2 sh = matmul(sgate, h);
    CHECK(proportional(kC1Unitary[kTwirlSet6[0]], Mat2{1, 0, 0, 1}));
    CHECK(proportional(kC1Unitary[kTwirlSet6[1]], sgate));
    CHECK(proportional(kC1Unitary[kTwirlSet6[2]], h));
    CHECK(proportional(kC1Unitary[kTwirlSet6[3]], sh));
    CHECK(proportional(kC1Unitary[kTwirlSet6[4]], matmul(sh, sh)));
    CHECK(proportional(kC1Unitary[kTwirlSet6[5]], matmul(matmul(sgate, h), sgate)));

    const std::array<uint8_t, 4> paulis = kPauliSet4;
    uint32_t seen = 0;
    for (uint8_t p : paulis) {
        for (uint8_t g : kTwirlSet6) {
            seen |= uint32_t{1} << kC1Mult[p][g];
        }
    }
    CHECK(seen == 0x00ffffffu);
    seen = 0;
    for (uint8_t p : paulis) {
        for (uint8_t g : kTwirlSet6) {
            seen |= uint32_t{1} << kC1Mult[g][p];
        }
    }
    CHECK(seen == 0x00ffffffu);
}

TEST_CASE("pauli set contents") {
    CHECK(kPauliSet4[0] == kC1Identity);
    CHECK(kPauliSet4[1] == kC1PauliX);
    CHECK(kPauliSet4[2] == kC1PauliY);
    CHECK(kPauliSet4[3] == kC1PauliZ);
}

TEST_CASE("scramble-support test accepts and rejects correctly") {
    // Uniform support over the whole group scrambles trivially.
    std::vector<int> all(kNumC1);
    for (int g = 0; g < kNumC1; g++) all[g] = g;
    CHECK(c1_generates_group(all));
    CHECK(c1_generates_group({kC1Identity, kC1H, kC1S}));
    // The twirl set contains I, S and H, so its difference set generates too.
    CHECK(c1_generates_group({kTwirlSet6.begin(), kTwirlSet6.end()}));
    // A singleton has trivial difference set.
    CHECK_FALSE(c1_generates_group({kC1H}));
    // {H, S} without identity: the difference set is the cyclic group
    // generated by HS (order 3), which does not cover the group.
    CHECK_FALSE(c1_generates_group({kC1H, kC1S}));
}

TEST_CASE("S then H three times is the exact identity on generator rows") {
    ReferenceTableau t(2);
    Rng rng(11);
    // Scramble so signs are exercised, then apply (H*S)^3 on each qubit.
    const std::vector<Cycle> warm = random_circuit(2, 4, rng);
    ReferenceTableau ref(2);
    for (const Cycle &c : warm) {
        t.apply(c);
        ref.apply(c);
    }
    for (int q = 0; q < 2; q++) {
        for (int rep = 0; rep < 3; rep++) {
            t.apply_s(q);
            t.apply_h(q);
        }
    }
    CHECK(t == ref);
}

TEST_CASE("letter decompositions reproduce the fused element indices") {
    // Applying the letters of element i to a fresh 1-qubit tableau must give
    // the images recorded in the action table for the X and Z rows.
    for (int idx = 0; idx < kNumC1; idx++) {
        ReferenceTableau t(1);
        t.apply_c1(0, idx);
        // Row 0 starts as X (destabilizer), row 1 as Z (stabilizer).
        const int x_pat = 2, z_pat = 1;
        CHECK((int)t.x_bit(0, 0) == ((kC1Action[idx].nx >> x_pat) & 1));
        CHECK((int)t.z_bit(0, 0) == ((kC1Action[idx].nz >> x_pat) & 1));
        CHECK((int)t.sign_bit(0) == ((kC1Action[idx].dr >> x_pat) & 1));
        CHECK((int)t.x_bit(1, 0) == ((kC1Action[idx].nx >> z_pat) & 1));
        CHECK((int)t.z_bit(1, 0) == ((kC1Action[idx].nz >> z_pat) & 1));
        CHECK((int)t.sign_bit(1) == ((kC1Action[idx].dr >> z_pat) & 1));
    }
}

TEST_CASE("reference tableau keeps symplectic structure under random circuits") {
    Rng rng(23);
    const int n = 5;
    ReferenceTableau t(n);
    for (const Cycle &c : random_circuit(n, 30, rng)) t.apply(c);

    auto symplectic = [&](int r1, int r2) {
        int acc = 0;
        for (int q = 0; q < n; q++) {
            acc ^= (t.x_bit(r1, q) & t.z_bit(r2, q)) ^ (t.z_bit(r1, q) & t.x_bit(r2, q));
        }
        return acc;
    };
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            // Stabilizers commute with each other; destabilizer i anticommutes
            // with stabilizer i and commutes with every other row.
            CHECK(symplectic(n + i, n + j) == 0);
            CHECK(symplectic(i, j) == 0);
            CHECK(symplectic(i, n + j) == (i == j ? 1 : 0));
        }
    }
}

TEST_CASE("reference tableau matches the statevector on random circuits") {
    Rng rng(37);
    for (int n = 2; n <= 6; n++) {
        for (int trial = 0; trial < 40; trial++) {
            const std::vector<Cycle> circuit = random_circuit(n, 6, rng);
            ReferenceTableau t(n);
            DenseState psi(n);
            for (const Cycle &c : circuit) {
                t.apply(c);
                psi.apply(c);
            }
            CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
            for (int probe = 0; probe < 8; probe++) {
                const uint64_t x = rng.below(uint64_t{1} << n);
                const int k = t.amplitude_exponent({x});
                const double expect =
                    k == kZeroAmplitude ? 0.0 : std::ldexp(1.0, -k);
                CHECK(psi.probability(x) == doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("measurement statistics and collapse on a superposition") {
    Rng rng(51);
    int ones = 0;
    const int shots = 100000;
    for (int s = 0; s < shots; s++) {
        ReferenceTableau t(1);
        t.apply_h(0);
        auto [bit, was_random] = t.measure(0, rng);
        CHECK(was_random);
        ones += bit;
        // The state has collapsed: measuring again is deterministic and equal.
        auto [bit2, was_random2] = t.measure(0, rng);
        CHECK_FALSE(was_random2);
        CHECK(bit2 == bit);
    }
    CHECK(std::abs(ones / (double)shots - 0.5) < 0.01);
}

TEST_CASE("deterministic measurements consume no randomness") {
    Rng rng_a(7), rng_b(7);
    ReferenceTableau t(3);
    t.apply_x(1);
    CHECK(t.measure(0, rng_a) == std::make_pair(0, false));
    CHECK(t.measure(1, rng_a) == std::make_pair(1, false));
    CHECK(t.measure(2, rng_a) == std::make_pair(0, false));
    // rng_a must be untouched.
    CHECK(rng_a.raw() == rng_b.raw());
}

TEST_CASE("measurement trajectories are reproducible from equal seeds") {
    for (uint64_t seed = 1; seed <= 5; seed++) {
        Rng circ_rng(seed * 101);
        const std::vector<Cycle> circuit = random_circuit(4, 8, circ_rng);
        std::vector<int> bits_a, bits_b;
        for (std::vector<int> *bits : {&bits_a, &bits_b}) {
            Rng rng(seed);
            ReferenceTableau t(4);
            for (const Cycle &c : circuit) t.apply(c);
            for (int q = 0; q < 4; q++) bits->push_back(t.measure(q, rng).first);
        }
        CHECK(bits_a == bits_b);
    }
}

TEST_CASE("exhaustive one-qubit collision values") {
    // Over all 24 elements applied to |0>, the support exponent k is 0 for
    // the 8 elements mapping Z to +-Z and 1 for the other 16, so the mean of
    // beta = 2^{n-k} is exactly (8*2 + 16*1)/24 = 4/3.
    int count_k0 = 0, count_k1 = 0;
    double sum_beta = 0.0;
    for (int idx = 0; idx < kNumC1; idx++) {
        ReferenceTableau t(1);
        t.apply_c1(0, idx);
        int k = t.amplitude_exponent({0});
        if (k == kZeroAmplitude) k = t.amplitude_exponent({1});
        REQUIRE(k != kZeroAmplitude);
        DenseState psi(1);
        psi.apply_c1(0, idx);
        const double beta_dense = 2.0 * psi.sum_probability_squared();
        const double beta = std::ldexp(1.0, 1 - k);
        CHECK(beta_dense == doctest::Approx(beta).epsilon(1e-12));
        sum_beta += beta;
        if (k == 0) count_k0++;
        if (k == 1) count_k1++;
    }
    CHECK(count_k0 == 8);
    CHECK(count_k1 == 16);
    CHECK(sum_beta / kNumC1 == 4.0 / 3.0);
}

TEST_CASE("haar collision sampler matches the closed-form moments") {
    Rng rng(4242);
    const int n = 3;
    const size_t samples = 100000;
    const std::vector<double> betas = sample_haar_beta(n, samples, rng);
    double mean = 0.0;
    for (double b : betas) mean += b;
    mean /= (double)samples;
    double var = 0.0;
    for (double b : betas) var += (b - mean) * (b - mean);
    var /= (double)(samples - 1);

    // Frozen closed forms at n = 3: mean 2D/(D+1) = 16/9 and variance
    // 4 D^2 (D-1) / ((D+1)^2 (D+2)(D+3)) = 896/4455.
    const double expect_mean = 16.0 / 9.0;
    const double expect_var = 896.0 / 4455.0;
    const double mean_tol = 4.0 * std::sqrt(expect_var / (double)samples);
    CHECK(std::abs(mean - expect_mean) < mean_tol);
    CHECK(std::abs(var - expect_var) < 0.1 * expect_var);
}

TEST_CASE("one-qubit haar collision values follow the exact distribution") {
    // For n = 1 the basis probability t is uniform on [0, 1], which makes the
    // collision value beta = 2(t^2 + (1-t)^2) have CDF sqrt(b - 1) on [1, 2].
    Rng rng(9001);
    std::vector<double> betas = sample_haar_beta(1, 10000, rng);
    std::sort(betas.begin(), betas.end());
    double ks = 0.0;
    for (size_t i = 0; i < betas.size(); i++) {
        REQUIRE(betas[i] >= 1.0 - 1e-12);
        REQUIRE(betas[i] <= 2.0 + 1e-12);
        const double model = std::sqrt(std::max(0.0, betas[i] - 1.0));
        const double lo = (double)i / (double)betas.size();
        const double hi = (double)(i + 1) / (double)betas.size();
        ks = std::max(ks, std::max(std::abs(model - lo), std::abs(model - hi)));
    }
    // 1.95 / sqrt(N) is the 0.1% critical value; a fixed seed keeps this
    // deterministic anyway.
    CHECK(ks < 0.02);
}

TEST_CASE("density oracle: hand-computed values on one qubit") {
    // Identity gate with certain fault: |0><0| maps to 1/3 |0><0| + 2/3 |1><1|,
    // and against the ideal |0> the estimator is 2 * (1/3) - 1 = -1/3.
    Cycle cy;
    Layer l;
    l.kind = LayerKind::kSingleQubit;
    l.ops.push_back({GateKind::kSingleClifford, 0, (uint16_t)kC1Identity});
    cy.layers.push_back(l);
    cy.n1q = 1;
    NoiseModel certain;
    certain.p1 = 1.0;
    CHECK(density_xeb_exact_circuit({cy}, 1, certain) ==
          doctest::Approx(-1.0 / 3.0).epsilon(1e-12));

    // Noiseless identity circuit: the output is a basis state, beta = 2.
    NoiseModel none;
    CHECK(density_xeb_exact_circuit({cy}, 1, none) == doctest::Approx(1.0).epsilon(1e-12));

    // A Hadamard makes the ideal distribution uniform, so the estimator is 0
    // at any fault probability.
    Cycle hcy;
    Layer hl;
    hl.kind = LayerKind::kSingleQubit;
    hl.ops.push_back({GateKind::kSingleClifford, 0, (uint16_t)kC1H});
    hcy.layers.push_back(hl);
    hcy.n1q = 1;
    NoiseModel half;
    half.p1 = 0.37;
    CHECK(density_xeb_exact_circuit({hcy}, 1, half) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(density_xeb_exact_circuit({hcy}, 1, none) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("density oracle conserves trace and distributions normalize") {
    Rng rng(77);
    NoiseModel model;
    model.p1 = 0.05;
    model.p2 = 0.12;
    for (int trial = 0; trial < 10; trial++) {
        const int n = 2 + (int)rng.below(3);
        DenseDensity rho(n);
        for (const Cycle &c : random_circuit(n, 5, rng)) rho.apply_noisy(c, model);
        CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-10));
        double diag = 0.0;
        for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
            const double p = rho.diagonal_probability(x);
            CHECK(p >= -1e-12);
            diag += p;
        }
        CHECK(diag == doctest::Approx(1.0).epsilon(1e-10));
        const std::vector<double> flipped = rho.measured_distribution(0.3);
        double total = 0.0;
        for (double p : flipped) total += p;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("density oracle agrees with the statevector when noiseless") {
    Rng rng(88);
    for (int trial = 0; trial < 10; trial++) {
        const int n = 2 + (int)rng.below(3);
        const std::vector<Cycle> circuit = random_circuit(n, 5, rng);
        DenseDensity rho(n);
        DenseState psi(n);
        NoiseModel none;
        for (const Cycle &c : circuit) {
            rho.apply_noisy(c, none);
            psi.apply(c);
        }
        for (uint64_t x = 0; x < (uint64_t{1} << n); x++) {
            CHECK(rho.diagonal_probability(x) ==
                  doctest::Approx(psi.probability(x)).epsilon(1e-10));
        }
    }
}

TEST_CASE("fault channel at certain error has no identity component") {
    // On one qubit, p = 1 averages the three conjugations; applied twice the
    // state still must have unit trace.
    DenseDensity rho(1);
    rho.apply_fault_channel({0}, 1.0);
    rho.apply_fault_channel({0}, 1.0);
    CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
    // Starting from |0>, one application gives P(0) = 1/3.
    DenseDensity rho2(1);
    rho2.apply_fault_channel({0}, 1.0);
    CHECK(rho2.diagonal_probability(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(rho2.diagonal_probability(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("two-qubit fault channel is uniform over the fifteen conjugations") {
    // |00><00| under a certain two-qubit fault: 3 of the 15 non-identity
    // Pauli pairs act diagonally (I Z, Z I, Z Z), so P(00) = 3/15.
    DenseDensity rho(2);
    rho.apply_fault_channel({0, 1}, 1.0);
    CHECK(rho.diagonal_probability(0) == doctest::Approx(3.0 / 15.0).epsilon(1e-12));
    // The X/Y components spread the rest uniformly: each of the other three
    // basis states receives 4/15.
    for (uint64_t x = 1; x < 4; x++) {
        CHECK(rho.diagonal_probability(x) == doctest::Approx(4.0 / 15.0).epsilon(1e-12));
    }
    CHECK(rho.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("postselection distinguishes forced, matched and impossible outcomes") {
    // |00> + |11>: postselecting qubit 0 forces a coin, then qubit 1 matches
    // deterministically; the mismatched pattern has zero amplitude.
    auto build = [] {
        ReferenceTableau t(2);
        t.apply_h(0);
        t.apply_cnot(0, 1);
        return t;
    };
    ReferenceTableau a = build();
    CHECK(a.postselect(0, 0) == 1);
    CHECK(a.postselect(1, 0) == 0);
    ReferenceTableau b = build();
    CHECK(b.postselect(0, 1) == 1);
    CHECK(b.postselect(1, 0) == kZeroAmplitude);
    CHECK(build().amplitude_exponent({0b00}) == 1);
    CHECK(build().amplitude_exponent({0b11}) == 1);
    CHECK(build().amplitude_exponent({0b01}) == kZeroAmplitude);
    CHECK(build().amplitude_exponent({0b10}) == kZeroAmplitude);
}

TEST_CASE("amplitude query leaves the state untouched") {
    Rng rng(3131);
    ReferenceTableau t(4);
    for (const Cycle &c : random_circuit(4, 6, rng)) t.apply(c);
    ReferenceTableau before = t;
    (void)t.amplitude_exponent({5});
    (void)t.amplitude_exponent({11});
    CHECK(t == before);
}

// ---------------------------------------------------------------------------
// Averaged-cycle transfer matrices and their spectra.
// ---------------------------------------------------------------------------

namespace {

using CM = std::vector<std::complex<double>>;  // row-major square, complex
using RM = std::vector<double>;                // row-major square, real

CM cmat_mul(const CM &a, const CM &b, int d) {
    CM out((size_t)d * d, std::complex<double>(0, 0));
    for (int i = 0; i < d; i++)
        for (int k = 0; k < d; k++) {
            const std::complex<double> x = a[(size_t)i * d + k];
            if (x == std::complex<double>(0, 0)) continue;
            for (int j = 0; j < d; j++) out[(size_t)i * d + j] += x * b[(size_t)k * d + j];
        }
    return out;
}

CM cmat_kron(const CM &a, int da, const CM &b, int db) {
    const int d = da * db;
    CM out((size_t)d * d);
    for (int i = 0; i < da; i++)
        for (int j = 0; j < da; j++)
            for (int k = 0; k < db; k++)
                for (int l = 0; l < db; l++)
                    out[(size_t)(i * db + k) * d + (j * db + l)] =
                        a[(size_t)i * da + j] * b[(size_t)k * db + l];
    return out;
}

CM cmat_adjoint(const CM &a, int d) {
    CM out((size_t)d * d);
    for (int i = 0; i < d; i++)
        for (int j = 0; j < d; j++) out[(size_t)i * d + j] = std::conj(a[(size_t)j * d + i]);
    return out;
}

CM pauli_2x2(int i) {
    const std::complex<double> o(1, 0), im(0, 1);
    switch (i) {
        case 0: return {o, 0, 0, o};
        case 1: return {0, o, o, 0};
        case 2: return {0, -im, im, 0};
        default: return {o, 0, 0, -o};
    }
}

CM pauli_tensor(int idx, int n) {
    CM p = pauli_2x2(idx & 3);
    int d = 2;
    for (int q = 1; q < n; q++) {
        p = cmat_kron(pauli_2x2((idx >> (2 * q)) & 3), 2, p, d);
        d *= 2;
    }
    return p;
}

// Transfer matrix of a unitary over the normalized Pauli basis, computed with
// plain complex arithmetic: R[i][j] = Re tr(P_i U P_j U^dag) / 2^n.
RM transfer_of_unitary(const CM &u, int n) {
    const int d = 1 << n, np = d * d;
    std::vector<CM> paulis;
    for (int i = 0; i < np; i++) paulis.push_back(pauli_tensor(i, n));
    const CM udag = cmat_adjoint(u, d);
    RM r((size_t)np * np);
    for (int j = 0; j < np; j++) {
        const CM m = cmat_mul(cmat_mul(u, paulis[(size_t)j], d), udag, d);
        for (int i = 0; i < np; i++) {
            std::complex<double> tr(0, 0);
            for (int a = 0; a < d; a++)
                for (int b = 0; b < d; b++)
                    tr += paulis[(size_t)i][(size_t)a * d + b] * m[(size_t)b * d + a];
            r[(size_t)i * np + j] = tr.real() / d;
        }
    }
    return r;
}

RM rmat_mul(const RM &a, const RM &b, int d) {
    RM out((size_t)d * d, 0.0);
    for (int i = 0; i < d; i++)
        for (int k = 0; k < d; k++) {
            const double x = a[(size_t)i * d + k];
            if (x == 0.0) continue;
            for (int j = 0; j < d; j++) out[(size_t)i * d + j] += x * b[(size_t)k * d + j];
        }
    return out;
}

RM rmat_kron(const RM &a, int da, const RM &b, int db) {
    const int d = da * db;
    RM out((size_t)d * d);
    for (int i = 0; i < da; i++)
        for (int j = 0; j < da; j++)
            for (int k = 0; k < db; k++)
                for (int l = 0; l < db; l++)
                    out[(size_t)(i * db + k) * d + (j * db + l)] =
                        a[(size_t)i * da + j] * b[(size_t)k * db + l];
    return out;
}

RM rmat_eye(int d) {
    RM out((size_t)d * d, 0.0);
    for (int i = 0; i < d; i++) out[(size_t)i * d + i] = 1.0;
    return out;
}

// Precomputed 2-qubit transfer matrices for every gate a sampler can emit.
struct TransferTables {
    std::array<RM, (size_t)kNumC1> on_q0, on_q1;
    RM cnot01, cnot10;

    TransferTables() {
        const RM eye4 = rmat_eye(4);
        for (int c = 0; c < kNumC1; c++) {
            const CM u = {kC1Unitary[(size_t)c][0], kC1Unitary[(size_t)c][1],
                          kC1Unitary[(size_t)c][2], kC1Unitary[(size_t)c][3]};
            const RM r = transfer_of_unitary(u, 1);
            on_q0[(size_t)c] = rmat_kron(eye4, 4, r, 4);
            on_q1[(size_t)c] = rmat_kron(r, 4, eye4, 4);
        }
        cnot01 = cnot_transfer(0, 1);
        cnot10 = cnot_transfer(1, 0);
    }

    static RM cnot_transfer(int control, int target) {
        CM u((size_t)16, std::complex<double>(0, 0));
        for (int x = 0; x < 4; x++) {
            const int y = ((x >> control) & 1) ? x ^ (1 << target) : x;
            u[(size_t)y * 4 + x] = std::complex<double>(1, 0);
        }
        return transfer_of_unitary(u, 2);
    }

    const RM &of(const GateOp &g) const {
        if (g.kind == GateKind::kSingleClifford)
            return g.a == 0 ? on_q0[g.b] : on_q1[g.b];
        return g.a == 0 ? cnot01 : cnot10;
    }
};

RM cycle_transfer2(const Cycle &cy, const TransferTables &tab) {
    RM r = rmat_eye(16);
    for (const Layer &l : cy.layers)
        for (const GateOp &g : l.ops) r = rmat_mul(tab.of(g), r, 16);
    return r;
}

void check_leading_pair_and_bound(const std::vector<double> &sv) {
    REQUIRE(sv.size() >= 3);
    CHECK(std::abs(sv[0] - 1.0) <= 1e-9);
    CHECK(std::abs(sv[1] - 1.0) <= 1e-9);
    for (double s : sv) CHECK(s <= 1.0 + 1e-9);
    for (size_t i = 1; i < sv.size(); i++) CHECK(sv[i] <= sv[i - 1] + 1e-12);
}

}  // namespace

TEST_CASE("averaged cycle matrix: identity point mass gives the identity") {
    for (int n : {1, 2}) {
        const TwirlMatrix t = build_twirl_matrix({point_layer({})}, n);
        const size_t dim = n == 1 ? 16u : 256u;
        REQUIRE(t.dim == dim);
        for (size_t r = 0; r < dim; r++)
            for (size_t c = 0; c < dim; c++)
                CHECK(std::abs(t.at(r, c) - (r == c ? 1.0 : 0.0)) <= 1e-14);
        CHECK(third_singular_value(t) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("averaged cycle matrix: uniform single-qubit gates leave only two directions") {
    const TwirlMatrix t = build_twirl_matrix({uniform_c1_layer(1)}, 1);
    const std::vector<double> sv = singular_values(t);
    REQUIRE(sv.size() == 16);
    CHECK(std::abs(sv[0] - 1.0) <= 1e-12);
    CHECK(std::abs(sv[1] - 1.0) <= 1e-12);
    for (size_t i = 2; i < sv.size(); i++) CHECK(sv[i] <= 1e-12);
    CHECK(third_singular_value(t) <= 1e-10);

    // The average is an orthogonal projector: symmetric and idempotent.
    for (size_t r = 0; r < 16; r++)
        for (size_t c = 0; c < 16; c++) CHECK(std::abs(t.at(r, c) - t.at(c, r)) <= 1e-13);
    const RM sq = rmat_mul(t.data, t.data, 16);
    for (size_t i = 0; i < sq.size(); i++) CHECK(std::abs(sq[i] - t.data[i]) <= 1e-12);

    // A 1x1 grid cycle is the same distribution wrapped in ensemble form.
    EnsembleSpec spec;
    spec.kind = EnsembleKind::kGrid2d;
    spec.n = 1;
    spec.rows = spec.cols = 1;
    const TwirlMatrix g = build_twirl_matrix(ensemble_cycle_measure(spec), 1);
    CHECK(third_singular_value(g) <= 1e-10);
}

TEST_CASE("averaged cycle matrix: two-qubit chain cycle contracts every other direction") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::kChain1d;
    spec.n = 2;
    const TwirlMatrix t = build_twirl_matrix(ensemble_cycle_measure(spec), 2);
    REQUIRE(t.dim == 256);
    const std::vector<double> sv = singular_values(t);
    check_leading_pair_and_bound(sv);
    const double s3 = third_singular_value(t);
    CHECK(s3 <= 1.0 - 1e-6);
    MESSAGE("chain n=2 third singular value: ", s3);

    // The chain measure is invariant under inversion, so its matrix is
    // symmetric.
    for (size_t r = 0; r < t.dim; r++)
        for (size_t c = r + 1; c < t.dim; c++)
            CHECK(std::abs(t.at(r, c) - t.at(c, r)) <= 1e-10);
}

TEST_CASE("averaged cycle matrix: approximate-twirl cycles contract at two qubits") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::kApproxTwirlStar;
    spec.n = 2;
    spec.twirl_reps = 1;
    const TwirlMatrix t1 = build_twirl_matrix(ensemble_cycle_measure(spec), 2);
    const std::vector<double> sv = singular_values(t1);
    check_leading_pair_and_bound(sv);
    const double s3_one = third_singular_value(t1);
    CHECK(s3_one <= 1.0 - 1e-6);
    MESSAGE("twirl n=2 reps=1 third singular value: ", s3_one);

    spec.twirl_reps = 2;
    const double s3_two =
        third_singular_value(build_twirl_matrix(ensemble_cycle_measure(spec), 2));
    CHECK(s3_two <= 1.0 - 1e-6);

    // The general-graph kind on the single possible edge routes through the
    // same tree and must give the identical measure.
    EnsembleSpec graph;
    graph.kind = EnsembleKind::kApproxTwirlGraph;
    graph.n = 2;
    graph.twirl_reps = 1;
    graph.edges = {{0, 1}};
    const TwirlMatrix tg = build_twirl_matrix(ensemble_cycle_measure(graph), 2);
    REQUIRE(tg.dim == t1.dim);
    for (size_t i = 0; i < tg.data.size(); i++)
        CHECK(std::abs(tg.data[i] - t1.data[i]) <= 1e-13);
}

TEST_CASE("averaged cycle matrix: inverting the measure transposes the matrix") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::kApproxTwirlStar;
    spec.n = 2;
    spec.twirl_reps = 1;
    const CycleMeasure mu = ensemble_cycle_measure(spec);
    const TwirlMatrix t = build_twirl_matrix(mu, 2);
    const TwirlMatrix ti = build_twirl_matrix(invert_measure(mu), 2);
    REQUIRE(ti.dim == t.dim);
    for (size_t r = 0; r < t.dim; r++)
        for (size_t c = 0; c < t.dim; c++)
            CHECK(std::abs(ti.at(r, c) - t.at(c, r)) <= 1e-12);

    // Composing a draw with an independent inverse draw multiplies the
    // transpose on: the concatenated measure's matrix is T^T T.
    CycleMeasure conv = invert_measure(mu);
    for (const TwirlLayerFactor &f : mu) conv.push_back(f);
    const TwirlMatrix tc = build_twirl_matrix(conv, 2);
    const RM want = rmat_mul(ti.data, t.data, (int)t.dim);
    for (size_t i = 0; i < want.size(); i++)
        CHECK(std::abs(tc.data[i] - want[i]) <= 1e-9);
}

TEST_CASE("averaged cycle matrix: agrees with the cycle samplers") {
    const TransferTables tab;
    struct Setup {
        EnsembleSpec spec;
        uint32_t seed;
    };
    std::vector<Setup> setups;
    {
        EnsembleSpec chain;
        chain.kind = EnsembleKind::kChain1d;
        chain.n = 2;
        setups.push_back({chain, 0x7431u});
        EnsembleSpec grid;
        grid.kind = EnsembleKind::kGrid2d;
        grid.n = 2;
        grid.rows = 1;
        grid.cols = 2;
        setups.push_back({grid, 0x7432u});
        EnsembleSpec twirl;
        twirl.kind = EnsembleKind::kApproxTwirlStar;
        twirl.n = 2;
        twirl.twirl_reps = 1;
        setups.push_back({twirl, 0x7433u});
    }
    for (const Setup &s : setups) {
        CAPTURE(topology_name(s.spec.kind));
        const TwirlMatrix t = build_twirl_matrix(ensemble_cycle_measure(s.spec), 2);
        const RootedTree tree = make_twirl_tree(s.spec);
        Rng rng(s.seed);
        const int trials = 2500;
        RM acc((size_t)256 * 256, 0.0);
        for (int i = 0; i < trials; i++) {
            const Cycle cy = sample_cycle(s.spec, tree, rng);
            const RM r = cycle_transfer2(cy, tab);
            for (int a = 0; a < 16; a++)
                for (int c = 0; c < 16; c++) {
                    const double x = r[(size_t)c * 16 + a];
                    if (x == 0.0) continue;
                    for (int b = 0; b < 16; b++) {
                        const size_t row = (size_t)(a * 16 + b) * 256 + (size_t)c * 16;
                        for (int d = 0; d < 16; d++)
                            acc[row + (size_t)d] += x * r[(size_t)d * 16 + b];
                    }
                }
        }
        double maxdiff = 0.0, sumdiff = 0.0;
        for (size_t i = 0; i < acc.size(); i++) {
            const double diff = std::abs(acc[i] / trials - t.data[i]);
            maxdiff = std::max(maxdiff, diff);
            sumdiff += diff;
        }
        CHECK(maxdiff < 0.15);
        CHECK(sumdiff / (double)acc.size() < 0.012);
    }
}

TEST_CASE("averaged cycle matrix: rejects malformed measures") {
    CHECK_THROWS_AS((void)build_twirl_matrix({point_layer({})}, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)build_twirl_matrix({point_layer({})}, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)build_twirl_matrix({TwirlLayerFactor{}}, 1),
                    std::invalid_argument);

    TwirlLayerFactor bad_rows = uniform_c1_layer(2);
    bad_rows.qubit_dists.pop_back();
    CHECK_THROWS_AS((void)build_twirl_matrix({bad_rows}, 2), std::invalid_argument);

    TwirlLayerFactor bad_sum = uniform_c1_layer(1);
    bad_sum.qubit_dists[0][0] += 0.25;
    CHECK_THROWS_AS((void)build_twirl_matrix({bad_sum}, 1), std::invalid_argument);

    TwirlLayerFactor bad_neg = uniform_c1_layer(1);
    bad_neg.qubit_dists[0][0] = -1.0 / 24;
    bad_neg.qubit_dists[0][1] += 2.0 / 24;
    CHECK_THROWS_AS((void)build_twirl_matrix({bad_neg}, 1), std::invalid_argument);

    TwirlLayerFactor bad_mix;
    bad_mix.mixture.push_back({1.5, {}});
    bad_mix.mixture.push_back({-0.5, {}});
    CHECK_THROWS_AS((void)build_twirl_matrix({bad_mix}, 1), std::invalid_argument);

    CHECK_THROWS_AS(
        (void)build_twirl_matrix({point_layer({{GateKind::kSingleClifford, 1, 0}})}, 1),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)build_twirl_matrix({point_layer({{GateKind::kSingleClifford, 0, 24}})}, 1),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)build_twirl_matrix({point_layer({{GateKind::kCnot, 1, 1}})}, 2),
        std::invalid_argument);

    TwirlMatrix zero;
    zero.n = 1;
    zero.dim = 16;
    zero.data.assign(256, 0.0);
    CHECK_THROWS_AS((void)third_singular_value(zero), TwirlConstructionError);

    TwirlMatrix inconsistent;
    inconsistent.dim = 16;
    inconsistent.data.assign(4, 0.0);
    CHECK_THROWS_AS((void)singular_values(inconsistent), std::invalid_argument);

    EnsembleSpec big;
    big.kind = EnsembleKind::kChain1d;
    big.n = 3;
    CHECK_THROWS_AS((void)ensemble_cycle_measure(big), std::invalid_argument);
}

}  // namespace cliffxeb
