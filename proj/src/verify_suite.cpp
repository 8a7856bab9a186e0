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

#include "cliffxeb/verify_suite.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "cliffxeb/analysis.hpp"
#include "cliffxeb/bits.hpp"
#include "cliffxeb/dense_oracle.hpp"
#include "cliffxeb/ensembles.hpp"
#include "cliffxeb/tableau.hpp"
#include "cliffxeb/twirl_oracle.hpp"

namespace cliffxeb {

namespace {

VerifyCheck guarded(const std::string &name, const std::function<std::string()> &body) {
    VerifyCheck c;
    c.name = name;
    try {
        c.detail = body();
        c.pass = true;
    } catch (const std::exception &e) {
        c.pass = false;
        c.detail = e.what();
    }
    return c;
}

[[noreturn]] void fail(const std::string &msg) { throw std::runtime_error(msg); }

std::string check_amplitudes() {
    Rng rng(0x616d7001u);
    const int circuits = 150;
    double max_dev = 0.0;
    for (int t = 0; t < circuits; t++) {
        EnsembleSpec spec;
        spec.kind = EnsembleKind::kChain1d;
        spec.n = 2 + (int)rng.below(5);  // 2..6
        const int m = 1 + (int)rng.below(6);
        Tableau tab(spec.n);
        DenseState dense(spec.n);
        const RootedTree tree = make_twirl_tree(spec);
        for (int c = 0; c < m; c++) {
            const Cycle cy = sample_cycle(spec, tree, rng);
            tab.apply(cy);
            dense.apply(cy);
        }
        for (int probe = 0; probe < 8; probe++) {
            const uint64_t x = rng.below(1u << spec.n);
            const int k = tab.amplitude_exponent({x});
            const double p_dense = dense.probability(x);
            const double p_tab = k == kZeroAmplitude ? 0.0 : std::ldexp(1.0, -k);
            if (k != kZeroAmplitude && (k < 0 || k > spec.n))
                fail("amplitude exponent outside [0, n]");
            const double dev = std::abs(p_tab - p_dense);
            max_dev = std::max(max_dev, dev);
            if (dev > 1e-12) fail("stabilizer and dense probabilities disagree");
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d circuits, max |dp| = %.2e", circuits, max_dev);
    return buf;
}

std::string check_haar_moments() {
    Rng rng(0x68616101u);
    const int n = 3;
    const size_t samples = 20000;
    const std::vector<double> beta = sample_haar_beta(n, samples, rng);
    double mean = 0.0;
    for (const double b : beta) mean += b;
    mean /= (double)samples;
    double var = 0.0;
    for (const double b : beta) var += (b - mean) * (b - mean);
    var /= (double)(samples - 1);

    const HaarMoments want = haar_moments(n);
    const double mean_se = std::sqrt(want.var_beta / (double)samples);
    const double mean_dev_sigma = std::abs(mean - want.mean_beta) / mean_se;
    if (mean_dev_sigma > 5.0) fail("Haar mean off by more than 5 standard errors");
    const double var_rel = std::abs(var - want.var_beta) / want.var_beta;
    if (var_rel > 0.08) fail("Haar variance off by more than 8%");
    char buf[96];
    std::snprintf(buf, sizeof buf, "mean dev %.2f sigma, var dev %.1f%%",
                  mean_dev_sigma, 100.0 * var_rel);
    return buf;
}

std::string check_parity_gadget() {
    Rng rng(0x70617201u);
    const int trees = 120;
    for (int t = 0; t < trees; t++) {
        const int n = 2 + (int)rng.below(9);  // 2..10
        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < n; v++) edges.emplace_back((int)rng.below((uint64_t)v), v);
        const RootedTree tree = spanning_tree(n, edges);
        const XorFragment frag = random_xor_general(tree, rng);
        if ((int)frag.layers.size() > 2 * tree.depth * tree.max_degree)
            fail("parity gadget exceeds its depth bound");
        for (int probe = 0; probe < 16; probe++) {
            const uint64_t in = rng.below(1u << n);
            uint64_t bits = in;
            for (const Layer &l : frag.layers)
                for (const GateOp &g : l.ops) {
                    if (g.kind != GateKind::kCnot) fail("unexpected gate kind");
                    if ((bits >> g.a) & 1) bits ^= 1ull << g.b;
                }
            const uint64_t members = frag.members.empty() ? 0 : frag.members[0];
            const uint64_t parity = __builtin_parityll(members & in);
            const uint64_t want = in ^ (parity << tree.root);
            if (bits != want) fail("parity gadget output disagrees with bit simulation");
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d random trees, bit-exact, depth within bound",
                  trees);
    return buf;
}

std::string check_spectral_gap() {
    const TwirlMatrix single = build_twirl_matrix({uniform_c1_layer(1)}, 1);
    const double s3_single = third_singular_value(single);
    if (s3_single > 1e-10) fail("uniform single-qubit gap not closed to 1e-10");

    EnsembleSpec spec;
    spec.kind = EnsembleKind::kChain1d;
    spec.n = 2;
    const TwirlMatrix chain = build_twirl_matrix(ensemble_cycle_measure(spec), 2);
    const double s3_chain = third_singular_value(chain);
    if (s3_chain > 1.0 - 1e-6) fail("two-qubit chain cycle is not contracting");
    char buf[96];
    std::snprintf(buf, sizeof buf, "sigma3 = %.2e (n=1 uniform), %.6f (n=2 chain)",
                  s3_single, s3_chain);
    return buf;
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite() {
    std::vector<VerifyCheck> out;
    out.push_back(guarded("amplitude-equivalence", check_amplitudes));
    out.push_back(guarded("haar-moments", check_haar_moments));
    out.push_back(guarded("parity-gadget", check_parity_gadget));
    out.push_back(guarded("spectral-gap", check_spectral_gap));
    return out;
}

}  // namespace cliffxeb
