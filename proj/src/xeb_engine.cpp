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

#include "cliffxeb/xeb_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cliffxeb/extfloat.hpp"
#include "cliffxeb/tableau.hpp"

namespace cliffxeb {

void ExperimentConfig::validate() const {
    ensemble.validate();
    noise.validate();
    if (circuits_per_point < 1) {
        throw std::invalid_argument("experiment: circuits_per_point must be at least 1");
    }
    if (shots_per_circuit < 1) {
        throw std::invalid_argument("experiment: shots_per_circuit must be at least 1");
    }
    if (workers < 0) {
        throw std::invalid_argument("experiment: workers must be nonnegative");
    }
    if (cycle_counts.empty()) {
        throw std::invalid_argument("experiment: cycle_counts must not be empty");
    }
    int prev = 0;
    for (int m : cycle_counts) {
        if (m <= prev) {
            throw std::invalid_argument(
                "experiment: cycle_counts must be strictly increasing positive "
                "integers, got " + std::to_string(m) + " after " + std::to_string(prev));
        }
        prev = m;
    }
}

void ExponentHistogram::add(int k) {
    if (k == kZeroAmplitude) {
        zero_count++;
    } else if (k >= 0 && (size_t)k < counts.size()) {
        counts[(size_t)k]++;
    } else {
        throw std::out_of_range("histogram: exponent " + std::to_string(k) +
                                " out of range");
    }
    total++;
}

void ExponentHistogram::merge(const ExponentHistogram &o) {
    if (o.counts.size() != counts.size()) {
        throw std::invalid_argument("histogram: merging different widths");
    }
    for (size_t k = 0; k < counts.size(); k++) counts[k] += o.counts[k];
    zero_count += o.zero_count;
    total += o.total;
}

double histogram_estimate(const ExponentHistogram &h, int n) {
    if (h.counts.size() != (size_t)n + 1) {
        throw std::invalid_argument("histogram: width does not match qubit count");
    }
    if (h.total == 0) throw std::invalid_argument("histogram: no shots recorded");
    ExtFloat sum;
    // Smallest terms first (largest k): each addition aligns exactly while
    // magnitudes grow, so nothing is dropped prematurely.
    for (int k = n; k >= 0; k--) {
        if (h.counts[(size_t)k] != 0) {
            sum += ExtFloat::term((double)h.counts[(size_t)k], (int64_t)(n - k));
        }
    }
    sum.divide_by((double)h.total);
    return sum.to_double() - 1.0;
}

CircuitResult run_circuit(const EnsembleSpec &ensemble, const RootedTree &tree,
                          const NoiseModel &noise, int m, uint64_t shots,
                          uint64_t circuit_key) {
    if (m < 1) throw std::invalid_argument("run_circuit: m must be at least 1");
    if (shots < 1) throw std::invalid_argument("run_circuit: shots must be at least 1");
    const int n = ensemble.n;

    Rng circuit_rng(derive_seed(circuit_key, 0));
    std::vector<Cycle> cycles;
    cycles.reserve((size_t)m);
    for (int j = 0; j < m; j++) cycles.push_back(sample_cycle(ensemble, tree, circuit_rng));

    Tableau ideal = Tableau::new_zero_state(n);
    for (const Cycle &cy : cycles) ideal.apply(cy);

    CircuitResult res;
    res.histogram = ExponentHistogram(n);
    Tableau scratch = Tableau::new_zero_state(n);
    std::vector<uint64_t> bits;
    for (uint64_t s = 0; s < shots; s++) {
        Rng shot_rng(derive_seed(circuit_key, 1, s));
        Tableau t = Tableau::new_zero_state(n);
        for (const Cycle &cy : cycles) {
            for (const Layer &l : cy.layers) {
                for (const GateOp &op : l.ops) apply_noisy_gate(t, op, noise, shot_rng);
            }
        }
        t.measure_all(bits, shot_rng);
        apply_readout_flips(bits, n, noise, shot_rng);
        res.histogram.add(ideal.amplitude_exponent_into(bits, scratch));
    }
    res.q = histogram_estimate(res.histogram, n);
    return res;
}

namespace {

XebPoint reduce_point(const ExperimentConfig &config, int m,
                      const std::vector<double> &qs) {
    const int c = (int)qs.size();
    double mean = 0.0;
    for (int i = 0; i < c; i++) mean += qs[(size_t)i];
    mean /= c;
    double var = 0.0;
    if (c > 1) {
        for (int i = 0; i < c; i++) {
            const double d = qs[(size_t)i] - mean;
            var += d * d;
        }
        var /= (c - 1);
    }
    XebPoint pt;
    pt.m = m;
    pt.q_hat = mean;
    pt.std_err = c > 1 ? std::sqrt(var / c) : 0.0;
    pt.circuits = (uint64_t)c;
    pt.shots = config.shots_per_circuit;
    return pt;
}

XebPoint run_point_impl(const ExperimentConfig &config, int m, const NoiseModel &noise,
                        bool parallel) {
    config.validate();
    if (m < 1) throw std::invalid_argument("run_point: m must be at least 1");
    const RootedTree tree = make_twirl_tree(config.ensemble);
    const int c = config.circuits_per_point;
    std::vector<double> qs((size_t)c, 0.0);

    if (parallel) {
#ifdef _OPENMP
        int nw = config.workers > 0 ? config.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nw)
        for (int ci = 0; ci < c; ci++) {
            qs[(size_t)ci] = run_circuit(config.ensemble, tree, noise, m,
                                         config.shots_per_circuit,
                                         derive_seed(config.master_seed, (uint64_t)m,
                                                     (uint64_t)ci))
                                 .q;
        }
        return reduce_point(config, m, qs);
#endif
    }
    for (int ci = 0; ci < c; ci++) {
        qs[(size_t)ci] = run_circuit(config.ensemble, tree, noise, m,
                                     config.shots_per_circuit,
                                     derive_seed(config.master_seed, (uint64_t)m,
                                                 (uint64_t)ci))
                             .q;
    }
    return reduce_point(config, m, qs);
}

}  // namespace

XebPoint run_point(const ExperimentConfig &config, int m) {
    return run_point_impl(config, m, config.noise, true);
}

XebPoint run_point_ideal(const ExperimentConfig &config, int m) {
    return run_point_impl(config, m, NoiseModel{}, true);
}

XebPoint run_point_serial(const ExperimentConfig &config, int m) {
    return run_point_impl(config, m, config.noise, false);
}

XebPoint run_point_ideal_serial(const ExperimentConfig &config, int m) {
    return run_point_impl(config, m, NoiseModel{}, false);
}

ExperimentSeries run_experiment(
    const ExperimentConfig &config, bool with_ideal_twin,
    const std::function<void(const XebPoint &, bool is_ideal)> &on_point) {
    config.validate();
    ExperimentSeries series;
    for (int m : config.cycle_counts) {
        XebPoint noisy = run_point(config, m);
        series.noisy.push_back(noisy);
        if (on_point) on_point(noisy, false);
        if (with_ideal_twin) {
            XebPoint ideal = run_point_ideal(config, m);
            series.ideal.push_back(ideal);
            if (on_point) on_point(ideal, true);
        }
    }
    return series;
}

}  // namespace cliffxeb
