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

#ifndef CLIFFXEB_XEB_ENGINE_HPP
#define CLIFFXEB_XEB_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "cliffxeb/bits.hpp"
#include "cliffxeb/ensembles.hpp"
#include "cliffxeb/noise.hpp"
#include "cliffxeb/xeb_point.hpp"

namespace cliffxeb {

// Full description of one benchmarking run. Results are a pure function of
// this struct: all randomness is derived from master_seed.
struct ExperimentConfig {
    EnsembleSpec ensemble;
    NoiseModel noise;
    std::vector<int> cycle_counts;  // strictly increasing, all >= 1
    int circuits_per_point = 1;
    uint64_t shots_per_circuit = 1;
    uint64_t master_seed = 0;
    int workers = 0;  // 0 = all available

    void validate() const;
};

// Ideal output probabilities of stabilizer states are 0 or 2^-k, so the shot
// record is a histogram over k plus a bucket for unsupported outcomes. This
// sidesteps both underflow of p_x and overflow of 2^n * p_x at large n.
struct ExponentHistogram {
    std::vector<uint64_t> counts;  // counts[k] for k in [0, n]
    uint64_t zero_count = 0;
    uint64_t total = 0;

    explicit ExponentHistogram(int n = 0) : counts((size_t)n + 1, 0) {}

    // k in [0, n] for a supported outcome, kZeroAmplitude otherwise.
    void add(int k);
    void merge(const ExponentHistogram &o);
};

// Estimator value of one histogram: sum_k counts[k] * 2^(n-k) / total - 1,
// accumulated exponent-aligned from the smallest terms up so the result is
// exact to double precision for any n (noiseless histograms have a single
// occupied bin and come out bit-exact).
double histogram_estimate(const ExponentHistogram &h, int n);

struct CircuitResult {
    double q = 0.0;
    ExponentHistogram histogram;
};

// One circuit: samples m cycles from the key's circuit stream, builds the
// ideal tableau once, then runs `shots` independent noisy simulations, each
// seeded from the key's per-shot stream; measured outcomes are scored by
// their ideal amplitude exponent.
CircuitResult run_circuit(const EnsembleSpec &ensemble, const RootedTree &tree,
                          const NoiseModel &noise, int m, uint64_t shots,
                          uint64_t circuit_key);

// Averages circuits_per_point circuits at cycle count m, with circuit keys
// derived from (master_seed, m, circuit index). std_err is the sample
// standard deviation of per-circuit estimates over sqrt(C) (0 when C = 1).
// Deterministic: results are byte-identical for any worker count.
XebPoint run_point(const ExperimentConfig &config, int m);

// Same, with the noise zeroed but the circuit keys unchanged: the noiseless
// twin of a noisy point, on identical circuits.
XebPoint run_point_ideal(const ExperimentConfig &config, int m);

// Single-threaded reference path; must produce byte-identical points.
XebPoint run_point_serial(const ExperimentConfig &config, int m);
XebPoint run_point_ideal_serial(const ExperimentConfig &config, int m);

struct ExperimentSeries {
    std::vector<XebPoint> noisy;
    std::vector<XebPoint> ideal;  // empty unless the twin was requested
};

// One point per cycle count, in order; when with_ideal_twin is set, each
// noisy point is followed by its noiseless twin. on_point (if given) fires
// after each completed point so callers can persist progress as it happens.
ExperimentSeries run_experiment(
    const ExperimentConfig &config, bool with_ideal_twin = false,
    const std::function<void(const XebPoint &, bool is_ideal)> &on_point = nullptr);

}  // namespace cliffxeb

#endif  // CLIFFXEB_XEB_ENGINE_HPP
