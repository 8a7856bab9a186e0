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

#ifndef CLIFFXEB_ANALYSIS_HPP
#define CLIFFXEB_ANALYSIS_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "cliffxeb/xeb_point.hpp"

namespace cliffxeb {

// Raised when a decay fit has fewer than three usable (positive, in-window)
// points — the regime where the shot budget is too small relative to the
// decayed signal.
struct FitInfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when every point of an offset-decay series sits within the noise
// floor of the asymptote, so no rate is extractable.
struct RateIndeterminateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inclusive cycle-count window [lo, hi].
struct Window {
    int lo = 0;
    int hi = 0;
};

// Result of fitting q(m) = B * p^m on the log scale. For decaying series p
// lands in (0, 1]; the fit reports whatever the data supports and never
// clamps.
struct DecayFit {
    double p = 0.0;
    double B = 0.0;
    Window window;
    double slope_se = 0.0;       // standard error of ln p
    double residual_norm = 0.0;  // weighted RMS residual in log space
    int points_used = 0;
    std::vector<int> excluded_m;  // in-window points dropped for q_hat <= 0
};

// Diagnostic three-parameter fit q(m) = A + B * p^m; its purpose is the
// check that A is statistically indistinguishable from 0. A_se is defined
// through the likelihood ratio against the nested A = 0 fit (|A| / A_se is
// the signed-root LR statistic), so a window too short to pin the offset
// reports a wide error rather than false confidence.
struct FreeOffsetFit {
    double A = 0.0;
    double B = 0.0;
    double p = 0.0;
    double A_se = 0.0;
};

// Per-cycle convergence rate of a noiseless series toward its asymptote.
struct MixRate {
    double r = 0.0;
    double r_lo = 0.0;  // 95% CI from the log-slope standard error
    double r_hi = 0.0;
    int points_used = 0;
};

struct DemReport {
    double p_fit = 0.0;
    double p_dem = 0.0;
    double ratio = 0.0;  // p_fit / p_dem
    double mix_r = 0.0;
    // The decay rate reads as a fidelity only when the predicted per-cycle
    // fidelity sits above the ideal series' mixing rate; otherwise the decay
    // is mixing-dominated.
    bool valid = false;
};

struct HaarMoments {
    double mean_beta = 0.0;
    double var_beta = 0.0;
};

struct BetaStats {
    double mean = 0.0;
    double var = 0.0;  // unbiased sample variance
    bool power_of_two_ok = false;
};

// Weighted least squares of ln q_hat against m. Weights come from the
// propagated log-scale deviations std_err/q_hat; a series with no stated
// errors is fit unweighted. Points with q_hat <= 0 are excluded and listed.
// Throws FitInfeasibleError below three usable points.
DecayFit fit_exponential(const std::vector<XebPoint> &points, Window window);

// A + B*p^m by scanning p (coarse grid plus golden-section refinement) with
// the weighted linear subproblem in (A, B) solved exactly at each p. A_se is
// the standard error of A from the linear subproblem at the chosen p.
FreeOffsetFit fit_free_offset(const std::vector<XebPoint> &points, Window window);

// Fits |q_hat - target| = c * r^m. Points whose residual is inside the noise
// floor (3 * std_err) are excluded; throws RateIndeterminateError when fewer
// than three points remain.
MixRate fit_offset_decay(const std::vector<XebPoint> &points, double target,
                         Window window);

// fit_offset_decay against the ideal-series asymptote (D-1)/(D+1).
MixRate mixing_rate(const std::vector<XebPoint> &ideal_points, int n, Window window);

// (D-1)/(D+1) evaluated as (1-e)/(1+e) with e = 2^{-n}, stable for any n.
double xeb_limit(int n);

DemReport compare_to_digital_model(const DecayFit &fit, double p_dem,
                                   const MixRate &mix);

// Mean 2D/(D+1) and variance 4D^2(D-1)/((D+1)^2(D+2)(D+3)) of the collision
// value beta over Haar-random states, evaluated in 2^{-n} form so no power
// of two is ever materialized.
HaarMoments haar_moments(int n);

// Sample statistics of noiseless per-circuit beta values, plus the invariant
// check that each is exactly 2^{n-k} for integer k in [0, n]. With
// throw_on_violation (the default) a violating value raises std::logic_error,
// since it can only come from a simulator defect.
BetaStats clifford_beta_stats(const std::vector<double> &betas, int n,
                              bool throw_on_violation = true);

// Smallest in-series m whose ideal q_hat is within 5 standard errors of the
// asymptote — a starting suggestion for the decay-fit window.
std::optional<int> suggest_window_start(const std::vector<XebPoint> &ideal_points,
                                        int n);

}  // namespace cliffxeb

#endif  // CLIFFXEB_ANALYSIS_HPP
