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

#ifndef CLIFFXEB_XEB_POINT_HPP
#define CLIFFXEB_XEB_POINT_HPP

#include <cstdint>

namespace cliffxeb {

// One estimate of q(m) = -1 + 2^n * E[ideal probability of the measured
// string] at a fixed cycle count, averaged over circuits. std_err is the
// across-circuit standard error (per-circuit shot noise folds into the
// across-circuit spread).
struct XebPoint {
    int m = 0;
    double q_hat = 0.0;
    double std_err = 0.0;
    uint64_t circuits = 0;
    uint64_t shots = 0;
};

}  // namespace cliffxeb

#endif  // CLIFFXEB_XEB_POINT_HPP
