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

#ifndef CLIFFXEB_VERIFY_SUITE_HPP
#define CLIFFXEB_VERIFY_SUITE_HPP

#include <string>
#include <vector>

namespace cliffxeb {

// One cross-check of the fast implementation against an independent oracle.
struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;  // what was measured, for the table
};

// Deterministic seeded cross-check suite: stabilizer amplitudes against the
// dense statevector, Haar moments against closed forms, the parity gadget
// against classical bit simulation, and the averaged-cycle spectral gaps.
// Runs in seconds.
std::vector<VerifyCheck> run_verify_suite();

}  // namespace cliffxeb

#endif  // CLIFFXEB_VERIFY_SUITE_HPP
