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

#ifndef CLIFFXEB_CONFIG_HPP
#define CLIFFXEB_CONFIG_HPP

#include <string>
#include <vector>

#include "cliffxeb/ensembles.hpp"
#include "cliffxeb/noise.hpp"
#include "cliffxeb/xeb_engine.hpp"

namespace cliffxeb {

// A full run description as read from a config file. Sections and keys are
// documented in config_reference(); every key has a default.
struct RunConfig {
    EnsembleSpec ensemble{EnsembleKind::kChain1d, 4, 0, 0, 2, {}};
    NoiseModel noise;
    std::vector<int> cycle_counts = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    bool ideal_twin = true;
    int circuits = 10;
    int shots = 100;
    int workers = 0;  // 0 = all available cores
    uint32_t master_seed = 1;
};

// Parses the sectioned key = value format. Unknown sections or keys, type
// errors, and constraint violations all throw std::invalid_argument naming
// the offending key. The result is fully validated.
RunConfig parse_config_text(const std::string &text);

// parse_config_text over a file's contents; file errors name the path.
RunConfig load_config_file(const std::string &path);

// Canonical serialization: fixed section and key order, every key present.
// Parsing it reproduces the config; it is the manifest's config snapshot and
// the input to the manifest hash.
std::string canonical_config_text(const RunConfig &cfg);

// The engine view of the same parameters.
ExperimentConfig experiment_config(const RunConfig &cfg);

// Human-oriented reference: every key with its meaning and default.
const char *config_reference();

}  // namespace cliffxeb

#endif  // CLIFFXEB_CONFIG_HPP
