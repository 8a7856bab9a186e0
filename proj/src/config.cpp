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

#include "cliffxeb/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cliffxeb {

namespace {

std::string trim(const std::string &s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace((unsigned char)s[b])) b++;
    while (e > b && std::isspace((unsigned char)s[e - 1])) e--;
    return s.substr(b, e - b);
}

[[noreturn]] void bad_key(const std::string &key, const std::string &why) {
    throw std::invalid_argument("config: key '" + key + "' " + why);
}

long parse_long(const std::string &key, const std::string &value) {
    if (value.empty()) bad_key(key, "expects an integer, got an empty value");
    char *end = nullptr;
    errno = 0;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (errno != 0 || end != value.c_str() + value.size())
        bad_key(key, "expects an integer, got '" + value + "'");
    return v;
}

double parse_real(const std::string &key, const std::string &value) {
    if (value.empty()) bad_key(key, "expects a real number, got an empty value");
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(value.c_str(), &end);
    if (errno == ERANGE || end != value.c_str() + value.size())
        bad_key(key, "expects a real number, got '" + value + "'");
    return v;
}

double parse_prob(const std::string &key, const std::string &value) {
    const double v = parse_real(key, value);
    if (v < 0.0 || v > 1.0)
        bad_key(key, "expects a probability in [0, 1], got '" + value + "'");
    return v;
}

bool parse_bool(const std::string &key, const std::string &value) {
    if (value == "1" || value == "true" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "no") return false;
    bad_key(key, "expects a boolean (0/1/true/false), got '" + value + "'");
}

uint32_t parse_seed(const std::string &key, const std::string &value) {
    if (value.empty()) bad_key(key, "expects an integer, got an empty value");
    char *end = nullptr;
    errno = 0;
    const unsigned long v = std::strtoul(value.c_str(), &end, 10);
    if (errno != 0 || end != value.c_str() + value.size() || value[0] == '-' ||
        v > 0xffffffffUL)
        bad_key(key, "expects an unsigned 32-bit integer, got '" + value + "'");
    return (uint32_t)v;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

// "lo:hi", "lo:hi:step", or a comma-separated list of cycle counts.
std::vector<int> parse_cycles(const std::string &key, const std::string &value) {
    std::vector<int> out;
    if (value.find(':') != std::string::npos) {
        const std::vector<std::string> parts = split(value, ':');
        if (parts.size() != 2 && parts.size() != 3)
            bad_key(key, "expects 'lo:hi', 'lo:hi:step', or a comma list, got '" +
                             value + "'");
        const long lo = parse_long(key, trim(parts[0]));
        const long hi = parse_long(key, trim(parts[1]));
        const long step = parts.size() == 3 ? parse_long(key, trim(parts[2])) : 1;
        if (step < 1) bad_key(key, "expects a positive step");
        for (long m = lo; m <= hi; m += step) out.push_back((int)m);
    } else {
        for (const std::string &tok : split(value, ',')) {
            const std::string t = trim(tok);
            if (t.empty()) bad_key(key, "has an empty list entry");
            out.push_back((int)parse_long(key, t));
        }
    }
    if (out.empty()) bad_key(key, "produces an empty cycle list");
    for (size_t i = 0; i < out.size(); i++) {
        if (out[i] < 1) bad_key(key, "requires every cycle count to be at least 1");
        if (i > 0 && out[i] <= out[i - 1])
            bad_key(key, "requires strictly increasing cycle counts");
    }
    return out;
}

std::vector<std::pair<int, int>> parse_edges(const std::string &key,
                                             const std::string &value) {
    std::vector<std::pair<int, int>> out;
    if (trim(value).empty()) return out;
    for (const std::string &tok : split(value, ',')) {
        const std::string t = trim(tok);
        const size_t dash = t.find('-');
        if (dash == std::string::npos || dash == 0 || dash + 1 >= t.size())
            bad_key(key, "expects comma-separated 'a-b' pairs, got '" + t + "'");
        out.emplace_back((int)parse_long(key, trim(t.substr(0, dash))),
                         (int)parse_long(key, trim(t.substr(dash + 1))));
    }
    return out;
}

EnsembleKind parse_topology(const std::string &key, const std::string &value) {
    if (value == "chain") return EnsembleKind::kChain1d;
    if (value == "grid") return EnsembleKind::kGrid2d;
    if (value == "twirl_star") return EnsembleKind::kApproxTwirlStar;
    if (value == "twirl_graph") return EnsembleKind::kApproxTwirlGraph;
    bad_key(key, "expects one of chain | grid | twirl_star | twirl_graph, got '" +
                     value + "'");
}

std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

RunConfig parse_config_text(const std::string &text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: malformed section header on line " +
                                            std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "ensemble" && section != "noise" && section != "sweep" &&
                section != "budget" && section != "seed")
                throw std::invalid_argument("config: unknown section '" + section + "'");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value' on line " +
                                        std::to_string(lineno));
        const std::string name = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string key = section.empty() ? name : section + "." + name;

        if (key == "ensemble.topology") {
            cfg.ensemble.kind = parse_topology(key, value);
        } else if (key == "ensemble.n") {
            cfg.ensemble.n = (int)parse_long(key, value);
        } else if (key == "ensemble.rows") {
            cfg.ensemble.rows = (int)parse_long(key, value);
        } else if (key == "ensemble.cols") {
            cfg.ensemble.cols = (int)parse_long(key, value);
        } else if (key == "ensemble.twirl_reps") {
            cfg.ensemble.twirl_reps = (int)parse_long(key, value);
        } else if (key == "ensemble.edges") {
            cfg.ensemble.edges = parse_edges(key, value);
        } else if (key == "noise.p1") {
            cfg.noise.p1 = parse_prob(key, value);
        } else if (key == "noise.p2") {
            cfg.noise.p2 = parse_prob(key, value);
        } else if (key == "noise.meas_flip") {
            cfg.noise.meas_flip = parse_prob(key, value);
        } else if (key == "sweep.cycles") {
            cfg.cycle_counts = parse_cycles(key, value);
        } else if (key == "sweep.ideal_twin") {
            cfg.ideal_twin = parse_bool(key, value);
        } else if (key == "budget.circuits") {
            cfg.circuits = (int)parse_long(key, value);
        } else if (key == "budget.shots") {
            cfg.shots = (int)parse_long(key, value);
        } else if (key == "budget.workers") {
            cfg.workers = (int)parse_long(key, value);
        } else if (key == "seed.master") {
            cfg.master_seed = parse_seed(key, value);
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }

    if (cfg.circuits < 1) bad_key("budget.circuits", "must be at least 1");
    if (cfg.shots < 1) bad_key("budget.shots", "must be at least 1");
    if (cfg.workers < 0) bad_key("budget.workers", "must be non-negative");
    cfg.ensemble.validate();
    cfg.noise.validate();
    experiment_config(cfg).validate();
    return cfg;
}

RunConfig load_config_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("config: cannot read '" + path + "'");
    std::ostringstream body;
    body << in.rdbuf();
    return parse_config_text(body.str());
}

std::string canonical_config_text(const RunConfig &cfg) {
    std::ostringstream out;
    out << "[ensemble]\n";
    out << "topology = " << topology_name(cfg.ensemble.kind) << "\n";
    out << "n = " << cfg.ensemble.n << "\n";
    out << "rows = " << cfg.ensemble.rows << "\n";
    out << "cols = " << cfg.ensemble.cols << "\n";
    out << "twirl_reps = " << cfg.ensemble.twirl_reps << "\n";
    out << "edges = ";
    for (size_t i = 0; i < cfg.ensemble.edges.size(); i++) {
        if (i) out << ",";
        out << cfg.ensemble.edges[i].first << "-" << cfg.ensemble.edges[i].second;
    }
    out << "\n";
    out << "\n[noise]\n";
    out << "p1 = " << fmt_real(cfg.noise.p1) << "\n";
    out << "p2 = " << fmt_real(cfg.noise.p2) << "\n";
    out << "meas_flip = " << fmt_real(cfg.noise.meas_flip) << "\n";
    out << "\n[sweep]\n";
    out << "cycles = ";
    for (size_t i = 0; i < cfg.cycle_counts.size(); i++) {
        if (i) out << ",";
        out << cfg.cycle_counts[i];
    }
    out << "\n";
    out << "ideal_twin = " << (cfg.ideal_twin ? 1 : 0) << "\n";
    out << "\n[budget]\n";
    out << "circuits = " << cfg.circuits << "\n";
    out << "shots = " << cfg.shots << "\n";
    out << "workers = " << cfg.workers << "\n";
    out << "\n[seed]\n";
    out << "master = " << cfg.master_seed << "\n";
    return out.str();
}

ExperimentConfig experiment_config(const RunConfig &cfg) {
    ExperimentConfig e;
    e.ensemble = cfg.ensemble;
    e.noise = cfg.noise;
    e.cycle_counts = cfg.cycle_counts;
    e.circuits_per_point = cfg.circuits;
    e.shots_per_circuit = (uint64_t)cfg.shots;
    e.master_seed = cfg.master_seed;
    e.workers = cfg.workers;
    return e;
}

const char *config_reference() {
    return
        "# Configuration reference. Sections and keys, with defaults.\n"
        "\n"
        "[ensemble]\n"
        "topology = chain   # chain | grid | twirl_star | twirl_graph\n"
        "n = 4              # qubit count\n"
        "rows = 0           # grid only; rows * cols must equal n\n"
        "cols = 0           # grid only\n"
        "twirl_reps = 2     # twirl kinds: inner repetitions per cycle\n"
        "edges =            # twirl_graph only: comma-separated a-b pairs, e.g. 0-1,1-2\n"
        "\n"
        "[noise]\n"
        "p1 = 0             # per single-qubit-gate fault probability, in [0, 1]\n"
        "p2 = 0             # per two-qubit-gate fault probability, in [0, 1]\n"
        "meas_flip = 0      # per-qubit readout flip probability, in [0, 1]\n"
        "\n"
        "[sweep]\n"
        "cycles = 1:10      # cycle counts: lo:hi, lo:hi:step, or a comma list\n"
        "ideal_twin = 1     # also run the noiseless twin on the same circuits\n"
        "\n"
        "[budget]\n"
        "circuits = 10      # circuits per cycle-count point\n"
        "shots = 100        # shots per circuit\n"
        "workers = 0        # parallel workers; 0 = all cores; never changes results\n"
        "\n"
        "[seed]\n"
        "master = 1         # master seed; every record is a pure function of it\n";
}

}  // namespace cliffxeb
