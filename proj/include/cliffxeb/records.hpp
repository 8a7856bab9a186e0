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
// Durable artifacts of a run: line-delimited self-describing point records,
// a manifest with an integrity hash over the reproducibility-relevant
// fields, and CSV / SVG export. Records files are append-only; a resumed
// run never recomputes a completed point.

#ifndef CLIFFXEB_RECORDS_HPP
#define CLIFFXEB_RECORDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cliffxeb/config.hpp"
#include "cliffxeb/xeb_point.hpp"

namespace cliffxeb {

constexpr int kArtifactVersion = 1;

// One completed sweep point, as persisted. `series` is "noisy" or "ideal";
// ideal points always carry zero noise fields.
struct PointRecord {
    std::string series;
    std::string topology;
    int n = 0;
    double p1 = 0.0, p2 = 0.0, meas_flip = 0.0;
    int m = 0;
    double q_hat = 0.0, std_err = 0.0;
    int circuits = 0, shots = 0;
};

// Shortest exact decimal form used for every persisted double ("%.17g"):
// parsing it back reproduces the bits.
std::string format_double(double x);

// One "point ..." line, fixed key order, no trailing newline.
std::string format_point_record(const PointRecord &r);

// Parses one line; std::nullopt for blank or non-point lines, throws
// std::invalid_argument on a malformed point line.
std::optional<PointRecord> parse_point_record(const std::string &line);

std::vector<PointRecord> parse_records_text(const std::string &text);

// Reads points from either a records file or an exported CSV (sniffed via
// the CSV header line). CSV rows recover their series from the noise
// columns: all-zero noise is the ideal series.
std::vector<PointRecord> load_points_file(const std::string &path);

// Filter one series and sort by cycle count ascending.
std::vector<XebPoint> to_xeb_points(const std::vector<PointRecord> &records,
                                    const std::string &series);

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

// Run metadata. The hash covers the artifact version, the seed, and the full
// canonical config snapshot; timestamps and the completion list are
// bookkeeping and deliberately excluded, so resuming updates them without
// changing the run's identity.
struct RunManifest {
    int version = kArtifactVersion;
    uint64_t master_seed = 0;
    std::string created;  // ISO-8601 UTC
    std::string updated;
    std::vector<std::pair<std::string, int>> completed;  // (series, m)
    std::string config_text;                             // canonical snapshot

    uint64_t hash() const;
};

std::string format_manifest(const RunManifest &m);

// Throws std::invalid_argument on malformed text or when the stored hash
// does not match the recomputed one.
RunManifest parse_manifest(const std::string &text);

uint64_t fnv1a64(std::string_view bytes);
std::string utc_timestamp_now();

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

// The exact CSV column set; exports with no points are header-only.
extern const char *const kCsvHeader;

std::string points_to_csv(const std::vector<PointRecord> &points);
std::vector<PointRecord> parse_csv_text(const std::string &text);

// Semilog plot of q-hat against cycle count: one series per noise level,
// plus the q = 1 reference line.
std::string points_to_svg(const std::vector<PointRecord> &points);

// ---------------------------------------------------------------------------
// Run directory driver
// ---------------------------------------------------------------------------

// Runs (or resumes) a config inside out_dir, maintaining manifest.txt,
// append-only records.txt, and summary.txt. Points already present in
// records.txt are skipped, never recomputed. With ideal_only set, only the
// noiseless series runs (the mixing-rate workflow); the caller is expected
// to have zeroed the noise in that case. Progress lines go to *log when
// non-null. Throws std::invalid_argument if out_dir holds a manifest for a
// different configuration.
struct RunOutcome {
    int computed = 0;
    int skipped = 0;
    std::vector<PointRecord> points;  // full records-file contents, in order
};

RunOutcome run_into_directory(const RunConfig &cfg, const std::string &out_dir,
                              bool ideal_only, std::ostream *log);

}  // namespace cliffxeb

#endif  // CLIFFXEB_RECORDS_HPP
