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

#include "cliffxeb/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cliffxeb/xeb_engine.hpp"

namespace cliffxeb {

namespace {

constexpr const char *kManifestConfigMarker = "--- config ---";

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("records: cannot read '" + path + "'");
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

double parse_double_exact(const std::string &key, const std::string &value) {
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size())
        throw std::invalid_argument("records: field '" + key +
                                    "' is not a number: '" + value + "'");
    return v;
}

long parse_long_exact(const std::string &key, const std::string &value) {
    char *end = nullptr;
    errno = 0;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (value.empty() || errno != 0 || end != value.c_str() + value.size())
        throw std::invalid_argument("records: field '" + key +
                                    "' is not an integer: '" + value + "'");
    return v;
}

std::vector<std::string> split_ws(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_point_record(const PointRecord &r) {
    std::ostringstream out;
    out << "point series=" << r.series << " topology=" << r.topology << " n=" << r.n
        << " p1=" << format_double(r.p1) << " p2=" << format_double(r.p2)
        << " meas_flip=" << format_double(r.meas_flip) << " m=" << r.m
        << " q_hat=" << format_double(r.q_hat)
        << " std_err=" << format_double(r.std_err) << " circuits=" << r.circuits
        << " shots=" << r.shots;
    return out.str();
}

std::optional<PointRecord> parse_point_record(const std::string &line) {
    const std::vector<std::string> toks = split_ws(line);
    if (toks.empty() || toks[0] != "point") return std::nullopt;
    PointRecord r;
    std::set<std::string> seen;
    for (size_t i = 1; i < toks.size(); i++) {
        const size_t eq = toks[i].find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("records: malformed point field '" + toks[i] +
                                        "'");
        const std::string key = toks[i].substr(0, eq);
        const std::string value = toks[i].substr(eq + 1);
        seen.insert(key);
        if (key == "series") {
            if (value != "noisy" && value != "ideal")
                throw std::invalid_argument("records: unknown series '" + value + "'");
            r.series = value;
        } else if (key == "topology") {
            r.topology = value;
        } else if (key == "n") {
            r.n = (int)parse_long_exact(key, value);
        } else if (key == "p1") {
            r.p1 = parse_double_exact(key, value);
        } else if (key == "p2") {
            r.p2 = parse_double_exact(key, value);
        } else if (key == "meas_flip") {
            r.meas_flip = parse_double_exact(key, value);
        } else if (key == "m") {
            r.m = (int)parse_long_exact(key, value);
        } else if (key == "q_hat") {
            r.q_hat = parse_double_exact(key, value);
        } else if (key == "std_err") {
            r.std_err = parse_double_exact(key, value);
        } else if (key == "circuits") {
            r.circuits = (int)parse_long_exact(key, value);
        } else if (key == "shots") {
            r.shots = (int)parse_long_exact(key, value);
        }
        // Unknown fields are tolerated so newer writers stay readable.
    }
    for (const char *need : {"series", "topology", "n", "p1", "p2", "meas_flip", "m",
                             "q_hat", "std_err", "circuits", "shots"}) {
        if (!seen.count(need))
            throw std::invalid_argument(std::string("records: point line misses '") +
                                        need + "'");
    }
    return r;
}

std::vector<PointRecord> parse_records_text(const std::string &text) {
    std::vector<PointRecord> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto r = parse_point_record(line)) out.push_back(std::move(*r));
    }
    return out;
}

std::vector<PointRecord> load_points_file(const std::string &path) {
    const std::string text = read_file(path);
    const size_t eol = text.find('\n');
    const std::string first = text.substr(0, eol == std::string::npos ? text.size() : eol);
    if (first == kCsvHeader) return parse_csv_text(text);
    return parse_records_text(text);
}

std::vector<XebPoint> to_xeb_points(const std::vector<PointRecord> &records,
                                    const std::string &series) {
    std::vector<XebPoint> out;
    for (const PointRecord &r : records) {
        if (r.series != series) continue;
        XebPoint p;
        p.m = r.m;
        p.q_hat = r.q_hat;
        p.std_err = r.std_err;
        p.circuits = (uint64_t)r.circuits;
        p.shots = (uint64_t)r.shots;
        out.push_back(p);
    }
    std::sort(out.begin(), out.end(),
              [](const XebPoint &a, const XebPoint &b) { return a.m < b.m; });
    return out;
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 14695981039346656037ULL;
    for (const char c : bytes) {
        h ^= (uint64_t)(unsigned char)c;
        h *= 1099511628211ULL;
    }
    return h;
}

uint64_t RunManifest::hash() const {
    std::ostringstream body;
    body << "version " << version << "\nseed " << master_seed << "\n" << config_text;
    return fnv1a64(body.str());
}

std::string utc_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_manifest(const RunManifest &m) {
    char hash_hex[32];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx", (unsigned long long)m.hash());
    std::ostringstream out;
    out << "manifest_version = " << m.version << "\n";
    out << "hash = " << hash_hex << "\n";
    out << "seed = " << m.master_seed << "\n";
    out << "created = " << m.created << "\n";
    out << "updated = " << m.updated << "\n";
    out << "completed = ";
    for (size_t i = 0; i < m.completed.size(); i++) {
        if (i) out << ",";
        out << m.completed[i].first << ":" << m.completed[i].second;
    }
    out << "\n" << kManifestConfigMarker << "\n" << m.config_text;
    return out.str();
}

RunManifest parse_manifest(const std::string &text) {
    RunManifest m;
    const std::string marker = std::string(kManifestConfigMarker) + "\n";
    const size_t split = text.find(marker);
    if (split == std::string::npos)
        throw std::invalid_argument("manifest: missing config section");
    m.config_text = text.substr(split + marker.size());

    uint64_t stored_hash = 0;
    bool have_hash = false;
    std::istringstream in(text.substr(0, split));
    std::string line;
    while (std::getline(in, line)) {
        const size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        if (key == "manifest_version") {
            m.version = (int)parse_long_exact(key, value);
        } else if (key == "hash") {
            if (value.size() != 16)
                throw std::invalid_argument("manifest: malformed hash");
            stored_hash = std::strtoull(value.c_str(), nullptr, 16);
            have_hash = true;
        } else if (key == "seed") {
            m.master_seed = (uint64_t)std::strtoull(value.c_str(), nullptr, 10);
        } else if (key == "created") {
            m.created = value;
        } else if (key == "updated") {
            m.updated = value;
        } else if (key == "completed") {
            if (value.empty()) continue;
            std::istringstream items(value);
            std::string item;
            while (std::getline(items, item, ',')) {
                const size_t colon = item.find(':');
                if (colon == std::string::npos)
                    throw std::invalid_argument("manifest: malformed completed entry '" +
                                                item + "'");
                m.completed.emplace_back(
                    item.substr(0, colon),
                    (int)parse_long_exact("completed", item.substr(colon + 1)));
            }
        }
    }
    if (!have_hash) throw std::invalid_argument("manifest: missing hash");
    if (m.hash() != stored_hash)
        throw std::invalid_argument(
            "manifest: stored hash does not match its contents; the file was "
            "edited or truncated");
    return m;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

const char *const kCsvHeader = "topology,n,p1,p2,m,q_hat,stderr,circuits,shots";

std::string points_to_csv(const std::vector<PointRecord> &points) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const PointRecord &r : points) {
        out << r.topology << "," << r.n << "," << format_double(r.p1) << ","
            << format_double(r.p2) << "," << r.m << "," << format_double(r.q_hat)
            << "," << format_double(r.std_err) << "," << r.circuits << "," << r.shots
            << "\n";
    }
    return out.str();
}

std::vector<PointRecord> parse_csv_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::invalid_argument("csv: missing or unexpected header line");
    std::vector<PointRecord> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream cellstream(line);
        std::string cell;
        while (std::getline(cellstream, cell, ',')) cells.push_back(cell);
        if (cells.size() != 9)
            throw std::invalid_argument("csv: line " + std::to_string(lineno) +
                                        " has " + std::to_string(cells.size()) +
                                        " columns, expected 9");
        PointRecord r;
        r.topology = cells[0];
        r.n = (int)parse_long_exact("n", cells[1]);
        r.p1 = parse_double_exact("p1", cells[2]);
        r.p2 = parse_double_exact("p2", cells[3]);
        r.m = (int)parse_long_exact("m", cells[4]);
        r.q_hat = parse_double_exact("q_hat", cells[5]);
        r.std_err = parse_double_exact("stderr", cells[6]);
        r.circuits = (int)parse_long_exact("circuits", cells[7]);
        r.shots = (int)parse_long_exact("shots", cells[8]);
        r.series = (r.p1 == 0.0 && r.p2 == 0.0) ? "ideal" : "noisy";
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

std::string series_label(const PointRecord &r) {
    if (r.series == "ideal") return "ideal";
    std::ostringstream out;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", r.p1);
    out << "p1=" << buf;
    std::snprintf(buf, sizeof buf, "%g", r.p2);
    out << " p2=" << buf;
    if (r.meas_flip != 0.0) {
        std::snprintf(buf, sizeof buf, "%g", r.meas_flip);
        out << " mf=" << buf;
    }
    return out.str();
}

std::string svg_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace

std::string points_to_svg(const std::vector<PointRecord> &points) {
    // Group into one series per (series kind, noise level), first-seen order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<const PointRecord *>> groups;
    for (const PointRecord &r : points) {
        const std::string label = series_label(r);
        if (!groups.count(label)) order.push_back(label);
        groups[label].push_back(&r);
    }

    int m_lo = 0, m_hi = 1;
    double q_lo = 0.1, q_hi = 1.0;
    bool any = false;
    for (const PointRecord &r : points) {
        if (!(r.q_hat > 0.0)) continue;  // log scale shows positive values only
        if (!any) {
            m_lo = m_hi = r.m;
            q_lo = q_hi = r.q_hat;
            any = true;
        } else {
            m_lo = std::min(m_lo, r.m);
            m_hi = std::max(m_hi, r.m);
            q_lo = std::min(q_lo, r.q_hat);
            q_hi = std::max(q_hi, r.q_hat);
        }
    }
    if (m_hi == m_lo) m_hi = m_lo + 1;
    q_hi = std::max(q_hi, 1.0) * 1.35;  // keep the q = 1 reference in frame
    q_lo = std::min(q_lo, 1.0) / 1.35;
    const double ly_lo = std::log10(q_lo), ly_hi = std::log10(q_hi);

    const double width = 880, height = 540;
    const double left = 70, right = width - 180, top = 30, bottom = height - 50;
    const auto xpos = [&](double m) {
        return left + (m - m_lo) / (double)(m_hi - m_lo) * (right - left);
    };
    const auto ypos = [&](double q) {
        return bottom - (std::log10(q) - ly_lo) / (ly_hi - ly_lo) * (bottom - top);
    };

    static const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                           "#9467bd", "#ff7f0e", "#8c564b",
                                           "#17becf", "#7f7f7f"};
    constexpr size_t kPaletteSize = sizeof kPalette / sizeof kPalette[0];

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << (left + right) / 2
        << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">linear XEB estimate vs cycles</text>\n";

    // Frame.
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
        << "\" height=\"" << bottom - top
        << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    // Decade gridlines and y labels.
    for (int dec = (int)std::ceil(ly_lo); dec <= (int)std::floor(ly_hi); dec++) {
        const double y = ypos(std::pow(10.0, dec));
        out << "<line x1=\"" << left << "\" y1=\"" << svg_num(y) << "\" x2=\"" << right
            << "\" y2=\"" << svg_num(y)
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << svg_num(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e"
            << dec << "</text>\n";
    }

    // X ticks on round cycle counts.
    const int xstep = std::max(1, (m_hi - m_lo) / 8);
    for (int m = m_lo; m <= m_hi; m += xstep) {
        const double x = xpos(m);
        out << "<line x1=\"" << svg_num(x) << "\" y1=\"" << bottom << "\" x2=\""
            << svg_num(x) << "\" y2=\"" << bottom + 5
            << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << svg_num(x) << "\" y=\"" << bottom + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << m << "</text>\n";
    }
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
           "cycles m</text>\n";

    // q = 1 reference line.
    {
        const double y = ypos(1.0);
        out << "<line x1=\"" << left << "\" y1=\"" << svg_num(y) << "\" x2=\"" << right
            << "\" y2=\"" << svg_num(y)
            << "\" stroke=\"#444\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
        out << "<text x=\"" << right - 4 << "\" y=\"" << svg_num(y - 5)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
               "q = 1</text>\n";
    }

    // Series.
    for (size_t gi = 0; gi < order.size(); gi++) {
        const char *color = kPalette[gi % kPaletteSize];
        std::vector<const PointRecord *> pts = groups[order[gi]];
        std::sort(pts.begin(), pts.end(), [](const PointRecord *a, const PointRecord *b) {
            return a->m < b->m;
        });
        std::ostringstream poly;
        for (const PointRecord *r : pts) {
            if (!(r->q_hat > 0.0)) continue;
            poly << svg_num(xpos(r->m)) << "," << svg_num(ypos(r->q_hat)) << " ";
            out << "<circle cx=\"" << svg_num(xpos(r->m)) << "\" cy=\""
                << svg_num(ypos(r->q_hat)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        if (!poly.str().empty())
            out << "<polyline points=\"" << poly.str() << "\" fill=\"none\" stroke=\""
                << color << "\" stroke-width=\"1.5\"/>\n";
        // Legend entry.
        const double ly = top + 14 + 18 * (double)gi;
        out << "<line x1=\"" << right + 12 << "\" y1=\"" << svg_num(ly) << "\" x2=\""
            << right + 34 << "\" y2=\"" << svg_num(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << right + 40 << "\" y=\"" << svg_num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << order[gi]
            << "</text>\n";
    }

    out << "</svg>\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Run directory driver
// ---------------------------------------------------------------------------

RunOutcome run_into_directory(const RunConfig &cfg, const std::string &out_dir,
                              bool ideal_only, std::ostream *log) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string manifest_path = out_dir + "/manifest.txt";
    const std::string records_path = out_dir + "/records.txt";
    const std::string summary_path = out_dir + "/summary.txt";
    // Worker count changes how the work is scheduled, never what is computed
    // (records are byte-identical at any worker count), so it is not part of
    // the run's identity and a resume may use a different value.
    RunConfig identity = cfg;
    identity.workers = 0;
    const std::string canonical = canonical_config_text(identity);

    RunManifest manifest;
    manifest.master_seed = cfg.master_seed;
    manifest.config_text = canonical;
    if (fs::exists(manifest_path)) {
        const RunManifest prior = parse_manifest(read_file(manifest_path));
        if (prior.config_text != canonical) {
            throw std::invalid_argument(
                "run: '" + out_dir +
                "' holds results for a different configuration; use a fresh "
                "output directory or the original config");
        }
        manifest.created = prior.created;
    } else {
        manifest.created = utc_timestamp_now();
    }

    std::vector<PointRecord> existing;
    if (fs::exists(records_path)) existing = parse_records_text(read_file(records_path));
    std::set<std::pair<std::string, int>> done;
    for (const PointRecord &r : existing) {
        done.insert({r.series, r.m});
        manifest.completed.emplace_back(r.series, r.m);
    }

    const ExperimentConfig ecfg = experiment_config(cfg);
    const char *topo = topology_name(cfg.ensemble.kind);

    std::vector<std::pair<int, std::string>> plan;  // (m, series)
    for (const int m : cfg.cycle_counts) {
        if (!ideal_only) plan.emplace_back(m, "noisy");
        if (ideal_only || cfg.ideal_twin) plan.emplace_back(m, "ideal");
    }

    RunOutcome outcome;
    std::ofstream records_out(records_path, std::ios::binary | std::ios::app);
    if (!records_out)
        throw std::invalid_argument("run: cannot write '" + records_path + "'");

    const auto write_manifest = [&] {
        manifest.updated = utc_timestamp_now();
        std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
        out << format_manifest(manifest);
    };
    write_manifest();

    for (const auto &[m, series] : plan) {
        if (done.count({series, m})) {
            outcome.skipped++;
            continue;
        }
        const bool ideal = series == "ideal";
        const XebPoint p = ideal ? run_point_ideal(ecfg, m) : run_point(ecfg, m);
        PointRecord r;
        r.series = series;
        r.topology = topo;
        r.n = cfg.ensemble.n;
        if (!ideal) {
            r.p1 = cfg.noise.p1;
            r.p2 = cfg.noise.p2;
            r.meas_flip = cfg.noise.meas_flip;
        }
        r.m = p.m;
        r.q_hat = p.q_hat;
        r.std_err = p.std_err;
        r.circuits = (int)p.circuits;
        r.shots = (int)p.shots;
        records_out << format_point_record(r) << "\n";
        records_out.flush();
        existing.push_back(r);
        manifest.completed.emplace_back(series, m);
        write_manifest();
        outcome.computed++;
        if (log)
            (*log) << "point " << series << " m=" << m << " q_hat=" << p.q_hat
                   << " std_err=" << p.std_err << "\n";
    }

    // Human-readable summary, rewritten on every invocation.
    {
        std::ofstream out(summary_path, std::ios::binary | std::ios::trunc);
        out << "run summary (" << topo << ", n=" << cfg.ensemble.n << ")\n";
        out << "seed " << cfg.master_seed << ", circuits " << cfg.circuits
            << ", shots " << cfg.shots << "\n\n";
        char line[160];
        std::snprintf(line, sizeof line, "%6s %10s %14s %14s\n", "m", "series",
                      "q_hat", "std_err");
        out << line;
        for (const PointRecord &r : existing) {
            std::snprintf(line, sizeof line, "%6d %10s %14.6g %14.6g\n", r.m,
                          r.series.c_str(), r.q_hat, r.std_err);
            out << line;
        }
    }

    outcome.points = std::move(existing);
    return outcome;
}

}  // namespace cliffxeb
