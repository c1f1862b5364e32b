/*
   Copyright 2026 the dicritique authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dicritique/pencil.hpp"
#include "dicritique/report.hpp"
#include "dicritique/verify.hpp"

namespace dicritique {

// One fully-specified run of the tool.  A JobSpec can come from command-line
// flags or from a job file; both produce the same structure, and equal specs
// produce byte-identical outputs.
struct JobSpec {
    std::string command;       // analyze | verify | graph
    std::string field = "Q";   // "Q" or "Fp:<p>"
    std::string f;
    std::string g;
    unsigned long seed = 0;
    unsigned cap = 64;
    std::string format;        // json | dot | text; empty picks the command default
    std::string kind = "both"; // graph selection: dual | fiber | both
    std::string out;           // output path; empty writes to stdout
};

// Errors in how the tool was invoked, as opposed to errors in the math.
// These exit with code 2 and never reach the engine.
class usage_error : public std::runtime_error {
  public:
    explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline FieldPtr parse_field_descriptor(const std::string& desc) {
    if (desc == "Q") return Field::rationals();
    if (desc.rfind("Fp:", 0) == 0) {
        const std::string tail = desc.substr(3);
        if (tail.empty() || !std::all_of(tail.begin(), tail.end(),
                                         [](char c) { return c >= '0' && c <= '9'; }))
            throw usage_error("bad field descriptor '" + desc + "': expected Fp:<prime>");
        try {
            if (tail.size() > 18)
                throw usage_error("bad field descriptor '" + desc + "': prime too large");
            return Field::prime(std::stoull(tail));
        } catch (const engine_error& e) {
            throw usage_error("bad field descriptor '" + desc + "': " + e.what());
        }
    }
    throw usage_error("bad field descriptor '" + desc + "': expected Q or Fp:<prime>");
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline unsigned long parse_number(const std::string& key, const std::string& value) {
    if (value.empty() ||
        !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw usage_error("job file: value of '" + key + "' must be a nonnegative integer, got '" +
                          value + "'");
    try {
        return std::stoul(value);
    } catch (const std::exception&) {
        throw usage_error("job file: value of '" + key + "' is out of range");
    }
}

}  // namespace detail

// Job files hold one `key = value` pair per line.  Blank lines and lines
// starting with '#' are skipped.  Recognized keys: command, field, f, g,
// seed, cap, format, kind, out.
inline JobSpec parse_job_file(std::istream& in) {
    JobSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw usage_error("job file line " + std::to_string(lineno) + ": expected key = value");
        std::string key = detail::trim(t.substr(0, eq));
        std::string value = detail::trim(t.substr(eq + 1));
        if (key == "command")
            spec.command = value;
        else if (key == "field")
            spec.field = value;
        else if (key == "f")
            spec.f = value;
        else if (key == "g")
            spec.g = value;
        else if (key == "seed")
            spec.seed = detail::parse_number(key, value);
        else if (key == "cap")
            spec.cap = static_cast<unsigned>(detail::parse_number(key, value));
        else if (key == "format")
            spec.format = value;
        else if (key == "kind")
            spec.kind = value;
        else if (key == "out")
            spec.out = value;
        else
            throw usage_error("job file line " + std::to_string(lineno) + ": unknown key '" + key +
                              "'");
    }
    return spec;
}

namespace detail {

inline std::string analysis_text(const Analysis& A) {
    std::ostringstream os;
    os << "pencil: f = " << A.pencil.f.str() << ", g = " << A.pencil.g.str() << " over "
       << A.pencil.F->name() << " (degree " << A.pencil.degree << ")\n";
    os << "base points (" << A.bps.size() << "):";
    for (const auto& bp : A.bps) {
        os << " (";
        for (std::size_t i = 0; i < 3; ++i) os << (i ? ":" : "") << bp.coords[i].str();
        os << ")";
    }
    os << "\n";
    os << "dicriticals (" << A.dicriticals.size() << "):\n";
    for (const auto& d : A.dicriticals) {
        os << "  E" << d.global_id << ": v_x=" << d.vx << " v_y=" << d.vy << " v_f=" << d.vf
           << " v_g=" << d.vg << ", residual " << d.residual.str() << " (degree "
           << d.residual.degree << ")\n";
    }
    os << "fiber over O connected: " << (A.fiber_connected ? "yes" : "no") << "\n";
    if (A.al.applicable)
        os << "abhyankar-luengo: applicable, " << (A.al.pass ? "pass" : "FAIL") << "\n";
    else
        os << "abhyankar-luengo: hypothesis not satisfied, skipped\n";
    return os.str();
}

inline ordered_json verification_json(const std::vector<PropertyResult>& suite, bool probe_equal,
                                      unsigned long seed, int rounds, bool pass) {
    ordered_json v;
    ordered_json items = ordered_json::array();
    for (const auto& r : suite) {
        ordered_json item;
        item["name"] = r.name;
        item["pass"] = r.pass;
        item["detail"] = r.detail;
        items.push_back(item);
    }
    v["suite"] = items;
    v["invariance"] = {{"seed", seed}, {"rounds", rounds}, {"equal", probe_equal}};
    v["pass"] = pass;
    return v;
}

inline std::string verification_text(const std::vector<PropertyResult>& suite, bool probe_equal,
                                     unsigned long seed, int rounds, bool pass) {
    std::ostringstream os;
    for (const auto& r : suite)
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
    os << (probe_equal ? "[PASS] " : "[FAIL] ") << "invariance: seed " << seed << ", " << rounds
       << " perturbation rounds\n";
    os << "verification: " << (pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

inline void emit(const std::string& text, const JobSpec& spec, std::ostream& out) {
    if (spec.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(spec.out, std::ios::binary);
    if (!file) throw usage_error("cannot open output file '" + spec.out + "'");
    file << text;
}

inline std::string json_text(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

// Executes a job.  Returns the process exit code: 0 on success, 1 on engine
// errors, 2 on usage errors, 3 when verification checks fail.
inline int run_job(const JobSpec& spec, std::ostream& out, std::ostream& err) {
    static const int invariance_rounds = 3;
    try {
        if (spec.command != "analyze" && spec.command != "verify" && spec.command != "graph")
            throw usage_error("unknown command '" + spec.command +
                              "' (expected analyze, verify or graph)");
        if (spec.f.empty() || spec.g.empty())
            throw usage_error(spec.command + " requires both -f and -g");
        std::string format = spec.format;
        if (format.empty())
            format = spec.command == "analyze" ? "json" : spec.command == "graph" ? "dot" : "text";
        if (spec.command == "analyze" && format != "json" && format != "text" && format != "dot")
            throw usage_error("analyze supports --format json|text|dot, got '" + format + "'");
        if (spec.command == "graph" && format != "dot" && format != "json")
            throw usage_error("graph supports --format dot|json, got '" + format + "'");
        if (spec.command == "verify" && format != "text" && format != "json")
            throw usage_error("verify supports --format text|json, got '" + format + "'");
        if (spec.kind != "dual" && spec.kind != "fiber" && spec.kind != "both")
            throw usage_error("--kind must be dual, fiber or both, got '" + spec.kind + "'");

        FieldPtr F = parse_field_descriptor(spec.field);
        std::vector<std::string> xy{"x", "y"};
        MultiPoly f = parse_poly(spec.f, F, xy);
        MultiPoly g = parse_poly(spec.g, F, xy);
        Pencil P = make_pencil(f, g);
        Analysis A = analyze(P, spec.cap);

        if (spec.command == "analyze") {
            if (format == "json") {
                detail::emit(detail::json_text(analysis_json(A)), spec, out);
            } else if (format == "text") {
                detail::emit(detail::analysis_text(A), spec, out);
            } else {
                std::string text = graph_dot(A.dual, "dual") + graph_dot(A.fiber, "fiber");
                detail::emit(text, spec, out);
            }
            return 0;
        }

        if (spec.command == "graph") {
            if (format == "dot") {
                std::string text;
                if (spec.kind == "dual" || spec.kind == "both") text += graph_dot(A.dual, "dual");
                if (spec.kind == "fiber" || spec.kind == "both") text += graph_dot(A.fiber, "fiber");
                detail::emit(text, spec, out);
            } else {
                ordered_json j;
                j["version"] = report_version();
                if (spec.kind == "dual" || spec.kind == "both")
                    j["dual_graph"] = detail::graph_json(A.dual);
                if (spec.kind == "fiber" || spec.kind == "both")
                    j["fiber_graph"] = detail::graph_json(A.fiber);
                detail::emit(detail::json_text(j), spec, out);
            }
            return 0;
        }

        // verify
        std::vector<PropertyResult> suite = paper_property_suite(A, spec.seed);
        bool probe_equal = invariance_probe(A, spec.seed, invariance_rounds);
        bool pass = probe_equal;
        for (const auto& r : suite) pass = pass && r.pass;
        if (format == "json") {
            ordered_json j = analysis_json(A);
            j["verification"] =
                detail::verification_json(suite, probe_equal, spec.seed, invariance_rounds, pass);
            detail::emit(detail::json_text(j), spec, out);
        } else {
            detail::emit(
                detail::verification_text(suite, probe_equal, spec.seed, invariance_rounds, pass),
                spec, out);
        }
        return pass ? 0 : 3;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const engine_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

// Flag-level frontend.  `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"dicritique: dicritical divisors of pencils of plane curves", "dicritique"};
    app.require_subcommand(0, 1);

    std::string job_path;
    app.add_option("--job", job_path, "read the job from a key=value file");

    JobSpec spec;
    auto add_common = [&spec](CLI::App* cmd) {
        cmd->add_option("--field", spec.field, "coefficient field: Q or Fp:<p>")
            ->capture_default_str();
        cmd->add_option("-f", spec.f, "first generator, a polynomial in x, y");
        cmd->add_option("-g", spec.g, "second generator, a polynomial in x, y");
        cmd->add_option("--seed", spec.seed, "seed for all randomized choices")
            ->capture_default_str();
        cmd->add_option("--cap", spec.cap, "blowup budget per base point")->capture_default_str();
        cmd->add_option("--format", spec.format, "output format: json, dot or text");
        cmd->add_option("--out", spec.out, "write output to this file instead of stdout");
    };
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "resolve the pencil and emit the full report");
    add_common(analyze_cmd);
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the property suite and the invariance probe");
    add_common(verify_cmd);
    CLI::App* graph_cmd = app.add_subcommand("graph", "emit the dual and fiber graphs");
    add_common(graph_cmd);
    graph_cmd->add_option("--kind", spec.kind, "which graph: dual, fiber or both")
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    bool has_sub = analyze_cmd->parsed() || verify_cmd->parsed() || graph_cmd->parsed();
    if (!job_path.empty()) {
        if (has_sub) {
            err << "usage error: --job cannot be combined with a subcommand\n";
            return 2;
        }
        std::ifstream in(job_path);
        if (!in) {
            err << "usage error: cannot open job file '" << job_path << "'\n";
            return 2;
        }
        try {
            spec = parse_job_file(in);
        } catch (const usage_error& e) {
            err << "usage error: " << e.what() << "\n";
            return 2;
        }
        return run_job(spec, out, err);
    }
    if (!has_sub) {
        err << "usage error: expected a subcommand (analyze, verify, graph) or --job\n"
            << app.help();
        return 2;
    }
    spec.command = analyze_cmd->parsed() ? "analyze" : verify_cmd->parsed() ? "verify" : "graph";
    return run_job(spec, out, err);
}

}  // namespace dicritique
