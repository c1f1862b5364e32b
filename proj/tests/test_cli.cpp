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

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "dicritique/cli.hpp"

using namespace dicritique;

namespace {

struct CliResult {
    int code = -1;
    std::string out, err;
};

// run_cli in process, capturing both streams
CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

struct ProcResult {
    int code = -1;
    std::string out;
};

// run the installed binary through the shell; stderr folds into stdout
ProcResult spawn(const std::string& args) {
    const char* bin = std::getenv("DICRITIQUE_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    ProcResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

bool have_binary() { return std::getenv("DICRITIQUE_BIN") != nullptr; }

}  // namespace

TEST_CASE("field descriptors") {
    REQUIRE(parse_field_descriptor("Q")->name() == "Q");
    FieldPtr F5 = parse_field_descriptor("Fp:5");
    REQUIRE(F5->characteristic() == 5);
    REQUIRE_THROWS_AS(parse_field_descriptor("Fp:6"), usage_error);
    REQUIRE_THROWS_AS(parse_field_descriptor("Fp:1"), usage_error);
    REQUIRE_THROWS_AS(parse_field_descriptor("Fp:123456789012345678901"), usage_error);
    REQUIRE_THROWS_AS(parse_field_descriptor("F5"), usage_error);
    REQUIRE_THROWS_AS(parse_field_descriptor(""), usage_error);
}

TEST_CASE("job files parse key = value lines") {
    std::istringstream in(
        "# resolve the cusp pencil\n"
        "command = verify\n"
        "field = Fp:5\n"
        "f = y^2\n"
        "\n"
        "g = x^3\n"
        "seed = 11\n"
        "cap = 32\n"
        "format = json\n");
    JobSpec spec = parse_job_file(in);
    REQUIRE(spec.command == "verify");
    REQUIRE(spec.field == "Fp:5");
    REQUIRE(spec.f == "y^2");
    REQUIRE(spec.g == "x^3");
    REQUIRE(spec.seed == 11);
    REQUIRE(spec.cap == 32);
    REQUIRE(spec.format == "json");

    std::istringstream bad_key("command = analyze\ncolor = red\n");
    REQUIRE_THROWS_AS(parse_job_file(bad_key), usage_error);
    std::istringstream bad_num("command = analyze\ncap = many\n");
    REQUIRE_THROWS_AS(parse_job_file(bad_num), usage_error);
    std::istringstream no_eq("command analyze\n");
    REQUIRE_THROWS_AS(parse_job_file(no_eq), usage_error);
}

TEST_CASE("run_job validates command, generators and formats") {
    auto bad = [](JobSpec spec) {
        std::ostringstream out, err;
        REQUIRE(run_job(spec, out, err) == 2);
        REQUIRE(err.str().find("usage error") != std::string::npos);
    };
    JobSpec base;
    base.command = "analyze";
    base.f = "x";
    base.g = "y";

    JobSpec s = base;
    s.command = "paint";
    bad(s);
    s = base;
    s.f.clear();
    bad(s);
    s = base;
    s.format = "yaml";
    bad(s);
    s = base;
    s.command = "graph";
    s.format = "text";
    bad(s);
    s = base;
    s.command = "graph";
    s.kind = "fancy";
    bad(s);
    s = base;
    s.command = "verify";
    s.format = "dot";
    bad(s);
}

TEST_CASE("analyze runs in process and reports JSON") {
    CliResult r = cli({"analyze", "--field", "Q", "-f", "x", "-g", "y"});
    REQUIRE(r.code == 0);
    REQUIRE(r.err.empty());
    ordered_json j = ordered_json::parse(r.out);
    REQUIRE(j["version"] == report_version());
    REQUIRE(j["field"] == "Q");
    REQUIRE(j["pencil"]["degree"] == 1);
    REQUIRE(j["dicriticals"].size() == 1);
    REQUIRE(j["dicriticals"][0]["v_x"] == 1);
    REQUIRE(j["abhyankar_luengo"]["pass"] == true);
}

TEST_CASE("analyze text format summarizes the run") {
    CliResult r = cli({"analyze", "-f", "y^2", "-g", "x^3", "--format", "text"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("pencil") != std::string::npos);
    REQUIRE(r.out.find("base point") != std::string::npos);
    REQUIRE(r.out.find("dicritical") != std::string::npos);
}

TEST_CASE("verify exits zero and carries the verification block") {
    CliResult r = cli({"verify", "-f", "y^2", "-g", "x^3", "--seed", "1",
                       "--format", "json"});
    REQUIRE(r.code == 0);
    ordered_json j = ordered_json::parse(r.out);
    REQUIRE(j["verification"]["pass"] == true);
    REQUIRE(j["verification"]["invariance"]["seed"] == 1);
    REQUIRE(j["verification"]["invariance"]["rounds"] == 3);
    REQUIRE(j["verification"]["invariance"]["equal"] == true);
    REQUIRE(j["verification"]["suite"].size() == 5);

    CliResult t = cli({"verify", "-f", "x", "-g", "y"});
    REQUIRE(t.code == 0);
    REQUIRE(t.out.find("[PASS]") != std::string::npos);
    REQUIRE(t.out.find("verification: PASS") != std::string::npos);
}

TEST_CASE("graph emits DOT with dicritical and curve conventions") {
    CliResult r = cli({"graph", "-f", "y - x^2", "-g", "1"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("graph dual {") != std::string::npos);
    REQUIRE(r.out.find("graph fiber {") != std::string::npos);
    REQUIRE(r.out.find("doublecircle") != std::string::npos);
    REQUIRE(r.out.find("box") != std::string::npos);

    CliResult dual = cli({"graph", "-f", "y - x^2", "-g", "1", "--kind", "dual"});
    REQUIRE(dual.code == 0);
    REQUIRE(dual.out.find("graph dual {") != std::string::npos);
    REQUIRE(dual.out.find("graph fiber {") == std::string::npos);

    CliResult j = cli({"graph", "-f", "x", "-g", "y", "--format", "json",
                       "--kind", "fiber"});
    REQUIRE(j.code == 0);
    ordered_json g = ordered_json::parse(j.out);
    REQUIRE(g.contains("fiber_graph"));
    REQUIRE(!g.contains("dual_graph"));
}

TEST_CASE("engine failures exit 1 with a typed message") {
    CliResult r = cli({"analyze", "-f", "x*(x + y)", "-g", "y*(x + y)"});
    REQUIRE(r.code == 1);
    REQUIRE(r.err.find("NotCoprime") != std::string::npos);

    CliResult s = cli({"analyze", "-f", "x^2 - 2", "-g", "y"});
    REQUIRE(s.code == 1);
    REQUIRE(s.err.find("NonRationalPoint") != std::string::npos);

    CliResult t = cli({"analyze", "--field", "Fp:5", "-f", "x^", "-g", "y"});
    REQUIRE(t.code == 1);
    REQUIRE(t.err.find("NonIntegerExponent") != std::string::npos);
}

TEST_CASE("usage failures exit 2") {
    REQUIRE(cli({"analyze", "-f", "x"}).code == 2);            // missing -g
    REQUIRE(cli({"analyze", "--bogus"}).code == 2);            // unknown flag
    REQUIRE(cli({"frobnicate"}).code == 2);                    // unknown subcommand
    REQUIRE(cli({}).code == 2);                                // nothing to do
    REQUIRE(cli({"analyze", "-f", "x", "-g", "y", "--field", "Fp:6"}).code == 2);
    REQUIRE(cli({"analyze", "-f", "x", "-g", "y", "--format", "yaml"}).code == 2);
    REQUIRE(cli({"--job", "/nonexistent/job.conf"}).code == 2);
    CliResult r = cli({"--job", "/nonexistent/job.conf", "analyze", "-f", "x", "-g", "y"});
    REQUIRE(r.code == 2);
}

TEST_CASE("help is printed on request") {
    CliResult r = cli({"--help"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("dicritique") != std::string::npos);
    REQUIRE(r.out.find("analyze") != std::string::npos);
}

TEST_CASE("job file runs match flag runs byte for byte") {
    std::string path = "/tmp/dicritique_test_job.conf";
    {
        std::ofstream f(path);
        f << "command = analyze\nfield = Q\nf = y^2\ng = x^3\nformat = json\n";
    }
    CliResult flags = cli({"analyze", "--field", "Q", "-f", "y^2", "-g", "x^3",
                           "--format", "json"});
    CliResult job = cli({"--job", path});
    std::remove(path.c_str());
    REQUIRE(flags.code == 0);
    REQUIRE(job.code == 0);
    REQUIRE(flags.out == job.out);
}

TEST_CASE("--out writes the report to a file") {
    std::string path = "/tmp/dicritique_test_out.json";
    CliResult r = cli({"analyze", "-f", "x", "-g", "y", "--out", path});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::remove(path.c_str());
    ordered_json j = ordered_json::parse(buf.str());
    REQUIRE(j["field"] == "Q");
}

TEST_CASE("installed binary: exit codes and determinism") {
    if (!have_binary()) {
        SKIP("DICRITIQUE_BIN not set");
    }
    ProcResult ok = spawn("verify --field Q -f 'y^2' -g 'x^3' --seed 1");
    REQUIRE(ok.code == 0);
    REQUIRE(ok.out.find("verification: PASS") != std::string::npos);

    ProcResult one = spawn("analyze -f 'x*(x + y)' -g 'y*(x + y)'");
    REQUIRE(one.code == 1);
    REQUIRE(one.out.find("NotCoprime") != std::string::npos);

    ProcResult two = spawn("analyze --field Fp:6 -f x -g y");
    REQUIRE(two.code == 2);

    ProcResult a = spawn("analyze --field Fp:5 -f 'x^2 + y^2' -g 'x*y' --seed 4");
    ProcResult b = spawn("analyze --field Fp:5 -f 'x^2 + y^2' -g 'x*y' --seed 4");
    REQUIRE(a.code == 0);
    REQUIRE(a.out == b.out);

    ProcResult dot = spawn("graph -f x -g y");
    REQUIRE(dot.code == 0);
    REQUIRE(dot.out.find("doublecircle") != std::string::npos);
}
