// This file is part of zml.
//
// zml: certified arithmetic for moment-polynomial coefficient asymptotics.
//
// Distributed under the MIT license; see the LICENSE file at the project
// root for the full text.
//
// End-to-end tests of the command-line driver. Each case shells out to
// the built binary (path provided in ZML_CLI_PATH), captures stdout and
// stderr together with the exit status, and pins the external contract:
// byte-identical reruns, stable CSV/JSON row shapes, the plot-feed
// format, and the exit-code protocol (0 success, 1 certified
// verification failure, 2 resource exhaustion, 64 usage).

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

namespace {

struct RunResult {
    int status = -1;
    std::string output;
};

std::string cli_path() {
    const char* path = std::getenv("ZML_CLI_PATH");
    REQUIRE(path != nullptr);
    return path;
}

/// Runs the driver through the shell with stderr folded into stdout.
/// `env` holds leading VAR=value assignments for the child only.
RunResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string command = (env.empty() ? "" : env + " ") + "\"" +
                                cli_path() + "\" " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0)
        result.output.append(buffer, got);
    const int raw = pclose(pipe);
    REQUIRE(WIFEXITED(raw));
    result.status = WEXITSTATUS(raw);
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::size_t line_count(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

/// Writes a throwaway coefficient file and cleans it up on destruction.
struct TempFile {
    explicit TempFile(const std::string& name, const std::string& contents)
        : path(std::filesystem::temp_directory_path() / name) {
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::filesystem::remove(path); }
    std::filesystem::path path;
};

} // namespace

TEST_CASE("help succeeds and lists every subcommand", "[cli]") {
    const RunResult r = run_cli("--help");
    CHECK(r.status == 0);
    for (const char* name :
         {"constants", "nk", "pk", "symmetrize", "oracle", "verify",
          "ratios", "bounds", "integrals", "mt-bound", "emit-ratio-plot"})
        CHECK(contains(r.output, name));
}

TEST_CASE("constants output is deterministic and certified", "[cli]") {
    const RunResult first = run_cli("constants --k 1,2");
    const RunResult second = run_cli("constants --k 1,2");
    CHECK(first.status == 0);
    // Byte-identical reruns are part of the contract.
    CHECK(first.output == second.output);
    CHECK(second.status == 0);
    CHECK(contains(first.output,
                   "k,a_k,a_digits,g_k,g_digits,B_k,B_digits,tau_k,"
                   "tau_digits,c0_k,c0_digits"));
    // tau_1 = 2 gamma to the full printed width.
    CHECK(contains(first.output,
                   "1.154431329803065721213024180164804862084e+00"));
    // B_2 = sum_p log(p)/(p^2 - 1).
    CHECK(contains(first.output,
                   "5.699609930945328063998643600197300024035e-01"));
    // c0(2) = 1/(2 pi^2).
    CHECK(contains(first.output, "5.0660591821168885721"));
    // g_k is a rational carried exactly.
    CHECK(contains(first.output, ",exact,"));
}

TEST_CASE("json mode emits one parsable object per row", "[cli]") {
    const RunResult r = run_cli("constants --k 2 --format json");
    CHECK(r.status == 0);
    std::size_t objects = 0;
    std::size_t start = 0;
    while (start < r.output.size()) {
        std::size_t end = r.output.find('\n', start);
        if (end == std::string::npos) end = r.output.size();
        const std::string line = r.output.substr(start, end - start);
        start = end + 1;
        if (line.empty()) continue;
        const nlohmann::json obj = nlohmann::json::parse(line);
        REQUIRE(obj.is_object());
        if (!obj.contains("k")) continue; // trailing diagnostic note
        ++objects;
        CHECK(obj.at("k") == "2");
        CHECK(obj.contains("a_k"));
        CHECK(obj.contains("tau_k"));
        const std::string c0 = obj.at("c0_k");
        CHECK(c0.rfind("5.0660591821", 0) == 0);
    }
    CHECK(objects == 1);
}

TEST_CASE("show-error appends the certified radius", "[cli]") {
    const RunResult plain = run_cli("constants --k 1");
    const RunResult with_radius = run_cli("constants --k 1 --show-error");
    CHECK(plain.status == 0);
    CHECK(with_radius.status == 0);
    CHECK(!contains(plain.output, "+/-"));
    CHECK(contains(with_radius.output, "+/-"));
}

TEST_CASE("verification suites drive the exit code", "[cli]") {
    const RunResult fixtures = run_cli("verify fixtures");
    CHECK(fixtures.status == 0);
    CHECK(contains(fixtures.output,
                   "# suite=fixtures cases=112 pass=112 warn=0 fail=0"));
    CHECK(!contains(fixtures.output, "FAIL,"));

    const RunResult oracle = run_cli("verify oracle");
    CHECK(oracle.status == 0);
    CHECK(contains(oracle.output, "# suite=oracle"));
    CHECK(contains(oracle.output, " fail=0"));

    const RunResult unknown = run_cli("verify nonsense");
    CHECK(unknown.status == 64);
    CHECK(contains(unknown.output, "unknown suite"));
}

TEST_CASE("usage errors exit 64", "[cli]") {
    CHECK(run_cli("").status == 64);
    CHECK(run_cli("nk --tuple -1 --k 3").status == 64);
    CHECK(run_cli("nk --k 2").status == 64);
    CHECK(run_cli("constants").status == 64);
    CHECK(run_cli("constants --k 0").status == 64);
    CHECK(run_cli("constants --k 2 --precision-bits 32").status == 64);
    CHECK(run_cli("pk --k 2 --tuple \"1;1;1\"").status == 64);
    CHECK(run_cli("mt-bound --T 50").status == 64);
}

TEST_CASE("resource exhaustion exits 2", "[cli]") {
    const RunResult r = run_cli("constants --k 50 --prime-cutoff 1000");
    CHECK(r.status == 2);
    CHECK(contains(r.output, "prime cutoff too small"));
}

TEST_CASE("combinatorial commands emit exact rows", "[cli]") {
    const RunResult ratio = run_cli("nk --tuple 3,2,1 --k 5");
    CHECK(ratio.status == 0);
    CHECK(contains(ratio.output, "5,\"3,2,1\",-10080"));

    const RunResult poly = run_cli("nk --tuple 1,1");
    CHECK(poly.status == 0);
    CHECK(contains(poly.output, "tuple,weight,degree,polynomial"));
    CHECK(contains(poly.output, "\"1,1\",2,2,k^2 + k"));

    const RunResult pk = run_cli("pk --k 5 --tuple \"2,2,1;2,1\"");
    CHECK(pk.status == 0);
    CHECK(contains(pk.output, "5,\"2,2,1;2,1\",8,22680"));

    const RunResult sym = run_cli("symmetrize --k 3 --tuple \"2,1;1,1\"");
    CHECK(sym.status == 0);
    CHECK(contains(sym.output, "3,prefactor,\"2,1;1,1\",1/6"));
    CHECK(contains(sym.output, "3,term,\"2,2,1\",4"));
    CHECK(contains(sym.output, "3,term,\"3,1,1\",2"));
    CHECK(contains(sym.output, "3,term,\"3,2\",4"));
    CHECK(contains(sym.output, "3,term,\"4,1\",2"));

    const RunResult oracle = run_cli("oracle --k 3 --tuple \"2,1;1\"");
    CHECK(oracle.status == 0);
    CHECK(contains(oracle.output, "3,\"2,1;1\",-24,-24,true"));
}

TEST_CASE("bounds certify synthetic violations", "[cli]") {
    // r=0 exceeds c0(2) with certainty; r=1 sits safely inside.
    const TempFile table("zml_cli_violation.csv",
                         "k,r,c\n2,0,9.9e-02\n2,1,1.0e-01\n");
    const RunResult r = run_cli("bounds --input " + table.path.string());
    CHECK(r.status == 1);
    CHECK(contains(r.output, "k,r,abs_coefficient,envelope,verdict"));
    CHECK(contains(r.output, ",fail"));
    CHECK(contains(r.output, ",pass"));
}

TEST_CASE("bundled reference coefficients satisfy the envelope", "[cli][slow]") {
    const RunResult r = run_cli("bounds");
    CHECK(r.status == 0);
    CHECK(contains(r.output, ",pass"));
    CHECK(!contains(r.output, ",fail"));
}

TEST_CASE("ratio rows match the plot feed", "[cli]") {
    const RunResult table = run_cli("ratios --k 10 --r-max 2");
    CHECK(table.status == 0);
    CHECK(contains(table.output, "k,r,reference,predicted,ratio"));
    CHECK(contains(table.output, "10,2,"));
    CHECK(contains(table.output, ",9.9342554e-01"));
    CHECK(line_count(table.output) == 4); // header + r in {0, 1, 2}

    // The plot feed ignores --format: its CSV shape is the contract.
    const RunResult plot = run_cli("emit-ratio-plot --k 10 --format json");
    CHECK(plot.status == 0);
    CHECK(plot.output.rfind("r,ratio_mid,ratio_radius\n", 0) == 0);
    CHECK(contains(plot.output, "\n2,9.9342554e-01,"));
    CHECK(line_count(plot.output) == 9); // header + r in 0..7
}

TEST_CASE("data directory override is honored", "[cli]") {
    const RunResult missing =
        run_cli("ratios --k 10", "ZML_DATA_DIR=/nonexistent");
    CHECK(missing.status == 64);

    // A replacement directory only needs the fixture being asked for; the
    // loader sniffs the line format, so CSV content under the default
    // fixture name is fine.
    const auto dir = std::filesystem::temp_directory_path() / "zml_cli_data";
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "table1.jsonl");
        out << "k,r,c\n2,0,5.0660591821168885722e-02\n";
    }
    const RunResult replaced =
        run_cli("ratios --k 2", "ZML_DATA_DIR=" + dir.string());
    CHECK(replaced.status == 0);
    CHECK(contains(replaced.output, "2,0,"));
    CHECK(line_count(replaced.output) == 2); // header + single row
    std::filesystem::remove_all(dir);
}

TEST_CASE("integral rows fill the polynomial column when derivable",
          "[cli]") {
    const RunResult r = run_cli("integrals --k 1,2 --T 1000");
    CHECK(r.status == 0);
    CHECK(contains(r.output,
                   "k,T,polynomial_integral,leading_order,upper_bound"));
    // k = 1: P_1(x) = x + 2 gamma is derivable internally.
    CHECK(contains(r.output, "1,1000,5.2243095"));
    // k = 2 has no internal polynomial and no --input: empty cell.
    CHECK(contains(r.output, "2,1000,,"));
}

TEST_CASE("mt-bound reports the optimizing order", "[cli]") {
    const RunResult r = run_cli("mt-bound");
    CHECK(r.status == 0);
    CHECK(contains(r.output,
                   "T,k_opt,k_used,first_factor,second_factor,bound,"
                   "envelope"));
    CHECK(contains(r.output, "100000000.643,4,4,"));
    CHECK(contains(r.output, "# absolute constants in the derivation"));

    const RunResult pinned = run_cli("mt-bound --k 2");
    CHECK(pinned.status == 0);
    CHECK(contains(pinned.output, "100000000.643,4,2,"));
}
