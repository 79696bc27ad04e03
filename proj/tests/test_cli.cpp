// End-to-end checks of the hocalc binary: exit codes, CSV contents,
// manifests, and byte-determinism. The binary path comes from the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hausdorff/io.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(HOCALC_BIN) + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 512> buf;
    while (fgets(buf.data(), buf.size(), pipe)) r.output += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("symbol subcommand writes the expected CSV and manifest") {
    const std::string out = "/tmp/hocalc_sym.csv";
    const RunResult r = run("symbol --preset calderon --s-min -20 --s-max 20 --s-count 4001 --out " + out);
    CHECK(r.exit_code == 0);
    const hausdorff::SampledFunction phi = hausdorff::io::read_csv(out);
    REQUIRE(phi.values.size() == 4001);
    CHECK(std::abs(phi.values[2000] - hausdorff::Complex(4.0)) < 1e-6);  // s = 0
    const std::string manifest = slurp(out + ".manifest.json");
    CHECK(manifest.find("\"command\": \"symbol\"") != std::string::npos);
    CHECK(manifest.find("\"warnings\"") != std::string::npos);
    CHECK(manifest.find("\"timing_ms\"") != std::string::npos);
    // header and line endings
    const std::string csv = slurp(out);
    CHECK(csv.rfind("s,re,im\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("power subcommand reproduces the squared-average kernel") {
    const std::string out = "/tmp/hocalc_k2.csv";
    const RunResult r = run("power --preset cesaro --l 2 --out " + out);
    CHECK(r.exit_code == 0);
    const hausdorff::SampledFunction k2 = hausdorff::io::read_csv(out);
    const double u = std::exp(-1.0);
    const hausdorff::Complex v = interpolate(k2, std::span<const double>(&u, 1));
    CHECK(std::abs(v - hausdorff::Complex(1.0)) < 1e-3);
}

TEST_CASE("unknown preset exits with a usage error") {
    const RunResult r = run("symbol --preset nosuch --out /tmp/hocalc_x.csv");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error: unknown preset: nosuch") != std::string::npos);
}

TEST_CASE("malformed definition JSON exits with a usage error") {
    std::ofstream bad("/tmp/hocalc_bad.json");
    bad << "{ this is not json";
    bad.close();
    const RunResult r = run("symbol --config /tmp/hocalc_bad.json --out /tmp/hocalc_y.csv");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("numerical precondition failures exit with status 1") {
    // fractional power of an operator whose symbol is complex
    const RunResult r = run("fracpow --preset cesaro --alpha 0.5 --out /tmp/hocalc_z.csv");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("error:") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical CSV output") {
    const RunResult r1 = run("symbol --preset cesaro --s-count 801 --out /tmp/hocalc_d1.csv");
    const RunResult r2 = run("symbol --preset cesaro --s-count 801 --out /tmp/hocalc_d2.csv");
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(slurp("/tmp/hocalc_d1.csv") == slurp("/tmp/hocalc_d2.csv"));
}

TEST_CASE("verify subcommand runs a suite and reports") {
    const std::string out = "/tmp/hocalc_report.json";
    const RunResult r = run("verify --suite specfun-reference --out " + out);
    CHECK(r.exit_code == 0);
    const std::string rep = slurp(out);
    CHECK(rep.find("\"suite\": \"specfun-reference\"") != std::string::npos);
    CHECK(rep.find("\"pass\": true") != std::string::npos);

    const RunResult bad = run("verify --suite nosuch");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("unknown suite") != std::string::npos);
}

TEST_CASE("matrix-symbol subcommand emits one file per entry plus a manifest") {
    const std::string out = "/tmp/hocalc_msym.csv";
    const RunResult r = run("matrix-symbol --preset negbox --s-count 201 --out " + out);
    CHECK(r.exit_code == 0);
    const hausdorff::SampledFunction offdiag = hausdorff::io::read_csv("/tmp/hocalc_msym_12.csv");
    CHECK(std::abs(offdiag.values[100] - hausdorff::Complex(2.0)) < 1e-6);
    const std::string manifest = slurp(out + ".manifest.json");
    CHECK(manifest.find("\"entries\"") != std::string::npos);
    CHECK(manifest.find("hocalc_msym_21.csv") != std::string::npos);
}

TEST_CASE("apply subcommand averages a gaussian") {
    const std::string out = "/tmp/hocalc_apply.csv";
    const RunResult r = run("apply --preset cesaro --f gaussian:5,1 --x-min 0.005 --x-max 30 "
                            "--x-count 1201 --out " + out);
    CHECK(r.exit_code == 0);
    const hausdorff::SampledFunction g = hausdorff::io::read_csv(out);
    CHECK(hausdorff::max_abs(g) > 0.1);
}

TEST_CASE("fracpow closed form matches the pipeline on the calderon preset") {
    const RunResult r = run("fracpow --preset calderon --alpha 1 --closed-form "
                            "--u-min 0.01 --u-max 100 --u-count 200 --u-log --out /tmp/hocalc_fc.csv");
    CHECK(r.exit_code == 0);
    const hausdorff::SampledFunction k = hausdorff::io::read_csv("/tmp/hocalc_fc.csv");
    double worst = 0.0;
    for (std::size_t i = 0; i < k.values.size(); ++i) {
        const double u = k.grid.axes[0].coord(i);
        const double want = 1.0 / (u * std::max(1.0, u));
        worst = std::max(worst, std::abs(k.values[i].real() - want) / want);
    }
    CHECK(worst < 1e-8);
}
