#include "doctest.h"
#include "hausdorff/verify.hpp"

using namespace hausdorff;

TEST_CASE("unknown suite names are rejected") {
    try {
        run_suite("nosuch");
        FAIL("expected UsageError");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()) == "unknown suite: nosuch");
    }
}

TEST_CASE("cheap suites pass and report every check") {
    for (const std::string name : {"specfun-reference", "balakrishnan-pointwise"}) {
        const VerificationReport rep = run_suite(name);
        CHECK(rep.suite == name);
        CHECK(rep.pass);
        CHECK(!rep.checks.empty());
        for (const SuiteCheck& c : rep.checks) {
            CHECK(c.pass);
            CHECK(c.error <= c.tolerance);
        }
    }
}

TEST_CASE("reports are deterministic for a fixed seed") {
    SuiteConfig cfg;
    cfg.seed = 4242;
    const VerificationReport a = run_suite("balakrishnan-pointwise", cfg);
    const VerificationReport b = run_suite("balakrishnan-pointwise", cfg);
    CHECK(a.to_json() == b.to_json());
    CHECK(a.seed == 4242);
}

TEST_CASE("report JSON carries the documented fields") {
    const VerificationReport rep = run_suite("specfun-reference");
    const std::string j = rep.to_json();
    for (const char* key : {"\"suite\"", "\"seed\"", "\"checks\"", "\"pass\"", "\"name\"",
                            "\"error\"", "\"tol\""})
        CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("suite names listing matches the registered set") {
    const auto names = suite_names();
    CHECK(names.size() == 9);
    for (const std::string& n : names) CHECK_NOTHROW((void)n);
}

TEST_CASE("boyd-power honors the single-combination override") {
    SuiteConfig cfg;
    cfg.overrides["l"] = 2;
    cfg.overrides["alpha"] = 0.0;
    const VerificationReport rep = run_suite("boyd-power", cfg);
    CHECK(rep.checks.size() == 1);
    CHECK(rep.pass);
}
