#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "zml/cli.hpp"

namespace {

struct CaptureOut {
    std::ostringstream buf;
    std::streambuf* old;
    CaptureOut() : old(std::cout.rdbuf(buf.rdbuf())) {}
    ~CaptureOut() { std::cout.rdbuf(old); }
    std::string str() const { return buf.str(); }
};

int run_capture(std::vector<std::string> args, std::string* out) {
    CaptureOut cap;
    int rc = zml::cli::run(std::move(args));
    *out = cap.str();
    return rc;
}

} // namespace

TEST_CASE("residue subcommand prints the expansion and MATCH", "[cli]") {
    std::string out;
    int rc = run_capture({"residue", "--n", "1", "--check"}, &out);
    CHECK(rc == 0);
    CHECK(out.find("L^2: 1/2") != std::string::npos);
    CHECK(out.find("L^1: -1 + C0") != std::string::npos);
    CHECK(out.find("MATCH") != std::string::npos);
}

TEST_CASE("eval prints pi^2/6 at s=2", "[cli]") {
    std::string out;
    int rc = run_capture({"eval", "--sigma", "2", "--t", "0", "--n", "0", "--digits", "30"}, &out);
    CHECK(rc == 0);
    CHECK(out.find("1.6449340668482264364724151666") != std::string::npos);
}

TEST_CASE("compare emits a well-formed empty row below the first zero", "[cli]") {
    std::string out;
    int rc = run_capture({"compare", "--n", "2", "--t-max", "10", "--source", "compute", "--digits", "15"},
                         &out);
    CHECK(rc == 0);
    CHECK(out.rfind("T,n,zero_count,", 0) == 0);
    CHECK(out.find("\n10,2,0,0,0,") != std::string::npos);
}

TEST_CASE("constants prints a CSV table at the requested digits", "[cli]") {
    std::string out;
    int rc = run_capture({"constants", "--j-max", "2", "--digits", "15"}, &out);
    CHECK(rc == 0);
    CHECK(out.rfind("j,gamma_j,C_j,A_j\n", 0) == 0);
    CHECK(out.find("0,0.577215664901533,0.577215664901533,0.577215664901533") != std::string::npos);
    CHECK(out.find("\n1,-0.0728158454836767,0.0728158454836767,") != std::string::npos);
}

TEST_CASE("zeros subcommand prints ordinates in the file format", "[cli]") {
    std::string out;
    int rc = run_capture({"zeros", "--compute", "--t-max", "15"}, &out);
    CHECK(rc == 0);
    CHECK(out.rfind("14.1347251417", 0) == 0);
}

TEST_CASE("usage errors exit with 2", "[cli]") {
    std::string out;
    CHECK(run_capture({"frobnicate"}, &out) == 2);
    CHECK(run_capture({"residue"}, &out) == 2);        // missing required --n
    CHECK(run_capture({"eval", "--sigma", "2"}, &out) == 2);
}

TEST_CASE("domain errors exit with 1", "[cli]") {
    std::string out;
    CHECK(run_capture({"zeros", "--load", "/nonexistent/zeros.txt", "--t-max", "10"}, &out) == 1);
    CHECK(run_capture({"constants", "--j-max", "2", "--digits", "4"}, &out) == 1);
}

TEST_CASE("identical invocations give byte-identical output", "[cli]") {
    std::string a, b;
    run_capture({"constants", "--j-max", "1", "--digits", "20"}, &a);
    run_capture({"constants", "--j-max", "1", "--digits", "20"}, &b);
    CHECK(a == b);
    CHECK(!a.empty());
}

TEST_CASE("ZML_DIGITS environment variable sets the default digits", "[cli]") {
    setenv("ZML_DIGITS", "12", 1);
    std::string out;
    int rc = run_capture({"constants", "--j-max", "0"}, &out);
    unsetenv("ZML_DIGITS");
    CHECK(rc == 0);
    CHECK(out.find("0,0.577215664902,") != std::string::npos);
}

TEST_CASE("--version prints the banner", "[cli]") {
    std::string out;
    CHECK(run_capture({"--version"}, &out) == 0);
    CHECK(out.rfind("zml ", 0) == 0);
}
