#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "zml/zeros.hpp"

using namespace zml;
namespace zr = zml::zeros;

namespace {

const double kFirstTen[] = {14.134725141734694, 21.022039638771555, 25.010857580145688,
                            30.424876125859513, 32.935061587739190, 37.586178158825671,
                            40.918719012147495, 43.327073280914999, 48.005150881167160,
                            49.773832477672302};

std::filesystem::path tmp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& p, const std::string& body) {
    std::ofstream f(p, std::ios::binary);
    f << body;
}

} // namespace

TEST_CASE("find_zeros locates the first zero to 1e-9", "[zeros]") {
    zr::ZeroList zl = zr::find_zeros(15.0);
    REQUIRE(zl.count() == 1);
    CHECK(zl.ordinates[0].index == 1);
    CHECK(std::fabs(zl.ordinates[0].gamma.to_double() - 14.134725141734694) < 1e-9);
}

TEST_CASE("find_zeros below the first ordinate is empty", "[zeros]") {
    CHECK(zr::find_zeros(10.0).count() == 0);
}

TEST_CASE("the ten zeros below 50 come out in order and verified", "[zeros]") {
    zr::ZeroList zl = zr::find_zeros(50.0);
    REQUIRE(zl.count() == 10);
    for (std::size_t i = 0; i < 10; ++i) {
        INFO("zero " << i + 1);
        CHECK(std::fabs(zl.ordinates[i].gamma.to_double() - kFirstTen[i]) < 1e-9);
        CHECK(zl.ordinates[i].index == i + 1);
        CHECK(zr::residual_ok(zl.ordinates[i].gamma, zl.precision));
    }
    CHECK(zr::count_check(zl));
}

TEST_CASE("count_check flags gross omissions but tolerates the band", "[zeros]") {
    zr::ZeroList zl = zr::find_zeros(50.0);
    zr::ZeroList one_gone = zl;
    one_gone.ordinates.erase(one_gone.ordinates.begin() + 4);
    (void)zr::count_check(one_gone); // may pass inside the band; must not throw
    zr::ZeroList five_gone = zl;
    five_gone.ordinates.resize(5);
    CHECK_FALSE(zr::count_check(five_gone));
    zr::ZeroList empty;
    empty.t_max = BigReal(10.0, 64);
    empty.precision = BigReal(1e-12, 64);
    CHECK(zr::count_check(empty));
}

TEST_CASE("zero files parse with filtering and comments", "[zeros]") {
    auto p = tmp_file("zml_zeros_basic.txt");
    write_file(p, "# header comment\n14.134725\n21.022040\n");
    zr::ZeroList zl = zr::load_zeros(p.string(), 20.0);
    REQUIRE(zl.count() == 1);
    CHECK(std::fabs(zl.ordinates[0].gamma.to_double() - 14.134725) < 1e-12);
    CHECK(zl.precision <= 5e-7 + 1e-18);
    std::filesystem::remove(p);
}

TEST_CASE("empty files give empty lists", "[zeros]") {
    auto p = tmp_file("zml_zeros_empty.txt");
    write_file(p, "");
    CHECK(zr::load_zeros(p.string(), 100.0).count() == 0);
    std::filesystem::remove(p);
}

TEST_CASE("bad literals raise ParseError with the line number", "[zeros]") {
    auto p = tmp_file("zml_zeros_bad.txt");
    write_file(p, "abc\n");
    try {
        zr::load_zeros(p.string(), 100.0);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    std::filesystem::remove(p);
}

TEST_CASE("descending ordinates raise NonMonotonic", "[zeros]") {
    auto p = tmp_file("zml_zeros_desc.txt");
    write_file(p, "21.02\n14.13\n");
    CHECK_THROWS_AS(zr::load_zeros(p.string(), 100.0), NonMonotonic);
    std::filesystem::remove(p);
}

TEST_CASE("CRLF endings and a leading plus are accepted", "[zeros]") {
    auto p = tmp_file("zml_zeros_crlf.txt");
    write_file(p, "+14.134725\r\n21.022040\r\n");
    CHECK(zr::load_zeros(p.string(), 100.0).count() == 2);
    std::filesystem::remove(p);
}

TEST_CASE("save then load reproduces ordinates at file precision", "[zeros]") {
    zr::ZeroList zl = zr::find_zeros(50.0);
    auto p = tmp_file("zml_zeros_roundtrip.txt");
    zr::save_zeros(zl, p.string());
    zr::ZeroList back = zr::load_zeros(p.string(), 50.0);
    REQUIRE(back.count() == zl.count());
    for (std::size_t i = 0; i < zl.count(); ++i)
        CHECK(abs(back.ordinates[i].gamma - zl.ordinates[i].gamma) < 1e-12);
    CHECK(back.source == zr::Source::file);
    std::filesystem::remove(p);
}

TEST_CASE("computed and loaded ordinates agree pairwise on overlap", "[zeros]") {
    zr::ZeroList computed = zr::find_zeros(50.0);
    auto p = tmp_file("zml_zeros_ref.txt");
    std::string body;
    for (double g : kFirstTen) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12f\n", g);
        body += buf;
    }
    write_file(p, body);
    zr::ZeroList loaded = zr::load_zeros(p.string(), 50.0);
    REQUIRE(loaded.count() == computed.count());
    for (std::size_t i = 0; i < loaded.count(); ++i)
        CHECK(abs(loaded.ordinates[i].gamma - computed.ordinates[i].gamma).to_double() < 1e-9);
    std::filesystem::remove(p);
}

TEST_CASE("coarse precision requests skip the expensive polish", "[zeros]") {
    zr::FindConfig cfg;
    cfg.ordinate_precision = 1e-4;
    zr::ZeroList zl = zr::find_zeros(50.0, cfg);
    REQUIRE(zl.count() == 10);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(std::fabs(zl.ordinates[i].gamma.to_double() - kFirstTen[i]) < 1e-4);
}
