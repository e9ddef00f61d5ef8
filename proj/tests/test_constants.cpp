#include <catch2/catch_amalgamated.hpp>

#include "zml/constants.hpp"
#include "zml/series.hpp"

using namespace zml;
namespace cn = zml::constants;

TEST_CASE("gamma_0 matches Euler-Mascheroni to 30 digits", "[constants]") {
    BigReal g0 = cn::stieltjes(0, 30);
    BigReal ref = BigReal::from_string("0.577215664901532860606512090082", 256);
    CHECK(abs(g0 - ref) < 1e-29);
    CHECK(g0 > 0.0);
}

TEST_CASE("gamma_1 matches the dual-method value to 15 digits", "[constants]") {
    BigReal g1 = cn::stieltjes(1, 15);
    BigReal ref = BigReal::from_string("-0.0728158454836767", 128);
    CHECK(abs(g1 - ref) < 1e-15);
    CHECK(g1 < 0.0);
}

TEST_CASE("requesting more digits refines a prefix-consistent value", "[constants]") {
    BigReal lo = cn::stieltjes(0, 10);
    BigReal hi = cn::stieltjes(0, 40);
    CHECK(abs(lo - hi) < 1e-10);
}

TEST_CASE("c_coeff applies sign and factorial", "[constants]") {
    CHECK(abs(cn::c_coeff(0, 30) - cn::stieltjes(0, 30)) < 1e-29);
    BigReal c1 = cn::c_coeff(1, 15);
    CHECK(abs(c1 - BigReal::from_string("0.0728158454836767", 128)) < 1e-15);
    BigReal c2 = cn::c_coeff(2, 15);
    BigReal expect = cn::stieltjes(2, 15) / BigReal(2l, 128); // (-1)^2 gamma_2 / 2!
    CHECK(abs(c2 - expect) < 1e-15);
}

TEST_CASE("a_coeff satisfies the closed forms for n = 0, 1, 2", "[constants]") {
    std::size_t d = 40;
    cn::CoefficientSet cs = cn::coefficient_set(2, d);
    CHECK(abs(cs.A[0] - cs.C[0]) < 1e-38);
    BigReal a1 = cs.C[1] * BigReal(2l, cs.precision_bits) - cs.C[0] * cs.C[0];
    CHECK(abs(cs.A[1] - a1) < 1e-38);
    BigReal a2 = cs.C[2] * BigReal(3l, cs.precision_bits) -
                 cs.C[0] * cs.C[1] * BigReal(3l, cs.precision_bits) + pow_si(cs.C[0], 3);
    CHECK(abs(cs.A[2] - a2) < 1e-38);
}

TEST_CASE("numeric recursion equals the symbolic expansion for n <= 12", "[constants]") {
    std::size_t d = 45;
    cn::CoefficientSet cs = cn::coefficient_set(12, d);
    BigReal zero(0l, cs.precision_bits);
    for (unsigned n = 0; n <= 12; ++n) {
        BigReal sym = series::expand_A(n).eval(cs.C, zero, cs.precision_bits);
        INFO("n = " << n);
        CHECK(abs(cs.A[n] - sym) < 1e-43);
    }
}

TEST_CASE("index cap is enforced", "[constants]") {
    CHECK_THROWS_AS(cn::stieltjes(33, 20), UnsupportedIndex);
    CHECK_THROWS_AS(cn::stieltjes(0, 5000), Error);
}
