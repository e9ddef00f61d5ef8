#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "support/cauchy_circle.hpp"
#include "zml/zeta_eval.hpp"

using namespace zml;
using zml::zeta::EvalConfig;
using zml::zeta::zeta_derivs;

namespace {

BigComplex pt(double sigma, double t, mpfr_prec_t bits) { return BigComplex(sigma, t, bits); }

// Truncated Dirichlet series for zeta'/zeta at real s > 1, with remainder
// bound (log R + 2)/R * 1.5 from the integral comparison.
double log_deriv_dirichlet(double s, std::size_t R, double* tail) {
    std::vector<bool> composite(R + 1, false);
    double acc = 0;
    for (std::size_t p = 2; p <= R; ++p) {
        if (composite[p]) continue;
        for (std::size_t q = 2 * p; q <= R; q += p) composite[q] = true;
        double lp = std::log(double(p));
        for (double pk = double(p); pk <= double(R); pk *= double(p)) acc -= lp / std::pow(pk, s);
    }
    *tail = 1.5 * (std::log(double(R)) + 2.0) / double(R);
    return acc;
}

} // namespace

TEST_CASE("classical values emerge from Euler-Maclaurin", "[zeta_eval]") {
    EvalConfig cfg = EvalConfig::for_digits(30);

    auto v2 = zeta_derivs(pt(2, 0, cfg.precision_bits), 0, cfg);
    BigReal pi2_6 = pi(256) * pi(256) / BigReal(6l, 256);
    CHECK(abs(v2.values[0].re - pi2_6) < 1e-30);
    CHECK(abs(v2.values[0].im) < 1e-30);
    CHECK(v2.error_bound <= cfg.target_abs_error);

    auto v0 = zeta_derivs(pt(0, 0, cfg.precision_bits), 1, cfg);
    CHECK(abs(v0.values[0].re + BigReal(0.5, 256)) < 1e-30);
    BigReal half_l2pi = log(two_pi(256)) * BigReal(0.5, 256);
    CHECK(abs(v0.values[1].re + half_l2pi) < 1e-30);

    auto vm1 = zeta_derivs(pt(-1, 0, cfg.precision_bits), 0, cfg);
    CHECK(abs(vm1.values[0].re + BigReal(1l, 256) / BigReal(12l, 256)) < 1e-30);
}

TEST_CASE("zeta vanishes at the first zero ordinate", "[zeta_eval]") {
    EvalConfig cfg = EvalConfig::for_digits(25);
    BigReal g1 = BigReal::from_string("14.134725141734693790457251983562", cfg.precision_bits);
    auto v = zeta_derivs(BigComplex{BigReal(0.5, cfg.precision_bits), g1}, 0, cfg);
    CHECK(abs(v.values[0]) < 1e-10);
}

TEST_CASE("log_deriv cross-checks against the von Mangoldt series at s=2", "[zeta_eval]") {
    EvalConfig cfg = EvalConfig::for_digits(25);
    auto r = zml::zeta::log_deriv(pt(2, 0, cfg.precision_bits), cfg);
    double tail = 0;
    double series = log_deriv_dirichlet(2.0, 200000, &tail);
    CHECK(std::fabs(r.value.re.to_double() - series) < tail);
    CHECK(abs(r.value.im) < 1e-20);
}

TEST_CASE("log_deriv is negative on the real axis just right of 1", "[zeta_eval]") {
    EvalConfig cfg = EvalConfig::for_digits(20);
    auto r = zml::zeta::log_deriv(pt(1.05, 0, cfg.precision_bits), cfg);
    CHECK(r.value.re < 0.0);
    CHECK(abs(r.value.im) < 1e-18);
}

TEST_CASE("log_deriv refuses a zero denominator", "[zeta_eval]") {
    EvalConfig cfg = EvalConfig::for_digits(20);
    BigReal g1 = BigReal::from_string("14.1347251417346937904572", cfg.precision_bits);
    CHECK_THROWS_AS(zml::zeta::log_deriv(BigComplex{BigReal(0.5, cfg.precision_bits), g1}, cfg),
                    NearZeroDenominator);
}

TEST_CASE("functional equation holds at s=2 (zeta(-1) = -1/12)", "[zeta_eval]") {
    EvalConfig cfg(128, BigReal(1e-30, 128), 0);
    BigReal bound(128);
    BigReal resid = zml::zeta::functional_equation_check(pt(2, 0, 128), cfg, &bound);
    CHECK(resid < 1e-20);
    CHECK(resid <= bound + BigReal(1e-25, 128));
}

TEST_CASE("functional equation on the critical line at t=10", "[zeta_eval]") {
    EvalConfig cfg(160, BigReal(1e-30, 160), 0);
    BigReal bound(160);
    BigReal resid = zml::zeta::functional_equation_check(pt(0.5, 10, 160), cfg, &bound);
    CHECK(resid <= bound);
}

TEST_CASE("functional equation residual stays below the combined bound", "[zeta_eval]") {
    std::mt19937_64 rng(7781);
    std::uniform_real_distribution<double> us(-2.0, 3.0), ut(1.0, 50.0);
    EvalConfig cfg(160, BigReal(1e-28, 160), 0);
    int tested = 0;
    while (tested < 12) {
        double sg = us(rng), t = ut(rng);
        if (std::fabs(sg - 1.0) < 0.05) continue; // keep away from the pole row
        ++tested;
        BigReal bound(160);
        BigReal resid = zml::zeta::functional_equation_check(pt(sg, t, 160), cfg, &bound);
        INFO("sigma=" << sg << " t=" << t);
        CHECK(resid <= bound);
    }
}

TEST_CASE("derivatives agree with central finite differences", "[zeta_eval]") {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> us(0.5, 2.0), ut(1.0, 100.0);
    EvalConfig cfg = EvalConfig::for_digits(40);
    cfg.max_derivative = 5;
    const double h = 1e-8;
    for (int trial = 0; trial < 20; ++trial) {
        double sg = us(rng), t = ut(rng);
        auto c = zeta_derivs(pt(sg, t, cfg.precision_bits), 5, cfg);
        auto up = zeta_derivs(pt(sg + h, t, cfg.precision_bits), 3, cfg);
        auto dn = zeta_derivs(pt(sg - h, t, cfg.precision_bits), 3, cfg);
        // the doubles sg +/- h are not exactly sg +/- 1e-8; use the step
        // they actually realise
        BigReal step = BigReal(sg + h, cfg.precision_bits) - BigReal(sg - h, cfg.precision_bits);
        for (int k = 1; k <= 3; ++k) {
            BigComplex fd = (up.values[k - 1] - dn.values[k - 1]) / step;
            double scale = std::max(1.0, abs(c.values[k + 2]).to_double());
            INFO("sigma=" << sg << " t=" << t << " k=" << k);
            CHECK(abs(fd - c.values[k]).to_double() < 2.0 * h * h * scale + 1e-15);
        }
    }
}

TEST_CASE("Cauchy-circle quadrature confirms the differentiated path", "[zeta_eval][oracle]") {
    std::mt19937_64 rng(1905);
    std::uniform_real_distribution<double> us(0.5, 2.0), ut(1.0, 100.0);
    EvalConfig cfg(128, BigReal(1e-26, 128), 3);
    for (int trial = 0; trial < 10; ++trial) {
        double sg = us(rng), t = ut(rng);
        auto em = zeta_derivs(pt(sg, t, 128), 3, cfg);
        auto qc = zml_test::cauchy_circle_derivs(pt(sg, t, 128), 3, cfg);
        for (int k = 0; k <= 3; ++k) {
            INFO("sigma=" << sg << " t=" << t << " k=" << k);
            CHECK(abs(em.values[k] - qc[k]) < 1e-25);
        }
    }
}

TEST_CASE("doubling precision never worsens the reported bound", "[zeta_eval]") {
    for (double sg : {0.5, 0.7, 2.0}) {
        BigReal target(1e-20, 256);
        EvalConfig lo(128, target, 2), hi(256, target, 2);
        auto a = zeta_derivs(pt(sg, 21.5, 128), 2, lo);
        auto b = zeta_derivs(pt(sg, 21.5, 256), 2, hi);
        CHECK(b.error_bound <= a.error_bound);
    }
}

TEST_CASE("guards reject out-of-range requests", "[zeta_eval]") {
    EvalConfig cfg = EvalConfig::for_digits(20);
    CHECK_THROWS_AS(zeta_derivs(BigComplex{BigReal(1l, 128) + ldexp(BigReal(1l, 128), -100), BigReal(0l, 128)},
                                0, cfg),
                    NearPole);
    CHECK_THROWS_AS(zeta_derivs(pt(0.5, 2.0e6, 128), 0, cfg), RangeExceeded);
    CHECK_THROWS_AS(zeta_derivs(pt(0.5, 30, 128), 9, cfg), RangeExceeded);
    CHECK_THROWS_AS(EvalConfig(32, BigReal(1e-10, 64), 0), Error);
    CHECK_THROWS_AS(EvalConfig(128, BigReal(0l, 128), 0), Error);
}

TEST_CASE("convexity monitor stays quiet at ordinary points", "[zeta_eval]") {
    EvalConfig cfg = EvalConfig::for_digits(20);
    auto v = zeta_derivs(pt(0.5, 40, cfg.precision_bits), 2, cfg);
    CHECK_FALSE(zml::zeta::convexity_warning(v.point, 2, v.values[2]).has_value());
}
