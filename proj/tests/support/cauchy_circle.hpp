#ifndef ZML_TESTS_CAUCHY_CIRCLE_HPP
#define ZML_TESTS_CAUCHY_CIRCLE_HPP

#include <vector>

#include "zml/zeta_eval.hpp"

// Independent derivative oracle: zeta^{(k)}(s) = k!/(2 pi i) times the
// contour integral of zeta(z)/(z-s)^{k+1} on a circle around s, evaluated
// by the trapezoid rule with the node count doubled until two consecutive
// answers agree. Only order-zero zeta evaluations enter, so this checks the
// differentiated Euler-Maclaurin path against plain quadrature.
namespace zml_test {

inline std::vector<zml::BigComplex> cauchy_circle_derivs(const zml::BigComplex& s, int n,
                                                         const zml::zeta::EvalConfig& cfg) {
    using namespace zml;
    mpfr_prec_t W = cfg.precision_bits + 32;
    BigReal dist = hypot(s.re - BigReal(1l, W), s.im);
    BigReal radius = max(BigReal(1e-3, W), dist * BigReal(0.5, W));
    if (radius > 0.25) radius = BigReal(0.25, W);

    zml::zeta::EvalConfig node_cfg(W, cfg.target_abs_error * BigReal(1e-4, W), 0);

    std::vector<BigComplex> prev;
    for (std::size_t q = 64; q <= 1024; q *= 2) {
        std::vector<BigComplex> acc(static_cast<std::size_t>(n) + 1, BigComplex(W));
        BigReal two_pi_w = two_pi(W);
        for (std::size_t i = 0; i < q; ++i) {
            BigReal theta = two_pi_w * BigReal(static_cast<long>(i), W) / BigReal(static_cast<long>(q), W);
            BigReal st(W), ct(W);
            sin_cos(st, ct, theta);
            BigComplex node{s.re + radius * ct, s.im + radius * st};
            BigComplex fz = zml::zeta::zeta_derivs(node, 0, node_cfg).values[0];
            // accumulate fz * e^{-ik theta} / r^k
            BigComplex rot{ct, -st};
            BigComplex w{BigReal(1l, W), BigReal(0l, W)};
            BigReal rk(1l, W);
            for (int k = 0; k <= n; ++k) {
                acc[static_cast<std::size_t>(k)] += fz * w / rk;
                w = w * rot;
                rk *= radius;
            }
        }
        BigReal fk(1l, W);
        for (int k = 0; k <= n; ++k) {
            if (k > 0) fk *= static_cast<long>(k);
            acc[static_cast<std::size_t>(k)] =
                acc[static_cast<std::size_t>(k)] * (fk / BigReal(static_cast<long>(q), W));
        }
        if (!prev.empty()) {
            BigReal worst(W);
            for (int k = 0; k <= n; ++k) worst = max(worst, abs(acc[static_cast<std::size_t>(k)] - prev[k]));
            if (worst < cfg.target_abs_error * BigReal(0.25, W)) return acc;
        }
        prev = std::move(acc);
    }
    return prev;
}

} // namespace zml_test

#endif
