#ifndef ZML_GAMMA_COMPLEX_HPP
#define ZML_GAMMA_COMPLEX_HPP

#include "zml/bernoulli.hpp"
#include "zml/bigcomplex.hpp"
#include "zml/errors.hpp"

namespace zml {

struct ValueWithError {
    BigComplex value;
    BigReal rel_error; // majorant on the relative error
};

/// log Gamma(z) by the Stirling series after shifting Re z upward with the
/// recurrence Gamma(z) = Gamma(z+K) / (z (z+1) ... (z+K-1)).
inline ValueWithError lgamma_complex(const BigComplex& z0, mpfr_prec_t bits) {
    mpfr_prec_t W = bits + 32;
    double digits = static_cast<double>(bits) * 0.30103;
    BigComplex z = BigComplex{z0.re.at_prec(W), z0.im.at_prec(W)};

    long shift = std::max(0l, static_cast<long>(0.45 * digits + 14.0 - z.re.to_double()));
    BigComplex logshift(W);
    for (long j = 0; j < shift; ++j) {
        if (abs(z).to_double() < 1e-12) throw NearPole("lgamma_complex: argument at or near a pole");
        logshift += log(z);
        z.re += BigReal(1l, W);
    }

    // Stirling: (w - 1/2) log w - w + log(2 pi)/2 + sum B_{2m}/((2m)(2m-1) w^{2m-1})
    BigComplex lw = log(z);
    BigReal half(0.5, W);
    BigComplex acc = BigComplex{z.re - half, z.im} * lw - z;
    BigReal l2pi = log(two_pi(W));
    acc.re += l2pi * half;

    auto bern = BernoulliTable::scaled(64, W);
    BigComplex w2 = inv(z * z);
    BigComplex wpow = inv(z);
    BigReal tail(W);
    bool converged = false;
    for (unsigned long m = 1; m < 60; ++m) {
        // B_{2m}/((2m)(2m-1)) = b_m (2m-2)!
        BigReal coef = (*bern)[m] * factorial(2 * m - 2, W);
        BigComplex term = wpow * coef;
        acc += term;
        BigReal mag = abs(term);
        if (mag < BigReal(1.0, W) * ldexp(BigReal(1l, W), -static_cast<long>(bits + 8))) {
            // remainder bounded by the next term over cos^{2m+2}(arg(w)/2)
            tail = mag * BigReal(4l, W);
            converged = true;
            break;
        }
        wpow = wpow * w2;
    }
    if (!converged) throw PrecisionUnreachable("lgamma_complex: Stirling series stalled");

    acc -= logshift;
    BigReal rel = tail + ldexp(BigReal(static_cast<long>(shift) + 40, W), -static_cast<long>(W - 8));
    return {acc, rel};
}

inline ValueWithError gamma_complex(const BigComplex& z, mpfr_prec_t bits) {
    ValueWithError lg = lgamma_complex(z, bits);
    return {exp(lg.value), lg.rel_error};
}

/// chi(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s), the factor in the
/// functional equation zeta(1-s) = chi(1-s) zeta(s).
inline ValueWithError chi_factor(const BigComplex& s, mpfr_prec_t bits) {
    mpfr_prec_t W = bits + 32;
    BigReal pi_w = pi(W);
    BigComplex sW{s.re.at_prec(W), s.im.at_prec(W)};
    BigComplex one{BigReal(1l, W), BigReal(0l, W)};
    ValueWithError g = gamma_complex(one - sW, bits);
    BigComplex p1 = pow_complex(BigReal(2l, W), sW);
    BigComplex p2 = pow_complex(pi_w, sW - one);
    BigComplex sn = sin(sW * BigComplex{pi_w * BigReal(0.5, W), BigReal(0l, W)});
    BigComplex value = p1 * p2 * sn * g.value;
    BigReal rel = g.rel_error + ldexp(BigReal(64l, W), -static_cast<long>(W - 4));
    return {value, rel};
}

} // namespace zml

#endif
