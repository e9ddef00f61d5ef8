#ifndef ZML_ZETA_EVAL_HPP
#define ZML_ZETA_EVAL_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "zml/bernoulli.hpp"
#include "zml/bigcomplex.hpp"
#include "zml/errors.hpp"
#include "zml/gamma_complex.hpp"

namespace zml::zeta {

struct EvalConfig {
    mpfr_prec_t precision_bits;
    BigReal target_abs_error;
    int max_derivative;

    EvalConfig(mpfr_prec_t bits, BigReal target, int n = 0)
        : precision_bits(bits), target_abs_error(std::move(target)), max_derivative(n) {
        if (precision_bits < 64) throw Error("EvalConfig: precision_bits >= 64 required");
        if (!(target_abs_error > 0.0)) throw Error("EvalConfig: target_abs_error must be positive");
    }

    static EvalConfig for_digits(std::size_t digits, int n = 0) {
        mpfr_prec_t bits = digits_to_bits(digits) + 16;
        BigReal target(1l, bits);
        mpfr_ui_pow_ui(target.raw(), 10, static_cast<unsigned long>(digits), MPFR_RNDN);
        BigReal one(1l, bits);
        return EvalConfig(bits, one / target, n);
    }
};

/// zeta and its derivatives 0..n at one point, with a shared error majorant.
struct DerivVector {
    BigComplex point;
    std::vector<BigComplex> values;
    BigReal error_bound;
};

struct ValueErr {
    BigComplex value;
    BigReal abs_error;
};

namespace detail {

/// Shared tables of log k and k^{-1/2}; snapshot semantics so readers are
/// never invalidated by growth.
struct CriticalTables {
    mpfr_prec_t bits;
    std::vector<BigReal> logk;   // logk[k], index 0 unused
    std::vector<BigReal> rsqrt;  // k^{-1/2}

    static std::shared_ptr<const CriticalTables> get(std::size_t count, mpfr_prec_t bits) {
        static std::mutex mu;
        static std::shared_ptr<const CriticalTables> cur;
        std::lock_guard<std::mutex> lock(mu);
        if (cur && cur->bits >= bits && cur->logk.size() > count) return cur;
        auto next = std::make_shared<CriticalTables>();
        next->bits = std::max(bits, cur ? cur->bits : 0);
        std::size_t n = std::max<std::size_t>(count + 1, cur ? cur->logk.size() : 64);
        n += n / 4;
        next->logk.reserve(n);
        next->rsqrt.reserve(n);
        BigReal half(-0.5, next->bits);
        for (std::size_t k = 0; k < n; ++k) {
            BigReal lk(next->bits);
            if (k >= 1) mpfr_log_ui(lk.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
            next->rsqrt.push_back(exp(lk * half));
            next->logk.push_back(std::move(lk));
        }
        cur = next;
        return cur;
    }
};

using Jet = std::vector<BigComplex>; // Taylor coefficients in eps, f^{(i)}/i!

inline Jet jet_zero(std::size_t len, mpfr_prec_t bits) { return Jet(len, BigComplex(bits)); }

inline Jet jet_mul(const Jet& a, const Jet& b) {
    Jet r = jet_zero(a.size(), std::max(a[0].prec(), b[0].prec()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size() && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline void jet_add(Jet& a, const Jet& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

/// fold_j: magnitude of jet coefficient j after multiplying by the
/// exp(-eps log N) factor, as a majorant.
inline BigReal jet_fold(const Jet& t, std::size_t j, const BigReal& logn) {
    BigReal acc(logn.prec());
    for (std::size_t i = 0; i <= j; ++i) {
        // weight (log N)^{j-i}/(j-i)!
        BigReal w(1l, logn.prec());
        for (std::size_t p = 0; p < j - i; ++p) w *= logn / BigReal(static_cast<long>(p) + 1, logn.prec());
        acc += abs(t[i]) * w;
    }
    return acc;
}

} // namespace detail

/// Evaluate zeta(s), zeta'(s), ..., zeta^{(n)}(s) in one Euler-Maclaurin
/// pass, differentiated term by term: the finite Dirichlet block, the
/// closed-form N^{1-s}/(s-1) and N^{-s}/2 endpoint terms, and an adaptive
/// number of Bernoulli corrections, with N grown until the tail majorant
/// can reach the target.
inline DerivVector zeta_derivs(const BigComplex& s, int n, const EvalConfig& cfg) {
    using namespace detail;
    if (n < 0 || n > 8) throw RangeExceeded("zeta_derivs: derivative order must be in 0..8");
    const double sigma = s.re.to_double();
    const double t_abs = std::fabs(s.im.to_double());
    if (t_abs > 1.0e6) throw RangeExceeded("zeta_derivs: |Im s| above documented range 1e6");
    if (sigma < -30.0) throw RangeExceeded("zeta_derivs: Re s below documented range -30");

    const mpfr_prec_t P = cfg.precision_bits;
    {
        BigReal dist = hypot(s.re - BigReal(1l, P), s.im);
        if (dist < ldexp(BigReal(1l, P), -static_cast<long>(P / 2)))
            throw NearPole("zeta_derivs: s within the near-pole guard radius of 1");
    }

    const std::size_t J = static_cast<std::size_t>(n) + 1;
    double digits_target = -0.30103 * static_cast<double>(mpfr_get_exp(cfg.target_abs_error.raw()));
    digits_target = std::min(std::max(digits_target, 1.0), 1300.0);

    std::size_t N = std::max<std::size_t>(
        {10, static_cast<std::size_t>(std::ceil(1.15 * t_abs / (2 * M_PI))) + 10,
         static_cast<std::size_t>(std::ceil(0.39 * digits_target)) + 8});

    for (int attempt = 0; attempt < 14; ++attempt) {
        mpfr_prec_t W = P + 48 + attempt * 16;
        if (sigma < 0) W += static_cast<mpfr_prec_t>(std::ceil(-sigma * std::log2(double(N))));
        W += static_cast<mpfr_prec_t>(std::ceil(std::log2(std::max(8.0, t_abs * std::log(double(N))))));

        auto tables = CriticalTables::get(N, W);
        const bool use_rsqrt = mpfr_cmp_d(s.re.raw(), 0.5) == 0 && tables->bits >= W;

        BigComplex sW{s.re.at_prec(W), s.im.at_prec(W)};
        BigReal mt = -sW.im;

        Jet sum = jet_zero(J, W);
        BigReal si(W), co(W), e(W), ph(W), w(W);
        for (std::size_t k = 1; k < N; ++k) {
            const BigReal& lk = tables->logk[k];
            if (use_rsqrt)
                e = tables->rsqrt[k].at_prec(W);
            else {
                mpfr_mul(e.raw(), sW.re.raw(), lk.raw(), MPFR_RNDN);
                mpfr_neg(e.raw(), e.raw(), MPFR_RNDN);
                mpfr_exp(e.raw(), e.raw(), MPFR_RNDN);
            }
            mpfr_mul(ph.raw(), mt.raw(), lk.raw(), MPFR_RNDN);
            mpfr_sin_cos(si.raw(), co.raw(), ph.raw(), MPFR_RNDN);
            BigComplex base{e * co, e * si};
            sum[0] += base;
            if (J > 1) {
                mpfr_set_si(w.raw(), 1, MPFR_RNDN);
                for (std::size_t j = 1; j < J; ++j) {
                    mpfr_mul(w.raw(), w.raw(), lk.raw(), MPFR_RNDN);
                    mpfr_div_si(w.raw(), w.raw(), -static_cast<long>(j), MPFR_RNDN);
                    sum[j].re += base.re * w;
                    sum[j].im += base.im * w;
                }
            }
        }

        BigReal logn(W);
        mpfr_log_ui(logn.raw(), static_cast<unsigned long>(N), MPFR_RNDN);
        BigComplex one{BigReal(1l, W), BigReal(0l, W)};
        BigComplex q = sW - one; // s - 1
        BigComplex n_pow_1ms = exp(BigComplex{logn * (one.re - sW.re), -(logn * sW.im)}); // N^{1-s}
        BigComplex n_pow_ms = n_pow_1ms / BigReal(static_cast<long>(N), W);               // N^{-s}

        // A = N^{1-s} / (s-1+eps) ; B = N^{-s}/2 ; both without exp(-eps log N)
        Jet corr = jet_zero(J, W);
        {
            BigComplex iq = inv(q);
            BigComplex ip = iq;
            for (std::size_t i = 0; i < J; ++i) {
                corr[i] += n_pow_1ms * ip;
                ip = -(ip * iq);
            }
            corr[0] += n_pow_ms * BigReal(0.5, W);
        }

        auto bern = BernoulliTable::scaled(2100, W);
        BigReal inv_n2 = BigReal(1l, W) / BigReal(static_cast<long>(N) * static_cast<long>(N), W);
        // T_1 = b_1 N^{-1-s} (s+eps)
        Jet T = jet_zero(J, W);
        T[0] = n_pow_ms * ((*bern)[1] / BigReal(static_cast<long>(N), W)) * sW;
        if (J > 1) T[1] = n_pow_ms * ((*bern)[1] / BigReal(static_cast<long>(N), W));

        const std::size_t M_cap = 2000;
        bool ok = false;
        BigReal tail_bound(W);
        BigReal target_half = cfg.target_abs_error.at_prec(W) * BigReal(0.25, W);
        BigReal prev_mag(W);
        int stall = 0;
        std::size_t m = 1;
        for (; m < M_cap; ++m) {
            jet_add(corr, T);
            // advance T to order m+1: multiply by r_m (s+2m-1+eps)(s+2m+eps) / N^2
            BigReal rm = (*bern)[m + 1] / (*bern)[m];
            BigComplex a1 = sW + BigComplex{BigReal(2 * static_cast<long>(m) - 1, W), BigReal(0l, W)};
            BigComplex a2 = sW + BigComplex{BigReal(2 * static_cast<long>(m), W), BigReal(0l, W)};
            Jet quad = jet_zero(std::min<std::size_t>(J, 3), W);
            quad[0] = a1 * a2;
            if (quad.size() > 1) quad[1] = a1 + a2;
            if (quad.size() > 2) quad[2] = one;
            Jet Tn = jet_zero(J, W);
            for (std::size_t i = 0; i < J; ++i)
                for (std::size_t j2 = 0; j2 < quad.size() && i + j2 < J; ++j2) Tn[i + j2] += T[i] * quad[j2];
            for (std::size_t i = 0; i < J; ++i) Tn[i] = Tn[i] * (rm * inv_n2);
            T = std::move(Tn);

            // tail majorant from the first omitted term
            BigReal fac = (hypot(sW.re, sW.im) + BigReal(2 * static_cast<long>(m) + 3, W)) /
                          max(sW.re + BigReal(2 * static_cast<long>(m) + 3, W), BigReal(1l, W));
            BigReal worst(W);
            BigReal jfact(1l, W);
            for (std::size_t j = 0; j < J; ++j) {
                if (j > 0) jfact *= static_cast<long>(j);
                worst = max(worst, jet_fold(T, j, logn) * jfact);
            }
            tail_bound = worst * fac * BigReal(3l, W);
            if (tail_bound <= target_half) {
                ok = true;
                break;
            }
            BigReal mag = abs(T[0]);
            if (m > 4 && mag > prev_mag * BigReal(0.97, W))
                ++stall;
            else
                stall = 0;
            prev_mag = mag;
            if (stall >= 3) break; // series decaying too slowly: need larger N
        }
        if (!ok) {
            N = N + N / 4 + 16;
            continue;
        }

        // fold the common exp(-eps log N) factor into the corrections
        Jet expjet = jet_zero(J, W);
        expjet[0] = one;
        for (std::size_t i = 1; i < J; ++i)
            expjet[i] = expjet[i - 1] * BigReal(-1l, W) * (logn / BigReal(static_cast<long>(i), W));
        Jet total = jet_mul(corr, expjet);
        jet_add(total, sum);

        // rounding majorant: ops count times ulp at the largest intermediate scale
        double mag_est = std::pow(double(N), std::max(1.0, 1.0 - sigma));
        BigReal rounding = BigReal(mag_est * double(N + 2 * m + 64), W);
        rounding = ldexp(rounding, -static_cast<long>(W - 6));

        BigReal bound = tail_bound + rounding;
        if (!(bound <= cfg.target_abs_error)) {
            N = N + N / 8 + 8;
            continue;
        }

        DerivVector out;
        out.point = s;
        out.error_bound = bound.at_prec(P);
        out.values.reserve(J);
        BigReal jf(1l, W);
        for (std::size_t j = 0; j < J; ++j) {
            if (j > 0) jf *= static_cast<long>(j);
            out.values.push_back(BigComplex{(total[j].re * jf).at_prec(P), (total[j].im * jf).at_prec(P)});
        }
        return out;
    }
    throw PrecisionUnreachable("zeta_derivs: adaptive Euler-Maclaurin failed to meet the target");
}

/// zeta'(s)/zeta(s) with a propagated error bound.
inline ValueErr log_deriv(const BigComplex& s, const EvalConfig& cfg) {
    EvalConfig inner(cfg.precision_bits, cfg.target_abs_error * BigReal(0.25, cfg.precision_bits), 1);
    DerivVector d = zeta_derivs(s, 1, inner);
    BigReal mag0 = abs(d.values[0]);
    if (mag0 <= d.error_bound * BigReal(10l, cfg.precision_bits))
        throw NearZeroDenominator("log_deriv: zeta(s) indistinguishable from zero at this precision");
    BigComplex r = d.values[1] / d.values[0];
    BigReal err = (d.error_bound + abs(r) * d.error_bound) / (mag0 - d.error_bound);
    return {r, err};
}

/// |zeta(1-s) - chi(1-s) zeta(s)| together with the combined error bound
/// of the three factors.
inline BigReal functional_equation_check(const BigComplex& s, const EvalConfig& cfg, BigReal* combined_bound = nullptr) {
    BigComplex one{BigReal(1l, cfg.precision_bits), BigReal(0l, cfg.precision_bits)};
    BigComplex s1 = one - s;
    DerivVector lhs = zeta_derivs(s1, 0, cfg);
    DerivVector rhs = zeta_derivs(s, 0, cfg);
    ValueWithError x = chi_factor(s1, cfg.precision_bits);
    BigComplex resid = lhs.values[0] - x.value * rhs.values[0];
    if (combined_bound) {
        BigReal b = lhs.error_bound + abs(x.value) * rhs.error_bound +
                    abs(x.value) * abs(rhs.values[0]) * x.rel_error;
        *combined_bound = b;
    }
    return abs(resid);
}

/// Soft convexity monitor. Returns a warning when |zeta^{(n)}(sigma+it)|
/// exceeds 100x the convexity envelope; never throws.
inline std::optional<std::string> convexity_warning(const BigComplex& s, int n, const BigComplex& value) {
    double sigma = s.re.to_double(), t = std::fabs(s.im.to_double());
    if (t < 5.0) return std::nullopt;
    double lt = std::log(t);
    double env;
    if (sigma <= 0)
        env = std::pow(t, 0.5 - sigma) * std::pow(lt, n + 1);
    else if (sigma <= 1)
        env = std::pow(t, 0.5 * (1 - sigma)) * std::pow(lt, n + 1);
    else
        env = std::pow(lt, n + 1);
    double mag = abs(value).to_double();
    if (mag > 100.0 * env)
        return "convexity monitor: |zeta^(" + std::to_string(n) + ")(" + std::to_string(sigma) + "+" +
               std::to_string(t) + "i)| = " + std::to_string(mag) + " exceeds 100x envelope " +
               std::to_string(env);
    return std::nullopt;
}

} // namespace zml::zeta

#endif
