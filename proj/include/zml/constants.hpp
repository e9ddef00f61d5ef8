#ifndef ZML_CONSTANTS_HPP
#define ZML_CONSTANTS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "zml/bernoulli.hpp"
#include "zml/bigreal.hpp"
#include "zml/errors.hpp"
#include "zml/zeta_eval.hpp"

namespace zml::constants {

constexpr unsigned kMaxIndex = 32;
constexpr std::size_t kMaxDigits = 1000;

struct StieltjesTable {
    unsigned max_index = 0;
    mpfr_prec_t precision_bits = 0;
    std::vector<BigReal> values; // gamma_0 .. gamma_J
};

struct CoefficientSet {
    std::vector<BigReal> C, A;
    mpfr_prec_t precision_bits = 0;
};

namespace detail {

/// gamma_j by the limit definition with Euler-Maclaurin tail correction:
///   gamma_j = sum_{k<N} log^j k / k - log^{j+1} N/(j+1) + log^j N/(2N)
///            - sum_m B_{2m}/(2m)! f^{(2m-1)}(N) + R,
/// where f(x) = log^j x / x. Derivatives of f are maintained as exact
/// coefficient vectors over log-powers; the remainder is bounded through
/// the periodised-Bernoulli majorant.
inline BigReal stieltjes_em(unsigned j, std::size_t digits) {
    double jlog_guard = j * std::log10(std::log(40.0 + 0.39 * digits) + 2.0) + j;
    mpfr_prec_t W = digits_to_bits(digits + 16 + static_cast<std::size_t>(std::ceil(jlog_guard)));
    BigReal target(1l, W);
    mpfr_ui_pow_ui(target.raw(), 10, static_cast<unsigned long>(digits + 4), MPFR_RNDN);
    target = BigReal(1l, W) / target;

    std::size_t N = std::max<std::size_t>(40, static_cast<std::size_t>(std::ceil(0.39 * digits)) + 8 * j + 16);
    for (int attempt = 0; attempt < 10; ++attempt) {
        BigReal sum(W);
        BigReal lk(W), pw(W);
        for (std::size_t k = 1; k < N; ++k) {
            mpfr_log_ui(lk.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
            mpfr_set_si(pw.raw(), 1, MPFR_RNDN);
            for (unsigned l = 0; l < j; ++l) mpfr_mul(pw.raw(), pw.raw(), lk.raw(), MPFR_RNDN);
            mpfr_div_ui(pw.raw(), pw.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
            sum += pw;
        }
        BigReal logn(W);
        mpfr_log_ui(logn.raw(), static_cast<unsigned long>(N), MPFR_RNDN);
        sum -= pow_si(logn, static_cast<long>(j) + 1) / BigReal(static_cast<long>(j) + 1, W);
        sum += pow_si(logn, static_cast<long>(j)) / BigReal(2 * static_cast<long>(N), W);

        // c[l]: coefficients of x^{-(i+1)} log^l x in f^{(i)}
        std::vector<BigReal> c(j + 1, BigReal(W));
        c[j] = BigReal(1l, W);
        auto bern = BernoulliTable::scaled(1100, W);
        BigReal invn = BigReal(1l, W) / BigReal(static_cast<long>(N), W);
        std::vector<BigReal> logn_pow(j + 1, BigReal(1l, W));
        for (unsigned l = 1; l <= j; ++l) logn_pow[l] = logn_pow[l - 1] * logn;

        auto advance = [&](unsigned i) {
            // c^{(i+1)}_l = -(i+1) c_l + (l+1) c_{l+1}
            std::vector<BigReal> nx(j + 1, BigReal(W));
            for (unsigned l = 0; l <= j; ++l) {
                nx[l] = c[l] * BigReal(-(static_cast<long>(i) + 1), W);
                if (l + 1 <= j) nx[l] += c[l + 1] * BigReal(static_cast<long>(l) + 1, W);
            }
            c = std::move(nx);
        };

        auto eval_at_n = [&](unsigned i) {
            BigReal acc(W);
            for (unsigned l = 0; l <= j; ++l) acc += c[l] * logn_pow[l];
            return acc * pow_si(invn, static_cast<long>(i) + 1);
        };

        bool ok = false;
        BigReal prev_mag(W);
        int stall = 0;
        unsigned i = 0; // current derivative order held in c
        for (std::size_t m = 1; m <= 520; ++m) {
            while (i < 2 * m - 1) {
                advance(i);
                ++i;
            }
            BigReal term = (*bern)[m] * eval_at_n(i);
            sum -= term;

            // remainder majorant: 4/(2pi)^{2m+1} * int_N^inf |f^{(2m+1)}|
            std::vector<BigReal> save = c;
            advance(i);
            advance(i + 1);
            BigReal a(2 * static_cast<long>(m) + 1, W); // exponent in x^{-(a+1)} pieces
            BigReal integral(W);
            for (unsigned l = 0; l <= j; ++l) {
                // int_N^inf log^l x x^{-a-1} dx = N^{-a} sum_p (l!/p!) log^p N / a^{l-p+1}
                BigReal inner(W);
                BigReal coef(1l, W);
                for (long p = static_cast<long>(l); p >= 0; --p) {
                    inner += coef * logn_pow[static_cast<unsigned>(p)] /
                             pow_si(a, static_cast<long>(l) - p + 1);
                    coef *= (p > 0) ? BigReal(p, W) : BigReal(1l, W);
                }
                integral += abs(c[l]) * inner;
            }
            integral *= pow_si(invn, 2 * static_cast<long>(m) + 1);
            BigReal two_pi_w = two_pi(W);
            BigReal majo = integral * BigReal(4l, W) / pow_si(two_pi_w, 2 * static_cast<long>(m) + 1);
            c = std::move(save);

            if (majo < target) {
                ok = true;
                break;
            }
            BigReal mag = abs(term);
            if (m > 3 && mag > prev_mag * BigReal(0.9, W)) ++stall; else stall = 0;
            prev_mag = mag;
            if (stall >= 3) break;
        }
        if (ok) return sum;
        N = N + N / 2 + 32;
    }
    throw PrecisionUnreachable("stieltjes: Euler-Maclaurin limit method failed to converge");
}

/// All gamma_0..gamma_J at once from the Cauchy integral of
/// zeta(s) - 1/(s-1) on the circle |s-1| = 1 (trapezoid rule), the
/// second, independent route.
inline std::vector<BigReal> stieltjes_contour(unsigned J, std::size_t digits) {
    double extra = 1.6 * J + 12.0;
    std::size_t K = static_cast<std::size_t>(std::ceil(2.05 * (digits + extra))) + 16;
    K += K % 2; // conjugate-symmetric node set
    mpfr_prec_t W = digits_to_bits(digits + static_cast<std::size_t>(extra) + 10);

    BigReal node_target(1l, W);
    mpfr_ui_pow_ui(node_target.raw(), 10,
                   static_cast<unsigned long>(digits + static_cast<std::size_t>(extra)), MPFR_RNDN);
    node_target = BigReal(1l, W) / node_target;
    zeta::EvalConfig cfg(W, node_target, 0);

    BigReal two_pi_w = two_pi(W);
    std::vector<BigComplex> acc(J + 1, BigComplex(W));
    for (std::size_t q = 0; q < K; ++q) {
        BigReal theta = two_pi_w * (BigReal(2 * static_cast<long>(q) + 1, W) /
                                    BigReal(2 * static_cast<long>(K), W));
        BigReal st(W), ct(W);
        sin_cos(st, ct, theta);
        BigComplex e{ct, st};
        BigComplex s{BigReal(1l, W) + ct, st};
        BigComplex g = zeta::zeta_derivs(s, 0, cfg).values[0] - inv(e); // zeta(s) - 1/(s-1)
        BigComplex rot = conj(e);
        BigComplex w{BigReal(1l, W), BigReal(0l, W)};
        for (unsigned j2 = 0; j2 <= J; ++j2) {
            acc[j2] += g * w;
            w = w * rot;
        }
    }
    std::vector<BigReal> out;
    out.reserve(J + 1);
    BigReal jf(1l, W);
    for (unsigned j2 = 0; j2 <= J; ++j2) {
        if (j2 > 0) jf *= static_cast<long>(j2);
        BigComplex cj = acc[j2] / BigReal(static_cast<long>(K), W);
        // gamma_j = (-1)^j j! C_j
        BigReal g = cj.re * jf;
        if (j2 % 2 != 0) g = -g;
        out.push_back(std::move(g));
    }
    return out;
}

struct Cache {
    std::mutex mu;
    // digits -> table extended on demand
    std::map<std::size_t, std::shared_ptr<const StieltjesTable>> tables;
};

inline Cache& cache() {
    static Cache c;
    return c;
}

} // namespace detail

/// Table of gamma_0..gamma_J, each certified by agreement of the two
/// internal methods to 10^-digits. Memoised per (J, digits).
inline std::shared_ptr<const StieltjesTable> stieltjes_table(unsigned J, std::size_t digits) {
    if (J > kMaxIndex) throw UnsupportedIndex("stieltjes: index above supported cap 32");
    if (digits < 10 || digits > kMaxDigits) throw Error("stieltjes: digits must lie in [10, 1000]");
    auto& c = detail::cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.tables.find(digits);
    if (it != c.tables.end() && it->second->max_index >= J) return it->second;

    auto table = std::make_shared<StieltjesTable>();
    table->max_index = J;
    table->precision_bits = digits_to_bits(digits);
    std::vector<BigReal> contour = detail::stieltjes_contour(J, digits);
    BigReal tol(1l, 64);
    mpfr_ui_pow_ui(tol.raw(), 10, static_cast<unsigned long>(digits), MPFR_RNDN);
    tol = BigReal(1l, 64) / tol;
    for (unsigned j = 0; j <= J; ++j) {
        BigReal em = detail::stieltjes_em(j, digits);
        if (!(abs(em - contour[j]) <= tol))
            throw PrecisionUnreachable("stieltjes: limit and contour methods disagree at j=" +
                                       std::to_string(j));
        if (!em.is_finite()) throw PrecisionUnreachable("stieltjes: non-finite value");
        table->values.push_back(em.at_prec(table->precision_bits + 8));
    }
    c.tables[digits] = table;
    return table;
}

inline BigReal stieltjes(unsigned j, std::size_t digits) {
    return stieltjes_table(j, digits)->values[j];
}

/// C_j = (-1)^j gamma_j / j!
inline BigReal c_coeff(unsigned j, std::size_t digits) {
    BigReal g = stieltjes(j, digits);
    mpfr_prec_t W = g.prec() + 64;
    BigReal r = g.at_prec(W) / factorial(j, W);
    return (j % 2 == 0) ? r : -r;
}

/// C and A together at the working precision of the recursion.
inline CoefficientSet coefficient_set(unsigned n_max, std::size_t digits) {
    if (n_max > kMaxIndex) throw UnsupportedIndex("a_coeff: index above supported cap 32");
    std::size_t wd = digits + 10 + static_cast<std::size_t>(std::ceil(std::log2(n_max + 2.0)));
    mpfr_prec_t W = digits_to_bits(wd);
    CoefficientSet out;
    out.precision_bits = W;
    for (unsigned j = 0; j <= n_max; ++j) out.C.push_back(c_coeff(j, wd).at_prec(W));
    out.A.push_back(out.C[0]);
    for (unsigned n = 1; n <= n_max; ++n) {
        BigReal a = out.C[n] * BigReal(static_cast<long>(n) + 1, W);
        for (unsigned j = 0; j < n; ++j) a -= out.A[j] * out.C[n - 1 - j];
        out.A.push_back(std::move(a));
    }
    return out;
}

inline BigReal a_coeff(unsigned n, std::size_t digits) {
    return coefficient_set(n, digits).A[n];
}

} // namespace zml::constants

#endif
