#ifndef ZML_MOMENTS_HPP
#define ZML_MOMENTS_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "zml/accumulator.hpp"
#include "zml/rational.hpp"
#include "zml/bigcomplex.hpp"
#include "zml/constants.hpp"
#include "zml/errors.hpp"
#include "zml/fastzeta.hpp"
#include "zml/series.hpp"
#include "zml/vonmangoldt.hpp"
#include "zml/zeros.hpp"
#include "zml/zeta_eval.hpp"

namespace zml::moments {

struct MomentReport {
    unsigned n = 0;
    BigReal T;
    std::size_t zero_count = 0;
    BigComplex empirical;
    BigReal asymptotic;
    BigReal lambda_sum;
    BigReal diff_re;
    BigReal diff_im;
    BigReal rh_envelope;     // T^{1/2} log^{n+5/2} T
    BigReal lambda_envelope; // T^{1/2} log^{n+2} T
    bool t_adjusted = false;
};

namespace detail {

inline std::size_t zeros_up_to(const zeros::ZeroList& zl, const BigReal& T) {
    std::size_t c = 0;
    for (const auto& z : zl.ordinates) {
        if (!(z.gamma <= T)) break;
        ++c;
    }
    return c;
}

} // namespace detail

/// The sums over zeros of zeta^{(j)}(1/2 + i gamma) for every j = 0..n in
/// one pass, ascending gamma, exact accumulation. cfg.precision_bits <= 64
/// selects the double-precision critical-line kernel (per-term error
/// ~1e-9, each term a pure function of the ordinate), anything higher the
/// MPFR evaluator with per-term target tol/zero_count.
inline std::vector<BigComplex> empirical_sums(unsigned n, const BigReal& T, const zeros::ZeroList& zl,
                                              const zeta::EvalConfig& cfg, unsigned threads = 0) {
    if (zl.t_max < T) throw InsufficientZeros("empirical_sum: zero list does not reach T");
    std::size_t count = detail::zeros_up_to(zl, T);
    if (!zeros::count_check_prefix(zl, T.to_double(), count))
        throw InsufficientZeros("empirical_sum: zero list fails the count check on [0, T]");
    const std::size_t J = n + 1;
    std::vector<ExactSum> re(J), im(J);
    if (count > 0) {
        BigReal per_term = cfg.target_abs_error / BigReal(static_cast<long>(count), 64);
        const bool fast = cfg.precision_bits <= 64;
        if (fast && per_term < 1e-9)
            throw PrecisionUnreachable("empirical_sum: per-term budget below the fast path floor");
        unsigned nthreads = threads;
        std::vector<std::vector<ExactSum>> chunk_re, chunk_im;
        unsigned actual = (nthreads == 0) ? std::max(1u, std::thread::hardware_concurrency()) : nthreads;
        actual = static_cast<unsigned>(std::min<std::size_t>(actual, count));
        chunk_re.assign(actual, std::vector<ExactSum>(J));
        chunk_im.assign(actual, std::vector<ExactSum>(J));
        parallel_chunks(count, actual, [&](std::size_t b, std::size_t e, unsigned w) {
            if (fast) {
                std::complex<double> vals[8];
                for (std::size_t i = b; i < e; ++i) {
                    fastzeta::zeta_derivs_fast(zl.ordinates[i].gamma.to_double(), static_cast<int>(n), vals);
                    for (std::size_t j = 0; j < J; ++j) {
                        chunk_re[w][j].add(vals[j].real());
                        chunk_im[w][j].add(vals[j].imag());
                    }
                }
            } else {
                zeta::EvalConfig per(cfg.precision_bits, per_term, static_cast<int>(n));
                for (std::size_t i = b; i < e; ++i) {
                    auto d = zeta::zeta_derivs(
                        BigComplex{BigReal(0.5, cfg.precision_bits), zl.ordinates[i].gamma.at_prec(cfg.precision_bits)},
                        static_cast<int>(n), per);
                    for (std::size_t j = 0; j < J; ++j) {
                        chunk_re[w][j].add(d.values[j].re);
                        chunk_im[w][j].add(d.values[j].im);
                    }
                }
            }
        });
        for (unsigned w = 0; w < actual; ++w)
            for (std::size_t j = 0; j < J; ++j) {
                re[j].merge(chunk_re[w][j]);
                im[j].merge(chunk_im[w][j]);
            }
    }
    std::vector<BigComplex> out;
    out.reserve(J);
    for (std::size_t j = 0; j < J; ++j)
        out.push_back(BigComplex{re[j].value(cfg.precision_bits), im[j].value(cfg.precision_bits)});
    return out;
}

inline BigComplex empirical_sum(unsigned n, const BigReal& T, const zeros::ZeroList& zl,
                                const zeta::EvalConfig& cfg, unsigned threads = 0) {
    return empirical_sums(n, T, zl, cfg, threads).back();
}

/// Theorem main terms at T: the closed form
///   (-1)^{n+1}/(n+1) Y log^{n+1} Y
///   + (-1)^{n+1} sum_k binom(n,k) (-1)^k k! (-1 + sum_{j<=k} (-1)^j C_j) Y log^{n-k} Y
///   + n! A_n Y,            Y = T/2pi, log meaning log(T/2pi),
/// evaluated with `constants`, and independently the ResidueExpansion
/// evaluated at L = log(T/2pi); the two routes must agree.
inline BigReal asymptotic_sum(unsigned n, const BigReal& T, std::size_t digits) {
    if (n > 12) throw RangeExceeded("asymptotic_sum: n above supported range 12");
    mpfr_prec_t W = digits_to_bits(digits + 10);
    if (!(T > 0.0) || !(T.at_prec(W) > two_pi(W)))
        throw Error("asymptotic_sum: T must exceed 2 pi");
    constants::CoefficientSet cs = constants::coefficient_set(n, digits + 6);
    BigReal Y = T.at_prec(W) / two_pi(W);
    BigReal L = log(Y);

    BigReal acc(W);
    {
        BigReal lead = pow_si(L, static_cast<long>(n) + 1) / BigReal(static_cast<long>(n) + 1, W);
        if (n % 2 == 0) lead = -lead;
        acc += lead;
        BigReal kfact(1l, W);
        for (unsigned k = 0; k <= n; ++k) {
            if (k > 0) kfact *= static_cast<long>(k);
            BigReal inner(-1.0, W);
            for (unsigned j = 0; j <= k; ++j)
                inner += (j % 2 == 0) ? cs.C[j].at_prec(W) : -cs.C[j].at_prec(W);
            BigReal binom = Rational::binom(n, k).to_real(W);
            BigReal term = binom * kfact * inner * pow_si(L, static_cast<long>(n - k));
            if ((n + 1 + k) % 2 != 0) term = -term;
            acc += term;
        }
        BigReal nfact(1l, W);
        mpfr_fac_ui(nfact.raw(), n, MPFR_RNDN);
        acc += nfact * cs.A[n].at_prec(W);
        acc *= Y;
    }

    // second route: the exact residue expansion evaluated numerically
    {
        series::ResidueExpansion rx = series::theorem_coeffs(n);
        std::vector<BigReal> cvals;
        for (const auto& c : cs.C) cvals.push_back(c.at_prec(W));
        BigReal other(W);
        for (std::size_t k = 0; k < rx.coeff_of_l_pow.size(); ++k)
            other += rx.coeff_of_l_pow[k].eval(cvals, L, W) * pow_si(L, static_cast<long>(k));
        other *= Y;
        BigReal tol = pow_si(BigReal(10l, W), -static_cast<long>(digits) + 3) * (abs(acc) + BigReal(1l, W));
        if (!(abs(acc - other) <= tol))
            throw Error("asymptotic_sum: closed form and residue expansion disagree");
    }
    return acc.at_prec(digits_to_bits(digits));
}

/// Assemble the full comparison row. Any ordinate within 1e-6 of T moves T
/// to the midpoint of the straddling pair (recorded in t_adjusted).
inline MomentReport compare(unsigned n, const BigReal& T_in, const zeros::ZeroList& zl,
                            const zeta::EvalConfig& cfg, std::size_t digits, unsigned threads = 0) {
    MomentReport rep;
    rep.n = n;
    BigReal T = T_in;
    rep.t_adjusted = false;
    for (std::size_t i = 0; i < zl.ordinates.size(); ++i) {
        if (abs(zl.ordinates[i].gamma - T) < BigReal(1e-6, 64)) {
            BigReal lo = zl.ordinates[i].gamma;
            BigReal hi = (i + 1 < zl.ordinates.size()) ? zl.ordinates[i + 1].gamma
                                                       : lo + BigReal(1l, 64);
            T = (lo + hi) * BigReal(0.5, std::max(lo.prec(), hi.prec()));
            rep.t_adjusted = true;
            break;
        }
    }
    rep.T = T;
    auto sums = empirical_sums(n, T, zl, cfg, threads);
    rep.empirical = sums[n];
    rep.zero_count = detail::zeros_up_to(zl, T);
    rep.asymptotic = asymptotic_sum(n, T, digits);
    mpfr_prec_t W = digits_to_bits(digits + 10);
    rep.lambda_sum = lambda_log_sum(n, T.at_prec(W) / two_pi(W), digits);
    BigReal logT = log(T.at_prec(W));
    BigReal sqrtT = sqrt(T.at_prec(W));
    rep.rh_envelope = sqrtT * pow(logT, BigReal(n + 2.5, W));
    rep.lambda_envelope = sqrtT * pow_si(logT, static_cast<long>(n) + 2);
    rep.diff_re = abs(rep.empirical.re - rep.asymptotic);
    rep.diff_im = abs(rep.empirical.im);
    return rep;
}

inline const char* csv_header() {
    return "T,n,zero_count,re_empirical,im_empirical,asymptotic,lambda_sum,diff_re,diff_im,"
           "rh_envelope,lambda_envelope";
}

/// One CSV row at 20 significant digits, '.' decimal separator, LF ending
/// supplied by the caller.
inline std::string csv_row(const MomentReport& r) {
    std::string s;
    s += r.T.str(20);
    s += "," + std::to_string(r.n);
    s += "," + std::to_string(r.zero_count);
    s += "," + r.empirical.re.str(20);
    s += "," + r.empirical.im.str(20);
    s += "," + r.asymptotic.str(20);
    s += "," + r.lambda_sum.str(20);
    s += "," + r.diff_re.str(20);
    s += "," + r.diff_im.str(20);
    s += "," + r.rh_envelope.str(20);
    s += "," + r.lambda_envelope.str(20);
    return s;
}

/// K comparison rows at T values equally spaced in zero index (grid point
/// i sits halfway between ordinates round(i N/K) and the next), the last
/// row at T itself. One evaluation pass over the zeros serves every row.
inline std::vector<MomentReport> grid_reports(unsigned n, const BigReal& T, const zeros::ZeroList& zl,
                                              const zeta::EvalConfig& cfg, std::size_t digits,
                                              std::size_t K, unsigned threads = 0) {
    std::vector<MomentReport> rows;
    std::size_t count = detail::zeros_up_to(zl, T);
    if (K == 0 || count == 0) return rows;
    if (!zeros::count_check_prefix(zl, T.to_double(), count))
        throw InsufficientZeros("grid_reports: zero list fails the count check on [0, T]");
    (void)threads; // the pass below is a single ordered sweep

    std::vector<std::size_t> boundary(K);  // zero count per row
    std::vector<BigReal> row_T(K, BigReal(64));
    for (std::size_t i = 1; i <= K; ++i) {
        std::size_t idx = std::max<std::size_t>(1, (count * i) / K);
        boundary[i - 1] = idx;
        if (i == K || idx >= count)
            row_T[i - 1] = T;
        else
            row_T[i - 1] = (zl.ordinates[idx - 1].gamma + zl.ordinates[idx].gamma) * BigReal(0.5, 64);
    }

    const bool fast = cfg.precision_bits <= 64;
    ExactSum re, im;
    std::size_t row = 0;
    mpfr_prec_t W = digits_to_bits(digits + 10);
    auto emit = [&](std::size_t zero_cnt) {
        MomentReport rep;
        rep.n = n;
        rep.T = row_T[row];
        rep.zero_count = zero_cnt;
        rep.empirical = BigComplex{re.value(cfg.precision_bits), im.value(cfg.precision_bits)};
        rep.asymptotic = asymptotic_sum(n, rep.T, digits);
        rep.lambda_sum = lambda_log_sum(n, rep.T.at_prec(W) / two_pi(W), digits);
        BigReal logT = log(rep.T.at_prec(W));
        BigReal sqrtT = sqrt(rep.T.at_prec(W));
        rep.rh_envelope = sqrtT * pow(logT, BigReal(n + 2.5, W));
        rep.lambda_envelope = sqrtT * pow_si(logT, static_cast<long>(n) + 2);
        rep.diff_re = abs(rep.empirical.re - rep.asymptotic);
        rep.diff_im = abs(rep.empirical.im);
        rows.push_back(std::move(rep));
        ++row;
    };

    zeta::EvalConfig per(cfg.precision_bits,
                         cfg.target_abs_error / BigReal(static_cast<long>(count), 64),
                         static_cast<int>(n));
    for (std::size_t i = 0; i < count; ++i) {
        if (fast) {
            std::complex<double> vals[8];
            fastzeta::zeta_derivs_fast(zl.ordinates[i].gamma.to_double(), static_cast<int>(n), vals);
            re.add(vals[n].real());
            im.add(vals[n].imag());
        } else {
            auto d = zeta::zeta_derivs(BigComplex{BigReal(0.5, cfg.precision_bits),
                                                  zl.ordinates[i].gamma.at_prec(cfg.precision_bits)},
                                       static_cast<int>(n), per);
            re.add(d.values[n].re);
            im.add(d.values[n].im);
        }
        while (row < K && boundary[row] == i + 1) emit(i + 1);
    }
    while (row < K) emit(count);
    return rows;
}

} // namespace zml::moments

#endif
