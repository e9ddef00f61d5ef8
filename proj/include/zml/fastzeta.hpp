#ifndef ZML_FASTZETA_HPP
#define ZML_FASTZETA_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "zml/bernoulli.hpp"
#include "zml/bigreal.hpp"
#include "zml/errors.hpp"

#if defined(__GNUC__)
#define ZML_RESTRICT __restrict__
#else
#define ZML_RESTRICT
#endif

// Double-precision evaluation of zeta and its first few derivatives on the
// critical line, fast enough to walk through a million zeros on one core.
// Two entry points:
//   * zeta_jets: a pure per-point evaluation whose phases t*log k are formed
//     in double-double and reduced mod 2pi exactly enough for |t| <= 1e6;
//   * ScanEngine: an absolute, segment-anchored grid walker that advances
//     the phasors e^{-it log k} by per-step rotations, used for locating
//     sign changes of Hardy's Z.
// Both share the Euler-Maclaurin correction block. Accuracy is ~1e-9..1e-12
// absolute, which the callers budget for explicitly.
namespace zml::fastzeta {

inline std::size_t em_cutoff(double t) {
    double n = 1.04 * std::fabs(t) / (2.0 * M_PI) + 24.0;
    return static_cast<std::size_t>(n);
}

namespace detail {

struct Tables {
    std::vector<double> log_hi, log_lo, rsqrt;

    void build(std::size_t count) {
        std::size_t from = log_hi.size();
        log_hi.resize(count);
        log_lo.resize(count);
        rsqrt.resize(count);
        BigReal lk(160);
        for (std::size_t k = from; k < count; ++k) {
            if (k < 1) {
                log_hi[k] = log_lo[k] = 0.0;
                rsqrt[k] = 1.0;
                continue;
            }
            mpfr_log_ui(lk.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
            double hi = lk.to_double();
            BigReal rest = lk - BigReal(hi, 160);
            log_hi[k] = hi;
            log_lo[k] = rest.to_double();
            rsqrt[k] = 1.0 / std::sqrt(double(k));
        }
    }
};

inline std::shared_ptr<const Tables> tables(std::size_t count) {
    static std::mutex mu;
    static std::shared_ptr<Tables> cur;
    std::lock_guard<std::mutex> lock(mu);
    if (!cur || cur->log_hi.size() < count) {
        auto next = std::make_shared<Tables>();
        std::size_t n = std::max<std::size_t>(count + count / 8, 1 << 12);
        if (cur) *next = *cur;
        next->build(n);
        cur = next;
    }
    return cur;
}

// sin/cos kernels on |x| <= pi/4 (fdlibm coefficient sets).
inline double ksin(double x) {
    const double S1 = -1.66666666666666324348e-01, S2 = 8.33333333332248946124e-03,
                 S3 = -1.98412698298579493134e-04, S4 = 2.75573137070700676789e-06,
                 S5 = -2.50507602534068634195e-08, S6 = 1.58969099521155010221e-10;
    double z = x * x;
    return x + x * z * (S1 + z * (S2 + z * (S3 + z * (S4 + z * (S5 + z * S6)))));
}

inline double kcos(double x) {
    const double C1 = 4.16666666666666019037e-02, C2 = -1.38888888888741095749e-03,
                 C3 = 2.48015872894767294178e-05, C4 = -2.75573143513906633035e-07,
                 C5 = 2.08757232129817482790e-09, C6 = -1.13596475577881948265e-11;
    double z = x * x;
    return 1.0 - 0.5 * z + z * z * (C1 + z * (C2 + z * (C3 + z * (C4 + z * (C5 + z * C6)))));
}

// Keep only the top `bits` bits of the mantissa.
inline double truncate_mantissa(double x, int bits) {
    int e;
    double m = std::frexp(x, &e);
    m = std::ldexp(std::trunc(std::ldexp(m, bits)), -bits);
    return std::ldexp(m, e);
}

// 2pi and pi/2 split into parts with short mantissas, built once from MPFR
// so the multiples n*P stay exact through n ~ 2^22.
struct ReductionParts {
    double two_pi_1, two_pi_2, two_pi_3, two_pi_4;
    double pio2_1, pio2_2;
    double inv_2pi;

    ReductionParts() {
        BigReal tp = two_pi(300);
        two_pi_1 = truncate_mantissa(tp.to_double(), 31);
        BigReal r = tp - BigReal(two_pi_1, 300);
        two_pi_2 = truncate_mantissa(r.to_double(), 31);
        r = r - BigReal(two_pi_2, 300);
        two_pi_3 = truncate_mantissa(r.to_double(), 31);
        r = r - BigReal(two_pi_3, 300);
        two_pi_4 = r.to_double();
        BigReal p2 = pi(300) * BigReal(0.5, 300);
        pio2_1 = truncate_mantissa(p2.to_double(), 50);
        pio2_2 = (p2 - BigReal(pio2_1, 300)).to_double();
        inv_2pi = (BigReal(1l, 300) / tp).to_double();
    }

    static const ReductionParts& get() {
        static const ReductionParts p;
        return p;
    }
};

// Reduce r (|r| <= ~pi) by quadrants and evaluate both sin and cos.
inline void sincos_reduced(double r, double* s, double* c) {
    const ReductionParts& P = ReductionParts::get();
    double qd = std::nearbyint(r * 0.636619772367581343076); // 2/pi
    int q = static_cast<int>(qd);
    double x = (r - qd * P.pio2_1) - qd * P.pio2_2;
    double ks = ksin(x), kc = kcos(x);
    switch (q & 3) {
        case 0: *s = ks; *c = kc; return;
        case 1: *s = kc; *c = -ks; return;
        case 2: *s = -ks; *c = -kc; return;
        default: *s = -kc; *c = ks; return;
    }
}

// sin/cos of hi+lo for |hi| up to ~1e7: Cody-Waite reduction mod 2pi with
// the leading parts limited to 31 significant bits so n*P is exact.
inline void sincos_dd(double hi, double lo, double* s, double* c) {
    const ReductionParts& P = ReductionParts::get();
    double nd = std::nearbyint(hi * P.inv_2pi);
    double r = hi - nd * P.two_pi_1;
    r -= nd * P.two_pi_2;
    r -= nd * P.two_pi_3;
    r -= nd * P.two_pi_4;
    r += lo;
    sincos_reduced(r, s, c);
}

// Branchless batch form of sincos_dd: one plain loop over arrays so the
// compiler can keep the whole pipeline in vector registers. The quadrant
// permutation is folded in arithmetically via
//   sin r = sin(x) cos(q pi/2) + cos(x) sin(q pi/2)
// whose factors are exact {-1, 0, 1} selects on q mod 4.
inline void sincos_block(const double* hi, const double* lo, double* s_out, double* c_out,
                         std::size_t n) {
    const ReductionParts& P = ReductionParts::get();
    const double inv2pi = P.inv_2pi, p1 = P.two_pi_1, p2 = P.two_pi_2, p3 = P.two_pi_3,
                 p4 = P.two_pi_4, q1 = P.pio2_1, q2 = P.pio2_2;
    const double S1 = -1.66666666666666324348e-01, S2 = 8.33333333332248946124e-03,
                 S3 = -1.98412698298579493134e-04, S4 = 2.75573137070700676789e-06,
                 S5 = -2.50507602534068634195e-08, S6 = 1.58969099521155010221e-10;
    const double C1 = 4.16666666666666019037e-02, C2 = -1.38888888888741095749e-03,
                 C3 = 2.48015872894767294178e-05, C4 = -2.75573143513906633035e-07,
                 C5 = 2.08757232129817482790e-09, C6 = -1.13596475577881948265e-11;
    for (std::size_t k = 0; k < n; ++k) {
        double nd = std::nearbyint(hi[k] * inv2pi);
        double r = hi[k] - nd * p1;
        r -= nd * p2;
        r -= nd * p3;
        r -= nd * p4;
        r += lo[k];
        double qd = std::nearbyint(r * 0.636619772367581343076);
        double x = (r - qd * q1) - qd * q2;
        double z = x * x;
        double ks = x + x * z * (S1 + z * (S2 + z * (S3 + z * (S4 + z * (S5 + z * S6)))));
        double kc = 1.0 - 0.5 * z + z * z * (C1 + z * (C2 + z * (C3 + z * (C4 + z * (C5 + z * C6)))));
        double f = qd * 0.25 - std::floor(qd * 0.25);
        double m = f * 4.0; // q mod 4, exactly one of 0,1,2,3
        double sq = (m == 1.0 ? 1.0 : 0.0) - (m == 3.0 ? 1.0 : 0.0);
        double cq = (m == 0.0 ? 1.0 : 0.0) - (m == 2.0 ? 1.0 : 0.0);
        s_out[k] = ks * cq + kc * sq;
        c_out[k] = kc * cq - ks * sq;
    }
}

using cplx = std::complex<double>;

// Weighted jet accumulation for one block of sin/cos values: adds
// k^{-1/2}(cos - i sin) times (-log k)^j / j! into (sr[j], si[j]).
__attribute__((noinline)) inline void accumulate_jets(const double* ZML_RESTRICT lh,
                                                      const double* ZML_RESTRICT rs,
                                                      const double* ZML_RESTRICT sb,
                                                      const double* ZML_RESTRICT cb, std::size_t len,
                                                      int n, double* ZML_RESTRICT sr,
                                                      double* ZML_RESTRICT si) {
    for (std::size_t i = 0; i < len; ++i) {
        double br = rs[i] * cb[i], bi = -rs[i] * sb[i];
        sr[0] += br;
        si[0] += bi;
        double w = 1.0;
        for (int j = 1; j <= n; ++j) {
            w *= -lh[i] / double(j);
            sr[j] += br * w;
            si[j] += bi * w;
        }
    }
}

// One cache-resident tile of phasors advanced through `count` grid steps,
// adding each step's partial sum into sums_r/sums_i. Kept out of line so
// the hot loop optimises in isolation.
__attribute__((noinline)) inline void sweep_tile(double* ZML_RESTRICT cr, double* ZML_RESTRICT ci,
                                                 const double* ZML_RESTRICT rr,
                                                 const double* ZML_RESTRICT ri, std::size_t len,
                                                 int count, double* ZML_RESTRICT sums_r,
                                                 double* ZML_RESTRICT sums_i) {
    for (int j = 0; j < count; ++j) {
        double ar[4] = {0, 0, 0, 0}, ai[4] = {0, 0, 0, 0};
        std::size_t k = 0;
        for (; k + 3 < len; k += 4) {
            for (int l = 0; l < 4; ++l) {
                std::size_t u = k + static_cast<std::size_t>(l);
                double pr = cr[u], pi_ = ci[u];
                ar[l] += pr;
                ai[l] += pi_;
                cr[u] = pr * rr[u] - pi_ * ri[u];
                ci[u] = pr * ri[u] + pi_ * rr[u];
            }
        }
        for (; k < len; ++k) {
            double pr = cr[k], pi_ = ci[k];
            ar[0] += pr;
            ai[0] += pi_;
            cr[k] = pr * rr[k] - pi_ * ri[k];
            ci[k] = pr * ri[k] + pi_ * rr[k];
        }
        sums_r[j] += (ar[0] + ar[1]) + (ar[2] + ar[3]);
        sums_i[j] += (ai[0] + ai[1]) + (ai[2] + ai[3]);
    }
}

// Euler-Maclaurin endpoint and Bernoulli corrections for s = 1/2 + it as
// jets in eps (Taylor coefficients of the correction block of
// zeta(s+eps)), J coefficients. Shared by the per-point evaluator and the
// scan engine (order 0 there).
template <int JMAX = 8>
inline void correction_jets(double t, std::size_t N, int J, cplx* out, double* tail_est) {
    const double logn = std::log(double(N));
    double sn, cn;
    // N^{-s} = N^{-1/2} e^{-i t log N}; phase via dd for large t
    {
        double p = t * logn;
        double plo = std::fma(t, logn, -p);
        sincos_dd(p, plo, &sn, &cn);
    }
    const double rn = 1.0 / std::sqrt(double(N));
    const cplx n_pow_ms = rn * cplx(cn, -sn);          // N^{-s}
    const cplx n_pow_1ms = double(N) * n_pow_ms;       // N^{1-s}
    const cplx s(0.5, t);
    const cplx q = s - 1.0;

    cplx corr[JMAX + 1] = {};
    // A = N^{1-s} / (s-1+eps)
    cplx iq = 1.0 / q;
    cplx ip = iq;
    for (int i = 0; i <= J; ++i) {
        corr[i] += n_pow_1ms * ip;
        ip = -(ip * iq);
    }
    // B = N^{-s}/2
    corr[0] += 0.5 * n_pow_ms;

    // Bernoulli block via the ratio recurrence
    const auto& ratios = BernoulliTable::ratios_d(640);
    const double inv_n2 = 1.0 / (double(N) * double(N));
    cplx T[JMAX + 1] = {};
    const double b1 = 1.0 / 12.0;
    T[0] = n_pow_ms * (b1 / double(N)) * s;
    if (J >= 1) T[1] = n_pow_ms * (b1 / double(N));
    double tail = 1e300;
    std::size_t m = 1;
    for (; m + 2 < ratios.size() && m < 600; ++m) {
        for (int i = 0; i <= J; ++i) corr[i] += T[i];
        cplx a1 = s + double(2 * m - 1), a2 = s + double(2 * m);
        cplx Tn[JMAX + 1] = {};
        for (int i = 0; i <= J; ++i) {
            Tn[i] += T[i] * (a1 * a2);
            if (i + 1 <= J) Tn[i + 1] += T[i] * (a1 + a2);
            if (i + 2 <= J) Tn[i + 2] += T[i];
        }
        double rm = ratios[m] * inv_n2;
        double mag = 0.0;
        for (int i = 0; i <= J; ++i) {
            Tn[i] *= rm;
            mag += std::abs(Tn[i]);
        }
        for (int i = 0; i <= J; ++i) T[i] = Tn[i];
        tail = mag * (1.0 + (std::hypot(0.5, t) + 2.0 * m) / (0.5 + 2.0 * m));
        if (tail < 1e-17 * (1.0 + std::abs(corr[0]))) break;
    }
    if (tail_est) *tail_est = tail;

    // multiply by the common exp(-eps log N) jet
    double e[JMAX + 1];
    e[0] = 1.0;
    for (int i = 1; i <= J; ++i) e[i] = e[i - 1] * (-logn) / double(i);
    for (int i = J; i >= 0; --i) {
        cplx acc = 0.0;
        for (int p = 0; p <= i; ++p) acc += corr[p] * e[i - p];
        out[i] = acc;
    }
}

} // namespace detail

/// Pure per-point evaluation: Taylor coefficients (in eps) of
/// zeta(1/2 + it + eps), orders 0..n; values[j] * j! = zeta^{(j)}.
/// err_est receives a coarse absolute error estimate.
inline void zeta_jets(double t, int n, std::complex<double>* jets, double* err_est = nullptr) {
    using namespace detail;
    if (n < 0 || n > 6) throw RangeExceeded("fastzeta: jet order must be in 0..6");
    if (std::fabs(t) > 1.1e6) throw RangeExceeded("fastzeta: |t| above documented range");
    const std::size_t N = em_cutoff(t);
    auto tab = tables(N + 1);
    const double* lh = tab->log_hi.data();
    const double* ll = tab->log_lo.data();
    const double* rs = tab->rsqrt.data();

    constexpr std::size_t B = 1024;
    alignas(64) double ph_hi[B], ph_lo[B], sb[B], cb[B];
    double sr[7] = {}, si_[7] = {};
    for (std::size_t base = 1; base < N; base += B) {
        std::size_t len = std::min(B, N - base);
        for (std::size_t i = 0; i < len; ++i) {
            std::size_t k = base + i;
            double p = t * lh[k];
            ph_hi[i] = p;
            ph_lo[i] = std::fma(t, lh[k], -p) + t * ll[k];
        }
        sincos_block(ph_hi, ph_lo, sb, cb, len);
        accumulate_jets(lh + base, rs + base, sb, cb, len, n, sr, si_);
    }
    double tail = 0.0;
    std::complex<double> corr[9];
    correction_jets(t, N, n, corr, &tail);
    for (int j = 0; j <= n; ++j) jets[j] = std::complex<double>(sr[j], si_[j]) + corr[j];
    if (err_est) {
        double mag = 2.0 * std::sqrt(double(N));
        *err_est = tail + double(N) * 1e-16 + mag * 1e-15;
    }
}

/// Derivative values zeta^{(j)}(1/2+it), j = 0..n.
inline void zeta_derivs_fast(double t, int n, std::complex<double>* out, double* err_est = nullptr) {
    std::complex<double> jets[7];
    zeta_jets(t, n, jets, err_est);
    double f = 1.0;
    for (int j = 0; j <= n; ++j) {
        if (j > 0) f *= double(j);
        out[j] = jets[j] * f;
    }
}

/// Riemann-Siegel theta by its standard asymptotic expansion; double
/// precision is ample for rotating Z and for zero counting.
inline double rs_theta(double t) {
    double l = std::log(t / (2.0 * M_PI));
    return 0.5 * t * l - 0.5 * t - M_PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t);
}

inline double rs_theta_deriv(double t) {
    return 0.5 * std::log(t / (2.0 * M_PI)) - 1.0 / (48.0 * t * t);
}

/// Hardy Z(t) and dZ/dt from the fast jets.
inline void hardy_z(double t, double* z, double* dz = nullptr) {
    std::complex<double> jets[3];
    zeta_jets(t, dz ? 1 : 0, jets);
    double th = rs_theta(t);
    std::complex<double> rot(std::cos(th), std::sin(th));
    std::complex<double> zv = rot * jets[0];
    *z = zv.real();
    if (dz) {
        // d/dt [e^{i theta} zeta] = e^{i theta} (i theta' zeta + i zeta')
        std::complex<double> d = rot * (std::complex<double>(0, 1) * (rs_theta_deriv(t) * jets[0] + jets[1]));
        *dz = d.real();
    }
}

/// Absolute segmented grid: segment m spans [m*SEG, (m+1)*SEG) with a step
/// selected from the local mean zero gap; grid points and phasor anchors
/// depend only on the segment index, never on the scan window, so any scan
/// reproduces identical values on the overlap.
struct GridSpec {
    static constexpr double SEG = 32.0;

    static double step_for(double t_end) {
        double l = std::max(0.5, std::log(std::max(t_end, 10.0) / (2.0 * M_PI)));
        double want = std::min(2.0 * M_PI / (3.2 * l), 2.0);
        int count = static_cast<int>(std::ceil(SEG / want));
        return SEG / double(count);
    }
};

struct ScanPoint {
    double t;
    std::complex<double> zeta;
    double z;
};

/// Walk the absolute grid over [t_lo, t_hi], invoking the sink at every
/// grid point in ascending order.
inline void scan_critical_line(double t_lo, double t_hi, const std::function<void(const ScanPoint&)>& sink) {
    using namespace detail;
    if (t_lo < 2.0) t_lo = 2.0;
    if (t_hi <= t_lo) return;
    if (t_hi > 1.1e6) throw RangeExceeded("fastzeta: scan range above 1e6");

    long m_lo = static_cast<long>(std::floor(t_lo / GridSpec::SEG));
    long m_hi = static_cast<long>(std::floor(t_hi / GridSpec::SEG));

    std::vector<double> rot_r, rot_i, cur_r, cur_i;
    for (long m = m_lo; m <= m_hi; ++m) {
        double t0 = double(m) * GridSpec::SEG;
        double t_end = t0 + GridSpec::SEG;
        double h = GridSpec::step_for(t_end);
        int count = static_cast<int>(std::lround(GridSpec::SEG / h));
        std::size_t N = em_cutoff(t_end);
        auto tab = tables(N + 1);
        const double* lh = tab->log_hi.data();
        const double* ll = tab->log_lo.data();
        const double* rs = tab->rsqrt.data();

        rot_r.resize(N);
        rot_i.resize(N);
        cur_r.resize(N);
        cur_i.resize(N);
        {
            constexpr std::size_t B = 1024;
            alignas(64) double ph_hi[B], ph_lo[B];
            for (std::size_t base = 1; base < N; base += B) {
                std::size_t len = std::min(B, N - base);
                for (std::size_t i = 0; i < len; ++i) {
                    std::size_t k = base + i;
                    double ph = std::remainder(h * lh[k], 2.0 * M_PI);
                    ph_hi[i] = ph;
                    ph_lo[i] = 0.0;
                }
                sincos_block(ph_hi, ph_lo, &rot_i[base], &rot_r[base], len);
                for (std::size_t i = 0; i < len; ++i) rot_i[base + i] = -rot_i[base + i];
                // anchor phasors at the segment start
                for (std::size_t i = 0; i < len; ++i) {
                    std::size_t k = base + i;
                    double p = t0 * lh[k];
                    ph_hi[i] = p;
                    ph_lo[i] = std::fma(t0, lh[k], -p) + t0 * ll[k];
                }
                sincos_block(ph_hi, ph_lo, &cur_i[base], &cur_r[base], len);
                for (std::size_t i = 0; i < len; ++i) {
                    std::size_t k = base + i;
                    cur_i[k] = -rs[k] * cur_i[k];
                    cur_r[k] = rs[k] * cur_r[k];
                }
            }
        }

        // k-tiled sweep: each tile of phasors walks through every grid
        // point of the segment while it is cache-resident
        std::vector<double> sums_r(static_cast<std::size_t>(count), 0.0);
        std::vector<double> sums_i(static_cast<std::size_t>(count), 0.0);
        constexpr std::size_t TILE = 8192;
        for (std::size_t base = 1; base < N; base += TILE) {
            std::size_t len = std::min(TILE, N - base);
            detail::sweep_tile(cur_r.data() + base, cur_i.data() + base, rot_r.data() + base,
                               rot_i.data() + base, len, count, sums_r.data(), sums_i.data());
        }

        for (int j = 0; j < count; ++j) {
            double tj = t0 + double(j) * h;
            if (tj < t_lo || tj > t_hi) continue;
            std::complex<double> corr[2];
            correction_jets(tj, N, 0, corr, nullptr);
            std::complex<double> zeta(sums_r[static_cast<std::size_t>(j)] + corr[0].real(),
                                      sums_i[static_cast<std::size_t>(j)] + corr[0].imag());
            double th = rs_theta(tj);
            double z = std::cos(th) * zeta.real() - std::sin(th) * zeta.imag();
            sink(ScanPoint{tj, zeta, z});
        }
    }
}

} // namespace zml::fastzeta

#endif
