#ifndef ZML_ZEROS_HPP
#define ZML_ZEROS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zml/bigreal.hpp"
#include "zml/errors.hpp"
#include "zml/fastzeta.hpp"
#include "zml/zeta_eval.hpp"

namespace zml::zeros {

struct ZeroOrdinate {
    std::size_t index = 0; // 1-based
    BigReal gamma;
};

enum class Source { file, computed };

struct ZeroList {
    Source source = Source::computed;
    std::vector<ZeroOrdinate> ordinates;
    BigReal t_max;
    BigReal precision; // absolute ordinate error

    std::size_t count() const { return ordinates.size(); }
};

struct FindConfig {
    double ordinate_precision = 1e-12;
    // RH is assumed: every zero is taken at beta = 1/2. The count check
    // guards against missed ordinates, not off-line ones.
};

/// Riemann-von Mangoldt main term N(t) ~ (t/2pi) log(t/2pi e) + 7/8.
inline double rvm_count(double t) {
    if (t < 1.0) return 0.0;
    double y = t / (2.0 * M_PI);
    return y * std::log(y / M_E) + 0.875;
}

/// True iff the first `count` ordinates track the Riemann-von Mangoldt
/// count within 0.8 log(t_max) at t_max and at ten interior checkpoints.
inline bool count_check_prefix(const ZeroList& zl, double tmax, std::size_t count) {
    double band = 0.8 * std::log(std::max(tmax, M_E));
    std::size_t cursor = 0;
    for (int i = 1; i <= 11; ++i) {
        double t = tmax * double(i) / 11.0;
        if (i == 11) t = tmax;
        while (cursor < count && zl.ordinates[cursor].gamma.to_double() <= t) ++cursor;
        if (std::fabs(double(cursor) - rvm_count(t)) > band) return false;
    }
    return true;
}

inline bool count_check(const ZeroList& zl) {
    return count_check_prefix(zl, zl.t_max.to_double(), zl.ordinates.size());
}

namespace detail {

// ---- reference ordinate file parsing ----------------------------------

inline bool parse_ordinate_line(const std::string& line, std::string* literal, int* frac_digits) {
    std::size_t i = 0;
    if (i < line.size() && line[i] == '+') ++i;
    std::size_t digits_start = i;
    while (i < line.size() && line[i] >= '0' && line[i] <= '9') ++i;
    if (i == digits_start) return false;
    *frac_digits = 0;
    if (i < line.size() && line[i] == '.') {
        ++i;
        std::size_t frac_start = i;
        while (i < line.size() && line[i] >= '0' && line[i] <= '9') ++i;
        *frac_digits = static_cast<int>(i - frac_start);
    }
    if (i != line.size()) return false;
    *literal = line;
    return true;
}

// ---- band-limited refinement from scan stencils ------------------------

struct Stencil {
    std::array<double, 8> t{};
    std::array<std::complex<double>, 8> zeta{};
    double cell_lo = 0, cell_hi = 0; // bracketing grid cell
};

// Newton-form interpolant of the demodulated stencil values.
struct CellModel {
    double t_center, omega;
    std::array<double, 8> nodes{};
    std::array<std::complex<double>, 8> coef{};

    explicit CellModel(const Stencil& st) {
        double tc = 0.5 * (st.t[3] + st.t[4]);
        t_center = tc;
        std::size_t N = fastzeta::em_cutoff(tc);
        omega = 0.5 * std::log(double(N));
        std::array<std::complex<double>, 8> g;
        for (int i = 0; i < 8; ++i) {
            nodes[i] = st.t[i] - tc;
            double s, c;
            double p = st.t[i] * omega;
            fastzeta::detail::sincos_dd(p, std::fma(st.t[i], omega, -p), &s, &c);
            g[i] = st.zeta[i] * std::complex<double>(c, s); // e^{+i t omega}
        }
        coef = g;
        for (int k = 1; k < 8; ++k)
            for (int i = 7; i >= k; --i)
                coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - k]);
    }

    std::complex<double> zeta_at(double t) const {
        double d = t - t_center;
        std::complex<double> p = coef[7];
        for (int i = 6; i >= 0; --i) p = p * (d - nodes[i]) + coef[i];
        double s, c;
        double ph = t * omega;
        fastzeta::detail::sincos_dd(ph, std::fma(t, omega, -ph), &s, &c);
        return p * std::complex<double>(c, -s); // undo the demodulation
    }

    double z_at(double t) const {
        double th = fastzeta::rs_theta(t);
        std::complex<double> z = zeta_at(t);
        return std::cos(th) * z.real() - std::sin(th) * z.imag();
    }
};

// direct double-precision Newton polish, falling back to bisection steps
// whenever Newton leaves the bracket
inline double polish_dd(double gamma, double lo, double hi, double tol) {
    double zlo, zhi;
    fastzeta::hardy_z(lo, &zlo);
    fastzeta::hardy_z(hi, &zhi);
    for (int iter = 0; iter < 40; ++iter) {
        double z, dz;
        fastzeta::hardy_z(gamma, &z, &dz);
        if (zlo * z < 0) {
            hi = gamma;
            zhi = z;
        } else {
            lo = gamma;
            zlo = z;
        }
        double step = (dz != 0.0) ? -z / dz : 0.0;
        double next = gamma + step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        double moved = std::fabs(next - gamma);
        gamma = next;
        if (moved <= std::max(tol, 1e-13) && iter >= 1) break;
    }
    return gamma;
}

// one-or-two MPFR Newton steps for precisions below the double floor
inline BigReal polish_mpfr(double gamma0, double precision) {
    mpfr_prec_t W = 160;
    BigReal gamma(gamma0, W);
    zml::zeta::EvalConfig cfg(W, BigReal(std::max(precision * 1e-3, 1e-36), W), 1);
    for (int iter = 0; iter < 3; ++iter) {
        auto d = zml::zeta::zeta_derivs(BigComplex{BigReal(0.5, W), gamma}, 1, cfg);
        double th = fastzeta::rs_theta(gamma.to_double());
        double thp = fastzeta::rs_theta_deriv(gamma.to_double());
        BigReal ct(std::cos(th), W), st(std::sin(th), W);
        // Z = Re(e^{i theta} zeta), dZ/dt = Re(i e^{i theta} (theta' zeta + zeta'))
        BigReal z = ct * d.values[0].re - st * d.values[0].im;
        BigComplex inner = BigComplex{d.values[0].re * BigReal(thp, W), d.values[0].im * BigReal(thp, W)};
        inner.re += d.values[1].re;
        inner.im += d.values[1].im;
        BigReal dz = -(ct * inner.im + st * inner.re);
        if (dz.is_zero()) break;
        BigReal step = z / dz;
        gamma -= step;
        if (abs(step) < precision * 0.25) break;
    }
    return gamma;
}

inline double model_error_scale(double t_cell, double h) {
    double x = 0.5 * h * std::log(double(fastzeta::em_cutoff(t_cell)));
    // 8-point stencil: residual ~ x^8/8! against the local oscillation
    return std::pow(x, 8) / 40320.0 * 6.0;
}

} // namespace detail

/// Locate every zero ordinate in (0, t_max] from sign changes of Hardy's Z
/// on the absolute scan grid, refine each bracket through the interpolant
/// of the scanned zeta values, and polish further (double Newton, then
/// MPFR Newton) when the requested precision demands it.
inline ZeroList find_zeros(double t_max, const FindConfig& cfg = {}) {
    if (t_max > 1.0e6) throw RangeExceeded("find_zeros: t_max above supported range 1e6");
    if (cfg.ordinate_precision < 1e-15 || cfg.ordinate_precision > 0.01)
        throw Error("find_zeros: ordinate precision must lie in [1e-15, 1e-2]");

    ZeroList out;
    out.source = Source::computed;
    out.t_max = BigReal(t_max, 64);
    out.precision = BigReal(cfg.ordinate_precision, 64);
    if (t_max < 14.0) return out;

    struct Pending {
        detail::Stencil st;
        int fill = 0;
    };

    std::deque<fastzeta::ScanPoint> ring;
    std::vector<Pending> open;
    std::vector<double> raw; // refined ordinates, double stage

    auto finalize = [&](const Pending& p) {
        if (p.fill < 8) {
            raw.push_back(detail::polish_dd(0.5 * (p.st.cell_lo + p.st.cell_hi), p.st.cell_lo,
                                            p.st.cell_hi, cfg.ordinate_precision * 0.25));
            return;
        }
        detail::CellModel model(p.st);
        double lo = p.st.cell_lo, hi = p.st.cell_hi;
        double zlo = model.z_at(lo), zhi = model.z_at(hi);
        double gamma;
        if (zlo * zhi > 0) {
            gamma = detail::polish_dd(0.5 * (lo + hi), lo, hi, cfg.ordinate_precision * 0.25);
        } else {
            for (int iter = 0; iter < 64; ++iter) {
                double mid = 0.5 * (lo + hi);
                double zm = model.z_at(mid);
                if (zlo * zm <= 0) {
                    hi = mid;
                    zhi = zm;
                } else {
                    lo = mid;
                    zlo = zm;
                }
                if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
            }
            gamma = 0.5 * (lo + hi);
            double model_err = detail::model_error_scale(gamma, p.st.t[4] - p.st.t[3]);
            if (model_err > 0.25 * cfg.ordinate_precision || cfg.ordinate_precision < 3e-9)
                gamma = detail::polish_dd(gamma, p.st.cell_lo, p.st.cell_hi, cfg.ordinate_precision * 0.25);
        }
        raw.push_back(gamma);
    };

    double pad = 8.0;
    fastzeta::scan_critical_line(2.0, t_max + pad, [&](const fastzeta::ScanPoint& pt) {
        ring.push_back(pt);
        if (ring.size() > 9) ring.pop_front();
        for (auto& p : open) {
            if (p.fill < 8) p.st.zeta[static_cast<std::size_t>(p.fill)] = pt.zeta,
                            p.st.t[static_cast<std::size_t>(p.fill)] = pt.t, ++p.fill;
        }
        while (!open.empty() && open.front().fill == 8) {
            finalize(open.front());
            open.erase(open.begin());
        }
        if (ring.size() >= 2) {
            const auto& a = ring[ring.size() - 2];
            const auto& b = ring[ring.size() - 1];
            if ((a.z <= 0 && b.z > 0) || (a.z >= 0 && b.z < 0)) {
                Pending p;
                p.st.cell_lo = a.t;
                p.st.cell_hi = b.t;
                // seed the stencil with up to 5 points of history (a and b included)
                std::size_t have = ring.size();
                std::size_t take = std::min<std::size_t>(have, 5);
                for (std::size_t i = 0; i < take; ++i) {
                    const auto& q = ring[have - take + i];
                    p.st.t[i] = q.t;
                    p.st.zeta[i] = q.zeta;
                }
                p.fill = static_cast<int>(take);
                open.push_back(p);
            }
        }
    });
    for (auto& p : open) finalize(p); // truncated stencils at the very top

    // count-gap safety net: rescan any interval whose theta increment says
    // zeros are missing (missed close pairs leave ~3pi)
    std::vector<double> extra;
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        double dth = fastzeta::rs_theta(raw[i + 1]) - fastzeta::rs_theta(raw[i]);
        if (dth < 1.6 * M_PI) continue;
        int probes = 48;
        double a = raw[i] + 1e-7, b = raw[i + 1] - 1e-7;
        double prev_t = a, prev_z;
        fastzeta::hardy_z(a, &prev_z);
        for (int j = 1; j <= probes; ++j) {
            double t = a + (b - a) * double(j) / double(probes);
            double z;
            fastzeta::hardy_z(t, &z);
            if (prev_z * z < 0)
                extra.push_back(detail::polish_dd(0.5 * (prev_t + t), prev_t, t,
                                                  cfg.ordinate_precision * 0.25));
            prev_t = t;
            prev_z = z;
        }
    }
    raw.insert(raw.end(), extra.begin(), extra.end());
    std::sort(raw.begin(), raw.end());

    const bool want_mpfr = cfg.ordinate_precision < 1e-10;
    std::size_t idx = 0;
    for (double g : raw) {
        if (g > t_max) continue;
        BigReal gamma = want_mpfr ? detail::polish_mpfr(g, cfg.ordinate_precision) : BigReal(g, 64);
        if (!out.ordinates.empty()) {
            BigReal gap = gamma - out.ordinates.back().gamma;
            if (gap <= out.precision * BigReal(2l, 64)) continue; // duplicates within resolution
            if (gap.sign() < 0) throw NonMonotonic("find_zeros: refinement produced out-of-order ordinates");
        }
        out.ordinates.push_back(ZeroOrdinate{++idx, std::move(gamma)});
    }

    if (!count_check(out))
        throw MissedZero("find_zeros: count check failed; grid refinement insufficient");
    return out;
}

/// Parse a reference ordinate file: one ordinate per line (optional '+',
/// digits, optional fraction), '#' comments, LF or CRLF, strictly
/// ascending. Keeps ordinates <= t_max.
inline ZeroList load_zeros(const std::string& path, double t_max) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("load_zeros: cannot open " + path);
    ZeroList out;
    out.source = Source::file;
    out.t_max = BigReal(t_max, 64);
    double coarse = 0.5; // refined per line below
    bool seen = false;
    std::string line;
    std::size_t lineno = 0;
    BigReal prev(-1.0, 64);
    std::size_t idx = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] == '#') continue;
        std::string lit;
        int frac = 0;
        if (!detail::parse_ordinate_line(line, &lit, &frac))
            throw ParseError("load_zeros: not an ordinate literal", lineno);
        mpfr_prec_t bits = digits_to_bits(lit.size());
        BigReal g = BigReal::from_string(lit, bits);
        if (!(g > prev)) throw NonMonotonic("load_zeros: ordinates must be strictly ascending (line " +
                                            std::to_string(lineno) + ")");
        prev = g;
        double line_prec = 0.5 * std::pow(10.0, -frac);
        coarse = seen ? std::max(coarse, line_prec) : line_prec;
        seen = true;
        if (g <= t_max) out.ordinates.push_back(ZeroOrdinate{++idx, std::move(g)});
    }
    out.precision = BigReal(coarse, 64);
    return out;
}

inline void save_zeros(const ZeroList& zl, const std::string& path) {
    std::ofstream outf(path, std::ios::binary);
    if (!outf) throw Error("save_zeros: cannot open " + path + " for writing");
    int frac = std::max(1, static_cast<int>(std::ceil(-std::log10(zl.precision.to_double()))) + 2);
    for (const auto& z : zl.ordinates) {
        char buf[128];
        mpfr_snprintf(buf, sizeof buf, "%.*Rf", frac, z.gamma.raw());
        outf << buf << "\n";
    }
}

/// Residual check: |zeta(1/2 + i gamma)| within 1e3 x (evaluator bound +
/// |zeta'| times the ordinate precision).
inline bool residual_ok(const BigReal& gamma, const BigReal& precision) {
    mpfr_prec_t W = 128;
    zml::zeta::EvalConfig cfg(W, BigReal(1e-18, W), 1);
    auto d = zml::zeta::zeta_derivs(BigComplex{BigReal(0.5, W), gamma.at_prec(W)}, 1, cfg);
    BigReal lim = (d.error_bound + abs(d.values[1]) * precision.at_prec(W)) * BigReal(1000l, W);
    return abs(d.values[0]) <= lim;
}

} // namespace zml::zeros

#endif
