#ifndef ZML_BIGCOMPLEX_HPP
#define ZML_BIGCOMPLEX_HPP

#include <algorithm>
#include <utility>

#include "zml/bigreal.hpp"

namespace zml {

/// Arbitrary-precision complex scalar built from two BigReals.
struct BigComplex {
    BigReal re, im;

    explicit BigComplex(mpfr_prec_t bits = 64) : re(bits), im(bits) {}
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(double r, double i, mpfr_prec_t bits) : re(r, bits), im(i, bits) {}

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }

    BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
    BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }

    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator*(const BigComplex& a, const BigReal& x) { return {a.re * x, a.im * x}; }
    friend BigComplex operator*(const BigReal& x, const BigComplex& a) { return a * x; }

    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigReal d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend BigComplex operator/(const BigComplex& a, const BigReal& x) { return {a.re / x, a.im / x}; }

    friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re == b.re && a.im == b.im; }
};

inline BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

inline BigReal abs(const BigComplex& z) { return hypot(z.re, z.im); }

inline BigComplex exp(const BigComplex& z) {
    BigReal m = exp(z.re);
    BigReal s(z.prec()), c(z.prec());
    sin_cos(s, c, z.im);
    return {m * c, m * s};
}

inline BigComplex log(const BigComplex& z) { return {log(abs(z)), atan2(z.im, z.re)}; }

/// x^z for real positive x.
inline BigComplex pow_complex(const BigReal& x, const BigComplex& z) {
    BigReal lx = log(x);
    return exp(BigComplex{z.re * lx, z.im * lx});
}

inline BigComplex sin(const BigComplex& z) {
    mpfr_prec_t p = z.prec();
    BigReal s(p), c(p), sh(p), ch(p);
    sin_cos(s, c, z.re);
    sinh_cosh(sh, ch, z.im);
    return {s * ch, c * sh};
}

inline BigComplex inv(const BigComplex& z) {
    BigReal d = z.re * z.re + z.im * z.im;
    return {z.re / d, -z.im / d};
}

} // namespace zml

#endif
