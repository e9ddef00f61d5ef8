#ifndef ZML_BIGREAL_HPP
#define ZML_BIGREAL_HPP

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "zml/errors.hpp"

namespace zml {

/// Arbitrary-precision real scalar.  A thin RAII wrapper over an mpfr_t
/// with the precision (in bits) explicit at construction and preserved
/// through copies.  Binary operators allocate the result at the larger
/// of the operand precisions; rounding is always to nearest.
class BigReal {
public:
    explicit BigReal(mpfr_prec_t bits = 64) { mpfr_init2(v_, clamp(bits)); mpfr_set_zero(v_, 1); }

    BigReal(double x, mpfr_prec_t bits) { mpfr_init2(v_, clamp(bits)); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigReal(long x, mpfr_prec_t bits) { mpfr_init2(v_, clamp(bits)); mpfr_set_si(v_, x, MPFR_RNDN); }
    BigReal(unsigned long x, mpfr_prec_t bits) { mpfr_init2(v_, clamp(bits)); mpfr_set_ui(v_, x, MPFR_RNDN); }

    BigReal(const BigReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    static BigReal from_string(const std::string& s, mpfr_prec_t bits) {
        BigReal r(bits);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw Error("invalid decimal literal: " + s);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Round (exactly widening, if larger) to a new precision.
    BigReal at_prec(mpfr_prec_t bits) const {
        BigReal r(bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigReal& operator+=(const BigReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigReal& operator-=(const BigReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigReal& operator*=(const BigReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigReal& operator/=(const BigReal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigReal& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
    BigReal& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }

    friend BigReal operator+(const BigReal& a, const BigReal& b) { return bin(mpfr_add, a, b); }
    friend BigReal operator-(const BigReal& a, const BigReal& b) { return bin(mpfr_sub, a, b); }
    friend BigReal operator*(const BigReal& a, const BigReal& b) { return bin(mpfr_mul, a, b); }
    friend BigReal operator/(const BigReal& a, const BigReal& b) { return bin(mpfr_div, a, b); }
    friend BigReal operator-(const BigReal& a) {
        BigReal r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend bool operator<(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
    friend bool operator<=(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
    friend bool operator>=(const BigReal& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }

    /// Decimal string with `digits` significant digits. Plain notation for
    /// moderate exponents, scientific otherwise; locale independent.
    std::string str(std::size_t digits) const;

private:
    static mpfr_prec_t clamp(mpfr_prec_t bits) { return std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN); }

    template <typename F>
    static BigReal bin(F f, const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.prec(), b.prec()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

inline mpfr_prec_t digits_to_bits(std::size_t digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626) + 16);
}

#define ZML_UNARY(name, fn)                          \
    inline BigReal name(const BigReal& a) {          \
        BigReal r(a.prec());                         \
        fn(r.raw(), a.raw(), MPFR_RNDN);             \
        return r;                                    \
    }

ZML_UNARY(abs, mpfr_abs)
ZML_UNARY(sqrt, mpfr_sqrt)
ZML_UNARY(exp, mpfr_exp)
ZML_UNARY(log, mpfr_log)
ZML_UNARY(sin, mpfr_sin)
ZML_UNARY(cos, mpfr_cos)

#undef ZML_UNARY

inline BigReal floor(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_rint(r.raw(), a.raw(), MPFR_RNDD);
    return r;
}

inline void sin_cos(BigReal& s, BigReal& c, const BigReal& x) {
    mpfr_sin_cos(s.raw(), c.raw(), x.raw(), MPFR_RNDN);
}

inline void sinh_cosh(BigReal& sh, BigReal& ch, const BigReal& x) {
    mpfr_sinh_cosh(sh.raw(), ch.raw(), x.raw(), MPFR_RNDN);
}

inline BigReal atan2(const BigReal& y, const BigReal& x) {
    BigReal r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

inline BigReal hypot(const BigReal& x, const BigReal& y) {
    BigReal r(std::max(y.prec(), x.prec()));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

inline BigReal pow_si(const BigReal& x, long n) {
    BigReal r(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}

inline BigReal pow(const BigReal& x, const BigReal& y) {
    BigReal r(std::max(x.prec(), y.prec()));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

inline BigReal pi(mpfr_prec_t bits) {
    BigReal r(bits);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

inline BigReal two_pi(mpfr_prec_t bits) {
    BigReal r = pi(bits);
    r *= 2;
    return r;
}

inline BigReal factorial(unsigned long n, mpfr_prec_t bits) {
    BigReal r(bits);
    mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
    return r;
}

inline BigReal ldexp(const BigReal& x, long e) {
    BigReal r(x.prec());
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

inline BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

inline std::string BigReal::str(std::size_t digits) const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    if (is_zero()) return "0";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
    std::string man(s);
    mpfr_free_str(s);
    bool neg = man[0] == '-';
    if (neg) man.erase(0, 1);
    // strip trailing zeros but keep at least one digit
    std::size_t last = man.find_last_not_of('0');
    man.erase(std::max<std::size_t>(last + 1, 1));
    std::string out;
    long exp10 = static_cast<long>(e); // value = 0.man * 10^exp10
    if (exp10 >= -5 && exp10 <= static_cast<long>(digits) + 6) {
        if (exp10 <= 0) {
            out = "0." + std::string(static_cast<std::size_t>(-exp10), '0') + man;
        } else if (static_cast<std::size_t>(exp10) >= man.size()) {
            out = man + std::string(static_cast<std::size_t>(exp10) - man.size(), '0');
        } else {
            out = man.substr(0, static_cast<std::size_t>(exp10)) + "." + man.substr(static_cast<std::size_t>(exp10));
        }
    } else {
        out = man.substr(0, 1);
        if (man.size() > 1) out += "." + man.substr(1);
        out += "e" + std::to_string(exp10 - 1);
    }
    return neg ? "-" + out : out;
}

} // namespace zml

#endif
