#ifndef ZML_RATIONAL_HPP
#define ZML_RATIONAL_HPP

#include <gmp.h>

#include <string>
#include <utility>

#include "zml/bigreal.hpp"

namespace zml {

/// Exact rational number (GMP mpq RAII wrapper). Always canonical.
class Rational {
public:
    Rational() { mpq_init(v_); }
    Rational(long num, long den = 1) {
        mpq_init(v_);
        mpq_set_si(v_, num, 1);
        if (den != 1) {
            Rational d;
            mpq_set_si(d.v_, den, 1);
            mpq_div(v_, v_, d.v_);
        }
    }
    Rational(const Rational& o) { mpq_init(v_); mpq_set(v_, o.v_); }
    Rational(Rational&& o) noexcept { mpq_init(v_); mpq_swap(v_, o.v_); }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(v_, o.v_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this != &o) mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rational() { mpq_clear(v_); }

    bool is_zero() const { return mpq_sgn(v_) == 0; }
    int sign() const { return mpq_sgn(v_); }

    Rational& operator+=(const Rational& o) { mpq_add(v_, v_, o.v_); return *this; }
    Rational& operator-=(const Rational& o) { mpq_sub(v_, v_, o.v_); return *this; }
    Rational& operator*=(const Rational& o) { mpq_mul(v_, v_, o.v_); return *this; }
    Rational& operator/=(const Rational& o) { mpq_div(v_, v_, o.v_); return *this; }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) {
        Rational r;
        mpq_neg(r.v_, a.v_);
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_, b.v_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    /// Factorial n! as an exact rational.
    static Rational fact(unsigned long n) {
        Rational r(1);
        mpz_fac_ui(mpq_numref(r.v_), n);
        return r;
    }

    /// Binomial coefficient, exact.
    static Rational binom(unsigned long n, unsigned long k) {
        Rational r(1);
        mpz_bin_uiui(mpq_numref(r.v_), n, k);
        return r;
    }

    std::string str() const {
        char* s = mpq_get_str(nullptr, 10, v_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    /// Nearest BigReal at the given precision.
    BigReal to_real(mpfr_prec_t bits) const {
        BigReal r(bits);
        mpfr_set_q(r.raw(), v_, MPFR_RNDN);
        return r;
    }

    bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }
    bool is_one() const { return mpq_cmp_si(v_, 1, 1) == 0; }

private:
    mpq_t v_;
};

} // namespace zml

#endif
