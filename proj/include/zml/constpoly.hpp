#ifndef ZML_CONSTPOLY_HPP
#define ZML_CONSTPOLY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zml/bigreal.hpp"
#include "zml/errors.hpp"
#include "zml/rational.hpp"

namespace zml {

/// Multidegree over the symbols C_0..C_J and L. C exponents are stored
/// with trailing zeros trimmed so equal monomials compare equal.
struct Monomial {
    unsigned l = 0;                 // exponent of L
    std::vector<unsigned> c;        // c[j] = exponent of C_j

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.l != b.l) return a.l < b.l;
        return a.c < b.c;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.l == b.l && a.c == b.c; }

    unsigned total_degree() const {
        unsigned d = l;
        for (unsigned e : c) d += e;
        return d;
    }

    static Monomial one() { return {}; }
    static Monomial L(unsigned k = 1) {
        Monomial m;
        m.l = k;
        return m;
    }
    static Monomial C(unsigned j, unsigned k = 1) {
        Monomial m;
        m.c.assign(j + 1, 0);
        m.c[j] = k;
        return m;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.l = l + o.l;
        r.c.resize(std::max(c.size(), o.c.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
        for (std::size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        return r;
    }
};

/// Exact polynomial over {C_0.., L} with rational coefficients.
/// Canonical form: no zero coefficients are ever stored.
class ConstPoly {
public:
    ConstPoly() = default;
    explicit ConstPoly(Rational r) {
        if (!r.is_zero()) terms_[Monomial::one()] = std::move(r);
    }
    ConstPoly(Rational r, Monomial m) {
        if (!r.is_zero()) terms_[std::move(m)] = std::move(r);
    }

    static ConstPoly C(unsigned j) { return ConstPoly(Rational(1), Monomial::C(j)); }
    static ConstPoly L() { return ConstPoly(Rational(1), Monomial::L()); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    /// Rational value if the polynomial is a constant; throws otherwise.
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (terms_.size() == 1 && terms_.begin()->first == Monomial::one()) return terms_.begin()->second;
        throw Error("ConstPoly: not a constant");
    }

    void add_term(const Monomial& m, const Rational& r) {
        if (r.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, r);
        } else {
            it->second += r;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    ConstPoly& operator+=(const ConstPoly& o) {
        for (const auto& [m, r] : o.terms_) add_term(m, r);
        return *this;
    }
    ConstPoly& operator-=(const ConstPoly& o) {
        for (const auto& [m, r] : o.terms_) add_term(m, -r);
        return *this;
    }

    friend ConstPoly operator+(ConstPoly a, const ConstPoly& b) { a += b; return a; }
    friend ConstPoly operator-(ConstPoly a, const ConstPoly& b) { a -= b; return a; }

    friend ConstPoly operator*(const ConstPoly& a, const ConstPoly& b) {
        ConstPoly r;
        for (const auto& [ma, ra] : a.terms_)
            for (const auto& [mb, rb] : b.terms_) r.add_term(ma * mb, ra * rb);
        return r;
    }

    friend ConstPoly operator*(const ConstPoly& a, const Rational& s) {
        ConstPoly r;
        if (s.is_zero()) return r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, c * s);
        return r;
    }

    friend ConstPoly operator-(const ConstPoly& a) { return a * Rational(-1); }

    friend bool operator==(const ConstPoly& a, const ConstPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ConstPoly& a, const ConstPoly& b) { return !(a == b); }

    unsigned max_c_index() const {
        unsigned jmax = 0;
        for (const auto& [m, r] : terms_)
            if (!m.c.empty()) jmax = std::max(jmax, static_cast<unsigned>(m.c.size() - 1));
        return jmax;
    }

    /// Split by powers of L: result[k] holds the (L-free) coefficient of L^k.
    std::vector<ConstPoly> by_l_power() const {
        unsigned lmax = 0;
        for (const auto& [m, r] : terms_) lmax = std::max(lmax, m.l);
        std::vector<ConstPoly> out(lmax + 1);
        for (const auto& [m, r] : terms_) {
            Monomial stripped = m;
            stripped.l = 0;
            out[m.l].add_term(stripped, r);
        }
        return out;
    }

    /// Numeric evaluation. c_values[j] supplies C_j; l_value supplies L.
    BigReal eval(const std::vector<BigReal>& c_values, const BigReal& l_value, mpfr_prec_t bits) const {
        BigReal acc(bits);
        for (const auto& [m, r] : terms_) {
            BigReal t = r.to_real(bits);
            if (m.l > 0) t *= pow_si(l_value.at_prec(bits), m.l);
            for (std::size_t j = 0; j < m.c.size(); ++j) {
                if (m.c[j] == 0) continue;
                if (j >= c_values.size()) throw Error("ConstPoly::eval: missing C value");
                t *= pow_si(c_values[j].at_prec(bits), static_cast<long>(m.c[j]));
            }
            acc += t;
        }
        return acc;
    }

    /// Canonical text form, graded-lex term order (constant first).
    std::string str() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Monomial, Rational>> ts(terms_.begin(), terms_.end());
        std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
            unsigned da = a.first.total_degree(), db = b.first.total_degree();
            if (da != db) return da < db;
            return a.first < b.first;
        });
        std::string out;
        bool first = true;
        for (const auto& [m, r] : ts) {
            Rational a = r;
            bool neg = a.sign() < 0;
            if (neg) a = -a;
            if (first) {
                if (neg) out += "-";
                first = false;
            } else {
                out += neg ? " - " : " + ";
            }
            std::string mono = mono_str(m);
            if (mono.empty()) {
                out += a.str();
            } else if (a.is_one()) {
                out += mono;
            } else {
                out += a.str() + "*" + mono;
            }
        }
        return out;
    }

private:
    static std::string mono_str(const Monomial& m) {
        std::string s;
        auto app = [&s](const std::string& sym, unsigned e) {
            if (e == 0) return;
            if (!s.empty()) s += "*";
            s += sym;
            if (e > 1) s += "^" + std::to_string(e);
        };
        app("L", m.l);
        for (std::size_t j = 0; j < m.c.size(); ++j) app("C" + std::to_string(j), m.c[j]);
        return s;
    }

    std::map<Monomial, Rational> terms_;
};

} // namespace zml

#endif
