#ifndef ZML_SERIES_HPP
#define ZML_SERIES_HPP

#include <vector>

#include "zml/constpoly.hpp"
#include "zml/laurent.hpp"

namespace zml::series {

/// A_n as an exact polynomial in C_0..C_n, by unrolling the recursion
/// A_0 = C_0, A_n = (n+1) C_n - sum_{j<n} A_j C_{n-1-j}.
inline ConstPoly expand_A(unsigned n) {
    if (n > 16) throw Error("expand_A: n > 16 unsupported");
    std::vector<ConstPoly> A;
    A.reserve(n + 1);
    A.push_back(ConstPoly::C(0));
    for (unsigned m = 1; m <= n; ++m) {
        ConstPoly am = ConstPoly::C(m) * Rational(static_cast<long>(m) + 1);
        for (unsigned j = 0; j < m; ++j) am -= A[j] * ConstPoly::C(m - 1 - j);
        A.push_back(std::move(am));
    }
    return A[n];
}

/// Laurent expansion of the n-th derivative of zeta'/zeta about s=1:
/// (-1)^{n+1} n! / (s-1)^{n+1} + sum_{j>=n} j!/(j-n)! A_j (s-1)^{j-n},
/// truncated at order m.
inline TruncatedLaurent laurent_logderiv_deriv(unsigned n, int m) {
    if (m < 0) throw Error("laurent_logderiv_deriv: m >= 0 required");
    TruncatedLaurent out(-static_cast<int>(n) - 1, m);
    Rational pole = Rational::fact(n);
    if (n % 2 == 0) pole = -pole;
    out.set(-static_cast<int>(n) - 1, ConstPoly(pole));
    for (int k = 0; k <= m; ++k) {
        unsigned j = n + static_cast<unsigned>(k);
        Rational fall = Rational::fact(j) / Rational::fact(static_cast<unsigned>(k));
        out.set(k, expand_A(j) * fall);
    }
    return out;
}

/// zeta(s) about s=1: 1/(s-1) + sum C_k (s-1)^k, truncated at order m.
inline TruncatedLaurent laurent_zeta(int m) {
    TruncatedLaurent out(-1, m);
    out.set(-1, ConstPoly(Rational(1)));
    for (int k = 0; k <= m; ++k) out.set(k, ConstPoly::C(static_cast<unsigned>(k)));
    return out;
}

/// Y^s about s=1: Y * sum L^k (s-1)^k / k!. The overall Y is carried as
/// a flag on the series, L stands for log Y.
inline TruncatedLaurent laurent_Ys(int m) {
    TruncatedLaurent out(0, m);
    out.set_carries_y(true);
    for (int k = 0; k <= m; ++k) {
        ConstPoly t(Rational(1) / Rational::fact(static_cast<unsigned>(k)), Monomial::L(static_cast<unsigned>(k)));
        out.set(k, t);
    }
    return out;
}

/// 1/s about s=1: sum (-1)^k (s-1)^k, truncated at order m.
inline TruncatedLaurent laurent_inv_s(int m) {
    TruncatedLaurent out(0, m);
    for (int k = 0; k <= m; ++k) out.set(k, ConstPoly(Rational(k % 2 == 0 ? 1 : -1)));
    return out;
}

/// Full asymptotic expansion of the residue at s=1, organised by powers
/// of L; coeff_of_l_pow[k] multiplies Y L^k.
struct ResidueExpansion {
    unsigned n = 0;
    std::vector<ConstPoly> coeff_of_l_pow; // index k = 0..n+1

    friend bool operator==(const ResidueExpansion& a, const ResidueExpansion& b) {
        return a.n == b.n && a.coeff_of_l_pow == b.coeff_of_l_pow;
    }
};

namespace detail {

inline ResidueExpansion residue_at_1_with_order(unsigned n, int m) {
    // The pole factor only contributes to the residue through its orders
    // <= 0, so it is truncated at m-n while the regular factors carry the
    // full order m. Product validity: min(m-n-1, m-n-2, m-n-2) >= -1.
    TruncatedLaurent prod =
        laurent_logderiv_deriv(n, m - static_cast<int>(n)) * laurent_zeta(m) * laurent_Ys(m) * laurent_inv_s(m);
    if (prod.max_order() < -1)
        throw TruncationInsufficient("residue_at_1: truncation order too small for an exact residue");
    std::vector<ConstPoly> by_l = prod.at(-1).by_l_power();
    ResidueExpansion out;
    out.n = n;
    out.coeff_of_l_pow.assign(n + 2, ConstPoly{});
    for (std::size_t k = 0; k < by_l.size(); ++k) {
        if (k >= out.coeff_of_l_pow.size()) {
            if (!by_l[k].is_zero()) throw TruncationInsufficient("residue_at_1: L power above n+1");
            continue;
        }
        out.coeff_of_l_pow[k] = std::move(by_l[k]);
    }
    return out;
}

} // namespace detail

/// Residue at s=1 of (zeta'/zeta)^{(n)}(s) zeta(s) Y^s / s, computed by
/// exact series multiplication. Runs once at truncation order n+2 and
/// re-checks at n+3.
inline ResidueExpansion residue_at_1(unsigned n) {
    if (n > 12) throw Error("residue_at_1: n > 12 unsupported");
    int m = static_cast<int>(n) + 2;
    ResidueExpansion r = detail::residue_at_1_with_order(n, m);
    if (!(detail::residue_at_1_with_order(n, m + 1) == r))
        throw TruncationInsufficient("residue_at_1: result changed under deeper truncation");
    return r;
}

/// The closed-form expansion: leading term (-1)^{n+1}/(n+1) L^{n+1},
/// then for k=0..n the L^{n-k} coefficient
/// (-1)^{n+1} binom(n,k) (-1)^k k! (-1 + sum_{j<=k} (-1)^j C_j),
/// and n! A_n added to the L^0 coefficient.
inline ResidueExpansion theorem_coeffs(unsigned n) {
    if (n > 12) throw Error("theorem_coeffs: n > 12 unsupported");
    ResidueExpansion out;
    out.n = n;
    out.coeff_of_l_pow.assign(n + 2, ConstPoly{});
    Rational lead = Rational(1) / Rational(static_cast<long>(n) + 1);
    if (n % 2 == 0) lead = -lead;
    out.coeff_of_l_pow[n + 1] = ConstPoly(lead);
    for (unsigned k = 0; k <= n; ++k) {
        ConstPoly inner(Rational(-1));
        for (unsigned j = 0; j <= k; ++j) {
            ConstPoly cj = ConstPoly::C(j);
            inner += (j % 2 == 0) ? cj : -cj;
        }
        Rational scale = Rational::binom(n, k) * Rational::fact(k);
        if ((n + 1 + k) % 2 != 0) scale = -scale;
        out.coeff_of_l_pow[n - k] += inner * scale;
    }
    out.coeff_of_l_pow[0] += expand_A(n) * Rational::fact(n);
    return out;
}

} // namespace zml::series

#endif
