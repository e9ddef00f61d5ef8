#ifndef ZML_VONMANGOLDT_HPP
#define ZML_VONMANGOLDT_HPP

#include <cstdint>
#include <vector>

#include "zml/accumulator.hpp"
#include "zml/bigreal.hpp"
#include "zml/errors.hpp"

namespace zml::moments {

/// (-1)^{n+1} sum over prime powers r <= Y of Lambda(r) log^n(r) floor(Y/r),
/// the arithmetic route to the moment (Perron side). Lambda comes from a
/// prime sieve; logs accumulate at the requested precision. The floor is
/// exact: floor(Y/r) == floor(floor(Y)/r) for integer r.
inline BigReal lambda_log_sum(unsigned n, const BigReal& y, std::size_t digits = 30) {
    if (y > 1.0e8) throw RangeExceeded("lambda_log_sum: Y above documented range 1e8");
    if (n > 12) throw RangeExceeded("lambda_log_sum: n above documented range 12");
    mpfr_prec_t W = digits_to_bits(digits + 8);
    if (y < 2.0) return BigReal(0l, W);
    std::uint64_t yi = static_cast<std::uint64_t>(floor(y).to_double());

    std::vector<bool> composite(yi + 1, false);
    ExactSum acc;
    BigReal logp(W), logr(W), term(W);
    for (std::uint64_t p = 2; p <= yi; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t q = p * p; q <= yi; q += p) composite[q] = true;
        mpfr_log_ui(logp.raw(), static_cast<unsigned long>(p), MPFR_RNDN);
        std::uint64_t r = p;
        unsigned k = 1;
        while (true) {
            // log r = k log p, exactly scaled
            mpfr_mul_ui(logr.raw(), logp.raw(), k, MPFR_RNDN);
            mpfr_set(term.raw(), logp.raw(), MPFR_RNDN);
            for (unsigned i = 0; i < n; ++i) mpfr_mul(term.raw(), term.raw(), logr.raw(), MPFR_RNDN);
            mpfr_mul_ui(term.raw(), term.raw(), static_cast<unsigned long>(yi / r), MPFR_RNDN);
            acc.add(term);
            if (r > yi / p) break;
            r *= p;
            ++k;
        }
    }
    BigReal out = acc.value(W);
    return (n % 2 == 0) ? -out : out;
}

inline BigReal lambda_log_sum(unsigned n, double y, std::size_t digits = 30) {
    return lambda_log_sum(n, BigReal(y, 64), digits);
}

} // namespace zml::moments

#endif
