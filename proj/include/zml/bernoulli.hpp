#ifndef ZML_BERNOULLI_HPP
#define ZML_BERNOULLI_HPP

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "zml/bigreal.hpp"

namespace zml {

/// Scaled Bernoulli numbers B_{2m}/(2m)!, the only form the
/// Euler-Maclaurin machinery needs. Computed from
/// B_{2m}/(2m)! = (-1)^{m+1} 2 zeta(2m) / (2 pi)^{2m}, which stays
/// well-scaled at every index, and cached per working precision.
class BernoulliTable {
public:
    /// b[m] = B_{2m}/(2m)! for m = 1..count.
    static std::shared_ptr<const std::vector<BigReal>> scaled(std::size_t count, mpfr_prec_t bits) {
        static std::mutex mu;
        static std::map<mpfr_prec_t, std::shared_ptr<std::vector<BigReal>>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[bits];
        if (!slot) slot = std::make_shared<std::vector<BigReal>>();
        if (slot->size() < count + 1) {
            auto grown = std::make_shared<std::vector<BigReal>>(*slot);
            if (grown->empty()) grown->push_back(BigReal(0.0, bits)); // unused m=0 slot
            BigReal inv_4pi2 = BigReal(1l, bits) / (pi(bits) * pi(bits) * BigReal(4l, bits));
            while (grown->size() < count + 1) {
                unsigned long m = grown->size();
                BigReal z(bits);
                mpfr_zeta_ui(z.raw(), 2 * m, MPFR_RNDN);
                BigReal b = z * BigReal(2l, bits) * pow_si(inv_4pi2, static_cast<long>(m));
                if (m % 2 == 0) b = -b;
                grown->push_back(std::move(b));
            }
            slot = grown;
        }
        return slot;
    }

    /// Consecutive ratios b_{m+1}/b_m as doubles for the critical-line fast
    /// kernel; the values themselves underflow a double past m ~ 190, the
    /// ratios never do. ratios[m] is valid for m = 1..count-1.
    static const std::vector<double>& ratios_d(std::size_t count) {
        static std::mutex mu;
        static std::vector<double> table;
        std::lock_guard<std::mutex> lock(mu);
        if (table.size() < count + 1) {
            auto wide = scaled(count + 2, 128);
            table.assign(count + 1, 0.0);
            for (std::size_t m = 1; m <= count; ++m)
                table[m] = ((*wide)[m + 1] / (*wide)[m]).to_double();
        }
        return table;
    }
};

} // namespace zml

#endif
