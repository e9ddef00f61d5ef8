#ifndef ZML_ACCUMULATOR_HPP
#define ZML_ACCUMULATOR_HPP

#include <thread>
#include <vector>

#include "zml/bigreal.hpp"

namespace zml {

/// Exact running sum: a wide mpfr accumulator whose precision grows so
/// every addition is exact (ternary value zero). Exactness makes the sum
/// associative, so partial sums over any partition reproduce the total
/// bit for bit and parallel reductions stay deterministic.
class ExactSum {
public:
    ExactSum() { mpfr_init2(acc_, 4096); mpfr_set_zero(acc_, 1); }
    ExactSum(const ExactSum& o) { mpfr_init2(acc_, mpfr_get_prec(o.acc_)); mpfr_set(acc_, o.acc_, MPFR_RNDN); }
    ExactSum& operator=(const ExactSum& o) {
        if (this != &o) {
            mpfr_set_prec(acc_, mpfr_get_prec(o.acc_));
            mpfr_set(acc_, o.acc_, MPFR_RNDN);
        }
        return *this;
    }
    ~ExactSum() { mpfr_clear(acc_); }

    void add(const BigReal& x) { add_raw(x.raw()); }

    void add(double x) {
        BigReal b(x, 64);
        add_raw(b.raw());
    }

    void merge(const ExactSum& o) { add_raw(o.acc_); }

    BigReal value(mpfr_prec_t bits) const {
        BigReal r(bits);
        mpfr_set(r.raw(), acc_, MPFR_RNDN);
        return r;
    }

private:
    void add_raw(mpfr_srcptr x) {
        if (mpfr_zero_p(x)) return;
        if (!mpfr_zero_p(acc_)) {
            mpfr_exp_t top = std::max(mpfr_get_exp(acc_), mpfr_get_exp(x));
            mpfr_exp_t bot = std::min(mpfr_get_exp(acc_) - mpfr_get_prec(acc_),
                                      mpfr_get_exp(x) - mpfr_get_prec(x));
            mpfr_prec_t need = static_cast<mpfr_prec_t>(top - bot) + 8;
            if (need > mpfr_get_prec(acc_)) {
                mpfr_prec_t np = ((need + 1023) / 1024 + 1) * 1024;
                mpfr_t wide;
                mpfr_init2(wide, np);
                mpfr_set(wide, acc_, MPFR_RNDN); // widening, exact
                mpfr_swap(wide, acc_);
                mpfr_clear(wide);
            }
        }
        int t = mpfr_add(acc_, acc_, x, MPFR_RNDN);
        if (t != 0) throw Error("ExactSum: inexact addition despite widening");
    }

    mpfr_t acc_;
};

/// Run fn(chunk_begin, chunk_end, chunk_index) over [0, n) split into
/// contiguous chunks, one per worker. Chunk boundaries depend only on
/// (n, threads); with exact per-chunk reduction the merge order does not
/// affect the result.
template <typename Fn>
inline void parallel_chunks(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (n == 0) return;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        fn(std::size_t{0}, n, 0u);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        std::size_t b = n * w / threads, e = n * (w + 1) / threads;
        pool.emplace_back([&fn, b, e, w] { fn(b, e, w); });
    }
    for (auto& th : pool) th.join();
}

} // namespace zml

#endif
