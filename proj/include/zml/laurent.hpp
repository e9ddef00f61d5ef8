#ifndef ZML_LAURENT_HPP
#define ZML_LAURENT_HPP

#include <map>

#include "zml/constpoly.hpp"
#include "zml/errors.hpp"

namespace zml {

/// Finitely supported Laurent series in (s-1) with ConstPoly coefficients
/// and explicit truncation bookkeeping: coefficients of orders in
/// [min_order, max_order] are exact, anything above max_order is unknown.
/// Multiplication shrinks the window of validity accordingly and never
/// silently extends it.
class TruncatedLaurent {
public:
    TruncatedLaurent(int min_order, int max_order) : min_(min_order), max_(max_order) {
        if (min_ > max_) throw Error("TruncatedLaurent: empty validity window");
    }

    int min_order() const { return min_; }
    int max_order() const { return max_; }
    bool carries_y() const { return carries_y_; }
    void set_carries_y(bool f) { carries_y_ = f; }

    void set(int order, ConstPoly p) {
        if (order < min_ || order > max_) throw Error("TruncatedLaurent::set: order outside window");
        if (p.is_zero())
            coeffs_.erase(order);
        else
            coeffs_[order] = std::move(p);
    }

    const ConstPoly& at(int order) const {
        static const ConstPoly zero{};
        if (order < min_ || order > max_) throw TruncationInsufficient("coefficient outside validity window");
        auto it = coeffs_.find(order);
        return it == coeffs_.end() ? zero : it->second;
    }

    friend TruncatedLaurent operator*(const TruncatedLaurent& a, const TruncatedLaurent& b) {
        if (a.carries_y_ && b.carries_y_) throw Error("TruncatedLaurent: Y factor squared");
        // A term of order k in one factor only multiplies known terms of the
        // other up to its max_order, so the product is valid through
        // min(a.max + b.min, a.min + b.max).
        int max_valid = std::min(a.max_ + b.min_, a.min_ + b.max_);
        TruncatedLaurent r(a.min_ + b.min_, max_valid);
        r.carries_y_ = a.carries_y_ || b.carries_y_;
        for (const auto& [ka, pa] : a.coeffs_) {
            for (const auto& [kb, pb] : b.coeffs_) {
                int k = ka + kb;
                if (k > max_valid) continue;
                ConstPoly prod = pa * pb;
                auto it = r.coeffs_.find(k);
                if (it == r.coeffs_.end())
                    r.coeffs_.emplace(k, std::move(prod));
                else {
                    it->second += prod;
                    if (it->second.is_zero()) r.coeffs_.erase(it);
                }
            }
        }
        return r;
    }

    friend TruncatedLaurent operator+(const TruncatedLaurent& a, const TruncatedLaurent& b) {
        if (a.carries_y_ != b.carries_y_) throw Error("TruncatedLaurent: mixed Y flags in sum");
        TruncatedLaurent r(std::min(a.min_, b.min_), std::min(a.max_, b.max_));
        r.carries_y_ = a.carries_y_;
        for (const auto& [k, p] : a.coeffs_)
            if (k <= r.max_) r.coeffs_[k] = p;
        for (const auto& [k, p] : b.coeffs_) {
            if (k > r.max_) continue;
            auto it = r.coeffs_.find(k);
            if (it == r.coeffs_.end())
                r.coeffs_.emplace(k, p);
            else {
                it->second += p;
                if (it->second.is_zero()) r.coeffs_.erase(it);
            }
        }
        return r;
    }

    friend bool operator==(const TruncatedLaurent& a, const TruncatedLaurent& b) {
        return a.min_ == b.min_ && a.max_ == b.max_ && a.carries_y_ == b.carries_y_ && a.coeffs_ == b.coeffs_;
    }

private:
    int min_, max_;
    bool carries_y_ = false;
    std::map<int, ConstPoly> coeffs_;
};

} // namespace zml

#endif
