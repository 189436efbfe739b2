#pragma once

#include <vector>

#include "splitk/gring.hpp"

namespace splitk {

// Truncated power series over the (partial) coefficient ring: exactly N+1
// coefficients, arithmetic never reads beyond index N. Coefficient
// multiplication may fail with OutOfRangeError; series operations report the
// failing degree instead of silently truncating.
class TruncatedSeries {
public:
    TruncatedSeries(long ell, long order)
        : ell_(ell), coeffs_(static_cast<size_t>(order) + 1, RingElement(ell)) {
        if (order < 0) throw std::invalid_argument("TruncatedSeries: order must be >= 0");
    }

    static TruncatedSeries unit(long ell, long order) {
        TruncatedSeries s(ell, order);
        s[0] = RingElement::one(ell);
        return s;
    }

    long ell() const { return ell_; }
    long order() const { return static_cast<long>(coeffs_.size()) - 1; }
    RingElement& operator[](long n) { return coeffs_.at(static_cast<size_t>(n)); }
    const RingElement& operator[](long n) const { return coeffs_.at(static_cast<size_t>(n)); }

    bool operator==(const TruncatedSeries& o) const {
        return ell_ == o.ell_ && coeffs_ == o.coeffs_;
    }

private:
    long ell_;
    std::vector<RingElement> coeffs_;
};

// In the witness pipeline the Lefschetz class specializes to the ring
// identity; the transform below keeps it generic.
using LefschetzScalar = RingElement;

// Cauchy product truncated at the common order.
TruncatedSeries mul_series(const TruncatedSeries& a, const TruncatedSeries& b);

// The unique series S with Lambda * S = 1 + O(t^{N+1}); the given seed is
// checked against S and any disagreement is an error.
TruncatedSeries solve_linear_recurrence(const std::vector<RingElement>& lambda,
                                        const std::vector<RingElement>& seed, long order);

// Multiplicative inverse of a series with constant term 1, up to O(t^{N+1}).
TruncatedSeries invert_unit_series(const TruncatedSeries& a);

// The Hilbert-scheme generating transform: product over r >= 1 of the series
// sum_j a_j L^{(r-1)j} t^{jr}, truncated at `order`. Factors with r > order
// are 1 + O(t^{order+1}) and are skipped.
TruncatedSeries goettsche_transform(const TruncatedSeries& a, const LefschetzScalar& lefschetz,
                                    long order);

}  // namespace splitk
