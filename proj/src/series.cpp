#include "splitk/series.hpp"

namespace splitk {

TruncatedSeries mul_series(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("mul_series: truncation orders differ");
    const long n = a.order();
    TruncatedSeries r(a.ell(), n);
    for (long d = 0; d <= n; ++d) {
        RingElement c(a.ell());
        for (long k = 0; k <= d; ++k) {
            if (a[k].is_zero() || b[d - k].is_zero()) continue;
            try {
                c = c + a[k] * b[d - k];
            } catch (const OutOfRangeError& e) {
                throw OutOfRangeError(std::string(e.what()) + " [series product, degree " +
                                      std::to_string(d) + ", term " + std::to_string(k) + "*" +
                                      std::to_string(d - k) + "]");
            }
        }
        r[d] = c;
    }
    return r;
}

TruncatedSeries solve_linear_recurrence(const std::vector<RingElement>& lambda,
                                        const std::vector<RingElement>& seed, long order) {
    if (lambda.empty()) throw std::invalid_argument("solve_linear_recurrence: empty polynomial");
    const long ell = lambda.front().ell();
    if (lambda.front() != RingElement::one(ell))
        throw std::invalid_argument("solve_linear_recurrence: constant term must be the identity");
    const long deg = static_cast<long>(lambda.size()) - 1;
    if (static_cast<long>(seed.size()) < deg)
        throw std::invalid_argument("solve_linear_recurrence: seed shorter than deg(Lambda)");
    if (order < static_cast<long>(seed.size()))
        throw std::invalid_argument("solve_linear_recurrence: order smaller than seed length");

    TruncatedSeries s(ell, order);
    s[0] = RingElement::one(ell);
    for (long n = 1; n <= order; ++n) {
        RingElement c(ell);
        for (long k = 1; k <= std::min<long>(n, deg); ++k) {
            if (lambda[k].is_zero()) continue;
            try {
                c = c - lambda[k] * s[n - k];
            } catch (const OutOfRangeError& e) {
                throw OutOfRangeError(std::string(e.what()) + " [recurrence at degree " +
                                      std::to_string(n) + "]");
            }
        }
        s[n] = c;
    }
    for (size_t i = 0; i < seed.size(); ++i) {
        if (s[static_cast<long>(i)] != seed[i])
            throw SeedInconsistentError("solve_linear_recurrence: seed coefficient " +
                                        std::to_string(i) +
                                        " disagrees with the forced series");
    }
    return s;
}

TruncatedSeries invert_unit_series(const TruncatedSeries& a) {
    const long ell = a.ell();
    if (a[0] != RingElement::one(ell))
        throw std::invalid_argument("invert_unit_series: constant term must be the identity");
    const long n = a.order();
    TruncatedSeries s(ell, n);
    s[0] = RingElement::one(ell);
    for (long d = 1; d <= n; ++d) {
        RingElement c(ell);
        for (long k = 1; k <= d; ++k) {
            if (a[k].is_zero()) continue;
            try {
                c = c - a[k] * s[d - k];
            } catch (const OutOfRangeError& e) {
                throw OutOfRangeError(std::string(e.what()) + " [series inverse, degree " +
                                      std::to_string(d) + "]");
            }
        }
        s[d] = c;
    }
    return s;
}

TruncatedSeries goettsche_transform(const TruncatedSeries& a, const LefschetzScalar& lefschetz,
                                    long order) {
    const long ell = a.ell();
    if (a.order() < order)
        throw std::invalid_argument("goettsche_transform: input truncation order too small");
    if (a[0] != RingElement::one(ell))
        throw std::invalid_argument("goettsche_transform: constant term must be the identity");

    // Powers of L up to the largest exponent (r-1)*j with r*j <= order.
    std::vector<RingElement> lpow;
    lpow.push_back(RingElement::one(ell));
    for (long e = 1; e <= order; ++e) lpow.push_back(lpow.back() * lefschetz);

    TruncatedSeries result = TruncatedSeries::unit(ell, order);
    for (long r = 1; r <= order; ++r) {
        TruncatedSeries factor = TruncatedSeries::unit(ell, order);
        for (long j = 1; j * r <= order; ++j) factor[j * r] = a[j] * lpow[(r - 1) * j];
        result = mul_series(result, factor);
    }
    return result;
}

}  // namespace splitk
