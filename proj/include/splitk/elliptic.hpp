#pragma once

#include <string>

#include "splitk/bigint.hpp"

namespace splitk {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// with integer coefficients.
struct EllipticCurve {
    std::string label;
    long a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    Int discriminant() const;
};

// Built-in curves by Cremona label (33a1 and 11a1).
EllipticCurve curve_by_label(const std::string& label);

// a_p = p + 1 - #E(F_p) by exhaustive point counting, p <= 10^4 of good
// reduction. Throws BadReductionError when p divides the discriminant.
long elliptic_ap(const EllipticCurve& curve, long p);

}  // namespace splitk
