#include "splitk/elliptic.hpp"

#include "splitk/errors.hpp"
#include "splitk/gring.hpp"

namespace splitk {

Int EllipticCurve::discriminant() const {
    Int b2 = Int(a1) * Int(a1) + Int(4) * Int(a2);
    Int b4 = Int(2) * Int(a4) + Int(a1) * Int(a3);
    Int b6 = Int(a3) * Int(a3) + Int(4) * Int(a6);
    Int b8 = Int(a1) * Int(a1) * Int(a6) + Int(4) * Int(a2) * Int(a6) -
             Int(a1) * Int(a3) * Int(a4) + Int(a2) * Int(a3) * Int(a3) - Int(a4) * Int(a4);
    return -(b2 * b2 * b8) - Int(8) * (b4 * b4 * b4) - Int(27) * (b6 * b6) +
           Int(9) * b2 * b4 * b6;
}

EllipticCurve curve_by_label(const std::string& label) {
    if (label == "33a1") return {"33a1", 1, 1, 0, -11, 0};
    if (label == "11a1") return {"11a1", 0, -1, 1, -10, -20};
    throw std::invalid_argument("curve_by_label: unknown label '" + label +
                                "' (built in: 11a1, 33a1)");
}

long elliptic_ap(const EllipticCurve& curve, long p) {
    if (!is_odd_prime(p) && p != 2) throw std::invalid_argument("elliptic_ap: p must be prime");
    if (p > 10000) throw BudgetExceededError("elliptic_ap: p > 10^4");
    // Bad reduction iff p | disc.
    Int disc = curve.discriminant();
    internal_check(!disc.is_zero(), "elliptic_ap: singular curve");
    {
        // disc mod p via decimal string (the discriminant may exceed int64).
        std::string s = disc.to_string();
        long rem = 0;
        bool neg = false;
        for (char c : s) {
            if (c == '-') { neg = true; continue; }
            rem = (rem * 10 + (c - '0')) % p;
        }
        if (neg && rem) rem = p - rem;
        if (rem == 0)
            throw BadReductionError("elliptic_ap: " + curve.label + " has bad reduction at " +
                                    std::to_string(p));
    }
    auto mod = [&](long v) { long r = v % p; return r < 0 ? r + p : r; };
    long a1 = mod(curve.a1), a2 = mod(curve.a2), a3 = mod(curve.a3), a4 = mod(curve.a4),
         a6 = mod(curve.a6);
    long count = 1;  // point at infinity
    for (long x = 0; x < p; ++x) {
        long rhs = ((x * x % p) * x % p + a2 * x % p * x % p + a4 * x % p + a6) % p;
        for (long y = 0; y < p; ++y) {
            long lhs = (y * y % p + a1 * x % p * y % p + a3 * y % p) % p;
            if (lhs == rhs) ++count;
        }
    }
    return p + 1 - count;
}

}  // namespace splitk
