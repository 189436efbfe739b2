#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace splitk {

// Exact signed integer with a small-value fast path.
//
// Values that fit in int64 stay in `small_` with an empty limb vector; on
// overflow the value is promoted to sign/magnitude form (base 2^32 limbs,
// little endian) and demoted back whenever it fits again, so representation
// is canonical and operator== is cheap.
class Int {
public:
    Int() = default;
    Int(int v) : small_(v) {}
    Int(long v) : small_(v) {}
    Int(long long v) : small_(v) {}
    Int(unsigned v) : small_(static_cast<int64_t>(v)) {}

    static Int from_string(const std::string& s);

    bool is_zero() const { return mag_.empty() && small_ == 0; }
    bool is_small() const { return mag_.empty(); }
    // Only valid when is_small().
    int64_t small_value() const { return small_; }
    bool fits_int64() const { return mag_.empty(); }

    int sign() const {
        if (mag_.empty()) return small_ > 0 ? 1 : (small_ < 0 ? -1 : 0);
        return sign_;
    }

    Int operator-() const;
    Int operator+(const Int& o) const;
    Int operator-(const Int& o) const;
    Int operator*(const Int& o) const;
    Int& operator+=(const Int& o) { *this = *this + o; return *this; }
    Int& operator-=(const Int& o) { *this = *this - o; return *this; }
    Int& operator*=(const Int& o) { *this = *this * o; return *this; }

    bool operator==(const Int& o) const { return small_ == o.small_ && sign_ == o.sign_ && mag_ == o.mag_; }
    bool operator!=(const Int& o) const { return !(*this == o); }
    bool operator<(const Int& o) const { return cmp(o) < 0; }
    bool operator<=(const Int& o) const { return cmp(o) <= 0; }
    bool operator>(const Int& o) const { return cmp(o) > 0; }
    bool operator>=(const Int& o) const { return cmp(o) >= 0; }

    int cmp(const Int& o) const;
    std::string to_string() const;

private:
    int64_t small_ = 0;
    int sign_ = 0;                // +1/-1, used only in big mode
    std::vector<uint32_t> mag_;   // empty <=> small mode

    void promote();
    void normalize();
    static std::vector<uint32_t> mag_of_abs(uint64_t v);
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static Int make(int sign, std::vector<uint32_t> mag);
};

std::ostream& operator<<(std::ostream& os, const Int& v);

// Exact binomial coefficient, 0 for k < 0 or k > n. Computed by Pascal rows.
Int binomial(long n, long k);

}  // namespace splitk
