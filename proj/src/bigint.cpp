#include "splitk/bigint.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace splitk {

namespace {
constexpr int64_t kI64Min = std::numeric_limits<int64_t>::min();
}

std::vector<uint32_t> Int::mag_of_abs(uint64_t v) {
    std::vector<uint32_t> m;
    while (v) {
        m.push_back(static_cast<uint32_t>(v & 0xffffffffu));
        v >>= 32;
    }
    return m;
}

void Int::promote() {
    if (!mag_.empty()) return;
    int64_t v = small_;
    sign_ = v > 0 ? 1 : (v < 0 ? -1 : 0);
    uint64_t a = v >= 0 ? static_cast<uint64_t>(v) : 0 - static_cast<uint64_t>(v);
    mag_ = mag_of_abs(a);
    small_ = 0;
}

void Int::normalize() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) {
        sign_ = 0;
        small_ = 0;
        return;
    }
    // Demote when the magnitude fits in int64.
    if (mag_.size() <= 2) {
        uint64_t a = mag_[0];
        if (mag_.size() == 2) a |= static_cast<uint64_t>(mag_[1]) << 32;
        if (sign_ > 0 && a <= static_cast<uint64_t>(std::numeric_limits<int64_t>::max())) {
            small_ = static_cast<int64_t>(a);
            mag_.clear();
            sign_ = 0;
        } else if (sign_ < 0 && a <= static_cast<uint64_t>(std::numeric_limits<int64_t>::max()) + 1) {
            small_ = (a == static_cast<uint64_t>(std::numeric_limits<int64_t>::max()) + 1)
                         ? kI64Min
                         : -static_cast<int64_t>(a);
            mag_.clear();
            sign_ = 0;
        }
    }
}

int Int::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> Int::add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>& x = a.size() >= b.size() ? a : b;
    const std::vector<uint32_t>& y = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r(x.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        uint64_t s = carry + x[i] + (i < y.size() ? y[i] : 0);
        r[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    r[x.size()] = static_cast<uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> Int::sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (s < 0) {
            s += (1ll << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<uint32_t>(s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<uint32_t> Int::mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        uint64_t ai = a[i];
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t s = static_cast<uint64_t>(r[i + j]) + ai * b[j] + carry;
            r[i + j] = static_cast<uint32_t>(s);
            carry = s >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t s = static_cast<uint64_t>(r[k]) + carry;
            r[k] = static_cast<uint32_t>(s);
            carry = s >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

Int Int::make(int sign, std::vector<uint32_t> mag) {
    Int v;
    v.sign_ = mag.empty() ? 0 : sign;
    v.mag_ = std::move(mag);
    v.normalize();
    return v;
}

Int Int::operator-() const {
    if (mag_.empty()) {
        if (small_ != kI64Min) {
            Int r;
            r.small_ = -small_;
            return r;
        }
        Int r = *this;
        r.promote();
        r.sign_ = -r.sign_;
        r.normalize();
        return r;
    }
    Int r = *this;
    r.sign_ = -r.sign_;
    r.normalize();
    return r;
}

Int Int::operator+(const Int& o) const {
    if (mag_.empty() && o.mag_.empty()) {
        int64_t s;
        if (!__builtin_add_overflow(small_, o.small_, &s)) {
            Int r;
            r.small_ = s;
            return r;
        }
    }
    Int a = *this, b = o;
    a.promote();
    b.promote();
    if (a.sign_ == 0) return b.make(b.sign_, b.mag_);
    if (b.sign_ == 0) return a.make(a.sign_, a.mag_);
    if (a.sign_ == b.sign_) return make(a.sign_, add_mag(a.mag_, b.mag_));
    int c = cmp_mag(a.mag_, b.mag_);
    if (c == 0) return Int();
    if (c > 0) return make(a.sign_, sub_mag(a.mag_, b.mag_));
    return make(b.sign_, sub_mag(b.mag_, a.mag_));
}

Int Int::operator-(const Int& o) const { return *this + (-o); }

Int Int::operator*(const Int& o) const {
    if (mag_.empty() && o.mag_.empty()) {
        int64_t s;
        if (!__builtin_mul_overflow(small_, o.small_, &s)) {
            Int r;
            r.small_ = s;
            return r;
        }
    }
    Int a = *this, b = o;
    a.promote();
    b.promote();
    if (a.sign_ == 0 || b.sign_ == 0) return Int();
    return make(a.sign_ * b.sign_, mul_mag(a.mag_, b.mag_));
}

int Int::cmp(const Int& o) const {
    if (mag_.empty() && o.mag_.empty())
        return small_ < o.small_ ? -1 : (small_ > o.small_ ? 1 : 0);
    Int a = *this, b = o;
    a.promote();
    b.promote();
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c : -c;
}

std::string Int::to_string() const {
    if (mag_.empty()) return std::to_string(small_);
    // Repeated division of the magnitude by 10^9.
    std::vector<uint32_t> m = mag_;
    std::vector<uint32_t> chunks;
    while (!m.empty()) {
        uint64_t rem = 0;
        for (size_t i = m.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        chunks.push_back(static_cast<uint32_t>(rem));
    }
    std::string s = sign_ < 0 ? "-" : "";
    s += std::to_string(chunks.back());
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        s += std::string(9 - part.size(), '0') + part;
    }
    return s;
}

Int Int::from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Int::from_string: empty string");
    size_t pos = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        pos = 1;
    }
    if (pos == s.size()) throw std::invalid_argument("Int::from_string: no digits");
    Int r;
    for (; pos < s.size(); ++pos) {
        if (s[pos] < '0' || s[pos] > '9')
            throw std::invalid_argument("Int::from_string: bad digit in '" + s + "'");
        r = r * Int(10) + Int(s[pos] - '0');
    }
    return neg ? -r : r;
}

std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.to_string(); }

Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Int(0);
    static std::mutex mu;
    static std::vector<std::vector<Int>> rows = {{Int(1)}};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<long>(rows.size()) <= n) {
        const auto& prev = rows.back();
        std::vector<Int> row(prev.size() + 1, Int(1));
        for (size_t i = 1; i < prev.size(); ++i) row[i] = prev[i - 1] + prev[i];
        rows.push_back(std::move(row));
    }
    return rows[n][k];
}

}  // namespace splitk
