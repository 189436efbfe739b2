#include "splitk/fplin.hpp"

#include <algorithm>
#include <sstream>

namespace splitk {

uint32_t Fp::pow(uint32_t a, uint64_t e) const {
    uint64_t r = 1, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}

uint32_t Fp::inv(uint32_t a) const {
    internal_check(a % p != 0, "Fp::inv of zero");
    return pow(a % p, p - 2);
}

FpMat FpMat::identity(uint32_t p, long n) {
    FpMat m(p, n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FpMat FpMat::operator+(const FpMat& o) const {
    internal_check(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_, "FpMat: shape mismatch");
    FpMat r(p_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) {
        uint32_t s = a_[i] + o.a_[i];
        r.a_[i] = s >= p_ ? s - p_ : s;
    }
    return r;
}

FpMat FpMat::operator-(const FpMat& o) const {
    internal_check(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_, "FpMat: shape mismatch");
    FpMat r(p_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = a_[i] >= o.a_[i] ? a_[i] - o.a_[i] : a_[i] + p_ - o.a_[i];
    return r;
}

FpMat FpMat::operator*(const FpMat& o) const {
    internal_check(cols_ == o.rows_ && p_ == o.p_, "FpMat: product shape mismatch");
    FpMat r(p_, rows_, o.cols_);
    // Delayed reduction: row sums fit in uint64 for any dimension in scope.
    std::vector<uint64_t> acc(static_cast<size_t>(o.cols_));
    for (long i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        const uint32_t* arow = row_ptr(i);
        for (long k = 0; k < cols_; ++k) {
            uint64_t f = arow[k];
            if (!f) continue;
            const uint32_t* brow = o.row_ptr(k);
            for (long j = 0; j < o.cols_; ++j) acc[j] += f * brow[j];
        }
        uint32_t* rrow = r.row_ptr(i);
        for (long j = 0; j < o.cols_; ++j) rrow[j] = static_cast<uint32_t>(acc[j] % p_);
    }
    return r;
}

FpMat FpMat::scaled(uint32_t c) const {
    FpMat r(p_, rows_, cols_);
    c %= p_;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = static_cast<uint32_t>((uint64_t)a_[i] * c % p_);
    return r;
}

FpMat FpMat::transpose() const {
    FpMat r(p_, cols_, rows_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

FpMat FpMat::kron(const FpMat& o) const {
    internal_check(p_ == o.p_, "FpMat: kron modulus mismatch");
    FpMat r(p_, rows_ * o.rows_, cols_ * o.cols_);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) {
            uint64_t f = at(i, j);
            if (!f) continue;
            for (long k = 0; k < o.rows_; ++k)
                for (long l = 0; l < o.cols_; ++l)
                    r.at(i * o.rows_ + k, j * o.cols_ + l) =
                        static_cast<uint32_t>(f * o.at(k, l) % p_);
        }
    return r;
}

FpMat FpMat::pow(uint64_t e) const {
    internal_check(rows_ == cols_, "FpMat::pow: square matrix required");
    FpMat r = identity(p_, rows_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

uint32_t FpMat::trace() const {
    internal_check(rows_ == cols_, "FpMat::trace: square matrix required");
    uint64_t s = 0;
    for (long i = 0; i < rows_; ++i) s += at(i, i);
    return static_cast<uint32_t>(s % p_);
}

bool FpMat::is_identity() const {
    if (rows_ != cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

bool FpMat::is_zero() const {
    for (uint32_t v : a_)
        if (v) return false;
    return true;
}

FpMat FpMat::inverse() const {
    internal_check(rows_ == cols_, "FpMat::inverse: square matrix required");
    Fp fp(p_);
    const long n = rows_;
    FpMat aug(p_, n, 2 * n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, n + i) = 1;
    }
    for (long c = 0; c < n; ++c) {
        long piv = -1;
        for (long i = c; i < n; ++i)
            if (aug.at(i, c)) { piv = i; break; }
        internal_check(piv >= 0, "FpMat::inverse: singular matrix");
        if (piv != c)
            for (long j = 0; j < 2 * n; ++j) std::swap(aug.at(piv, j), aug.at(c, j));
        uint32_t d = fp.inv(aug.at(c, c));
        for (long j = 0; j < 2 * n; ++j) aug.at(c, j) = fp.mul(aug.at(c, j), d);
        for (long i = 0; i < n; ++i) {
            if (i == c) continue;
            uint32_t f = aug.at(i, c);
            if (!f) continue;
            uint32_t g = p_ - f;
            const uint32_t* src = aug.row_ptr(c);
            uint32_t* dst = aug.row_ptr(i);
            for (long j = 0; j < 2 * n; ++j)
                dst[j] = static_cast<uint32_t>((dst[j] + (uint64_t)g * src[j]) % p_);
        }
    }
    FpMat inv(p_, n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

long FpMat::rank() const {
    RowReducer red(p_, cols_);
    for (long i = 0; i < rows_; ++i)
        red.add_row(std::vector<uint32_t>(row_ptr(i), row_ptr(i) + cols_));
    return red.rank();
}

std::string FpMat::to_string() const {
    std::ostringstream os;
    for (long i = 0; i < rows_; ++i) {
        os << (i ? "\n[" : "[");
        for (long j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j);
        os << "]";
    }
    return os.str();
}

void RowReducer::reduce(std::vector<uint32_t>& v) const {
    internal_check(static_cast<long>(v.size()) == width_, "RowReducer: width mismatch");
    if (rows_.empty()) return;
    // Delayed reduction: accumulate in uint64, reduce once at the end. The
    // accumulated value stays below rank * p^2 + p, far inside uint64.
    std::vector<uint64_t> w(v.begin(), v.end());
    const uint32_t p = fp_.p;
    for (size_t r = 0; r < rows_.size(); ++r) {
        uint64_t lead = w[pivots_[r]] % p;
        if (!lead) continue;
        uint64_t f = p - lead;  // w += f * row  ==  w -= lead * row (mod p)
        const uint32_t* src = rows_[r].data();
        uint64_t* dst = w.data();
        for (long j = 0; j < width_; ++j) dst[j] += f * src[j];
    }
    for (long j = 0; j < width_; ++j) v[j] = static_cast<uint32_t>(w[j] % p);
}

long RowReducer::add_row(std::vector<uint32_t> v) {
    reduce(v);
    long piv = -1;
    for (long j = 0; j < width_; ++j)
        if (v[j]) { piv = j; break; }
    if (piv < 0) return -1;
    uint32_t d = fp_.inv(v[piv]);
    if (d != 1)
        for (long j = piv; j < width_; ++j) v[j] = fp_.mul(v[j], d);
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return piv;
}

std::vector<std::vector<uint32_t>> RowReducer::kernel(const FpMat& m) {
    const uint32_t p = m.modulus();
    Fp fp(p);
    RowReducer red(p, m.cols());
    for (long i = 0; i < m.rows(); ++i)
        red.add_row(std::vector<uint32_t>(m.row_ptr(i), m.row_ptr(i) + m.cols()));

    std::vector<int8_t> is_pivot(m.cols(), 0);
    for (long r = 0; r < red.rank(); ++r) is_pivot[red.pivot_col(r)] = 1;
    // Sort row indices by pivot column for back substitution.
    std::vector<long> order(red.rank());
    for (long r = 0; r < red.rank(); ++r) order[r] = r;
    std::sort(order.begin(), order.end(),
              [&](long a, long b) { return red.pivot_col(a) > red.pivot_col(b); });

    std::vector<std::vector<uint32_t>> basis;
    for (long f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<uint32_t> x(m.cols(), 0);
        x[f] = 1;
        for (long r : order) {
            const auto& row = red.row(r);
            long piv = red.pivot_col(r);
            if (piv > f) continue;  // row only involves columns >= piv; x there is 0 unless set
            uint64_t s = 0;
            for (long j = piv + 1; j < m.cols(); ++j)
                if (x[j]) s += (uint64_t)row[j] * x[j];
            x[piv] = fp.neg(static_cast<uint32_t>(s % p));
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<std::vector<uint32_t>> column_space(const FpMat& m) {
    RowReducer red(m.modulus(), m.rows());
    std::vector<std::vector<uint32_t>> basis;
    for (long j = 0; j < m.cols(); ++j) {
        std::vector<uint32_t> col(m.rows());
        for (long i = 0; i < m.rows(); ++i) col[i] = m.at(i, j);
        std::vector<uint32_t> probe = col;
        if (red.add_row(std::move(probe)) >= 0) basis.push_back(std::move(col));
    }
    return basis;
}

bool solve_linear(const FpMat& a, const std::vector<uint32_t>& b, std::vector<uint32_t>& x) {
    internal_check(static_cast<long>(b.size()) == a.rows(), "solve_linear: shape mismatch");
    const uint32_t p = a.modulus();
    Fp fp(p);
    FpMat aug(p, a.rows(), a.cols() + 1);
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<long> pivot_of_row;
    long r = 0;
    for (long c = 0; c < a.cols() && r < a.rows(); ++c) {
        long piv = -1;
        for (long i = r; i < a.rows(); ++i)
            if (aug.at(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (long j = 0; j <= a.cols(); ++j) std::swap(aug.at(piv, j), aug.at(r, j));
        uint32_t d = fp.inv(aug.at(r, c));
        for (long j = c; j <= a.cols(); ++j) aug.at(r, j) = fp.mul(aug.at(r, j), d);
        for (long i = 0; i < a.rows(); ++i) {
            if (i == r || !aug.at(i, c)) continue;
            uint32_t f = fp.neg(aug.at(i, c));
            for (long j = c; j <= a.cols(); ++j)
                aug.at(i, j) = fp.add(aug.at(i, j), fp.mul(f, aug.at(r, j)));
        }
        pivot_of_row.push_back(c);
        ++r;
    }
    for (long i = r; i < a.rows(); ++i)
        if (aug.at(i, a.cols())) return false;
    x.assign(a.cols(), 0);
    for (long i = 0; i < r; ++i) x[pivot_of_row[i]] = aug.at(i, a.cols());
    return true;
}

// ---- polynomials ----

FpPoly poly_trim(FpPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

FpPoly poly_mul(const Fp& fp, const FpPoly& f, const FpPoly& g) {
    if (f.empty() || g.empty()) return {};
    FpPoly r(f.size() + g.size() - 1, 0);
    for (size_t i = 0; i < f.size(); ++i) {
        if (!f[i]) continue;
        for (size_t j = 0; j < g.size(); ++j)
            r[i + j] = static_cast<uint32_t>((r[i + j] + (uint64_t)f[i] * g[j]) % fp.p);
    }
    return poly_trim(std::move(r));
}

FpPoly poly_mod(const Fp& fp, FpPoly f, const FpPoly& g) {
    internal_check(!g.empty(), "poly_mod: division by zero polynomial");
    f = poly_trim(std::move(f));
    uint32_t lead_inv = fp.inv(g.back());
    while (f.size() >= g.size()) {
        uint32_t c = fp.mul(f.back(), lead_inv);
        size_t off = f.size() - g.size();
        if (c)
            for (size_t j = 0; j < g.size(); ++j)
                f[off + j] = fp.sub(f[off + j], fp.mul(c, g[j]));
        f.pop_back();
        while (!f.empty() && f.back() == 0) f.pop_back();
    }
    return f;
}

FpPoly poly_divexact(const Fp& fp, const FpPoly& f, const FpPoly& g) {
    internal_check(!g.empty(), "poly_divexact: zero divisor");
    FpPoly rem = poly_trim(f);
    if (rem.empty()) return {};
    internal_check(rem.size() >= g.size(), "poly_divexact: degree too small");
    FpPoly q(rem.size() - g.size() + 1, 0);
    uint32_t lead_inv = fp.inv(g.back());
    while (rem.size() >= g.size()) {
        uint32_t c = fp.mul(rem.back(), lead_inv);
        size_t off = rem.size() - g.size();
        q[off] = c;
        for (size_t j = 0; j < g.size(); ++j) rem[off + j] = fp.sub(rem[off + j], fp.mul(c, g[j]));
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.size() < g.size()) break;
    }
    internal_check(rem.empty(), "poly_divexact: division not exact");
    return poly_trim(std::move(q));
}

FpPoly poly_monic(const Fp& fp, FpPoly f) {
    f = poly_trim(std::move(f));
    if (f.empty() || f.back() == 1) return f;
    uint32_t d = fp.inv(f.back());
    for (auto& c : f) c = fp.mul(c, d);
    return f;
}

FpPoly poly_gcd(const Fp& fp, FpPoly f, FpPoly g) {
    f = poly_trim(std::move(f));
    g = poly_trim(std::move(g));
    while (!g.empty()) {
        FpPoly r = poly_mod(fp, f, g);
        f = std::move(g);
        g = std::move(r);
    }
    return poly_monic(fp, std::move(f));
}

FpPoly poly_derivative(const Fp& fp, const FpPoly& f) {
    FpPoly d;
    for (size_t i = 1; i < f.size(); ++i)
        d.push_back(static_cast<uint32_t>((uint64_t)f[i] * (i % fp.p) % fp.p));
    return poly_trim(std::move(d));
}

FpPoly poly_ext_gcd(const Fp& fp, const FpPoly& f, const FpPoly& g, FpPoly& s, FpPoly& t) {
    FpPoly r0 = poly_trim(f), r1 = poly_trim(g);
    FpPoly s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        // quotient of r0 by r1
        FpPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
        FpPoly rem = r0;
        uint32_t lead_inv = fp.inv(r1.back());
        while (rem.size() >= r1.size() && !rem.empty()) {
            uint32_t c = fp.mul(rem.back(), lead_inv);
            size_t off = rem.size() - r1.size();
            q[off] = c;
            for (size_t j = 0; j < r1.size(); ++j)
                rem[off + j] = fp.sub(rem[off + j], fp.mul(c, r1[j]));
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
        }
        q = poly_trim(std::move(q));
        auto step = [&](FpPoly& a0, FpPoly& a1) {
            FpPoly next = a0;
            FpPoly qa = poly_mul(fp, q, a1);
            size_t n = std::max(next.size(), qa.size());
            next.resize(n, 0);
            for (size_t i = 0; i < qa.size(); ++i) next[i] = fp.sub(next[i], qa[i]);
            a0 = std::move(a1);
            a1 = poly_trim(std::move(next));
        };
        r0 = std::move(r1);
        r1 = poly_trim(std::move(rem));
        step(s0, s1);
        step(t0, t1);
    }
    // normalize gcd monic
    if (!r0.empty() && r0.back() != 1) {
        uint32_t d = fp.inv(r0.back());
        for (auto& c : r0) c = fp.mul(c, d);
        for (auto& c : s0) c = fp.mul(c, d);
        for (auto& c : t0) c = fp.mul(c, d);
    }
    s = std::move(s0);
    t = std::move(t0);
    return r0;
}

namespace {

// T^(p^k) mod f via repeated Frobenius.
FpPoly frobenius_power(const Fp& fp, const FpPoly& base, const FpPoly& f) {
    // base^p mod f
    FpPoly r = {1};
    FpPoly b = base;
    uint32_t e = fp.p;
    while (e) {
        if (e & 1) r = poly_mod(fp, poly_mul(fp, r, b), f);
        b = poly_mod(fp, poly_mul(fp, b, b), f);
        e >>= 1;
    }
    return r;
}

// a^((p^d-1)/2) mod f, using (p^d-1)/2 = (p-1)/2 * (1 + p + ... + p^(d-1)).
FpPoly half_norm_power(const Fp& fp, const FpPoly& a, long d, const FpPoly& f) {
    FpPoly t = poly_mod(fp, a, f);
    FpPoly acc = t;
    for (long i = 1; i < d; ++i) {
        t = frobenius_power(fp, t, f);
        acc = poly_mod(fp, poly_mul(fp, acc, t), f);
    }
    FpPoly r = {1};
    uint32_t e = (fp.p - 1) / 2;
    FpPoly b = acc;
    while (e) {
        if (e & 1) r = poly_mod(fp, poly_mul(fp, r, b), f);
        b = poly_mod(fp, poly_mul(fp, b, b), f);
        e >>= 1;
    }
    return r;
}

void equal_degree_split(const Fp& fp, const FpPoly& f, long d, SplitMix64& rng,
                        std::vector<FpPoly>& out) {
    long deg = static_cast<long>(f.size()) - 1;
    if (deg == d) {
        out.push_back(f);
        return;
    }
    internal_check(fp.p > 2, "equal_degree_split: odd characteristic required");
    while (true) {
        FpPoly a(deg, 0);
        for (long i = 0; i < deg; ++i) a[i] = rng.below(fp.p);
        a = poly_trim(std::move(a));
        if (a.empty() || poly_trim(a).size() <= 1) continue;
        FpPoly g = poly_gcd(fp, a, f);
        if (g.size() > 1 && g.size() <= static_cast<size_t>(deg)) {
            equal_degree_split(fp, poly_monic(fp, g), d, rng, out);
            equal_degree_split(fp, poly_divexact(fp, f, g), d, rng, out);
            return;
        }
        FpPoly b = half_norm_power(fp, a, d, f);
        if (b.empty()) continue;
        b[0] = fp.sub(b[0], 1);
        b = poly_trim(std::move(b));
        if (b.empty()) continue;
        g = poly_gcd(fp, b, f);
        if (g.size() > 1 && g.size() <= static_cast<size_t>(deg)) {
            equal_degree_split(fp, poly_monic(fp, g), d, rng, out);
            equal_degree_split(fp, poly_divexact(fp, f, g), d, rng, out);
            return;
        }
    }
}

// Distinct irreducible factors of a squarefree monic polynomial.
std::vector<FpPoly> factor_squarefree(const Fp& fp, FpPoly f, SplitMix64& rng) {
    std::vector<FpPoly> out;
    FpPoly h = {0, 1};  // T
    long d = 0;
    while (f.size() > 1) {
        ++d;
        if (2 * d > static_cast<long>(f.size()) - 1) {
            out.push_back(f);  // remaining factor is irreducible
            break;
        }
        h = frobenius_power(fp, h, f);
        FpPoly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = fp.sub(diff[1], 1);
        diff = poly_trim(std::move(diff));
        FpPoly g = diff.empty() ? f : poly_gcd(fp, diff, f);
        if (g.size() > 1) {
            equal_degree_split(fp, poly_monic(fp, g), d, rng, out);
            f = poly_divexact(fp, f, g);
            h = poly_mod(fp, h, f);
        }
    }
    return out;
}

FpPoly pth_root(const Fp& fp, const FpPoly& f) {
    // Over the prime field, f(T) with f' = 0 is g(T)^p with g from stride-p coefficients.
    FpPoly g;
    for (size_t i = 0; i < f.size(); i += fp.p) g.push_back(f[i]);
    return poly_trim(std::move(g));
}

}  // namespace

std::vector<std::pair<FpPoly, long>> poly_factor(const Fp& fp, FpPoly f, uint64_t seed) {
    f = poly_monic(fp, std::move(f));
    internal_check(!f.empty(), "poly_factor: zero polynomial");
    SplitMix64 rng(seed ^ 0xa5a5a5a55a5a5a5aull);
    FpPoly original = f;
    std::vector<FpPoly> irreducibles;
    while (f.size() > 1) {
        FpPoly d = poly_derivative(fp, f);
        if (d.empty()) {
            f = pth_root(fp, f);
            continue;
        }
        FpPoly g = poly_gcd(fp, f, d);
        FpPoly sf = poly_divexact(fp, f, g);  // distinct factors with mult. prime to p
        for (auto& h : factor_squarefree(fp, poly_monic(fp, std::move(sf)), rng)) {
            bool seen = false;
            for (const auto& k : irreducibles) seen = seen || k == h;
            if (!seen) irreducibles.push_back(h);
        }
        // Strip every found factor completely, then continue with what is left.
        for (const auto& h : irreducibles) {
            while (f.size() >= h.size() && poly_mod(fp, f, h).empty())
                f = poly_divexact(fp, f, h);
        }
    }
    std::vector<std::pair<FpPoly, long>> out;
    for (const auto& h : irreducibles) {
        long mult = 0;
        FpPoly t = original;
        while (t.size() >= h.size() && poly_mod(fp, t, h).empty()) {
            t = poly_divexact(fp, t, h);
            ++mult;
        }
        out.push_back({h, mult});
    }
    std::sort(out.begin(), out.end());
    return out;
}

FpPoly min_poly(const FpMat& a) {
    internal_check(a.rows() == a.cols(), "min_poly: square matrix required");
    const long n = a.rows();
    const uint32_t p = a.modulus();
    Fp fp(p);
    RowReducer red(p, n * n);
    std::vector<FpMat> powers;
    powers.push_back(FpMat::identity(p, n));
    std::vector<std::vector<std::pair<long, uint32_t>>> reductions;  // row index -> combo? not needed
    // Track coordinates: keep copies of the raw vec(power) plus reduce to find dependency.
    std::vector<std::vector<uint32_t>> raw;
    while (true) {
        const FpMat& cur = powers.back();
        std::vector<uint32_t> v(cur.data().begin(), cur.data().end());
        raw.push_back(v);
        if (red.add_row(v) < 0) break;
        powers.push_back(cur * a);
        internal_check(static_cast<long>(powers.size()) <= n + 1, "min_poly: no dependency found");
    }
    // Solve sum c_k A^k = 0 with c_deg = 1, deg = powers.size()-1.
    const long deg = static_cast<long>(powers.size()) - 1;
    FpMat sys(p, n * n, deg);
    for (long k = 0; k < deg; ++k)
        for (long i = 0; i < n * n; ++i) sys.at(i, k) = raw[k][i];
    std::vector<uint32_t> rhs(n * n);
    for (long i = 0; i < n * n; ++i) rhs[i] = fp.neg(raw[deg][i]);
    std::vector<uint32_t> coeffs;
    bool ok = solve_linear(sys, rhs, coeffs);
    internal_check(ok, "min_poly: linear solve failed");
    FpPoly m(deg + 1, 0);
    for (long k = 0; k < deg; ++k) m[k] = coeffs[k];
    m[deg] = 1;
    return m;
}

FpPoly char_poly(const FpMat& a) {
    internal_check(a.rows() == a.cols(), "char_poly: square matrix required");
    const long n = a.rows();
    const uint32_t p = a.modulus();
    Fp fp(p);
    if (n == 0) return {1};
    FpMat h = a;
    // Similarity reduction to upper Hessenberg form with pivoting.
    for (long j = 0; j + 2 < n; ++j) {
        long piv = -1;
        for (long i = j + 1; i < n; ++i)
            if (h.at(i, j)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != j + 1) {
            for (long c = 0; c < n; ++c) std::swap(h.at(piv, c), h.at(j + 1, c));
            for (long r = 0; r < n; ++r) std::swap(h.at(r, piv), h.at(r, j + 1));
        }
        uint32_t inv = fp.inv(h.at(j + 1, j));
        for (long i = j + 2; i < n; ++i) {
            uint32_t f = fp.mul(h.at(i, j), inv);
            if (!f) continue;
            uint32_t g = fp.neg(f);
            for (long c = 0; c < n; ++c)
                h.at(i, c) = fp.add(h.at(i, c), fp.mul(g, h.at(j + 1, c)));
            for (long r = 0; r < n; ++r)
                h.at(r, j + 1) = fp.add(h.at(r, j + 1), fp.mul(f, h.at(r, i)));
        }
    }
    // det(T I - H) on leading principal blocks of the Hessenberg matrix.
    std::vector<FpPoly> princ(static_cast<size_t>(n) + 1);
    princ[0] = {1};
    for (long i = 1; i <= n; ++i) {
        // (T - H[i-1][i-1]) * princ[i-1]
        FpPoly cur(princ[i - 1].size() + 1, 0);
        for (size_t k = 0; k < princ[i - 1].size(); ++k) {
            cur[k + 1] = fp.add(cur[k + 1], princ[i - 1][k]);
            cur[k] = fp.sub(cur[k], fp.mul(h.at(i - 1, i - 1), princ[i - 1][k]));
        }
        uint32_t subprod = 1;
        for (long k = 1; k <= i - 1; ++k) {
            subprod = fp.mul(subprod, h.at(i - k, i - k - 1));
            if (!subprod) break;
            uint32_t coeff = fp.mul(h.at(i - 1 - k, i - 1), subprod);
            if (!coeff) continue;
            // cur -= coeff * princ[i-1-k]
            for (size_t m = 0; m < princ[i - 1 - k].size(); ++m)
                cur[m] = fp.sub(cur[m], fp.mul(coeff, princ[i - 1 - k][m]));
        }
        princ[i] = std::move(cur);
    }
    return princ[n];
}

FpMat poly_eval(const FpPoly& f, const FpMat& a) {
    const long n = a.rows();
    FpMat r(a.modulus(), n, n);
    for (size_t k = f.size(); k-- > 0;) {
        r = r * a;
        if (f[k]) r = r + FpMat::identity(a.modulus(), n).scaled(f[k]);
    }
    return r;
}

JordanForm jordan_unipotent(const FpMat& s) {
    const long n = s.rows();
    const uint32_t p = s.modulus();
    FpMat nmat = s - FpMat::identity(p, n);
    // Kernel flags of N^i.
    std::vector<FpMat> npow = {FpMat::identity(p, n)};
    std::vector<std::vector<std::vector<uint32_t>>> kernels = {{}};  // kernels[i] = basis of ker N^i
    long s_idx = 0;
    while (true) {
        npow.push_back(npow.back() * nmat);
        auto ker = RowReducer::kernel(npow.back());
        kernels.push_back(ker);
        ++s_idx;
        if (static_cast<long>(ker.size()) == n) break;
        internal_check(s_idx <= n, "jordan_unipotent: matrix is not unipotent");
    }
    const long nil = s_idx;  // nilpotency index

    struct Chain { std::vector<uint32_t> top; long length; };
    std::vector<Chain> chains;
    for (long i = nil; i >= 1; --i) {
        RowReducer d(p, n);
        for (const auto& v : kernels[i - 1]) d.add_row(v);
        for (const auto& ch : chains) {
            // level-i member of a longer chain: N^(length-i) * top
            std::vector<uint32_t> v(n, 0);
            const FpMat& m = npow[ch.length - i];
            for (long r = 0; r < n; ++r) {
                uint64_t acc = 0;
                for (long c = 0; c < n; ++c) acc += (uint64_t)m.at(r, c) * ch.top[c];
                v[r] = static_cast<uint32_t>(acc % p);
            }
            d.add_row(std::move(v));
        }
        for (const auto& w : kernels[i]) {
            if (d.add_row(w) >= 0) chains.push_back({w, i});
        }
    }
    std::sort(chains.begin(), chains.end(),
              [](const Chain& a, const Chain& b) { return a.length > b.length; });

    JordanForm jf;
    jf.basis = FpMat(p, n, n);
    long col = 0;
    for (const auto& ch : chains) {
        jf.block_sizes.push_back(ch.length);
        for (long j = ch.length - 1; j >= 0; --j) {
            const FpMat& m = npow[j];
            for (long r = 0; r < n; ++r) {
                uint64_t acc = 0;
                for (long c = 0; c < n; ++c) acc += (uint64_t)m.at(r, c) * ch.top[c];
                jf.basis.at(r, col) = static_cast<uint32_t>(acc % p);
            }
            ++col;
        }
    }
    internal_check(col == n, "jordan_unipotent: chain vectors do not span");
    jf.basis_inv = jf.basis.inverse();
    // Verify basis_inv * s * basis is the expected Jordan matrix.
    FpMat j = jf.basis_inv * s * jf.basis;
    FpMat expected(p, n, n);
    long off = 0;
    for (long sz : jf.block_sizes) {
        for (long i = 0; i < sz; ++i) {
            expected.at(off + i, off + i) = 1;
            if (i + 1 < sz) expected.at(off + i, off + i + 1) = 1;
        }
        off += sz;
    }
    internal_check(j == expected, "jordan_unipotent: conjugation does not give Jordan form");
    return jf;
}

}  // namespace splitk
