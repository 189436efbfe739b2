#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splitk/errors.hpp"

namespace splitk {

// Arithmetic context for the prime field F_p.
struct Fp {
    uint32_t p;

    explicit Fp(uint32_t prime) : p(prime) {
        if (prime < 2) throw std::invalid_argument("Fp: modulus must be a prime >= 2");
    }
    uint32_t add(uint32_t a, uint32_t b) const { uint32_t s = a + b; return s >= p ? s - p : s; }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const { return static_cast<uint32_t>((uint64_t)a * b % p); }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t inv(uint32_t a) const;  // a != 0
    uint32_t reduce_signed(long long v) const {
        long long r = v % (long long)p;
        return static_cast<uint32_t>(r < 0 ? r + p : r);
    }
};

// Dense matrix over F_p, row major, entries stored reduced.
class FpMat {
public:
    FpMat() : p_(2), rows_(0), cols_(0) {}
    FpMat(uint32_t p, long rows, long cols)
        : p_(p), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

    static FpMat identity(uint32_t p, long n);

    uint32_t modulus() const { return p_; }
    long rows() const { return rows_; }
    long cols() const { return cols_; }
    uint32_t& at(long i, long j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    uint32_t at(long i, long j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const uint32_t* row_ptr(long i) const { return a_.data() + static_cast<size_t>(i) * cols_; }
    uint32_t* row_ptr(long i) { return a_.data() + static_cast<size_t>(i) * cols_; }
    const std::vector<uint32_t>& data() const { return a_; }

    bool operator==(const FpMat& o) const = default;

    FpMat operator+(const FpMat& o) const;
    FpMat operator-(const FpMat& o) const;
    FpMat operator*(const FpMat& o) const;
    FpMat scaled(uint32_t c) const;
    FpMat transpose() const;
    FpMat kron(const FpMat& o) const;
    FpMat pow(uint64_t e) const;
    FpMat inverse() const;  // throws InternalCheckError if singular
    uint32_t trace() const;
    bool is_identity() const;
    bool is_zero() const;
    long rank() const;

    std::string to_string() const;

private:
    uint32_t p_;
    long rows_, cols_;
    std::vector<uint32_t> a_;
};

// Incremental row-echelon builder over F_p. Rows are normalized (pivot 1)
// and newly added rows are fully reduced against existing pivots; existing
// rows are not back-eliminated, so this maintains an REF, not an RREF.
class RowReducer {
public:
    RowReducer(uint32_t p, long width) : fp_(p), width_(width) {}

    long width() const { return width_; }
    long rank() const { return static_cast<long>(rows_.size()); }
    const std::vector<uint32_t>& row(long i) const { return rows_[i]; }
    long pivot_col(long i) const { return pivots_[i]; }

    // Reduces v against the current rows in place.
    void reduce(std::vector<uint32_t>& v) const;
    // Reduces v; if nonzero, normalizes and stores it. Returns the pivot
    // column of the stored row, or -1 if v reduced to zero.
    long add_row(std::vector<uint32_t> v);
    bool contains(std::vector<uint32_t> v) const {
        reduce(v);
        for (uint32_t x : v)
            if (x) return false;
        return true;
    }

    // Basis of {x : M x = 0} where M is the matrix whose rows were added.
    // Valid only when constructed through feed_matrix_rows.
    static std::vector<std::vector<uint32_t>> kernel(const FpMat& m);

private:
    Fp fp_;
    long width_;
    std::vector<std::vector<uint32_t>> rows_;
    std::vector<long> pivots_;  // pivot col per stored row
};

// Column-space basis (as column vectors) of m.
std::vector<std::vector<uint32_t>> column_space(const FpMat& m);

// Solves A x = b for a single solution; returns false if inconsistent.
bool solve_linear(const FpMat& a, const std::vector<uint32_t>& b, std::vector<uint32_t>& x);

// ---- univariate polynomials over F_p (coeff[i] = coefficient of T^i) ----
using FpPoly = std::vector<uint32_t>;

FpPoly poly_trim(FpPoly f);
FpPoly poly_mul(const Fp& fp, const FpPoly& f, const FpPoly& g);
FpPoly poly_mod(const Fp& fp, FpPoly f, const FpPoly& g);
FpPoly poly_divexact(const Fp& fp, const FpPoly& f, const FpPoly& g);
FpPoly poly_gcd(const Fp& fp, FpPoly f, FpPoly g);  // monic
FpPoly poly_derivative(const Fp& fp, const FpPoly& f);
FpPoly poly_monic(const Fp& fp, FpPoly f);
// s*f + t*g = gcd(f,g); returns gcd (monic).
FpPoly poly_ext_gcd(const Fp& fp, const FpPoly& f, const FpPoly& g, FpPoly& s, FpPoly& t);

// Irreducible factors with multiplicities, deterministic given the seed.
std::vector<std::pair<FpPoly, long>> poly_factor(const Fp& fp, FpPoly f, uint64_t seed);

// Minimal polynomial of a square matrix (monic).
FpPoly min_poly(const FpMat& a);
// Characteristic polynomial (monic, degree n) via Hessenberg reduction.
FpPoly char_poly(const FpMat& a);
// Evaluates f at the matrix a.
FpMat poly_eval(const FpPoly& f, const FpMat& a);

// ---- unipotent Jordan structure ----
struct JordanForm {
    FpMat basis;          // columns: chain vectors, N-chains bottom-to-top
    FpMat basis_inv;
    std::vector<long> block_sizes;  // weakly decreasing
};

// Jordan form of a unipotent matrix (all eigenvalues 1). Chain columns are
// ordered so that basis_inv * s * basis is the standard upper Jordan matrix.
JordanForm jordan_unipotent(const FpMat& s);

// Deterministic splittable PRNG (splitmix64).
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint32_t below(uint32_t n) { return static_cast<uint32_t>(next() % n); }
};

}  // namespace splitk
