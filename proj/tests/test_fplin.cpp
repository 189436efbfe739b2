#include <doctest.h>

#include "splitk/fplin.hpp"

using namespace splitk;

namespace {

FpMat from_rows(uint32_t p, std::initializer_list<std::initializer_list<uint32_t>> rows) {
    FpMat m(p, static_cast<long>(rows.size()), static_cast<long>(rows.begin()->size()));
    long i = 0;
    for (const auto& row : rows) {
        long j = 0;
        for (uint32_t v : row) m.at(i, j++) = v % p;
        ++i;
    }
    return m;
}

}  // namespace

TEST_SUITE("fplin") {

TEST_CASE("field basics") {
    Fp f(7);
    CHECK(f.add(5, 4) == 2);
    CHECK(f.sub(2, 5) == 4);
    CHECK(f.mul(3, 5) == 1);
    CHECK(f.inv(3) == 5);
    CHECK(f.pow(3, 6) == 1);
    CHECK(f.reduce_signed(-3) == 4);
}

TEST_CASE("matrix product, inverse, rank") {
    FpMat a = from_rows(5, {{1, 2}, {3, 4}});
    FpMat inv = a.inverse();
    CHECK((a * inv).is_identity());
    CHECK(a.rank() == 2);
    FpMat sing = from_rows(5, {{1, 2}, {2, 4}});
    CHECK(sing.rank() == 1);
    CHECK_THROWS_AS(sing.inverse(), InternalCheckError);
    CHECK(a.pow(0).is_identity());
    CHECK(a.pow(3) == a * a * a);
    FpMat k = a.kron(FpMat::identity(5, 2));
    CHECK(k.rows() == 4);
    CHECK(k.at(0, 0) == 1);
    CHECK(k.at(0, 2) == 2);
}

TEST_CASE("kernel and column space") {
    FpMat m = from_rows(5, {{1, 2, 3}, {0, 1, 4}});
    auto ker = RowReducer::kernel(m);
    REQUIRE(ker.size() == 1);
    // Verify M x = 0.
    for (long i = 0; i < m.rows(); ++i) {
        uint64_t acc = 0;
        for (long j = 0; j < m.cols(); ++j) acc += (uint64_t)m.at(i, j) * ker[0][j];
        CHECK(acc % 5 == 0);
    }
    auto cols = column_space(m);
    CHECK(cols.size() == 2);

    // Random kernel dimensions agree with the rank theorem.
    SplitMix64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        FpMat r(7, 6, 9);
        for (long i = 0; i < 6; ++i)
            for (long j = 0; j < 9; ++j) r.at(i, j) = rng.below(7);
        CHECK(static_cast<long>(RowReducer::kernel(r).size()) == 9 - r.rank());
    }
}

TEST_CASE("solve_linear") {
    FpMat a = from_rows(7, {{1, 2}, {3, 4}, {4, 6}});
    std::vector<uint32_t> b = {5, 6, 4};  // third row = first + second
    std::vector<uint32_t> x;
    REQUIRE(solve_linear(a, b, x));
    for (long i = 0; i < 3; ++i) {
        uint64_t acc = 0;
        for (long j = 0; j < 2; ++j) acc += (uint64_t)a.at(i, j) * x[j];
        CHECK(acc % 7 == b[i]);
    }
    std::vector<uint32_t> bad = {5, 6, 5};
    CHECK(!solve_linear(a, bad, x));
}

TEST_CASE("polynomial factorization over small prime fields") {
    Fp f(5);
    // (T+1)^2 (T^2+2) over F_5; T^2+2 is irreducible (2 is not a QR mod 5).
    FpPoly a = {1, 1};          // T + 1
    FpPoly b = {2, 0, 1};       // T^2 + 2
    FpPoly prod = poly_mul(f, poly_mul(f, a, a), b);
    auto factors = poly_factor(f, prod, 0);
    REQUIRE(factors.size() == 2);
    bool saw_linear = false, saw_quad = false;
    for (const auto& [g, e] : factors) {
        if (g == poly_monic(f, a)) {
            saw_linear = true;
            CHECK(e == 2);
        }
        if (g == poly_monic(f, b)) {
            saw_quad = true;
            CHECK(e == 1);
        }
    }
    CHECK(saw_linear);
    CHECK(saw_quad);

    // p-th power detection: (T^2+T+1)^5 over F_5.
    FpPoly c = {1, 1, 1};
    FpPoly cp = {1};
    for (int i = 0; i < 5; ++i) cp = poly_mul(f, cp, c);
    auto fps = poly_factor(f, cp, 0);
    REQUIRE(fps.size() == 1);
    CHECK(fps[0].second == 5);

    // Random products reassemble.
    SplitMix64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        FpPoly poly = {1};
        for (int k = 0; k < 4; ++k) {
            FpPoly lin = {rng.below(5), 1};
            poly = poly_mul(f, poly, lin);
        }
        FpPoly back = {1};
        for (const auto& [g, e] : poly_factor(f, poly, trial))
            for (long i = 0; i < e; ++i) back = poly_mul(f, back, g);
        CHECK(back == poly_monic(f, poly));
    }
}

TEST_CASE("min_poly") {
    // Nilpotent Jordan block: min poly T^3.
    FpMat n = from_rows(5, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    CHECK(min_poly(n) == FpPoly{0, 0, 0, 1});
    // Diagonal(1,2): (T-1)(T-2) = T^2 - 3T + 2 = T^2 + 2T + 2 over F_5.
    FpMat d = from_rows(5, {{1, 0}, {0, 2}});
    CHECK(min_poly(d) == FpPoly{2, 2, 1});
    // poly_eval kills the matrix.
    CHECK(poly_eval(min_poly(d), d).is_zero());
}

TEST_CASE("jordan form of unipotent matrices") {
    // Distinct block sizes via a sym-power style matrix: companion-like.
    FpMat u = from_rows(5, {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    JordanForm jf = jordan_unipotent(u);
    CHECK(jf.block_sizes == std::vector<long>{2, 1, 1});
    // Random conjugates of known Jordan structure recover the block sizes.
    SplitMix64 rng(11);
    FpMat j0(7, 5, 5);
    // blocks 3 + 2
    for (long i = 0; i < 5; ++i) j0.at(i, i) = 1;
    j0.at(0, 1) = 1;
    j0.at(1, 2) = 1;
    j0.at(3, 4) = 1;
    for (int trial = 0; trial < 10; ++trial) {
        FpMat p(7, 5, 5);
        do {
            for (long i = 0; i < 5; ++i)
                for (long j = 0; j < 5; ++j) p.at(i, j) = rng.below(7);
        } while (p.rank() != 5);
        FpMat s = p * j0 * p.inverse();
        JordanForm jf2 = jordan_unipotent(s);
        CHECK(jf2.block_sizes == std::vector<long>{3, 2});
        CHECK((jf2.basis * jf2.basis_inv).is_identity());
    }
    // Non-unipotent input is rejected.
    FpMat bad = from_rows(5, {{2, 0}, {0, 1}});
    CHECK_THROWS_AS(jordan_unipotent(bad), InternalCheckError);
}

}  // TEST_SUITE
