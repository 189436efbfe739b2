#include <doctest.h>

#include "splitk/elliptic.hpp"
#include "splitk/witness.hpp"

using namespace splitk;

namespace {

RingElement mono(long ell, long i, long j, long c = 1) {
    return RingElement::monomial(ell, box_std(i, j), Int(c));
}

RingElement w_label(long ell, HLabel left, HLabel right, long c = 1) {
    RingElement r(ell);
    r.add_term(BoxLabel{left, right}, Int(c));
    return r;
}

}  // namespace

TEST_SUITE("witness") {

TEST_CASE("surface class") {
    RingElement k3 = k3_class(7);
    CHECK(k3 == RingElement::one(7).scaled(Int(20)) + mono(7, 1, 1));
    CHECK(k3.dimension() == Int(24));
    CHECK(is_effective(k3));
}

TEST_CASE("true symmetric sequence") {
    auto a7 = true_sym_sequence(7);
    REQUIRE(a7.size() == 7);
    CHECK(a7[0] == RingElement::one(7));
    CHECK(a7[1] == k3_class(7));
    // a2 = V2#V2 + 20 V1#V1 + 211 trivials (210 from Sym^2 of the trivial
    // part plus 1 from Sym^2 of the box part).
    RingElement expect =
        mono(7, 2, 2) + mono(7, 1, 1, 20) + RingElement::one(7).scaled(Int(211));
    CHECK(a7[2] == expect);
    for (size_t i = 0; i < a7.size(); ++i)
        CHECK(a7[i].dimension() == binomial(static_cast<long>(i) + 23, 23));
}

TEST_CASE("forced box coefficient at ell=5, exact value") {
    RingElement c5 = forced_box_coefficient(5);
    RingElement expect = w_label(5, HLabel::big_w(), HLabel::big_w()) +
                         w_label(5, HLabel::big_w(), HLabel::std_module(3), -1) +
                         w_label(5, HLabel::std_module(3), HLabel::big_w(), -1) +
                         mono(5, 3, 3, 2) + mono(5, 1, 1);
    CHECK(c5 == expect);
    CHECK(c5.dimension() == binomial(5 + 3, 3));
    // Boundary shape at ell=7.
    RingElement c7 = forced_box_coefficient(7);
    RingElement reduced = reduce_mod_filtration(c7, 6);
    RingElement shape = w_label(7, HLabel::big_w(), HLabel::big_w()) +
                        w_label(7, HLabel::big_w(), HLabel::std_module(5), -1) +
                        w_label(7, HLabel::std_module(5), HLabel::big_w(), -1);
    CHECK(reduced == shape);
    CHECK(c7.dimension() == binomial(7 + 3, 3));
}

TEST_CASE("forced full sequence") {
    const long ell = 5;
    auto a = forced_full_sequence(ell);
    auto t = true_sym_sequence(ell);
    REQUIRE(a.size() == 6);
    for (long i = 0; i <= ell - 1; ++i) CHECK(a[i] == t[i]);
    // a_l minus the binomial tail is the forced coefficient.
    RingElement tail(ell);
    for (long j = 0; j <= ell - 1; ++j)
        tail = tail + sym_power_box(ell, j).scaled(binomial(ell - j + 19, 19));
    CHECK(a[ell] - tail == forced_box_coefficient(ell));
    CHECK(reduce_mod_filtration(a[ell], ell - 1) ==
          reduce_mod_filtration(forced_box_coefficient(ell), ell - 1));
}

TEST_CASE("run_witness at small primes") {
    for (long ell : {5l, 7l}) {
        WitnessReport report = run_witness(ell);
        CHECK(report.coeff_ww == Int(1));
        CHECK(report.coeff_w_v == Int(-1));
        CHECK(report.coeff_v_w == Int(-1));
        CHECK(!report.effective);
        RingElement shape = w_label(ell, HLabel::big_w(), HLabel::big_w()) +
                            w_label(ell, HLabel::big_w(), HLabel::std_module(ell - 2), -1) +
                            w_label(ell, HLabel::std_module(ell - 2), HLabel::big_w(), -1);
        CHECK(report.b_ell_reduced == shape);
        CHECK(!report.assumptions.empty());
    }
}

TEST_CASE("cross check at ell=5: quotient-model Sym^5 differs from the forced value") {
    Oracle oracle(5);
    CrossCheckReport report = cross_check_actual_sym_ell(oracle);
    CHECK(report.actual_dim == Int(56));
    CHECK(report.forced_dim == Int(56));
    CHECK(!report.difference.is_zero());
    CHECK(is_effective(report.actual));
}

TEST_CASE("cross check at ell=7") {
    Oracle oracle(7);
    CrossCheckReport report = cross_check_actual_sym_ell(oracle);
    CHECK(report.actual_dim == binomial(10, 3));
    CHECK(report.forced_dim == binomial(10, 3));
    CHECK(!report.difference.is_zero());
    CHECK(is_effective(report.actual));
    Oracle o11(11);
    CHECK_THROWS_AS(cross_check_actual_sym_ell(o11), BudgetExceededError);
}

TEST_CASE("elliptic curve data") {
    EllipticCurve e11 = curve_by_label("11a1");
    EllipticCurve e33 = curve_by_label("33a1");
    CHECK(!e11.discriminant().is_zero());
    CHECK(!e33.discriminant().is_zero());

    // Frozen values from the exhaustive point count itself (the modular-form
    // coefficients of levels 11 and 33 agree with these).
    CHECK(elliptic_ap(e11, 5) == 1);
    CHECK(elliptic_ap(e33, 5) == -2);
    CHECK(elliptic_ap(e33, 5) % 5 != 0);  // ordinary at 5
    CHECK(elliptic_ap(e11, 19) == 0);     // supersingular at 19
    CHECK(elliptic_ap(e11, 2) == -2);
    CHECK(elliptic_ap(e11, 3) == -1);
    CHECK(elliptic_ap(e11, 7) == -2);
    CHECK(elliptic_ap(e33, 2) == 1);

    CHECK_THROWS_AS(elliptic_ap(e11, 11), BadReductionError);
    CHECK_THROWS_AS(elliptic_ap(e33, 11), BadReductionError);
    CHECK_THROWS_AS(elliptic_ap(e33, 3), BadReductionError);
    CHECK_THROWS_AS(elliptic_ap(e11, 10007), BudgetExceededError);
    CHECK_THROWS_AS(curve_by_label("37a1"), std::invalid_argument);

    // Hasse bound on a range of good primes.
    for (long p : {2l, 3l, 5l, 7l, 13l, 17l, 19l, 23l}) {
        long ap = elliptic_ap(e11, p);
        CHECK(static_cast<double>(ap) * ap <= 4.0 * p);
    }
}

}  // TEST_SUITE
