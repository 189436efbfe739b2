#include <doctest.h>

#include <functional>
#include <set>

#include "splitk/hilb.hpp"

using namespace splitk;

namespace {

// Polynomial -> coefficient vector helper: terms are (x-exp, y-exp, coeff).
std::vector<uint32_t> vec_of(const LocalAlgebra& alg,
                             std::initializer_list<std::tuple<long, long, uint32_t>> terms) {
    std::vector<uint32_t> v(alg.dim, 0);
    for (const auto& [a, b, c] : terms) v[alg.index.at({a, b})] = c % alg.q;
    return v;
}

}  // namespace

TEST_SUITE("hilb") {

TEST_CASE("partition duals") {
    CHECK(Partition({2}).dual() == Partition({1, 1}));
    CHECK(Partition({3, 1}).dual() == Partition({2, 1, 1}));
    for (long n = 0; n <= 8; ++n)
        for (const auto& beta : partitions_of(n)) CHECK(beta.dual().dual() == beta);
    CHECK(partitions_of(5).size() == 7);
    CHECK(partitions_of(0).size() == 1);
}

TEST_CASE("chart for beta=(2)") {
    CellChart chart = build_cell_chart(Partition({2}));
    CHECK(chart.lambda == Partition({1, 1}));
    CHECK(chart.param_index.size() == 1);
    CHECK(chart.param_name(0) == "t11");
    // Q2 = y, P1 = 1, Q1 = y + t11 x
    ChartPoly q2;
    q2[ChartMonomial{0, 1, {}}] = 1;
    CHECK(chart.q[2] == q2);
    ChartPoly p1;
    p1[ChartMonomial{0, 0, {}}] = 1;
    CHECK(chart.p[1] == p1);
    ChartPoly q1;
    q1[ChartMonomial{0, 1, {}}] = 1;
    q1[ChartMonomial{1, 0, {{0, 1}}}] = 1;
    CHECK(chart.q[1] == q1);
}

TEST_CASE("chart for beta=(1,1)") {
    CellChart chart = build_cell_chart(Partition({1, 1}));
    CHECK(chart.lambda == Partition({2}));
    CHECK(chart.param_index.empty());
    ChartPoly q1;
    q1[ChartMonomial{0, 2, {}}] = 1;
    CHECK(chart.q[1] == q1);
}

TEST_CASE("chart for beta=(5,3,2,2,1) matches the displayed recursion") {
    CellChart chart = build_cell_chart(Partition({5, 3, 2, 2, 1}));
    CHECK(chart.lambda == Partition({5, 4, 2, 1, 1}));
    CHECK(chart.r == 5);
    CHECK(chart.s == 5);
    // Q5 = y Q6 and Q4 = Q5 + t41 x P1, with P1 = Q6 = 1.
    ChartPoly q5;
    q5[ChartMonomial{0, 1, {}}] = 1;
    CHECK(chart.q[5] == q5);
    ChartPoly q4 = q5;
    q4[ChartMonomial{1, 0, {{chart.param_id(4, 1), 1}}}] = 1;
    CHECK(chart.q[4] == q4);
    // P2 = Q4, P3 = Q3, P4 = y Q3, P5 = Q2.
    CHECK(chart.p[2] == chart.q[4]);
    CHECK(chart.p[3] == chart.q[3]);
    ChartPoly yq3;
    for (const auto& [m, c] : chart.q[3]) {
        ChartMonomial m2 = m;
        m2.ye += 1;
        yq3[m2] = c;
    }
    CHECK(chart.p[4] == yq3);
    CHECK(chart.p[5] == chart.q[2]);
}

TEST_CASE("chart congruences and parameter counts for all small partitions") {
    for (long n = 1; n <= 8; ++n)
        for (const auto& beta : partitions_of(n)) {
            CellChart chart = build_cell_chart(beta);  // congruences checked inside
            CHECK(static_cast<long>(chart.param_index.size()) == n - beta.num_parts());
        }
}

TEST_CASE("cell_ideal examples") {
    // beta=(2), q=3, t11=2: ideal (y+2x, xy, x^2), quotient basis {1, x}.
    CellChart chart = build_cell_chart(Partition({2}));
    IdealBasis ideal = cell_ideal(chart, {2}, 3);
    CHECK(ideal.codim() == 2);
    const auto& alg = *ideal.alg;
    CHECK(ideal.contains(vec_of(alg, {{0, 1, 1}, {1, 0, 2}})));  // y + 2x
    CHECK(!ideal.contains(vec_of(alg, {{1, 0, 1}})));            // x alone is not inside
    CHECK(!ideal.contains(vec_of(alg, {{0, 0, 1}})));

    // beta=(1,1): ideal (x, y^2) for any q.
    CellChart chart2 = build_cell_chart(Partition({1, 1}));
    IdealBasis ideal2 = cell_ideal(chart2, {}, 3);
    CHECK(ideal2.contains(vec_of(*ideal2.alg, {{1, 0, 1}})));
    CHECK(!ideal2.contains(vec_of(*ideal2.alg, {{0, 1, 1}})));

    // beta=(n) with zero parameters gives the monomial ideal (y, x^n).
    CellChart chart3 = build_cell_chart(Partition({4}));
    IdealBasis ideal3 = cell_ideal(chart3, {0, 0, 0}, 2);
    CHECK(ideal3.contains(vec_of(*ideal3.alg, {{0, 1, 1}})));
    CHECK(!ideal3.contains(vec_of(*ideal3.alg, {{3, 0, 1}})));
}

TEST_CASE("colon profiles") {
    // I = (x, y^2): lambda = (2), beta = (1,1). In the n=2 truncation the
    // generator y^2 vanishes, leaving (x).
    auto alg2 = make_local_algebra(5, 2);
    IdealBasis i1 = ideal_from_generators(alg2, {vec_of(*alg2, {{1, 0, 1}})});
    CHECK(colon_profile(i1) == Partition({2}));
    CHECK(colon_profile(i1).dual() == Partition({1, 1}));

    // I = (y+2x, xy, x^2) over F_3: lambda = (1,1), beta = (2).
    auto alg = make_local_algebra(3, 2);
    IdealBasis i2 = ideal_from_generators(alg, {vec_of(*alg, {{0, 1, 1}, {1, 0, 2}})});
    CHECK(colon_profile(i2) == Partition({1, 1}));

    // I = (x^2, xy, y^2): lambda = (2,1), self-dual beta = (2,1).
    auto alg3 = make_local_algebra(5, 3);
    IdealBasis i3 = ideal_from_generators(
        alg3,
        {vec_of(*alg3, {{2, 0, 1}}), vec_of(*alg3, {{1, 1, 1}}), vec_of(*alg3, {{0, 2, 1}})});
    CHECK(colon_profile(i3) == Partition({2, 1}));
    CHECK(colon_profile(i3).dual() == Partition({2, 1}));
}

TEST_CASE("recover_parameters inverts cell_ideal") {
    // The worked example first.
    CellChart chart = build_cell_chart(Partition({2}));
    IdealBasis ideal = cell_ideal(chart, {2}, 3);
    auto [beta, phi] = recover_parameters(ideal);
    CHECK(beta == Partition({2}));
    CHECK(phi == std::vector<uint32_t>{2});

    // Full round trip over F_2 for all cells of size <= 4.
    for (long n = 1; n <= 4; ++n)
        for (const auto& b : partitions_of(n)) {
            CellChart c = build_cell_chart(b);
            const long m = static_cast<long>(c.param_index.size());
            std::vector<uint32_t> assignment(m, 0);
            for (long mask = 0; mask < (1 << m); ++mask) {
                for (long i = 0; i < m; ++i) assignment[i] = (mask >> i) & 1;
                IdealBasis id2 = cell_ideal(c, assignment, 2);
                auto [rb, rphi] = recover_parameters(id2);
                CHECK(rb == b);
                CHECK(rphi == assignment);
            }
        }
}

TEST_CASE("enumeration counts") {
    CHECK(enumerate_ideals(1, 2).size() == 1);
    CHECK(enumerate_ideals(2, 2).size() == 3);
    CHECK(enumerate_ideals(2, 3).size() == 4);
    CHECK(enumerate_ideals(3, 2).size() == 7);
    CHECK(enumerate_ideals(3, 3).size() == 13);
    CHECK(enumerate_ideals(4, 2).size() == 19);
    CHECK_THROWS_AS(enumerate_ideals(6, 3), BudgetExceededError);
    CHECK_THROWS_AS(make_local_algebra(4, 2), std::invalid_argument);
}

TEST_CASE("enumeration and bijection at the budget boundary") {
    // q=2 allows n=5: sum over the 7 partitions of 5 of 2^(5-parts).
    CHECK(enumerate_ideals(5, 2).size() == 16 + 8 + 8 + 4 + 4 + 2 + 1);
    CellReport r43 = verify_cell_decomposition(4, 3);
    CHECK(r43.total == 27 + 9 + 9 + 3 + 1);
    CellReport r52 = verify_cell_decomposition(5, 2);
    CHECK(r52.total == 43);
}

TEST_CASE("enumeration matches a blind scan over all subspaces at tiny sizes") {
    // Independent route: enumerate every subspace of the right dimension in
    // reduced row-echelon form and keep the x,y-stable ones.
    auto blind = [](long n, uint32_t q) {
        auto alg = make_local_algebra(q, n);
        const long dim = alg->dim - n;
        std::set<std::string> keys;
        // Choose pivot columns, then fill free entries exhaustively.
        std::vector<long> pivots(dim);
        std::function<void(long, long)> choose = [&](long pos, long start) {
            if (pos == dim) {
                // free positions: entries right of each pivot in non-pivot cols
                std::vector<std::pair<long, long>> free_slots;
                std::vector<int8_t> is_pivot(alg->dim, 0);
                for (long r = 0; r < dim; ++r) is_pivot[pivots[r]] = 1;
                for (long r = 0; r < dim; ++r)
                    for (long c = pivots[r] + 1; c < alg->dim; ++c)
                        if (!is_pivot[c]) free_slots.push_back({r, c});
                std::vector<std::vector<uint32_t>> rows(
                    dim, std::vector<uint32_t>(alg->dim, 0));
                for (long r = 0; r < dim; ++r) rows[r][pivots[r]] = 1;
                std::function<void(size_t)> fill = [&](size_t slot) {
                    if (slot == free_slots.size()) {
                        IdealBasis cand{alg, rows};
                        if (cand.is_stable()) keys.insert(cand.key());
                        return;
                    }
                    auto [r, c] = free_slots[slot];
                    for (uint32_t v = 0; v < q; ++v) {
                        rows[r][c] = v;
                        fill(slot + 1);
                    }
                    rows[r][c] = 0;
                };
                fill(0);
                return;
            }
            for (long c = start; c < alg->dim; ++c) {
                pivots[pos] = c;
                choose(pos + 1, c + 1);
            }
        };
        choose(0, 0);
        return keys;
    };
    for (auto [n, q] :
         std::vector<std::pair<long, uint32_t>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        std::set<std::string> fast;
        for (const auto& ideal : enumerate_ideals(n, q)) fast.insert(ideal.key());
        CHECK(fast == blind(n, q));
    }
}

TEST_CASE("cell decomposition verification with per-cell counts") {
    CellReport r32 = verify_cell_decomposition(3, 2);
    CHECK(r32.total == 7);
    REQUIRE(r32.cells.size() == 3);
    std::map<std::string, long> counts;
    for (const auto& c : r32.cells) counts[c.beta.to_string()] = c.ideal_count;
    CHECK(counts["(3)"] == 4);
    CHECK(counts["(2,1)"] == 2);
    CHECK(counts["(1,1,1)"] == 1);

    CellReport r22 = verify_cell_decomposition(2, 2);
    CHECK(r22.total == 3);
    std::map<std::string, long> counts2;
    for (const auto& c : r22.cells) counts2[c.beta.to_string()] = c.ideal_count;
    CHECK(counts2["(2)"] == 2);
    CHECK(counts2["(1,1)"] == 1);

    CellReport r13 = verify_cell_decomposition(1, 3);
    CHECK(r13.total == 1);
    CHECK(r13.cells[0].ideal_count == 1);
}

TEST_CASE("profile partition properties across the enumeration") {
    for (auto [n, q] : std::vector<std::pair<long, uint32_t>>{{3, 2}, {4, 2}, {3, 3}}) {
        for (const auto& ideal : enumerate_ideals(n, q)) {
            Partition lambda = colon_profile(ideal);  // construction rejects non-partitions
            CHECK(lambda.sum() == n);
        }
    }
}

}  // TEST_SUITE
