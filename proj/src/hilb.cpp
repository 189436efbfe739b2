#include "splitk/hilb.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace splitk {

Partition::Partition(std::vector<long> parts) : parts_(std::move(parts)) {
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
}

long Partition::sum() const {
    long s = 0;
    for (long p : parts_) s += p;
    return s;
}

long Partition::part(long i) const {
    return (i >= 1 && i <= num_parts()) ? parts_[i - 1] : 0;
}

Partition Partition::dual() const {
    std::vector<long> d;
    for (long i = 1; i <= (parts_.empty() ? 0 : parts_[0]); ++i) {
        long count = 0;
        for (long p : parts_)
            if (p >= i) ++count;
        d.push_back(count);
    }
    return Partition(std::move(d));
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ")";
    return os.str();
}

namespace {
void partitions_rec(long n, long max_part, std::vector<long>& cur,
                    std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(Partition(cur));
        return;
    }
    for (long p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(n - p, p, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<Partition> partitions_of(long n) {
    if (n < 0) throw std::invalid_argument("partitions_of: negative n");
    std::vector<Partition> out;
    std::vector<long> cur;
    partitions_rec(n, n, cur, out);
    return out;
}

// ---- chart construction ----

namespace {

ChartPoly chart_term(long xe, long ye, long coeff) {
    ChartPoly p;
    p[ChartMonomial{xe, ye, {}}] = coeff;
    return p;
}

void chart_add(ChartPoly& a, const ChartPoly& b) {
    for (const auto& [m, c] : b) {
        auto [it, fresh] = a.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) a.erase(it);
        }
    }
}

ChartPoly chart_shift(const ChartPoly& a, long dx, long dy) {
    ChartPoly r;
    for (const auto& [m, c] : a) {
        ChartMonomial m2 = m;
        m2.xe += dx;
        m2.ye += dy;
        r[m2] = c;
    }
    return r;
}

ChartPoly chart_mul_param(const ChartPoly& a, long param) {
    ChartPoly r;
    for (const auto& [m, c] : a) {
        ChartMonomial m2 = m;
        bool found = false;
        for (auto& [id, e] : m2.params)
            if (id == param) {
                ++e;
                found = true;
            }
        if (!found) {
            m2.params.push_back({param, 1});
            std::sort(m2.params.begin(), m2.params.end());
        }
        r[m2] = c;
    }
    return r;
}

// The part of the polynomial with x-exponent zero.
ChartPoly chart_mod_x(const ChartPoly& a) {
    ChartPoly r;
    for (const auto& [m, c] : a)
        if (m.xe == 0) r[m] = c;
    return r;
}

}  // namespace

long CellChart::param_id(long i, long j) const {
    for (size_t k = 0; k < param_index.size(); ++k)
        if (param_index[k] == std::make_pair(i, j)) return static_cast<long>(k);
    throw std::invalid_argument("CellChart: no parameter t" + std::to_string(i) +
                                std::to_string(j));
}

std::string CellChart::param_name(long id) const {
    auto [i, j] = param_index.at(static_cast<size_t>(id));
    return "t" + std::to_string(i) + std::to_string(j);
}

CellChart build_cell_chart(const Partition& beta) {
    CellChart chart;
    chart.beta = beta;
    chart.lambda = beta.dual();
    chart.n = beta.sum();
    chart.r = beta.part(1);
    chart.s = chart.lambda.part(1);
    const Partition& lam = chart.lambda;

    // Parameter ids in canonical order (ascending i, then j). The recursion
    // uses t_ij exactly for 1 <= i < r, 1 <= j <= lambda_{i+1}.
    for (long i = 1; i < chart.r; ++i)
        for (long j = 1; j <= lam.part(i + 1); ++j) chart.param_index.push_back({i, j});
    internal_check(static_cast<long>(chart.param_index.size()) == chart.n - lam.part(1),
                   "build_cell_chart: parameter count != n - |beta|");

    chart.q.assign(static_cast<size_t>(chart.r) + 2, ChartPoly{});
    chart.p.assign(static_cast<size_t>(chart.s) + 1, ChartPoly{});
    chart.q[static_cast<size_t>(chart.r) + 1] = chart_term(0, 0, 1);  // Q_{r+1} = 1

    // P_j = y^(j - lambda_{beta_j + 1} - 1) Q_{beta_j + 1}; valid once
    // Q_{beta_j + 1} is known, i.e. for all j used at level i < beta_j.
    auto make_p = [&](long j) {
        long bj = beta.part(j);
        long ye = j - lam.part(bj + 1) - 1;
        internal_check(ye >= 0, "build_cell_chart: negative y-exponent in P");
        chart.p[static_cast<size_t>(j)] = chart_shift(chart.q[static_cast<size_t>(bj) + 1], 0, ye);
    };

    for (long i = chart.r; i >= 1; --i) {
        ChartPoly qi = chart_shift(chart.q[static_cast<size_t>(i) + 1], 0,
                                   lam.part(i) - lam.part(i + 1));
        for (long j = 1; j <= lam.part(i + 1); ++j) {
            if (chart.p[static_cast<size_t>(j)].empty()) make_p(j);
            ChartPoly term = chart_mul_param(
                chart_shift(chart.p[static_cast<size_t>(j)], beta.part(j) - i, 0),
                chart.param_id(i, j));
            chart_add(qi, term);
        }
        chart.q[static_cast<size_t>(i)] = std::move(qi);
    }
    for (long j = 1; j <= chart.s; ++j)
        if (chart.p[static_cast<size_t>(j)].empty()) make_p(j);

    // Leading-term congruences: Q_i = y^{lambda_i} mod (x), P_i = y^{i-1} mod (x).
    for (long i = 1; i <= chart.r + 1; ++i)
        internal_check(chart_mod_x(chart.q[static_cast<size_t>(i)]) ==
                           chart_term(0, lam.part(i), 1),
                       "build_cell_chart: Q congruence failed at i=" + std::to_string(i));
    for (long j = 1; j <= chart.s; ++j)
        internal_check(chart_mod_x(chart.p[static_cast<size_t>(j)]) == chart_term(0, j - 1, 1),
                       "build_cell_chart: P congruence failed at j=" + std::to_string(j));
    return chart;
}

// ---- local algebra ----

std::shared_ptr<const LocalAlgebra> make_local_algebra(uint32_t q, long n) {
    if (n < 1) throw std::invalid_argument("make_local_algebra: n must be >= 1");
    bool prime = q >= 2;
    for (uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) prime = false;
    if (!prime) throw std::invalid_argument("make_local_algebra: q must be prime");
    auto alg = std::make_shared<LocalAlgebra>();
    alg->q = q;
    alg->n = n;
    for (long deg = 0; deg < n; ++deg)
        for (long a = deg; a >= 0; --a) {
            alg->index[{a, deg - a}] = static_cast<long>(alg->mons.size());
            alg->mons.push_back({a, deg - a});
        }
    alg->dim = static_cast<long>(alg->mons.size());
    for (const auto& [a, b] : alg->mons) {
        auto ix = alg->index.find({a + 1, b});
        auto iy = alg->index.find({a, b + 1});
        alg->mul_x.push_back(ix == alg->index.end() ? -1 : ix->second);
        alg->mul_y.push_back(iy == alg->index.end() ? -1 : iy->second);
    }
    return alg;
}

namespace {

std::vector<uint32_t> shift_vec(const LocalAlgebra& alg, const std::vector<uint32_t>& v,
                                const std::vector<long>& table) {
    std::vector<uint32_t> r(alg.dim, 0);
    for (long i = 0; i < alg.dim; ++i)
        if (v[i] && table[i] >= 0) r[table[i]] = v[i];
    return r;
}

// Full Gauss-Jordan into canonical RREF rows sorted by pivot column.
std::vector<std::vector<uint32_t>> rref(uint32_t q, std::vector<std::vector<uint32_t>> rows) {
    Fp fp(q);
    std::vector<std::vector<uint32_t>> out;
    std::vector<long> pivots;
    for (auto& v : rows) {
        for (size_t r = 0; r < out.size(); ++r) {
            uint32_t f = v[pivots[r]];
            if (!f) continue;
            uint32_t g = fp.neg(f);
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = fp.add(v[j], fp.mul(g, out[r][j]));
        }
        long piv = -1;
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j]) { piv = static_cast<long>(j); break; }
        if (piv < 0) continue;
        uint32_t d = fp.inv(v[piv]);
        for (auto& c : v) c = fp.mul(c, d);
        // clear this pivot from existing rows
        for (size_t r = 0; r < out.size(); ++r) {
            uint32_t f = out[r][piv];
            if (!f) continue;
            uint32_t g = fp.neg(f);
            for (size_t j = 0; j < v.size(); ++j)
                out[r][j] = fp.add(out[r][j], fp.mul(g, v[j]));
        }
        out.push_back(std::move(v));
        pivots.push_back(piv);
    }
    std::vector<size_t> order(out.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pivots[a] < pivots[b]; });
    std::vector<std::vector<uint32_t>> sorted;
    for (size_t i : order) sorted.push_back(std::move(out[i]));
    return sorted;
}

std::vector<uint32_t> reduce_against(uint32_t q, const std::vector<std::vector<uint32_t>>& rows,
                                     std::vector<uint32_t> v) {
    Fp fp(q);
    for (const auto& row : rows) {
        long piv = -1;
        for (size_t j = 0; j < row.size(); ++j)
            if (row[j]) { piv = static_cast<long>(j); break; }
        uint32_t f = v[piv];
        if (!f) continue;
        uint32_t g = fp.neg(f);
        for (size_t j = 0; j < v.size(); ++j) v[j] = fp.add(v[j], fp.mul(g, row[j]));
    }
    return v;
}

}  // namespace

bool IdealBasis::contains(const std::vector<uint32_t>& v) const {
    auto r = reduce_against(alg->q, rows, v);
    for (uint32_t x : r)
        if (x) return false;
    return true;
}

bool IdealBasis::is_stable() const {
    for (const auto& row : rows) {
        if (!contains(shift_vec(*alg, row, alg->mul_x))) return false;
        if (!contains(shift_vec(*alg, row, alg->mul_y))) return false;
    }
    return true;
}

std::string IdealBasis::key() const {
    std::string k;
    for (const auto& row : rows) {
        for (uint32_t v : row) k += static_cast<char>('0' + v);
        k += '|';
    }
    return k;
}

IdealBasis span_subspace(std::shared_ptr<const LocalAlgebra> alg,
                         const std::vector<std::vector<uint32_t>>& vecs) {
    return IdealBasis{alg, rref(alg->q, vecs)};
}

IdealBasis ideal_from_generators(std::shared_ptr<const LocalAlgebra> alg,
                                 const std::vector<std::vector<uint32_t>>& gens) {
    // All monomial multiples of each generator (the x,y-closure).
    std::vector<std::vector<uint32_t>> all;
    for (const auto& g : gens) {
        std::vector<std::vector<uint32_t>> frontier = {g};
        std::set<std::vector<uint32_t>> seen = {g};
        while (!frontier.empty()) {
            std::vector<std::vector<uint32_t>> next;
            for (const auto& v : frontier) {
                all.push_back(v);
                for (const auto* table : {&alg->mul_x, &alg->mul_y}) {
                    auto w = shift_vec(*alg, v, *table);
                    bool zero = true;
                    for (uint32_t c : w) zero = zero && !c;
                    if (!zero && seen.insert(w).second) next.push_back(std::move(w));
                }
            }
            frontier = std::move(next);
        }
    }
    IdealBasis ideal{alg, rref(alg->q, all)};
    internal_check(ideal.is_stable(), "ideal_from_generators: closure failed");
    return ideal;
}

IdealBasis colon_by_x(const IdealBasis& j) {
    const auto& alg = *j.alg;
    // Kernel of v -> residual(x*v) modulo span(j).
    FpMat m(alg.q, alg.dim, alg.dim);
    for (long i = 0; i < alg.dim; ++i) {
        std::vector<uint32_t> unit(alg.dim, 0);
        unit[i] = 1;
        auto res = reduce_against(alg.q, j.rows, shift_vec(alg, unit, alg.mul_x));
        for (long r = 0; r < alg.dim; ++r) m.at(r, i) = res[r];
    }
    auto ker = RowReducer::kernel(m);
    return span_subspace(j.alg, ker);
}

Partition colon_profile(const IdealBasis& ideal) {
    std::vector<long> lambda;
    IdealBasis cur = ideal;
    long prev = static_cast<long>(cur.rows.size());
    while (prev < cur.alg->dim) {
        IdealBasis next = colon_by_x(cur);
        long d = static_cast<long>(next.rows.size());
        internal_check(d > prev, "colon_profile: colon chain stalled");
        lambda.push_back(d - prev);
        prev = d;
        cur = std::move(next);
    }
    return Partition(lambda);
}

bool hilb_within_budget(long n, uint32_t q, const HilbConfig& cfg) {
    if (q == 2) return n <= cfg.max_n_q2;
    if (q == 3) return n <= cfg.max_n_q3;
    return n <= cfg.max_n_else;
}

IdealBasis cell_ideal(const CellChart& chart, const std::vector<uint32_t>& phi, uint32_t q) {
    if (static_cast<long>(phi.size()) != static_cast<long>(chart.param_index.size()))
        throw std::invalid_argument("cell_ideal: assignment must cover all parameters");
    auto alg = make_local_algebra(q, chart.n);
    Fp fp(q);
    auto specialize = [&](const ChartPoly& poly, long xshift) {
        std::vector<uint32_t> v(alg->dim, 0);
        for (const auto& [m, c] : poly) {
            long a = m.xe + xshift, b = m.ye;
            if (a + b >= chart.n) continue;  // truncated away; the ideal contains (x,y)^n
            uint32_t val = fp.reduce_signed(c);
            for (const auto& [id, e] : m.params)
                for (long rep = 0; rep < e; ++rep) val = fp.mul(val, phi[id] % q);
            long idx = alg->index.at({a, b});
            v[idx] = fp.add(v[idx], val);
        }
        return v;
    };
    std::vector<std::vector<uint32_t>> gens;
    for (long i = 1; i <= chart.r + 1; ++i)
        gens.push_back(specialize(chart.q[static_cast<size_t>(i)], i - 1));
    IdealBasis ideal = ideal_from_generators(alg, gens);
    internal_check(ideal.codim() == chart.n,
                   "cell_ideal: codimension " + std::to_string(ideal.codim()) + " != n");
    // The staircase monomials must form a basis of the quotient.
    {
        RowReducer red(q, alg->dim);
        for (const auto& row : ideal.rows) red.add_row(row);
        long added = 0;
        for (long i = 1; i <= chart.r; ++i)
            for (long jj = 0; jj < chart.lambda.part(i); ++jj) {
                std::vector<uint32_t> unit(alg->dim, 0);
                unit[alg->index.at({i - 1, jj})] = 1;
                if (red.add_row(std::move(unit)) >= 0) ++added;
            }
        internal_check(added == chart.n, "cell_ideal: staircase does not complement the ideal");
    }
    return ideal;
}

std::pair<Partition, std::vector<uint32_t>> recover_parameters(const IdealBasis& ideal) {
    const auto& alg = *ideal.alg;
    Fp fp(alg.q);
    Partition lambda = colon_profile(ideal);
    Partition beta = lambda.dual();
    internal_check(lambda.sum() == ideal.codim(), "recover_parameters: profile sum != colength");
    CellChart chart = build_cell_chart(beta);

    // Colon chain J_k = (I : x^{k-1}).
    std::vector<IdealBasis> colon_chain = {ideal};  // index k-1 holds J_k
    for (long k = 2; k <= chart.r + 1; ++k) colon_chain.push_back(colon_by_x(colon_chain.back()));

    std::vector<uint32_t> phi(chart.param_index.size(), 0);
    auto specialize = [&](const ChartPoly& poly, long xshift) {
        std::vector<uint32_t> v(alg.dim, 0);
        for (const auto& [m, c] : poly) {
            long a = m.xe + xshift, b = m.ye;
            if (a + b >= chart.n) continue;
            uint32_t val = fp.reduce_signed(c);
            for (const auto& [id, e] : m.params)
                for (long rep = 0; rep < e; ++rep) val = fp.mul(val, phi[id]);
            long idx = alg.index.at({a, b});
            v[idx] = fp.add(v[idx], val);
        }
        return v;
    };

    for (long k = chart.r; k >= 1; --k) {
        long m = chart.lambda.part(k + 1);
        if (m == 0) continue;
        const IdealBasis& jk = colon_chain[static_cast<size_t>(k) - 1];
        // Solve v0 + sum_j a_{kj} w_j in J_k; the w_j are independent mod J_k.
        ChartPoly head = chart_shift(chart.q[static_cast<size_t>(k) + 1], 0,
                                     chart.lambda.part(k) - chart.lambda.part(k + 1));
        auto v0 = reduce_against(alg.q, jk.rows, specialize(head, 0));
        FpMat wmat(alg.q, alg.dim, m);
        for (long j = 1; j <= m; ++j) {
            auto wj = reduce_against(
                alg.q, jk.rows,
                specialize(chart.p[static_cast<size_t>(j)], chart.beta.part(j) - k));
            for (long rix = 0; rix < alg.dim; ++rix) wmat.at(rix, j - 1) = wj[rix];
        }
        internal_check(wmat.rank() == m, "recover_parameters: parameter directions collapse");
        std::vector<uint32_t> rhs(alg.dim);
        for (long rix = 0; rix < alg.dim; ++rix) rhs[rix] = fp.neg(v0[rix]);
        std::vector<uint32_t> sol;
        bool ok = solve_linear(wmat, rhs, sol);
        internal_check(ok, "recover_parameters: no parameter assignment matches");
        for (long j = 1; j <= m; ++j) phi[chart.param_id(k, j)] = sol[j - 1];
    }

    IdealBasis rebuilt = cell_ideal(chart, phi, alg.q);
    internal_check(rebuilt == ideal, "recover_parameters: round trip mismatch");
    return {beta, phi};
}

std::vector<IdealBasis> enumerate_ideals(long n, uint32_t q, const HilbConfig& cfg) {
    if (!hilb_within_budget(n, q, cfg))
        throw BudgetExceededError("enumerate_ideals: (n=" + std::to_string(n) + ", q=" +
                                  std::to_string(q) + ") exceeds the configured budget");
    auto alg = make_local_algebra(q, n);
    Fp fp(q);

    // Level 1: the maximal ideal.
    std::vector<std::vector<uint32_t>> maximal;
    for (long i = 1; i < alg->dim; ++i) {
        std::vector<uint32_t> unit(alg->dim, 0);
        unit[i] = 1;
        maximal.push_back(std::move(unit));
    }
    std::vector<IdealBasis> level = {span_subspace(alg, maximal)};

    for (long k = 2; k <= n; ++k) {
        std::map<std::string, IdealBasis> next;
        for (const IdealBasis& vp : level) {
            // m*V': span of x,y multiples of V'.
            std::vector<std::vector<uint32_t>> mv;
            for (const auto& row : vp.rows) {
                mv.push_back(shift_vec(*alg, row, alg->mul_x));
                mv.push_back(shift_vec(*alg, row, alg->mul_y));
            }
            auto mrows = rref(q, mv);
            // Complement of m*V' inside V'.
            std::vector<std::vector<uint32_t>> comp;
            {
                std::vector<std::vector<uint32_t>> joint = mrows;
                for (const auto& row : vp.rows) {
                    auto res = reduce_against(q, rref(q, joint), row);
                    bool zero = true;
                    for (uint32_t c : res) zero = zero && !c;
                    if (!zero) {
                        comp.push_back(row);
                        joint.push_back(row);
                    }
                }
            }
            const long d = static_cast<long>(comp.size());
            // Every hyperplane of V'/mV' gives a colength-k ideal; every
            // colength-k ideal arises this way from some parent.
            std::vector<uint32_t> func(d, 0);
            auto emit = [&]() {
                long lead = -1;
                for (long i = 0; i < d; ++i)
                    if (func[i]) { lead = i; break; }
                if (lead < 0 || func[lead] != 1) return;  // normalized functionals only
                std::vector<std::vector<uint32_t>> rows = mrows;
                for (long i = 0; i < d; ++i) {
                    if (i == lead) continue;
                    std::vector<uint32_t> v = comp[i];
                    if (func[i]) {
                        uint32_t g = fp.neg(func[i]);
                        for (size_t c = 0; c < v.size(); ++c)
                            v[c] = fp.add(v[c], fp.mul(g, comp[lead][c]));
                    }
                    rows.push_back(std::move(v));
                }
                IdealBasis cand = span_subspace(alg, rows);
                internal_check(cand.codim() == k, "enumerate_ideals: wrong codimension");
                next.emplace(cand.key(), std::move(cand));
            };
            std::function<void(long)> rec = [&](long pos) {
                if (pos == d) {
                    emit();
                    return;
                }
                for (uint32_t v = 0; v < q; ++v) {
                    func[pos] = v;
                    rec(pos + 1);
                }
                func[pos] = 0;
            };
            rec(0);
        }
        level.clear();
        for (auto& [key, ideal] : next) level.push_back(std::move(ideal));
    }
    for (const auto& ideal : level)
        internal_check(ideal.is_stable() && ideal.codim() == n, "enumerate_ideals: bad ideal");
    return level;
}

CellReport verify_cell_decomposition(long n, uint32_t q, const HilbConfig& cfg) {
    auto ideals = enumerate_ideals(n, q, cfg);
    // Bucket by colon profile (as the dual cell partition beta).
    std::map<Partition, std::set<std::string>> buckets;
    for (const auto& ideal : ideals) buckets[colon_profile(ideal).dual()].insert(ideal.key());

    CellReport report;
    report.n = n;
    report.q = q;
    long expected_total = 0;
    for (const Partition& beta : partitions_of(n)) {
        CellChart chart = build_cell_chart(beta);
        const long m = static_cast<long>(chart.param_index.size());
        long count = 1;
        for (long i = 0; i < m; ++i) count *= q;
        expected_total += count;

        std::set<std::string> seen;
        std::vector<uint32_t> phi(m, 0);
        std::function<void(long)> rec = [&](long pos) {
            if (pos == m) {
                IdealBasis ideal = cell_ideal(chart, phi, q);
                internal_check(seen.insert(ideal.key()).second,
                               "verify_cell_decomposition: cell map not injective at beta=" +
                                   beta.to_string());
                internal_check(buckets[beta].count(ideal.key()) == 1,
                               "verify_cell_decomposition: ideal " + ideal.key() +
                                   " missing from profile bucket " + beta.to_string());
                auto [rbeta, rphi] = recover_parameters(ideal);
                internal_check(rbeta == beta && rphi == phi,
                               "verify_cell_decomposition: parameter round trip failed at beta=" +
                                   beta.to_string());
                return;
            }
            for (uint32_t v = 0; v < q; ++v) {
                phi[pos] = v;
                rec(pos + 1);
            }
            phi[pos] = 0;
        };
        rec(0);
        internal_check(static_cast<long>(buckets[beta].size()) == count,
                       "verify_cell_decomposition: bucket size mismatch at beta=" +
                           beta.to_string());
        report.cells.push_back({beta, chart.lambda, m, count});
    }
    internal_check(static_cast<long>(ideals.size()) == expected_total,
                   "verify_cell_decomposition: enumeration count " +
                       std::to_string(ideals.size()) + " != " + std::to_string(expected_total));
    report.total = expected_total;
    return report;
}

}  // namespace splitk
