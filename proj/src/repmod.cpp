#include "splitk/repmod.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace splitk {

namespace {

void check_same_context(const MatrixRep& a, const MatrixRep& b, const char* op) {
    internal_check(a.ell == b.ell, std::string(op) + ": characteristic mismatch");
    if (a.group != b.group)
        throw std::invalid_argument(std::string(op) + ": representations of different groups");
}

// Degree-n exponent vectors in d variables, lexicographic from the highest
// first exponent down; the canonical monomial order for sym constructions.
void enumerate_monomials(long d, long n, std::vector<long>& cur,
                         std::vector<std::vector<long>>& out) {
    if (static_cast<long>(cur.size()) == d - 1) {
        cur.push_back(n);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long e = n; e >= 0; --e) {
        cur.push_back(e);
        enumerate_monomials(d, n - e, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<long>> monomials(long d, long n) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    enumerate_monomials(d, n, cur, out);
    return out;
}

using Poly = std::map<std::vector<long>, uint32_t>;

Poly poly_mul_vars(const Fp& fp, const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<long> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            uint32_t add = fp.mul(ca, cb);
            if (!add) continue;
            auto [it, fresh] = r.emplace(std::move(e), add);
            if (!fresh) {
                it->second = fp.add(it->second, add);
                if (!it->second) r.erase(it);
            }
        }
    return r;
}

// Determinant of a small matrix by Gaussian elimination.
uint32_t small_det(const Fp& fp, std::vector<std::vector<uint32_t>> m) {
    const size_t k = m.size();
    uint32_t det = 1;
    for (size_t c = 0; c < k; ++c) {
        size_t piv = c;
        while (piv < k && m[piv][c] == 0) ++piv;
        if (piv == k) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = fp.neg(det);
        }
        det = fp.mul(det, m[c][c]);
        uint32_t inv = fp.inv(m[c][c]);
        for (size_t r = c + 1; r < k; ++r) {
            if (!m[r][c]) continue;
            uint32_t f = fp.mul(m[r][c], inv);
            for (size_t j = c; j < k; ++j) m[r][j] = fp.sub(m[r][j], fp.mul(f, m[c][j]));
        }
    }
    return det;
}

void k_subsets(long d, long k, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
    if (static_cast<long>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    long start = cur.empty() ? 0 : cur.back() + 1;
    for (long i = start; i <= d - (k - static_cast<long>(cur.size())); ++i) {
        cur.push_back(i);
        k_subsets(d, k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

MatrixRep natural_rep(long ell) {
    if (!is_odd_prime(ell)) throw std::invalid_argument("natural_rep: ell must be an odd prime");
    uint32_t p = static_cast<uint32_t>(ell);
    FpMat s(p, 2, 2), t(p, 2, 2);
    s.at(0, 0) = 1; s.at(0, 1) = 1; s.at(1, 1) = 1;
    t.at(0, 0) = 1; t.at(1, 0) = 1; t.at(1, 1) = 1;
    internal_check(s.pow(static_cast<uint64_t>(ell)).is_identity(),
                   "natural_rep: transvection order is not ell");
    return MatrixRep{ell, Group::H, 2, {s, t}};
}

MatrixRep trivial_rep(long ell, Group group) {
    uint32_t p = static_cast<uint32_t>(ell);
    size_t ngens = group == Group::H ? 2 : 4;
    return MatrixRep{ell, group, 1, std::vector<FpMat>(ngens, FpMat::identity(p, 1))};
}

MatrixRep sym_power_coinvariants(const MatrixRep& rep, long n) {
    if (n < 0) throw std::invalid_argument("sym_power: negative exponent");
    const Fp fp(static_cast<uint32_t>(rep.ell));
    const long d = rep.dim;
    auto mons = monomials(d, n);
    std::map<std::vector<long>, long> index;
    for (size_t i = 0; i < mons.size(); ++i) index[mons[i]] = static_cast<long>(i);

    MatrixRep out{rep.ell, rep.group, static_cast<long>(mons.size()), {}};
    for (const FpMat& g : rep.gens) {
        FpMat m(fp.p, out.dim, out.dim);
        // Image of each variable under g, as a linear form.
        std::vector<Poly> images(d);
        for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
                if (g.at(j, i)) {
                    std::vector<long> e(d, 0);
                    e[j] = 1;
                    images[i][e] = g.at(j, i);
                }
        for (size_t a = 0; a < mons.size(); ++a) {
            Poly acc;
            acc[std::vector<long>(d, 0)] = 1;
            for (long i = 0; i < d; ++i)
                for (long rep_e = 0; rep_e < mons[a][i]; ++rep_e)
                    acc = poly_mul_vars(fp, acc, images[i]);
            for (const auto& [e, c] : acc) m.at(index.at(e), static_cast<long>(a)) = c;
        }
        out.gens.push_back(std::move(m));
    }
    return out;
}

MatrixRep sym_power(const MatrixRep& rep, long n) {
    if (n >= rep.ell)
        throw OutOfRangeError("sym_power: n=" + std::to_string(n) +
                              " >= ell; only the quotient model is defined there");
    return sym_power_coinvariants(rep, n);
}

MatrixRep tensor(const MatrixRep& a, const MatrixRep& b) {
    check_same_context(a, b, "tensor");
    MatrixRep out{a.ell, a.group, a.dim * b.dim, {}};
    for (size_t i = 0; i < a.gens.size(); ++i) out.gens.push_back(a.gens[i].kron(b.gens[i]));
    return out;
}

MatrixRep box_tensor(const MatrixRep& left, const MatrixRep& right) {
    internal_check(left.ell == right.ell, "box_tensor: characteristic mismatch");
    if (left.group != Group::H || right.group != Group::H)
        throw std::invalid_argument("box_tensor: both factors must be H-representations");
    uint32_t p = static_cast<uint32_t>(left.ell);
    FpMat il = FpMat::identity(p, left.dim), ir = FpMat::identity(p, right.dim);
    MatrixRep out{left.ell, Group::G, left.dim * right.dim, {}};
    out.gens.push_back(left.gens[0].kron(ir));
    out.gens.push_back(left.gens[1].kron(ir));
    out.gens.push_back(il.kron(right.gens[0]));
    out.gens.push_back(il.kron(right.gens[1]));
    return out;
}

MatrixRep exterior_power(const MatrixRep& rep, long k) {
    if (k < 0 || k > rep.dim)
        throw std::invalid_argument("exterior_power: k outside 0..dim");
    const Fp fp(static_cast<uint32_t>(rep.ell));
    std::vector<std::vector<long>> subsets;
    std::vector<long> cur;
    k_subsets(rep.dim, k, cur, subsets);
    MatrixRep out{rep.ell, rep.group, static_cast<long>(subsets.size()), {}};
    for (const FpMat& g : rep.gens) {
        FpMat m(fp.p, out.dim, out.dim);
        for (size_t a = 0; a < subsets.size(); ++a)
            for (size_t b = 0; b < subsets.size(); ++b) {
                std::vector<std::vector<uint32_t>> minor(k, std::vector<uint32_t>(k));
                for (long i = 0; i < k; ++i)
                    for (long j = 0; j < k; ++j) minor[i][j] = g.at(subsets[b][i], subsets[a][j]);
                m.at(static_cast<long>(b), static_cast<long>(a)) = small_det(fp, std::move(minor));
            }
        out.gens.push_back(std::move(m));
    }
    return out;
}

MatrixRep direct_sum(const MatrixRep& a, const MatrixRep& b) {
    check_same_context(a, b, "direct_sum");
    uint32_t p = static_cast<uint32_t>(a.ell);
    MatrixRep out{a.ell, a.group, a.dim + b.dim, {}};
    for (size_t i = 0; i < a.gens.size(); ++i) {
        FpMat m(p, out.dim, out.dim);
        for (long r = 0; r < a.dim; ++r)
            for (long c = 0; c < a.dim; ++c) m.at(r, c) = a.gens[i].at(r, c);
        for (long r = 0; r < b.dim; ++r)
            for (long c = 0; c < b.dim; ++c) m.at(a.dim + r, a.dim + c) = b.gens[i].at(r, c);
        out.gens.push_back(std::move(m));
    }
    return out;
}

MatrixRep direct_sum(const std::vector<MatrixRep>& parts) {
    internal_check(!parts.empty(), "direct_sum: empty list");
    MatrixRep out = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) out = direct_sum(out, parts[i]);
    return out;
}

// ---- equivariant homomorphisms ----

namespace {

struct SparseHom {
    // unit entries (row, col); every base hom between Jordan blocks has this shape
    std::vector<std::pair<long, long>> entries;
};

std::vector<SparseHom> jordan_base_homs(const std::vector<long>& tgt_blocks,
                                        const std::vector<long>& src_blocks) {
    std::vector<SparseHom> homs;
    long toff = 0;
    for (long a : tgt_blocks) {
        long soff = 0;
        for (long b : src_blocks) {
            for (long k = 1; k <= std::min(a, b); ++k) {
                SparseHom h;
                for (long j = 0; j < k; ++j)
                    h.entries.push_back({toff + (k - j) - 1, soff + (b - j) - 1});
                homs.push_back(std::move(h));
            }
            soff += b;
        }
        toff += a;
    }
    return homs;
}

}  // namespace

std::vector<FpMat> hom_space(const MatrixRep& a, const MatrixRep& b) {
    check_same_context(a, b, "hom_space");
    const uint32_t p = static_cast<uint32_t>(a.ell);
    const Fp fp(p);
    const long na = a.dim, nb = b.dim;
    if (na == 0 || nb == 0) return {};

    JordanForm ja = jordan_unipotent(a.gens[0]);
    JordanForm jb = jordan_unipotent(b.gens[0]);
    std::vector<SparseHom> base = jordan_base_homs(jb.block_sizes, ja.block_sizes);
    const long d = static_cast<long>(base.size());
    if (d == 0) return {};

    // Remaining generators in Jordan coordinates on both sides.
    std::vector<FpMat> ha, hb;
    for (size_t gi = 1; gi < a.gens.size(); ++gi) {
        ha.push_back(ja.basis_inv * a.gens[gi] * ja.basis);
        hb.push_back(jb.basis_inv * b.gens[gi] * jb.basis);
    }

    // First restriction works on the sparse base homs directly.
    std::vector<std::vector<uint32_t>> coords;  // current basis as combos of base homs
    {
        FpMat m(p, nb * na, d);
        const FpMat& hA = ha[0];
        const FpMat& hB = hb[0];
        for (long k = 0; k < d; ++k) {
            // C = hB * X - X * hA with X sparse unit entries.
            for (const auto& [r, c] : base[k].entries) {
                for (long i = 0; i < nb; ++i) {
                    uint32_t v = hB.at(i, r);
                    if (v) {
                        uint32_t& slot = m.at(i * na + c, k);
                        slot = fp.add(slot, v);
                    }
                }
                for (long j = 0; j < na; ++j) {
                    uint32_t v = hA.at(c, j);
                    if (v) {
                        uint32_t& slot = m.at(r * na + j, k);
                        slot = fp.sub(slot, v);
                    }
                }
            }
        }
        coords = RowReducer::kernel(m);
    }

    // Materialize current basis in Jordan coordinates.
    auto materialize = [&](const std::vector<uint32_t>& combo) {
        FpMat y(p, nb, na);
        for (long k = 0; k < d; ++k) {
            if (!combo[k]) continue;
            for (const auto& [r, c] : base[k].entries) y.at(r, c) = fp.add(y.at(r, c), combo[k]);
        }
        return y;
    };
    std::vector<FpMat> basis;
    for (const auto& combo : coords) basis.push_back(materialize(combo));

    // Remaining restrictions on the (small) current basis.
    for (size_t gi = 1; gi < ha.size(); ++gi) {
        if (basis.empty()) break;
        FpMat m(p, nb * na, static_cast<long>(basis.size()));
        for (size_t k = 0; k < basis.size(); ++k) {
            FpMat c = hb[gi] * basis[k] - basis[k] * ha[gi];
            for (long i = 0; i < nb; ++i)
                for (long j = 0; j < na; ++j) m.at(i * na + j, static_cast<long>(k)) = c.at(i, j);
        }
        auto ker = RowReducer::kernel(m);
        std::vector<FpMat> next;
        for (const auto& combo : ker) {
            FpMat y(p, nb, na);
            for (size_t k = 0; k < basis.size(); ++k)
                if (combo[k]) y = y + basis[k].scaled(combo[k]);
            next.push_back(std::move(y));
        }
        basis = std::move(next);
    }

    // Back to the original coordinates.
    std::vector<FpMat> out;
    for (const FpMat& y : basis) out.push_back(jb.basis * y * ja.basis_inv);
    return out;
}

std::vector<FpMat> commutant(const MatrixRep& rep) { return hom_space(rep, rep); }

std::vector<FpMat> radical(uint32_t p, const std::vector<FpMat>& algebra_basis) {
    // Layered characteristic-coefficient criterion: with c_k the degree
    // (n-k) coefficient of the characteristic polynomial, the chain
    //   A_{i+1} = {x in A_i : c_{p^i}(xy) = 0 for all y in A_i}
    // reaches the radical once p^i exceeds n. Nilpotent elements satisfy
    // every condition, and on each layer the condition is F_p-linear in x.
    // (Plain power traces would not do: over the prime field
    // Tr(M^{p^k}) = Tr(M)^{p^k} carries no new information.)
    if (algebra_basis.empty()) return {};
    const Fp fp(p);
    const long n = algebra_basis[0].rows();
    std::vector<FpMat> cur = algebra_basis;
    for (uint64_t q = 1; q <= static_cast<uint64_t>(n) && !cur.empty(); q *= p) {
        const long m = static_cast<long>(cur.size());
        const long coeff_index = n - static_cast<long>(q);  // T^{n-q} coefficient
        FpMat cond(p, m, m);
        for (long yi = 0; yi < m; ++yi)
            for (long xi = 0; xi < m; ++xi) {
                FpMat prod = cur[xi] * cur[yi];
                if (q == 1) {
                    cond.at(yi, xi) = fp.neg(prod.trace());
                } else {
                    FpPoly cp = char_poly(prod);
                    cond.at(yi, xi) = cp[static_cast<size_t>(coeff_index)];
                }
            }
        auto ker = RowReducer::kernel(cond);
        std::vector<FpMat> next;
        for (const auto& combo : ker) {
            FpMat y(p, n, n);
            for (long k2 = 0; k2 < m; ++k2)
                if (combo[k2]) y = y + cur[k2].scaled(combo[k2]);
            next.push_back(std::move(y));
        }
        cur = std::move(next);
    }
    // The result must consist of nilpotent elements.
    for (const FpMat& x : cur) {
        uint64_t e = 1;
        while (e < static_cast<uint64_t>(n)) e <<= 1;
        internal_check(x.pow(e).is_zero(), "radical: non-nilpotent element in computed radical");
    }
    return cur;
}

std::pair<FpMat, long> lift_idempotent(const FpMat& e0, long max_iters) {
    FpMat e = e0;
    for (long it = 0; it <= max_iters; ++it) {
        FpMat e2 = e * e;
        if (e2 == e) return {e, it};
        // e <- 3e^2 - 2e^3
        FpMat e3 = e2 * e;
        e = e2.scaled(3) - e3.scaled(2);
    }
    throw InternalCheckError("lift_idempotent: did not stabilize");
}

// ---- oracle ----

std::string summand_label_to_string(const SummandLabel& label) {
    if (std::holds_alternative<HLabel>(label)) return std::get<HLabel>(label).to_string();
    return std::get<BoxLabel>(label).to_string();
}

bool summand_label_less(const SummandLabel& a, const SummandLabel& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    if (std::holds_alternative<HLabel>(a))
        return std::get<HLabel>(a) < std::get<HLabel>(b);
    return std::get<BoxLabel>(a) < std::get<BoxLabel>(b);
}

long DecompositionReport::total_dim() const {
    long t = 0;
    for (const auto& e : entries) t += e.multiplicity * e.dim;
    return t;
}

std::map<std::string, long> DecompositionReport::label_multiset() const {
    std::map<std::string, long> m;
    for (const auto& e : entries) m[summand_label_to_string(e.label)] += e.multiplicity;
    return m;
}

RingElement DecompositionReport::to_ring_element() const {
    RingElement r(ell);
    for (const auto& e : entries) {
        BoxLabel label = std::holds_alternative<BoxLabel>(e.label)
                             ? std::get<BoxLabel>(e.label)
                             : BoxLabel{std::get<HLabel>(e.label), HLabel::std_module(0)};
        r.add_term(label, Int(e.multiplicity));
    }
    return r;
}

std::string DecompositionReport::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& e : entries) {
        if (!first) os << " + ";
        first = false;
        if (e.multiplicity != 1) os << e.multiplicity << "*";
        os << summand_label_to_string(e.label);
    }
    return first ? "0" : os.str();
}

Oracle::Oracle(long ell, OracleConfig cfg) : ell_(ell), cfg_(cfg) {
    if (!is_odd_prime(ell)) throw std::invalid_argument("Oracle: ell must be an odd prime");
    std_reps_.resize(static_cast<size_t>(ell) + 1);
}

const MatrixRep& Oracle::std_rep(long i) {
    internal_check(i >= 0 && i <= ell_, "Oracle::std_rep: index outside 0..ell");
    auto& slot = std_reps_[static_cast<size_t>(i)];
    if (!slot) slot = sym_power_coinvariants(natural_rep(ell_), i);
    return *slot;
}

const MatrixRep& Oracle::w_rep() {
    if (!w_rep_) w_rep_ = tensor(std_rep(1), std_rep(ell_ - 1));
    return *w_rep_;
}

bool Oracle::v_ell_is_indecomposable() {
    if (!v_ell_indecomposable_) {
        auto parts = split_indecomposable(std_rep(ell_));
        v_ell_indecomposable_ = parts.size() == 1;
    }
    return *v_ell_indecomposable_;
}

std::optional<FpMat> Oracle::find_splitting_idempotent(const MatrixRep& rep,
                                                       const std::vector<FpMat>& endo) {
    const uint32_t p = static_cast<uint32_t>(ell_);
    const Fp fp(p);
    const FpMat id = FpMat::identity(p, rep.dim);
    SplitMix64 rng(cfg_.seed ^ (static_cast<uint64_t>(rep.dim) << 32) ^ endo.size());

    auto try_element = [&](const FpMat& x) -> std::optional<FpMat> {
        FpPoly m = min_poly(x);
        if (m.size() <= 2) return std::nullopt;  // scalar: no information
        auto factors = poly_factor(fp, m, cfg_.seed);
        if (factors.size() < 2) return std::nullopt;
        // CRT idempotent: 1 on the first primary component, 0 on the rest.
        FpPoly u = {1};
        for (long e = 0; e < factors[0].second; ++e) u = poly_mul(fp, u, factors[0].first);
        FpPoly v = poly_divexact(fp, m, u);
        FpPoly s, t;
        FpPoly g = poly_ext_gcd(fp, u, v, s, t);
        internal_check(g.size() == 1, "splitting: primary components not coprime");
        FpPoly tv = poly_mul(fp, t, v);
        // normalize by the gcd constant
        uint32_t c = fp.inv(g[0]);
        for (auto& cc : tv) cc = fp.mul(cc, c);
        FpMat e0 = poly_eval(tv, x);
        auto [e, iters] = lift_idempotent(e0);
        (void)iters;
        if (e.is_zero() || e == id) return std::nullopt;
        return e;
    };

    // Basis elements first, then seeded random combinations.
    for (const FpMat& x : endo)
        if (auto e = try_element(x)) return e;
    for (long trial = 0; trial < 256; ++trial) {
        FpMat x(p, rep.dim, rep.dim);
        for (const FpMat& b : endo) {
            uint32_t c = rng.below(p);
            if (c) x = x + b.scaled(c);
        }
        if (auto e = try_element(x)) return e;
    }
    return std::nullopt;
}

std::vector<SummandInfo> Oracle::split_indecomposable(const MatrixRep& rep) {
    if (rep.dim > cfg_.dim_budget)
        throw BudgetExceededError("decompose: dimension " + std::to_string(rep.dim) +
                                  " exceeds budget " + std::to_string(cfg_.dim_budget));
    if (rep.dim == 0) return {};
    const uint32_t p = static_cast<uint32_t>(ell_);

    std::vector<FpMat> endo = commutant(rep);
    if (endo.size() == 1) return {SummandInfo{rep, 1, 0}};

    if (auto e = find_splitting_idempotent(rep, endo)) {
        const FpMat id = FpMat::identity(p, rep.dim);
        auto cols1 = column_space(*e);
        auto cols2 = column_space(id - *e);
        internal_check(cols1.size() + cols2.size() == static_cast<size_t>(rep.dim),
                       "split: image/kernel dimensions do not add up");
        FpMat basis(p, rep.dim, rep.dim);
        long col = 0;
        for (const auto& v : cols1) {
            for (long i = 0; i < rep.dim; ++i) basis.at(i, col) = v[i];
            ++col;
        }
        for (const auto& v : cols2) {
            for (long i = 0; i < rep.dim; ++i) basis.at(i, col) = v[i];
            ++col;
        }
        FpMat binv = basis.inverse();
        const long d1 = static_cast<long>(cols1.size());
        MatrixRep r1{ell_, rep.group, d1, {}};
        MatrixRep r2{ell_, rep.group, rep.dim - d1, {}};
        for (const FpMat& g : rep.gens) {
            FpMat c = binv * g * basis;
            FpMat g1(p, d1, d1), g2(p, rep.dim - d1, rep.dim - d1);
            for (long i = 0; i < rep.dim; ++i)
                for (long j = 0; j < rep.dim; ++j) {
                    bool bi = i < d1, bj = j < d1;
                    if (bi && bj) g1.at(i, j) = c.at(i, j);
                    else if (!bi && !bj) g2.at(i - d1, j - d1) = c.at(i, j);
                    else internal_check(c.at(i, j) == 0, "split: subspaces are not invariant");
                }
            r1.gens.push_back(std::move(g1));
            r2.gens.push_back(std::move(g2));
        }
        auto parts = split_indecomposable(r1);
        auto rest = split_indecomposable(r2);
        parts.insert(parts.end(), rest.begin(), rest.end());
        return parts;
    }

    // No splitting found: certify indecomposability through the radical.
    std::vector<FpMat> rad = radical(p, endo);
    if (static_cast<long>(endo.size()) - static_cast<long>(rad.size()) == 1)
        return {SummandInfo{rep, static_cast<long>(endo.size()), static_cast<long>(rad.size())}};
    throw CertificateError(
        "decompose: dim End/J = " +
        std::to_string(endo.size() - rad.size()) +
        " != 1 and no splitting idempotent was found; the summand is not "
        "absolutely indecomposable over the prime field");
}

bool Oracle::is_isomorphic(const MatrixRep& m, const MatrixRep& n) {
    if (m.dim != n.dim || m.group != n.group) return false;
    auto fwd = hom_space(m, n);
    if (fwd.empty()) return false;
    auto bwd = hom_space(n, m);
    if (bwd.empty()) return false;
    for (const FpMat& f : fwd)
        for (const FpMat& g : bwd)
            if ((g * f).rank() == m.dim) return true;
    return false;
}

std::vector<HLabel> Oracle::h_candidates_for_dim(long dim) {
    std::vector<HLabel> out;
    if (dim >= 1 && dim <= ell_) out.push_back(HLabel::std_module(dim - 1));
    if (dim == ell_ + 1 && v_ell_is_indecomposable()) out.push_back(HLabel::std_module(ell_));
    if (dim == 2 * ell_) out.push_back(HLabel::big_w());
    return out;
}

SummandLabel Oracle::identify(const MatrixRep& summand) {
    auto candidate_rep = [&](const HLabel& h) -> const MatrixRep& {
        return h.is_big_w() ? w_rep() : std_rep(h.index());
    };
    if (summand.group == Group::H) {
        for (const HLabel& h : h_candidates_for_dim(summand.dim))
            if (is_isomorphic(summand, candidate_rep(h))) return h;
    } else {
        for (long da = 1; da <= summand.dim; ++da) {
            if (summand.dim % da) continue;
            long db = summand.dim / da;
            for (const HLabel& hl : h_candidates_for_dim(da))
                for (const HLabel& hr : h_candidates_for_dim(db)) {
                    MatrixRep cand = box_tensor(candidate_rep(hl), candidate_rep(hr));
                    if (is_isomorphic(summand, cand)) return BoxLabel{hl, hr};
                }
        }
    }
    // Unidentified: reuse or mint an opaque label.
    for (const auto& entry : opaques_) {
        if (entry.group != summand.group || entry.rep.dim != summand.dim) continue;
        if (is_isomorphic(summand, entry.rep)) {
            HLabel h = HLabel::opaque(entry.id, summand.dim);
            if (summand.group == Group::H) return h;
            return BoxLabel{h, HLabel::std_module(0)};
        }
    }
    long id = next_opaque_id_++;
    opaques_.push_back({summand, id, summand.group});
    HLabel h = HLabel::opaque(id, summand.dim);
    if (summand.group == Group::H) return h;
    // Whole-module opaque labels for the product group live in the left slot.
    return BoxLabel{h, HLabel::std_module(0)};
}

DecompositionReport Oracle::decompose(const MatrixRep& rep) {
    internal_check(rep.ell == ell_, "Oracle::decompose: characteristic mismatch");
    auto parts = split_indecomposable(rep);

    struct IsoGroup {
        SummandInfo info;
        long count = 0;
    };
    std::vector<IsoGroup> groups;
    for (auto& part : parts) {
        bool found = false;
        for (auto& g : groups) {
            if (g.info.rep.dim == part.rep.dim && g.info.dim_end == part.dim_end &&
                is_isomorphic(part.rep, g.info.rep)) {
                ++g.count;
                found = true;
                break;
            }
        }
        if (!found) groups.push_back({std::move(part), 1});
    }

    DecompositionReport report;
    report.ell = ell_;
    report.group = rep.group;
    report.input_dim = rep.dim;
    for (const auto& g : groups) {
        ReportEntry e;
        e.label = identify(g.info.rep);
        e.multiplicity = g.count;
        e.dim = g.info.rep.dim;
        e.dim_end = g.info.dim_end;
        e.dim_rad = g.info.dim_rad;
        report.entries.push_back(std::move(e));
    }
    std::sort(report.entries.begin(), report.entries.end(),
              [](const ReportEntry& a, const ReportEntry& b) {
                  return summand_label_less(a.label, b.label);
              });
    internal_check(report.total_dim() == rep.dim, "decompose: dimension bookkeeping failed");
    return report;
}

bool Oracle::verify_partial_lambda(const MatrixRep& v, long k) {
    if (k < 1 || k >= ell_)
        throw OutOfRangeError("verify_partial_lambda: k outside 1..ell-1");
    std::map<std::string, long> even, odd;
    for (long i = 0; i <= std::min(k, v.dim); ++i) {
        MatrixRep piece = tensor(exterior_power(v, i), sym_power(v, k - i));
        if (piece.dim == 0) continue;
        auto ms = decompose(piece).label_multiset();
        auto& side = (i % 2 == 0) ? even : odd;
        for (const auto& [label, mult] : ms) side[label] += mult;
    }
    return even == odd;
}

// ---- expression language ----

namespace {

struct ExprParser {
    Oracle& oracle;
    const std::string& src;
    size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw std::invalid_argument("expression: expected '" + std::string(1, c) + "' at position " +
                                        std::to_string(pos) + " in '" + src + "'");
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])))) ++pos;
        if (start == pos) throw std::invalid_argument("expression: identifier expected in '" + src + "'");
        return src.substr(start, pos - start);
    }
    long number() {
        skip_ws();
        size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("expression: number expected in '" + src + "'");
        return std::stol(src.substr(start, pos - start));
    }

    std::pair<MatrixRep, std::string> parse() {
        std::string name = ident();
        if (name == "W") return {oracle.w_rep(), "W"};
        if (name == "natural") return {natural_rep(oracle.ell()), "V1"};
        if (!name.empty() && name[0] == 'V') {
            long i = std::stol(name.substr(1));
            if (i < 0 || i > oracle.ell())
                throw std::invalid_argument("expression: V index outside 0..ell");
            return {oracle.std_rep(i), "V" + std::to_string(i)};
        }
        if (name == "box" || name == "tensor") {
            expect('(');
            auto [a, ca] = parse();
            expect(',');
            auto [b, cb] = parse();
            expect(')');
            if (name == "box") return {box_tensor(a, b), "box(" + ca + "," + cb + ")"};
            return {tensor(a, b), "tensor(" + ca + "," + cb + ")"};
        }
        if (name == "sym" || name == "symc" || name == "ext") {
            expect('(');
            auto [a, ca] = parse();
            expect(',');
            long n = number();
            expect(')');
            std::string canon = name + "(" + ca + "," + std::to_string(n) + ")";
            if (name == "sym") return {sym_power(a, n), canon};
            if (name == "symc") return {sym_power_coinvariants(a, n), canon};
            return {exterior_power(a, n), canon};
        }
        if (name == "dsum") {
            expect('(');
            auto [a, ca] = parse();
            std::string canon = "dsum(" + ca;
            MatrixRep acc = a;
            while (eat(',')) {
                auto [b, cb] = parse();
                acc = direct_sum(acc, b);
                canon += "," + cb;
            }
            expect(')');
            return {acc, canon + ")"};
        }
        throw std::invalid_argument("expression: unknown construction '" + name + "'");
    }
};

}  // namespace

std::pair<MatrixRep, std::string> build_rep_expr(Oracle& oracle, const std::string& expr) {
    ExprParser p{oracle, expr};
    auto result = p.parse();
    p.skip_ws();
    if (p.pos != expr.size())
        throw std::invalid_argument("expression: trailing input in '" + expr + "'");
    return result;
}

}  // namespace splitk
