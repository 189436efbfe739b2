#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "splitk/bigint.hpp"
#include "splitk/errors.hpp"

namespace splitk {

// Basis labels for the split Grothendieck ring of SL2(F_l).
//
// Std(i) is the i-th symmetric power of the natural 2-dimensional
// representation, legal as a multiplication operand for 0 <= i <= l-1;
// Std(l) and Opaque labels are bookkeeping-only names for oracle output.
// BigW is the indecomposable V1 (x) V_{l-1} of dimension 2l.
class HLabel {
public:
    enum class Kind : uint8_t { Std = 0, BigW = 1, Opaque = 2 };

    static HLabel std_module(long index) { return HLabel(Kind::Std, index, 0); }
    static HLabel big_w() { return HLabel(Kind::BigW, 0, 0); }
    static HLabel opaque(long id, long dim) { return HLabel(Kind::Opaque, id, dim); }

    Kind kind() const { return kind_; }
    bool is_std() const { return kind_ == Kind::Std; }
    bool is_big_w() const { return kind_ == Kind::BigW; }
    bool is_opaque() const { return kind_ == Kind::Opaque; }
    long index() const { return a_; }      // Std only
    long opaque_id() const { return a_; }  // Opaque only

    long dimension(long ell) const {
        switch (kind_) {
            case Kind::Std: return a_ + 1;
            case Kind::BigW: return 2 * ell;
            default: return b_;
        }
    }

    // Canonical order: Std by index, then BigW, then Opaque by id.
    auto operator<=>(const HLabel& o) const {
        if (kind_ != o.kind_) return kind_ <=> o.kind_;
        return a_ <=> o.a_;
    }
    bool operator==(const HLabel&) const = default;

    std::string to_string() const;                    // "V3", "W", "O1"
    static HLabel parse(const std::string& s, long opaque_dim_hint = 0);

private:
    HLabel(Kind k, long a, long b) : kind_(k), a_(a), b_(b) {}
    Kind kind_;
    long a_;  // Std index or Opaque id
    long b_;  // Opaque dimension
};

// External tensor product of two indecomposables, itself indecomposable.
struct BoxLabel {
    HLabel left;
    HLabel right;

    long dimension(long ell) const { return left.dimension(ell) * right.dimension(ell); }
    auto operator<=>(const BoxLabel&) const = default;
    std::string to_string() const { return left.to_string() + "#" + right.to_string(); }
};

inline BoxLabel box(HLabel l, HLabel r) { return BoxLabel{l, r}; }
inline BoxLabel box_std(long i, long j) {
    return BoxLabel{HLabel::std_module(i), HLabel::std_module(j)};
}

// Position of a label in the span filtration: either a finite level or Top
// (outside every finite level, e.g. Opaque or Std(l) labels).
struct FiltrationDegree {
    bool top = false;
    long n = 0;

    static FiltrationDegree finite(long n) { return {false, n}; }
    static FiltrationDegree top_degree() { return {true, 0}; }
    bool operator==(const FiltrationDegree&) const = default;
    std::string to_string() const { return top ? "Top" : std::to_string(n); }
};

// Element of the split Grothendieck ring of SL2(F_l) x SL2(F_l): an integer
// linear combination of box labels. No zero coefficients are stored and
// equality is exact mapping equality.
class RingElement {
public:
    explicit RingElement(long ell);
    static RingElement one(long ell);
    static RingElement monomial(long ell, const BoxLabel& label, Int coeff = Int(1));

    long ell() const { return ell_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<BoxLabel, Int>& terms() const { return terms_; }
    Int coeff(const BoxLabel& label) const;

    void add_term(const BoxLabel& label, const Int& coeff);

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& o) const;
    RingElement scaled(const Int& c) const;
    bool operator==(const RingElement& o) const { return ell_ == o.ell_ && terms_ == o.terms_; }
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    // Total dimension: sum of coeff * dim(label). The dimension homomorphism.
    Int dimension() const;

    std::string to_string() const;

private:
    long ell_;
    std::map<BoxLabel, Int> terms_;
};

// Decomposition of V_i (x) V_j for SL2(F_l), as stated by the one-step and
// Clebsch-Gordan rules. Defined for 0 <= i,j <= l-1 with i+j <= l; the
// boundary case i+j = l produces BigW plus a tail of lower Std labels.
// Result is a sorted multiset of labels (all multiplicities are one).
std::vector<HLabel> tensor_h(long ell, long i, long j);

// Sym^n(V1 box V1) = sum over i of V_{n-2i} box V_{n-2i}, for 0 <= n <= l-1.
RingElement sym_power_box(long ell, long n);

// Sym^n((V1 box V1) (+) trivial^k), expanded exactly over the integers.
RingElement sym_power_with_trivials(long ell, long n, long k);

// The degree-4 annihilator polynomial of the zeta series of V1 box V1:
// 1 - [V1#V1] t + ([V2#V0]+[V0#V2]) t^2 - [V1#V1] t^3 + t^4.
std::vector<RingElement> lambda_box(long ell);

// True iff every stored coefficient is >= 0.
bool is_effective(const RingElement& a);

// Smallest filtration level containing every label of `a` (Top if any
// Opaque or Std(l) label occurs). The zero element has degree 0.
FiltrationDegree filtration_degree(const RingElement& a);
FiltrationDegree label_filtration_degree(long ell, const BoxLabel& label);

// Drops every label lying in level n of the filtration (both slots Std with
// index <= n); keeps all others unchanged. Requires n <= l-1.
RingElement reduce_mod_filtration(const RingElement& a, long n);

bool is_odd_prime(long p);

}  // namespace splitk
