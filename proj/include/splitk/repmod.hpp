#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "splitk/fplin.hpp"
#include "splitk/gring.hpp"

namespace splitk {

enum class Group : uint8_t { H, G };  // SL2(F_l) or SL2(F_l) x SL2(F_l)

inline const char* group_name(Group g) { return g == Group::H ? "H" : "G"; }

// A representation given by the images of the standard transvection
// generators: (S, T) for H, (S,1),(T,1),(1,S),(1,T) for G.
struct MatrixRep {
    long ell = 0;
    Group group = Group::H;
    long dim = 0;
    std::vector<FpMat> gens;
};

MatrixRep natural_rep(long ell);
MatrixRep trivial_rep(long ell, Group group);

// Action on degree-n monomials; the quotient model of the symmetric power,
// built by multinomial expansion mod l. Enforces n < l, the range in which
// the quotient agrees with the symmetric-tensor submodule.
MatrixRep sym_power(const MatrixRep& rep, long n);
// Same construction without the bound; exposed for the boundary computation
// at n = l where only the quotient (coinvariant) model is meaningful.
MatrixRep sym_power_coinvariants(const MatrixRep& rep, long n);

MatrixRep tensor(const MatrixRep& a, const MatrixRep& b);            // same group
MatrixRep box_tensor(const MatrixRep& left, const MatrixRep& right); // H x H -> G
MatrixRep exterior_power(const MatrixRep& rep, long k);
MatrixRep direct_sum(const MatrixRep& a, const MatrixRep& b);
MatrixRep direct_sum(const std::vector<MatrixRep>& parts);

// Basis of the space of equivariant maps A -> B. Exploits the Jordan form
// of the first (unipotent) generator to keep the linear systems small.
std::vector<FpMat> hom_space(const MatrixRep& a, const MatrixRep& b);
// Basis of the endomorphism algebra End_G(rep) (contains the identity).
std::vector<FpMat> commutant(const MatrixRep& rep);

// Basis of the Jacobson radical of a unital matrix algebra over F_p, by the
// layered characteristic-coefficient criterion (sound in characteristic p
// for any matrix size): layer i keeps {x : c_{p^i}(xy) = 0 for all y}, where
// c_k is the degree n-k coefficient of the characteristic polynomial.
std::vector<FpMat> radical(uint32_t p, const std::vector<FpMat>& algebra_basis);

// Newton-style idempotent lifting e <- 3e^2 - 2e^3, run until e^2 = e.
// Returns the idempotent and the number of iterations used.
std::pair<FpMat, long> lift_idempotent(const FpMat& e0, long max_iters = 64);

struct SummandInfo {
    MatrixRep rep;
    long dim_end;
    long dim_rad;
};

using SummandLabel = std::variant<HLabel, BoxLabel>;

std::string summand_label_to_string(const SummandLabel& label);
bool summand_label_less(const SummandLabel& a, const SummandLabel& b);

struct ReportEntry {
    SummandLabel label = HLabel::std_module(0);
    long multiplicity = 0;
    long dim = 0;       // dimension of one summand
    long dim_end = 0;   // dim End of one summand
    long dim_rad = 0;   // dim of its radical (dim_end - dim_rad == 1 certificate)
};

struct DecompositionReport {
    long ell = 0;
    Group group = Group::H;
    long input_dim = 0;
    std::vector<ReportEntry> entries;  // sorted by label

    long total_dim() const;
    // Multiset view {label string -> multiplicity}.
    std::map<std::string, long> label_multiset() const;
    // The class of the input in the split Grothendieck ring; H-group labels
    // embed in the left slot (right slot V0).
    RingElement to_ring_element() const;
    std::string to_string() const;
};

struct OracleConfig {
    long dim_budget = 512;
    uint64_t seed = 0;
};

// Brute-force decomposition oracle for one characteristic. Owns the label
// library (V_0..V_{l-1}, V_l when indecomposable, W, box combinations) and
// the registry of opaque labels, so ids are stable within a session.
class Oracle {
public:
    explicit Oracle(long ell, OracleConfig cfg = {});

    long ell() const { return ell_; }
    const OracleConfig& config() const { return cfg_; }

    const MatrixRep& std_rep(long i);  // V_i for 0 <= i <= l (V_l = quotient model)
    const MatrixRep& w_rep();          // V1 (x) V_{l-1}

    DecompositionReport decompose(const MatrixRep& rep);

    // Both inputs must be indecomposable. True iff the image of the
    // composition Hom(M,N) x Hom(N,M) -> End(M) is not contained in the
    // radical; for local endomorphism rings this means some composite is
    // invertible.
    bool is_isomorphic(const MatrixRep& m, const MatrixRep& n);

    // Checks the alternating wedge/sym identity at weight k by comparing the
    // decompositions of the even and odd parts as label multisets.
    bool verify_partial_lambda(const MatrixRep& v, long k);

    // List of indecomposable pieces with certificates (used by decompose;
    // exposed for tests).
    std::vector<SummandInfo> split_indecomposable(const MatrixRep& rep);

private:
    struct OpaqueEntry {
        MatrixRep rep;
        long id;
        Group group;
    };

    long ell_;
    OracleConfig cfg_;
    std::vector<std::optional<MatrixRep>> std_reps_;
    std::optional<MatrixRep> w_rep_;
    std::optional<bool> v_ell_indecomposable_;
    std::vector<OpaqueEntry> opaques_;
    long next_opaque_id_ = 1;

    bool v_ell_is_indecomposable();
    std::vector<HLabel> h_candidates_for_dim(long dim);
    SummandLabel identify(const MatrixRep& summand);
    std::optional<FpMat> find_splitting_idempotent(const MatrixRep& rep,
                                                   const std::vector<FpMat>& endo);
};

// Tiny expression language for naming representation constructions:
//   V<i> | W | natural | box(e,e) | tensor(e,e) | sym(e,n) | ext(e,n) | dsum(e,...)
// Returns the built representation and the canonical form of the expression.
std::pair<MatrixRep, std::string> build_rep_expr(Oracle& oracle, const std::string& expr);

}  // namespace splitk
