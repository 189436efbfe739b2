#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "splitk/fplin.hpp"

namespace splitk {

// Partition with weakly decreasing positive parts.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<long> parts);

    const std::vector<long>& parts() const { return parts_; }
    long sum() const;
    long num_parts() const { return static_cast<long>(parts_.size()); }
    long part(long i) const;  // 1-based, 0 beyond the end
    Partition dual() const;

    auto operator<=>(const Partition&) const = default;
    std::string to_string() const;  // "(3,1)"

private:
    std::vector<long> parts_;
};

std::vector<Partition> partitions_of(long n);

// ---- symbolic cell charts ----

// Monomial x^xe y^ye * prod t_k^{e_k} with integer coefficient; param ids
// index the chart's parameter list.
struct ChartMonomial {
    long xe = 0, ye = 0;
    std::vector<std::pair<long, long>> params;  // sorted (param id, exponent)
    auto operator<=>(const ChartMonomial&) const = default;
};

using ChartPoly = std::map<ChartMonomial, long>;

// The symbolic family attached to a partition: parameter polynomials
// Q_1..Q_{r+1} and P_1..P_s over Z[t_ij][x,y], built by the bottom-right to
// top-left recursion, with the leading-term congruences checked on
// construction.
struct CellChart {
    Partition beta;
    Partition lambda;
    long r = 0, s = 0, n = 0;
    std::vector<std::pair<long, long>> param_index;  // id -> (i, j)
    std::vector<ChartPoly> q;                        // q[1..r+1]
    std::vector<ChartPoly> p;                        // p[1..s]

    long param_id(long i, long j) const;
    std::string param_name(long id) const;  // "t11"
};

CellChart build_cell_chart(const Partition& beta);

// ---- ideals in the local algebra F_q[x,y]/(x,y)^n ----

struct LocalAlgebra {
    uint32_t q = 2;
    long n = 1;
    long dim = 1;
    std::vector<std::pair<long, long>> mons;       // index -> (a, b), a+b < n
    std::map<std::pair<long, long>, long> index;   // (a, b) -> index
    std::vector<long> mul_x, mul_y;                // index maps, -1 if truncated
};

std::shared_ptr<const LocalAlgebra> make_local_algebra(uint32_t q, long n);

// An x,y-stable subspace in canonical reduced row-echelon form. For
// colength-n ideals the codimension equals n.
struct IdealBasis {
    std::shared_ptr<const LocalAlgebra> alg;
    std::vector<std::vector<uint32_t>> rows;  // RREF, sorted by pivot

    long codim() const { return alg->dim - static_cast<long>(rows.size()); }
    bool operator==(const IdealBasis& o) const { return rows == o.rows; }
    bool contains(const std::vector<uint32_t>& v) const;
    bool is_stable() const;  // closed under multiplication by x and y
    std::string key() const;  // canonical byte string for dedup/caching
};

// Canonical RREF span of the given vectors.
IdealBasis span_subspace(std::shared_ptr<const LocalAlgebra> alg,
                         const std::vector<std::vector<uint32_t>>& vecs);

// Subspace spanned by all monomial multiples of the generators.
IdealBasis ideal_from_generators(std::shared_ptr<const LocalAlgebra> alg,
                                 const std::vector<std::vector<uint32_t>>& gens);

// (J : x) = {v : x v in J}, again an ideal (possibly the unit ideal).
IdealBasis colon_by_x(const IdealBasis& j);

// The sequence dim(I:x^k) - dim(I:x^{k-1}) until the colon reaches the unit
// ideal, returned as a partition.
Partition colon_profile(const IdealBasis& ideal);

struct HilbConfig {
    long max_n_q2 = 5;
    long max_n_q3 = 4;
    long max_n_else = 3;
};

bool hilb_within_budget(long n, uint32_t q, const HilbConfig& cfg = {});

// Specializes the chart at a parameter assignment (indexed by param id) and
// echelonizes the resulting ideal; codimension and quotient-complement
// checks run on every call.
IdealBasis cell_ideal(const CellChart& chart, const std::vector<uint32_t>& phi, uint32_t q);

// Inverse of cell_ideal: the unique (beta, phi) producing the given ideal.
std::pair<Partition, std::vector<uint32_t>> recover_parameters(const IdealBasis& ideal);

// Complete duplicate-free list of colength-n ideals, found by growing
// stable subspaces one codimension at a time (each colength-k ideal is a
// hyperplane of a colength-(k-1) ideal above the maximal-ideal multiple, so
// the level-by-level echelon search is exhaustive).
std::vector<IdealBasis> enumerate_ideals(long n, uint32_t q, const HilbConfig& cfg = {});

struct CellCount {
    Partition beta;
    Partition lambda;
    long param_count = 0;
    long ideal_count = 0;
};

struct CellReport {
    long n = 0;
    uint32_t q = 2;
    std::vector<CellCount> cells;
    long total = 0;
};

// Checks (i) the enumeration count against the sum of cell sizes, (ii) that
// the cell parametrizations are injective with image exactly the ideals of
// the matching colon profile, and (iii) the parameter round trip. Throws
// with a counterexample on any failure.
CellReport verify_cell_decomposition(long n, uint32_t q, const HilbConfig& cfg = {});

}  // namespace splitk
