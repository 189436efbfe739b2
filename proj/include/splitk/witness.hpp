#pragma once

#include <string>
#include <vector>

#include "splitk/repmod.hpp"
#include "splitk/series.hpp"

namespace splitk {

// The surface class consumed as typed input data: 20 trivial summands plus
// V1 box V1, total dimension 24. The group-theoretic hypotheses behind it
// hold only for large enough characteristic; they are recorded as
// assumptions in every report rather than checked.
RingElement k3_class(long ell);

std::vector<std::string> witness_assumptions();

// a_i = Sym^i of the surface class for 0 <= i <= l-1.
std::vector<RingElement> true_sym_sequence(long ell);

// The degree-l coefficient of the pure box sequence forced by the
// annihilator recurrence c_l = c1 c_{l-1} - ([V2#V0]+[V0#V2]) c_{l-2}
// + c1 c_{l-3} - c_{l-4}; every product stays inside the stated rules.
RingElement forced_box_coefficient(long ell);

// a_0..a_l with a_i the true symmetric powers for i < l and a_l the value
// the recurrence forces (binomial tail plus forced box coefficient).
std::vector<RingElement> forced_full_sequence(long ell);

struct WitnessReport {
    long ell = 0;
    std::vector<RingElement> a;  // forced sequence, 0..l
    RingElement b_ell;           // degree-l coefficient of the transform
    RingElement b_ell_reduced;   // b_l mod the level l-1 filtration
    Int coeff_ww;                // coefficient at W#W (expected +1)
    Int coeff_w_v;               // coefficient at W#V_{l-2} (expected -1)
    Int coeff_v_w;               // coefficient at V_{l-2}#W (expected -1)
    bool effective = true;       // expected false
    std::vector<std::string> assumptions;

    WitnessReport() : b_ell(5), b_ell_reduced(5) {}
};

// Runs the pipeline at one characteristic: forced sequence, transform at
// L = 1, boundary coefficients of b_l, effectivity verdict.
WitnessReport run_witness(long ell);

struct CrossCheckReport {
    long ell = 0;
    RingElement actual;      // oracle class of the quotient-model Sym^l
    RingElement forced;      // the recurrence value c_l
    RingElement difference;  // actual - forced
    Int actual_dim, forced_dim;

    CrossCheckReport() : actual(5), forced(5), difference(5) {}
};

// Compares the representation-theoretic Sym^l of V1 box V1 (computed by the
// oracle on the quotient model) against the forced coefficient. These are
// different objects: the pipeline's degree-l value is not claimed to equal
// either; the report labels both sides explicitly.
CrossCheckReport cross_check_actual_sym_ell(Oracle& oracle);

}  // namespace splitk
