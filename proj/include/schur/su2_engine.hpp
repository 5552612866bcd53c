#pragma once

#include <vector>

#include "schur/amplitude_map.hpp"
#include "schur/rep_core.hpp"
#include "schur/sqrt_rational.hpp"

namespace schur {

enum class LadderDir { Raise, Lower };

// C±(j,m) = sqrt((j∓m)(j±m+1)), doubled-integer arguments
SqrtRational ladder_coeff(int two_j, int two_m, LadderDir dir);

// total-spin content of j1 ⊗ j2, doubled, ascending
std::vector<int> clebsch_series(int two_j1, int two_j2);

// J+S coefficients for the child |j±1/2, m>: upper gives (alpha, beta),
// lower gives (alpha', beta') = (-beta, alpha); two_m_child = 2m of the child
struct JPlusHalf {
    SqrtRational alpha, beta;
};
JPlusHalf jplus_half_coeffs(int two_j, int two_m_child, bool upper);

// cos(theta) for one inverse-CG step evaluated from the child register
// values: sqrt((q + (1-p)) / ((lam1 - lam2) + 2(1-p)))
SqrtRational ucg_inv_angle(int lam1_child, int lam2_child, int q_child, int p);

// one branch produced by an inverse-CG step
struct SU2Branch {
    int lam1 = 0, lam2 = 0;  // parent diagram
    int q = 0;               // parent weight
    int emitted_bit = 0;     // the freed qubit (this particle's basis value)
    SqrtRational amp;
};

// peel one box off (lam1, lam2) according to path entry p, emitting <= 2
// branches; exactly-zero branches are dropped
std::vector<SU2Branch> apply_ucg_inv(int lam1, int lam2, int q, int p);

// full inverse Schur transform in exact arithmetic
AmplitudeMap decompose_su2(const SchurLabel& label);

}  // namespace schur
