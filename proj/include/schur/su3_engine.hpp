#pragma once

#include <array>
#include <vector>

#include "schur/amplitude_map.hpp"
#include "schur/rep_core.hpp"
#include "schur/sqrt_rational.hpp"

namespace schur {

enum class SU3Op { Tplus, Tminus, Uplus, Uminus, Vplus, Vminus };

// one term of a ladder-operator action
struct SU3LadderTerm {
    ReprStateSU3 state;
    SqrtRational coeff;
};
std::vector<SU3LadderTerm> ladder_apply(SU3Op op, const ReprStateSU3& state);

// U/V ladder coefficient magnitudes at k = m, arguments (P,Q,k,l);
// out-of-range arguments give exact zeros
struct LadderCoeffs {
    SqrtRational u1p, u2p, u1m, u2m, v1p, v2p, v1m, v2m;
};
LadderCoeffs ladder_coeffs_km(int P, int Q, int k, int l);

// closed-form factorial coefficients of the isoscalar recursion; negative
// factorial arguments make the whole coefficient 0 (zeroing rule)
SqrtRational b_coeff(int P, int Q, int s);
SqrtRational d_coeff(int P1, int Q1, int k1, int l1, int s);
SqrtRational a_coeff(int P, int Q, int k, int l);    // carries (-1)^l
SqrtRational c_coeff(int P1, int Q1, int k1, int l1, int l);  // carries (-1)^l

// the de Swart seed triple for the child highest-weight row with base
// (k1,l1); child P+Q is fixed to k1-l1 by isospin additivity
struct HwsIsoscalars {
    SqrtRational f_u_row1;  // parent (k1, l1-1), isospin T+1/2 side
    SqrtRational f_u_row2;  // parent (k1-1, l1), isospin T-1/2 side
    SqrtRational f_s;       // parent (k1, l1)
};
HwsIsoscalars hws_isoscalars(int P1, int Q1, int k1, int l1);

enum class QuarkKind { U, S };  // (1,0) or (0,0) second factor

struct IsoscalarQuery {
    int P1 = 0, Q1 = 0, k1 = 0, l1 = 0;  // parent
    QuarkKind quark = QuarkKind::U;
    int P = 0, Q = 0, k = 0, l = 0;  // child
    friend bool operator<(const IsoscalarQuery& a, const IsoscalarQuery& b) {
        auto ta = std::tie(a.P1, a.Q1, a.k1, a.l1, a.quark, a.P, a.Q, a.k, a.l);
        auto tb = std::tie(b.P1, b.Q1, b.k1, b.l1, b.quark, b.P, b.Q, b.k, b.l);
        return ta < tb;
    }
};

// F(k1,l1 : quark ; k,l) for the tensor product (P1,Q1) x (1,0) -> (P,Q).
// Invalid labels in either space give exact 0; a child rep that is not one
// of the three box additions is a domain error. Memoised internally.
SqrtRational isoscalar(const IsoscalarQuery& query);

// which box addition turns (P1,Q1) into (P,Q): 2/1/0, or -1 if none
int child_row(int P1, int Q1, int P, int Q);

// 3x3 rotation block of one inverse-CG step, in the double-primed variables
struct RotationMatrix3 {
    std::array<std::array<SqrtRational, 3>, 3> entry{};  // [row p=2,1,0][col u,d,s]
    char flavor = 's';                                   // 'r' = rho, 's' = sigma
};

// Both flavor blocks for a given parent rep and (k'',l'',m''), plus the
// branch selector: w = 1 iff the T+1/2 (rho) factor is nonzero for row p.
// In the generic multiplet both flavors contribute; the apply step uses both.
struct RotationStep {
    RotationMatrix3 rho, sigma;
    std::array<SqrtRational, 3> f_rho, f_sigma, f_s;  // per row p=2,1,0
    std::array<int, 3> w{};                           // per row
    SqrtRational cos_rho, sin_rho, cos_sigma, sin_sigma;
};
RotationStep rotation_matrices(int P1, int Q1, int kpp, int lpp, int mpp);

// one emitted branch of the inverse-CG step for qutrits
struct SU3Branch {
    Partition partition;     // parent diagram (with lambda3 kept)
    ReprStateSU3 state;      // parent rep labels
    int emitted_quark = 0;   // 0=s, 1=d, 2=u
    SqrtRational amp;
};

struct SU3Term {
    Partition partition;
    int k = 0, l = 0, m = 0;
};

// peel one box (path entry p) off the given Schur term; up to 5 branches
// (u and d can couple through both neighbouring isospins)
std::vector<SU3Branch> apply_ucg_inv_su3(const SU3Term& term, int p);

// full inverse Schur transform for qutrits; keys use u=2, d=1, s=0
AmplitudeMap decompose_su3(const SchurLabel& label);

void clear_isoscalar_cache();

}  // namespace schur
