#include "schur/su3_engine.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace schur {

namespace {

// sqrt(prod(num)/prod(den)) with the zeroing rule: a negative factor or a
// non-positive denominator makes the whole coefficient an exact 0
SqrtRational guarded_sqrt(std::initializer_list<int> num, std::initializer_list<int> den) {
    Rational n(1);
    for (int f : num) {
        if (f < 0) return SqrtRational::zero();
        n *= Rational(f);
    }
    if (n.is_zero()) return SqrtRational::zero();
    Rational d(1);
    for (int f : den) {
        if (f <= 0) return SqrtRational::zero();
        d *= Rational(f);
    }
    return SqrtRational(1, n / d);
}

}  // namespace

std::vector<SU3LadderTerm> ladder_apply(SU3Op op, const ReprStateSU3& s) {
    if (!valid_su3_state(s.P, s.Q, s.k, s.l, s.m))
        throw std::invalid_argument("ladder_apply: invalid state");
    const int P = s.P, Q = s.Q, k = s.k, l = s.l, m = s.m;
    std::vector<SU3LadderTerm> out;
    auto emit = [&](int kk, int ll, int mm, SqrtRational c) {
        if (c.is_zero()) return;
        if (!valid_su3_state(P, Q, kk, ll, mm))
            throw std::logic_error("ladder_apply: nonzero coefficient to invalid state");
        out.push_back({{P, Q, kk, ll, mm}, c});
    };
    switch (op) {
        case SU3Op::Tplus:
            emit(k, l, m + 1, guarded_sqrt({k - m, m - l + 1}, {}));
            break;
        case SU3Op::Tminus:
            emit(k, l, m - 1, guarded_sqrt({k - m + 1, m - l}, {}));
            break;
        case SU3Op::Vplus:
            emit(k + 1, l, m + 1,
                 guarded_sqrt({k + 2, m - l + 1, k - Q + 1, P + Q - k},
                              {k - l + 1, k - l + 2}));
            emit(k, l + 1, m + 1,
                 guarded_sqrt({l + 1, k - m, Q - l, P + Q - l + 1}, {k - l, k - l + 1}));
            break;
        case SU3Op::Vminus:
            emit(k - 1, l, m - 1,
                 guarded_sqrt({k + 1, m - l, k - Q, P + Q - k + 1}, {k - l, k - l + 1}));
            emit(k, l - 1, m - 1,
                 guarded_sqrt({l, k - m + 1, Q - l + 1, P + Q - l + 2},
                              {k - l + 1, k - l + 2}));
            break;
        case SU3Op::Uplus:
            emit(k + 1, l, m,
                 guarded_sqrt({k + 2, k - m + 1, k - Q + 1, P + Q - k},
                              {k - l + 1, k - l + 2}));
            emit(k, l + 1, m,
                 -guarded_sqrt({m - l, l + 1, Q - l, P + Q - l + 1}, {k - l, k - l + 1}));
            break;
        case SU3Op::Uminus:
            emit(k - 1, l, m,
                 guarded_sqrt({k + 1, k - m, k - Q, P + Q - k + 1}, {k - l, k - l + 1}));
            emit(k, l - 1, m,
                 -guarded_sqrt({l, m - l + 1, Q - l + 1, P + Q - l + 2},
                               {k - l + 1, k - l + 2}));
            break;
    }
    return out;
}

LadderCoeffs ladder_coeffs_km(int P, int Q, int k, int l) {
    LadderCoeffs c;
    c.v1p = guarded_sqrt({k + 2, k - Q + 1, P + Q - k}, {k - l + 2});
    c.v1m = guarded_sqrt({k + 1, k - Q, P + Q - k + 1}, {k - l + 1});
    c.u1p = guarded_sqrt({k + 2, k - Q + 1, P + Q - k}, {k - l + 2, k - l + 1});
    c.v2m = guarded_sqrt({l, Q - l + 1, P + Q - l + 2}, {k - l + 2, k - l + 1});
    c.u2p = guarded_sqrt({l + 1, Q - l, P + Q - l + 1}, {k - l + 1});
    c.u2m = guarded_sqrt({l, Q - l + 1, P + Q - l + 2}, {k - l + 2});
    c.u1m = SqrtRational::zero();
    c.v2p = SqrtRational::zero();
    return c;
}

SqrtRational b_coeff(int P, int Q, int s) {
    (void)Q;  // the closed form depends on P and s only
    if (s < 0 || P - s < 0) return SqrtRational::zero();
    // sqrt((P-s)!/(P! s!))
    Rational r = Rational(1) / (factorial_ratio(P, P - s) * factorial_ratio(s, 0));
    return SqrtRational(1, r);
}

SqrtRational d_coeff(int P1, int Q1, int k1, int l1, int s) {
    if (s < 0) return SqrtRational::zero();
    if (P1 + Q1 - k1 - s < 0 || k1 - Q1 < 0 || k1 - l1 + 1 < 0) return SqrtRational::zero();
    Rational r = factorial_ratio(k1 + s + 1, k1 + 1) * factorial_ratio(k1 + s - Q1, k1 - Q1) *
                 factorial_ratio(P1 + Q1 - k1, P1 + Q1 - k1 - s) /
                 factorial_ratio(k1 - l1 + s + 1, k1 - l1 + 1);
    return SqrtRational(r.is_zero() ? 0 : 1, r);
}

SqrtRational a_coeff(int P, int Q, int k, int l) {
    if (l < 0 || Q - l < 0 || k + 1 - l < 0) return SqrtRational::zero();
    // (-1)^l sqrt((Q-l)! (P+Q-l+1)! (k+1)! / (l! Q! (P+Q+1)! (k+1-l)!))
    Rational r = factorial_ratio(k + 1, k + 1 - l) /
                 (factorial_ratio(Q, Q - l) * factorial_ratio(P + Q + 1, P + Q - l + 1) *
                  factorial_ratio(l, 0));
    int sign = r.is_zero() ? 0 : (l % 2 ? -1 : 1);
    return SqrtRational(sign, r);
}

// Defining product u2m[k1,l1] ... u2m[k1,l1-l+1]. The printed factorial form
// assumes l1 = l; the l1 > l parent class needs the general l1!/(l1-l)! run.
SqrtRational c_coeff(int P1, int Q1, int k1, int l1, int l) {
    if (l < 0 || l1 - l < 0 || Q1 - l1 < 0 || k1 - l1 + 1 < 0) return SqrtRational::zero();
    Rational r = factorial_ratio(l1, l1 - l) * factorial_ratio(Q1 - l1 + l, Q1 - l1) *
                 factorial_ratio(P1 + Q1 - l1 + l + 1, P1 + Q1 - l1 + 1) /
                 factorial_ratio(k1 - l1 + l + 1, k1 - l1 + 1);
    int sign = r.is_zero() ? 0 : (l % 2 ? -1 : 1);
    return SqrtRational(sign, r);
}

HwsIsoscalars hws_isoscalars(int P1, int Q1, int k1, int l1) {
    const int PQ = k1 - l1;  // child P+Q fixed by isospin additivity
    LadderCoeffs u = ladder_coeffs_km(P1, Q1, k1 - 1, l1 - 1);
    LadderCoeffs v = ladder_coeffs_km(P1, Q1, k1, l1);
    SqrtSum cross_sum;
    cross_sum.add(v.v1m * u.u1p);
    cross_sum.add(v.v2m * u.u2p);
    // the two products always share a radicand kernel; as_single asserts it
    SqrtRational cross = cross_sum.as_single();
    Rational G = u.u2p.squared() * Rational(k1 - l1 + 2) + u.u1p.squared() + cross.squared();

    HwsIsoscalars out;
    bool delta1 = (k1 - l1 + 1 == P1 + Q1) && (PQ == P1 + Q1 + 1);
    bool delta2 = (k1 - 1 - l1 == P1 + Q1) && (PQ == P1 + Q1 + 1);
    if (delta1) {
        out.f_u_row1 = SqrtRational::one();
    } else if (!G.is_zero()) {
        out.f_u_row1 = SqrtRational(u.u2p.is_zero() ? 0 : 1,
                                    u.u2p.squared() * Rational(k1 - l1 + 2) / G);
    }
    if (delta2) {
        out.f_u_row2 = SqrtRational::one();
    } else if (!G.is_zero()) {
        out.f_u_row2 = -SqrtRational(u.u1p.is_zero() ? 0 : 1, u.u1p.squared() / G);
    }
    if (!G.is_zero())
        out.f_s = SqrtRational(cross.is_zero() ? 0 : 1, cross.squared() / G);
    return out;
}

int child_row(int P1, int Q1, int P, int Q) {
    if (P == P1 + 1 && Q == Q1) return 2;
    if (P == P1 - 1 && Q == Q1 + 1) return 1;
    if (P == P1 && Q == Q1 - 1) return 0;
    return -1;
}

namespace {

std::map<IsoscalarQuery, SqrtRational> g_iso_cache;
std::mutex g_iso_mutex;

SqrtRational isoscalar_uncached(const IsoscalarQuery& q);

SqrtRational isoscalar_memo(const IsoscalarQuery& q) {
    {
        std::lock_guard<std::mutex> lk(g_iso_mutex);
        auto it = g_iso_cache.find(q);
        if (it != g_iso_cache.end()) return it->second;
    }
    SqrtRational v = isoscalar_uncached(q);
    std::lock_guard<std::mutex> lk(g_iso_mutex);
    g_iso_cache.emplace(q, v);
    return v;
}

SqrtRational isoscalar_uncached(const IsoscalarQuery& q) {
    const int p = child_row(q.P1, q.Q1, q.P, q.Q);
    if (p < 0) throw std::invalid_argument("isoscalar: (P,Q) is not a box addition of (P1,Q1)");
    if (q.P < 0 || q.Q < 0) return SqrtRational::zero();
    if (!valid_su3_kl(q.P1, q.Q1, q.k1, q.l1)) return SqrtRational::zero();
    if (!valid_su3_kl(q.P, q.Q, q.k, q.l)) return SqrtRational::zero();

    // weight additivity: the parent labels compatible with child (k,l)
    bool ok;
    bool rho_type = false;  // parent on the T+1/2 side
    if (q.quark == QuarkKind::S) {
        ok = (p == 0) ? (q.k1 == q.k + 1 && q.l1 == q.l + 1)
                      : (q.k1 == q.k && q.l1 == q.l);
    } else if (p == 0) {
        rho_type = (q.k1 == q.k + 1 && q.l1 == q.l);
        ok = rho_type || (q.k1 == q.k && q.l1 == q.l + 1);
    } else {
        rho_type = (q.k1 == q.k && q.l1 == q.l - 1);
        ok = rho_type || (q.k1 == q.k - 1 && q.l1 == q.l);
    }
    if (!ok) return SqrtRational::zero();

    const int s = q.P + q.Q - q.k;
    const bool child_hws = (q.l == 0 && s == 0);

    // The ladder recursions fix the s column and the T-1/2 u column; the
    // T+1/2 u column follows from orthonormality of the child row, with the
    // de Swart sign: negative for additions to rows 1-2, positive for row 3.
    if (q.quark == QuarkKind::U && rho_type) {
        if (child_hws) return hws_isoscalars(q.P1, q.Q1, q.k1, q.l1 + 1).f_u_row1;
        IsoscalarQuery fs = q;
        fs.quark = QuarkKind::S;
        fs.k1 = (p == 0) ? q.k + 1 : q.k;
        fs.l1 = (p == 0) ? q.l + 1 : q.l;
        Rational mag = Rational(1) - isoscalar_memo(fs).squared();
        IsoscalarQuery fsig = q;
        fsig.k1 = (p == 0) ? q.k : q.k - 1;
        fsig.l1 = (p == 0) ? q.l + 1 : q.l;
        mag -= isoscalar_memo(fsig).squared();
        if (mag.sign() < 0) throw std::logic_error("isoscalar: negative residual norm");
        SqrtRational v(mag.is_zero() ? 0 : 1, mag);
        return p == 0 ? v : -v;
    }

    if (child_hws) {
        if (q.quark == QuarkKind::S) return hws_isoscalars(q.P1, q.Q1, q.k1, q.l1).f_s;
        return hws_isoscalars(q.P1, q.Q1, q.k1 + 1, q.l1).f_u_row2;
    }

    if (q.l == 0) {
        // ladder down the l = 0 edge towards the highest-weight row
        IsoscalarQuery up = q;
        up.k = q.P + q.Q;
        SqrtRational B = b_coeff(q.P, q.Q, s);
        if (q.quark == QuarkKind::U) {
            up.k1 = q.k1 + s;
            return B * d_coeff(q.P1, q.Q1, q.k1, q.l1, s) * isoscalar_memo(up);
        }
        up.k1 = q.k1 + s;
        SqrtRational term1 = d_coeff(q.P1, q.Q1, q.k1, q.l1, s) * isoscalar_memo(up);
        IsoscalarQuery upu = up;
        upu.quark = QuarkKind::U;
        upu.k1 = q.k1 + s - 1;
        SqrtRational term2 =
            d_coeff(q.P1, q.Q1, q.k1, q.l1, s - 1) * isoscalar_memo(upu);
        SqrtSum sum;
        sum.add(B * term1);
        sum.add(B * SqrtRational::from_rational(Rational(s)) * term2);
        return sum.as_single();
    }

    // strip the second-row d quarks: c * A * F(k1, l1-l : ... ; k, 0)
    IsoscalarQuery base = q;
    base.l = 0;
    base.l1 = q.l1 - q.l;
    return c_coeff(q.P1, q.Q1, q.k1, q.l1, q.l) * a_coeff(q.P, q.Q, q.k, q.l) *
           isoscalar_memo(base);
}

}  // namespace

SqrtRational isoscalar(const IsoscalarQuery& query) { return isoscalar_memo(query); }

void clear_isoscalar_cache() {
    std::lock_guard<std::mutex> lk(g_iso_mutex);
    g_iso_cache.clear();
}

RotationStep rotation_matrices(int P1, int Q1, int kpp, int lpp, int mpp) {
    RotationStep st;
    st.rho.flavor = 'r';
    st.sigma.flavor = 's';
    // SU(2) halves, in the double-primed variables
    st.cos_rho = guarded_sqrt({mpp - lpp + 1}, {kpp - lpp + 2});
    st.sin_rho = guarded_sqrt({kpp - mpp + 1}, {kpp - lpp + 2});
    if (kpp > lpp) {
        st.cos_sigma = guarded_sqrt({mpp - lpp}, {kpp - lpp});
        st.sin_sigma = guarded_sqrt({kpp - mpp}, {kpp - lpp});
    }
    const int childPQ[3][2] = {{P1 + 1, Q1}, {P1 - 1, Q1 + 1}, {P1, Q1 - 1}};
    for (int row = 0; row < 3; ++row) {
        int p = 2 - row;
        int P = childPQ[row][0], Q = childPQ[row][1];
        if (P < 0 || Q < 0) continue;
        int kc = (p == 0) ? kpp - 1 : kpp;
        int lc = (p == 0) ? lpp - 1 : lpp;
        if (!valid_su3_kl(P, Q, kc, lc)) continue;
        st.f_rho[row] = isoscalar({P1, Q1, kpp, lpp - 1, QuarkKind::U, P, Q, kc, lc});
        st.f_sigma[row] = isoscalar({P1, Q1, kpp - 1, lpp, QuarkKind::U, P, Q, kc, lc});
        st.f_s[row] = isoscalar({P1, Q1, kpp, lpp, QuarkKind::S, P, Q, kc, lc});
        st.w[row] = st.f_rho[row].is_zero() ? 0 : 1;
        st.rho.entry[row] = {-st.sin_rho * st.f_rho[row], st.cos_rho * st.f_rho[row],
                             st.f_s[row]};
        st.sigma.entry[row] = {st.cos_sigma * st.f_sigma[row], st.sin_sigma * st.f_sigma[row],
                               st.f_s[row]};
    }
    return st;
}

std::vector<SU3Branch> apply_ucg_inv_su3(const SU3Term& term, int p) {
    if (p < 0 || p > 2) throw std::invalid_argument("apply_ucg_inv_su3: p out of range");
    const Partition& lam = term.partition;
    int P = lam.row(0) - lam.row(1);
    int Q = lam.row(1) - lam.row(2);
    if (!valid_su3_state(P, Q, term.k, term.l, term.m))
        throw std::invalid_argument("apply_ucg_inv_su3: malformed term");
    Partition parent = lam;
    int row = 2 - p;
    while (int(parent.rows.size()) <= row) parent.rows.push_back(0);
    parent.rows[row] -= 1;
    if (!validate_partition(parent.rows, 3))
        throw std::invalid_argument("apply_ucg_inv_su3: path removes an illegal box");
    int P1 = parent.row(0) - parent.row(1);
    int Q1 = parent.row(1) - parent.row(2);

    int kpp = (p == 0) ? term.k + 1 : term.k;
    int lpp = (p == 0) ? term.l + 1 : term.l;
    int mpp = (p == 0) ? term.m + 1 : term.m;

    SqrtRational f_rho = isoscalar({P1, Q1, kpp, lpp - 1, QuarkKind::U, P, Q, term.k, term.l});
    SqrtRational f_sigma =
        isoscalar({P1, Q1, kpp - 1, lpp, QuarkKind::U, P, Q, term.k, term.l});
    SqrtRational f_s = isoscalar({P1, Q1, kpp, lpp, QuarkKind::S, P, Q, term.k, term.l});
    if (f_rho.is_zero() && f_sigma.is_zero() && f_s.is_zero())
        throw std::invalid_argument("apply_ucg_inv_su3: malformed term (no branch couples)");

    SqrtRational cr = guarded_sqrt({mpp - lpp + 1}, {kpp - lpp + 2});
    SqrtRational sr = guarded_sqrt({kpp - mpp + 1}, {kpp - lpp + 2});
    SqrtRational cs, ss;
    if (kpp > lpp) {
        cs = guarded_sqrt({mpp - lpp}, {kpp - lpp});
        ss = guarded_sqrt({kpp - mpp}, {kpp - lpp});
    }

    std::vector<SU3Branch> out;
    auto emit = [&](int kk, int ll, int mm, int quark, SqrtRational amp) {
        if (amp.is_zero()) return;
        if (!valid_su3_state(P1, Q1, kk, ll, mm))
            throw std::logic_error("apply_ucg_inv_su3: nonzero branch to invalid parent state");
        out.push_back({parent, {P1, Q1, kk, ll, mm}, quark, amp});
    };
    emit(kpp, lpp, mpp, 0, f_s);                            // s
    emit(kpp - 1, lpp, mpp - 1, 2, cs * f_sigma);           // u through T-1/2
    emit(kpp - 1, lpp, mpp, 1, ss * f_sigma);               // d through T-1/2
    emit(kpp, lpp - 1, mpp - 1, 2, -sr * f_rho);            // u through T+1/2
    emit(kpp, lpp - 1, mpp, 1, cr * f_rho);                 // d through T+1/2
    return out;
}

AmplitudeMap decompose_su3(const SchurLabel& label) {
    if (label.group != Group::SU3) throw std::invalid_argument("decompose_su3: su3 label required");
    validate_label(label);
    using TermKey = std::tuple<int, int, int, int, int, int, std::string>;
    auto key_of = [](const Partition& part, int k, int l, int m, const std::string& suffix) {
        return TermKey{part.row(0), part.row(1), part.row(2), k, l, m, suffix};
    };
    std::map<TermKey, SqrtSum> terms;
    terms[key_of(label.partition, label.k, label.l, label.m, "")] =
        SqrtSum(SqrtRational::one());
    for (int step = int(label.path.size()) - 1; step >= 0; --step) {
        int p = label.path[step];
        std::map<TermKey, SqrtSum> next;
        for (const auto& [key, amp] : terms) {
            auto [r0, r1, r2, k, l, m, suffix] = key;
            SU3Term term{{{r0, r1, r2}, 3}, k, l, m};
            for (const auto& br : apply_ucg_inv_su3(term, p)) {
                TermKey nk = key_of(br.partition, br.state.k, br.state.l, br.state.m,
                                    char('0' + br.emitted_quark) + suffix);
                next[nk].add_scaled(amp, br.amp);
            }
        }
        for (auto it = next.begin(); it != next.end();)
            it = it->second.is_zero() ? next.erase(it) : std::next(it);
        terms = std::move(next);
    }
    AmplitudeMap out;
    for (const auto& [key, amp] : terms) {
        auto [r0, r1, r2, k, l, m, suffix] = key;
        if (r0 != 1 || r1 != 0 || r2 != 0)
            throw std::logic_error("decompose_su3: cascade did not end at (1,0,0)");
        out.add(char('0' + k + m) + suffix, amp);
    }
    return out;
}

}  // namespace schur
