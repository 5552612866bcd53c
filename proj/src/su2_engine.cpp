#include "schur/su2_engine.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace schur {

SqrtRational ladder_coeff(int two_j, int two_m, LadderDir dir) {
    if (two_j < 0) throw std::invalid_argument("ladder_coeff: negative 2j");
    if ((two_j - two_m) % 2 != 0)
        throw std::invalid_argument("ladder_coeff: parity mismatch of 2j, 2m");
    if (two_m > two_j || two_m < -two_j)
        throw std::invalid_argument("ladder_coeff: |m| > j");
    // (j∓m)(j±m+1) in doubled variables: (2j∓2m)/2 * (2j±2m+2)/2
    int a, b;
    if (dir == LadderDir::Raise) {
        a = two_j - two_m;
        b = two_j + two_m + 2;
    } else {
        a = two_j + two_m;
        b = two_j - two_m + 2;
    }
    if (a <= 0) return SqrtRational::zero();
    return SqrtRational(1, Rational(a, 2) * Rational(b, 2));
}

std::vector<int> clebsch_series(int two_j1, int two_j2) {
    if (two_j1 < 0 || two_j2 < 0) throw std::invalid_argument("clebsch_series: negative 2j");
    std::vector<int> out;
    int lo = two_j1 > two_j2 ? two_j1 - two_j2 : two_j2 - two_j1;
    for (int tj = lo; tj <= two_j1 + two_j2; tj += 2) out.push_back(tj);
    return out;
}

JPlusHalf jplus_half_coeffs(int two_j, int two_m_child, bool upper) {
    int two_j_child = upper ? two_j + 1 : two_j - 1;
    if (two_j_child < 0 || two_m_child > two_j_child || two_m_child < -two_j_child ||
        (two_j_child - two_m_child) % 2 != 0)
        throw std::invalid_argument("jplus_half_coeffs: invalid child m");
    // alpha^2 = (j+m+1/2)/(2j+1) = (2j + 2m + 1)/(2(2j+1))
    Rational a2(two_j + two_m_child + 1, 2 * (two_j + 1));
    Rational b2(two_j - two_m_child + 1, 2 * (two_j + 1));
    SqrtRational alpha(a2.is_zero() ? 0 : 1, a2);
    SqrtRational beta(b2.is_zero() ? 0 : 1, b2);
    if (upper) return {alpha, beta};
    return {-beta, alpha};
}

SqrtRational ucg_inv_angle(int lam1_child, int lam2_child, int q_child, int p) {
    if (p != 0 && p != 1) throw std::invalid_argument("ucg_inv_angle: p must be a bit");
    int num = q_child + (1 - p);
    int den = (lam1_child - lam2_child) + 2 * (1 - p);
    if (den <= 0) throw std::invalid_argument("ucg_inv_angle: non-positive denominator");
    if (num < 0 || num > den) throw std::invalid_argument("ucg_inv_angle: cos^2 out of [0,1]");
    if (num == 0) return SqrtRational::zero();
    return SqrtRational(1, Rational(num, den));
}

std::vector<SU2Branch> apply_ucg_inv(int lam1, int lam2, int q, int p) {
    if (p != 0 && p != 1) throw std::invalid_argument("apply_ucg_inv: p must be a bit");
    int lam1p = lam1 - p;
    int lam2p = lam2 - (1 - p);
    if (lam1p < lam2p || lam2p < 0)
        throw std::invalid_argument("apply_ucg_inv: invalid intermediate label");
    int q_mid = q + (1 - p);
    SqrtRational cos = ucg_inv_angle(lam1, lam2, q, p);
    Rational sin2 = Rational(1) - cos.squared();
    SqrtRational sin(sin2.is_zero() ? 0 : 1, sin2);
    std::vector<SU2Branch> out;
    // emitted bit 1: amplitude cos for p=1, -sin for p=0; parent q drops by 1
    SqrtRational amp1 = p == 1 ? cos : -sin;
    if (!amp1.is_zero()) out.push_back({lam1p, lam2p, q_mid - 1, 1, amp1});
    SqrtRational amp0 = p == 1 ? sin : cos;
    if (!amp0.is_zero()) out.push_back({lam1p, lam2p, q_mid, 0, amp0});
    return out;
}

AmplitudeMap decompose_su2(const SchurLabel& label) {
    if (label.group != Group::SU2) throw std::invalid_argument("decompose_su2: su2 label required");
    validate_label(label);
    // key: (lam1, lam2, q) of the remaining state + emitted suffix
    using TermKey = std::tuple<int, int, int, std::string>;
    std::map<TermKey, SqrtSum> terms;
    terms[{label.partition.row(0), label.partition.row(1), label.q, std::string()}] =
        SqrtSum(SqrtRational::one());
    for (int step = int(label.path.size()) - 1; step >= 0; --step) {
        int p = label.path[step];
        std::map<TermKey, SqrtSum> next;
        for (const auto& [key, amp] : terms) {
            auto [lam1, lam2, q, suffix] = key;
            for (const auto& br : apply_ucg_inv(lam1, lam2, q, p)) {
                TermKey nk{br.lam1, br.lam2, br.q,
                           char('0' + br.emitted_bit) + suffix};
                next[nk].add_scaled(amp, br.amp);
            }
        }
        // drop exact zeros produced by interference
        for (auto it = next.begin(); it != next.end();)
            it = it->second.is_zero() ? next.erase(it) : std::next(it);
        terms = std::move(next);
    }
    AmplitudeMap out;
    for (const auto& [key, amp] : terms) {
        auto [lam1, lam2, q, suffix] = key;
        if (lam1 != 1 || lam2 != 0)
            throw std::logic_error("decompose_su2: cascade did not end at (1,0)");
        out.add(char('0' + q) + suffix, amp);
    }
    return out;
}

}  // namespace schur
