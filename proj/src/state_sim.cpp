#include "schur/state_sim.hpp"

#include <stdexcept>

#include "schur/su2_engine.hpp"
#include "schur/su3_engine.hpp"

namespace schur {

namespace {

int qutrit_digit(const BitKey& key, int hi_bit, int lo_bit) {
    int hi = key.get(hi_bit), lo = key.get(lo_bit);
    if (hi && lo) throw std::domain_error("invalid padded-qutrit encoding 11");
    return 2 * hi + lo;
}

}  // namespace

int read_register_value(const Circuit&, const Register& r, const BitKey& key) {
    if (r.kind == RegisterKind::QubitArray) {
        int v = 0;
        for (int i = r.width - 1; i >= 0; --i) v = 2 * v + key.get(r.base + i);
        return v;
    }
    int v = 0;
    for (int t = r.width / 2 - 1; t >= 0; --t)
        v = 3 * v + qutrit_digit(key, r.base + 2 * t, r.base + 2 * t + 1);
    return v;
}

void write_register_value(const Circuit&, const Register& r, BitKey& key, int value) {
    if (value < 0) throw std::domain_error("negative register value");
    if (r.kind == RegisterKind::QubitArray) {
        for (int i = 0; i < r.width; ++i) {
            key.set(r.base + i, value & 1);
            value >>= 1;
        }
    } else {
        for (int t = 0; t < r.width / 2; ++t) {
            int digit = value % 3;
            value /= 3;
            key.set(r.base + 2 * t, digit >> 1);
            key.set(r.base + 2 * t + 1, digit & 1);
        }
    }
    if (value != 0) throw std::domain_error("register value does not fit its width");
}

Rational SimState::norm_squared_exact() const {
    SqrtSum acc;
    for (const auto& [k, v] : exact) acc.add(v.times(v));
    return acc.to_rational();
}

double SimState::norm_squared_float() const {
    double s = 0;
    for (const auto& [k, v] : flt) s += v * v;
    return s;
}

SimState init_state(const Circuit& c, const std::map<std::string, int>& assignment,
                    SimMode mode) {
    BitKey key;
    for (const auto& [name, value] : assignment) {
        const Register& r = c.reg(name);
        if (r.role != RegisterRole::Data && value != 0)
            throw std::invalid_argument("ancilla/carry registers must start at 0");
        write_register_value(c, r, key, value);
    }
    // round trip validates the qutrit padding
    for (const auto& r : c.registers) read_register_value(c, r, key);
    SimState st;
    st.mode = mode;
    if (mode == SimMode::Exact)
        st.exact[key] = SqrtSum(SqrtRational::one());
    else
        st.flt[key] = 1.0;
    return st;
}

namespace {

bool controls_satisfied(const Gate& g, const BitKey& key) {
    for (const auto& ctl : g.controls)
        if (int(key.get(ctl.bit)) != ctl.polarity) return false;
    return true;
}

// branch of a local rotation: new target configuration and amplitude
struct LocalBranch {
    std::vector<std::pair<int, bool>> writes;  // bit -> value
    std::vector<std::pair<std::string, int>> reg_writes;
    SqrtRational amp;
};

std::vector<LocalBranch> data_rot_branches(const Circuit& c, const Gate& g, const BitKey& key) {
    std::vector<LocalBranch> out;
    if (g.formula_id == "su2_cg_angle") {
        if (g.operands.size() != 3 || g.targets.size() != 1)
            throw std::logic_error("su2_cg_angle: expected 3 operands and 1 target");
        int lam1 = read_register_value(c, c.reg(g.operands[0]), key);
        int lam2 = read_register_value(c, c.reg(g.operands[1]), key);
        int qmid = read_register_value(c, c.reg(g.operands[2]), key);
        int den = lam1 - lam2 + 1;
        if (den <= 0 || qmid < 0 || qmid > den)
            throw std::domain_error("su2_cg_angle: invalid quantum numbers in branch");
        SqrtRational cos(qmid == 0 ? 0 : 1, Rational(qmid, den));
        Rational sin2 = Rational(1) - cos.squared();
        SqrtRational sin(sin2.is_zero() ? 0 : 1, sin2);
        int p = key.get(g.targets[0]);
        SqrtRational amp1 = p == 1 ? cos : -sin;
        SqrtRational amp0 = p == 1 ? sin : cos;
        if (!amp1.is_zero()) out.push_back({{{g.targets[0], true}}, {}, amp1});
        if (!amp0.is_zero()) out.push_back({{{g.targets[0], false}}, {}, amp0});
        return out;
    }
    if (g.formula_id == "su3_rho_sigma") {
        if (g.operands.size() != 6 || g.targets.size() != 2)
            throw std::logic_error("su3_rho_sigma: expected 6 operands and a qutrit target");
        int parent_rows[3];
        for (int i = 0; i < 3; ++i)
            parent_rows[i] = read_register_value(c, c.reg(g.operands[i]), key);
        int wkl = read_register_value(c, c.reg(g.operands[3]), key);
        int wlm = read_register_value(c, c.reg(g.operands[4]), key);
        int wkm = read_register_value(c, c.reg(g.operands[5]), key);
        int p = qutrit_digit(key, g.targets[0], g.targets[1]);
        // reconstruct the double-primed labels from the three pair sums
        if ((wkl + wkm - wlm) % 2 != 0 || (wkl + wlm - wkm) % 2 != 0)
            throw std::domain_error("su3_rho_sigma: inconsistent weight sums in branch");
        int kpp = (wkl + wkm - wlm) / 2;
        int lpp = (wkl + wlm - wkm) / 2;
        int mpp = (wlm + wkm - wkl) / 2;
        Partition child{{parent_rows[0], parent_rows[1], parent_rows[2]}, 3};
        int row = 2 - p;
        while (int(child.rows.size()) <= row) child.rows.push_back(0);
        child.rows[row] += 1;
        SU3Term term;
        term.partition = child;
        term.k = (p == 0) ? kpp - 1 : kpp;
        term.l = (p == 0) ? lpp - 1 : lpp;
        term.m = (p == 0) ? mpp - 1 : mpp;
        std::vector<SU3Branch> branches;
        try {
            branches = apply_ucg_inv_su3(term, p);
        } catch (const std::exception& e) {
            throw std::domain_error(std::string("su3_rho_sigma: invalid branch: ") + e.what());
        }
        for (const auto& br : branches) {
            LocalBranch lb;
            lb.amp = br.amp;
            lb.writes = {{g.targets[0], br.emitted_quark == 2},
                         {g.targets[1], br.emitted_quark == 1}};
            // leave the weight registers one arithmetic step short: the
            // remaining subtractors take q(1) off l+m, q off k+m
            int is_u = br.emitted_quark == 2 ? 1 : 0;
            lb.reg_writes = {
                {g.operands[4], br.state.l + br.state.m + is_u},
                {g.operands[5], br.state.k + br.state.m + br.emitted_quark}};
            out.push_back(lb);
        }
        return out;
    }
    throw std::logic_error("unknown DATA_ROT formula " + g.formula_id);
}

std::vector<LocalBranch> rotation_branches(const Circuit& c, const Gate& g, const BitKey& key) {
    if (g.type == GateType::DATA_ROT) return data_rot_branches(c, g, key);
    if (g.theta_den <= 0 || g.theta_num < 0 || g.theta_num > g.theta_den)
        throw std::domain_error("static rotation: cos^2 out of range");
    Rational c2(g.theta_num, g.theta_den);
    SqrtRational cos(c2.is_zero() ? 0 : 1, c2);
    Rational s2 = Rational(1) - c2;
    SqrtRational sin(s2.is_zero() ? 0 : 1, s2);
    std::vector<LocalBranch> out;
    if (g.type == GateType::CRY) {
        // |0> -> cos|0> + sin|1>,  |1> -> -sin|0> + cos|1>
        int v = key.get(g.targets[0]);
        SqrtRational a0 = v == 0 ? cos : -sin;
        SqrtRational a1 = v == 0 ? sin : cos;
        if (!a0.is_zero()) out.push_back({{{g.targets[0], false}}, {}, a0});
        if (!a1.is_zero()) out.push_back({{{g.targets[0], true}}, {}, a1});
        return out;
    }
    // CR3 rotates the |1>,|2> block of a padded qutrit, |0> untouched
    if (g.targets.size() != 2) throw std::logic_error("CR3 needs a qutrit target");
    int v = qutrit_digit(key, g.targets[0], g.targets[1]);
    auto write_digit = [&](int d) {
        return std::vector<std::pair<int, bool>>{{g.targets[0], d == 2}, {g.targets[1], d == 1}};
    };
    if (v == 0) {
        out.push_back({write_digit(0), {}, SqrtRational::one()});
    } else if (v == 1) {
        if (!cos.is_zero()) out.push_back({write_digit(1), {}, cos});
        if (!sin.is_zero()) out.push_back({write_digit(2), {}, sin});
    } else {
        if (!sin.is_zero()) out.push_back({write_digit(1), {}, -sin});
        if (!cos.is_zero()) out.push_back({write_digit(2), {}, cos});
    }
    return out;
}

}  // namespace

void apply_gate(const Circuit& c, SimState& state, const Gate& gate) {
    const bool permutation = gate.type == GateType::NOT || gate.type == GateType::CNOT ||
                             gate.type == GateType::CCNOT;
    if (permutation) {
        auto permute = [&](const BitKey& key) {
            if (!controls_satisfied(gate, key)) return key;
            BitKey out = key;
            for (int t : gate.targets) out.set(t, !out.get(t));
            return out;
        };
        if (state.mode == SimMode::Exact) {
            std::map<BitKey, SqrtSum> next;
            for (auto& [key, amp] : state.exact) next[permute(key)] = std::move(amp);
            state.exact = std::move(next);
        } else {
            std::map<BitKey, double> next;
            for (auto& [key, amp] : state.flt) next[permute(key)] = amp;
            state.flt = std::move(next);
        }
        return;
    }
    if (state.mode == SimMode::Exact) {
        std::map<BitKey, SqrtSum> next;
        for (const auto& [key, amp] : state.exact) {
            if (!controls_satisfied(gate, key)) {
                next[key].add(amp);
                continue;
            }
            for (const auto& br : rotation_branches(c, gate, key)) {
                BitKey out = key;
                for (auto [bit, v] : br.writes) out.set(bit, v);
                for (const auto& [name, value] : br.reg_writes)
                    write_register_value(c, c.reg(name), out, value);
                next[out].add_scaled(amp, br.amp);
            }
        }
        for (auto it = next.begin(); it != next.end();)
            it = it->second.is_zero() ? next.erase(it) : std::next(it);
        state.exact = std::move(next);
    } else {
        std::map<BitKey, double> next;
        for (const auto& [key, amp] : state.flt) {
            if (!controls_satisfied(gate, key)) {
                next[key] += amp;
                continue;
            }
            for (const auto& br : rotation_branches(c, gate, key)) {
                BitKey out = key;
                for (auto [bit, v] : br.writes) out.set(bit, v);
                for (const auto& [name, value] : br.reg_writes)
                    write_register_value(c, c.reg(name), out, value);
                next[out] += amp * br.amp.to_double();
            }
        }
        for (auto it = next.begin(); it != next.end();)
            it = std::abs(it->second) < 1e-14 ? next.erase(it) : std::next(it);
        state.flt = std::move(next);
    }
}

SimState run(const Circuit& c, const std::map<std::string, int>& assignment, SimMode mode) {
    SimState st = init_state(c, assignment, mode);
    for (const auto& g : c.gates) apply_gate(c, st, g);
    return st;
}

namespace {
std::string register_digits(const Circuit&, const Register& r, const BitKey& key) {
    std::string s;
    if (r.kind == RegisterKind::QubitArray) {
        for (int i = 0; i < r.width; ++i) s += char('0' + key.get(r.base + i));
    } else {
        for (int t = 0; t < r.width / 2; ++t)
            s += char('0' + qutrit_digit(key, r.base + 2 * t, r.base + 2 * t + 1));
    }
    return s;
}

template <typename MapT>
void check_clean(const Circuit& c, const MapT& support,
                 const std::vector<std::string>& keep) {
    for (const auto& r : c.registers) {
        bool kept = false;
        for (const auto& name : keep) kept |= name == r.name;
        if (kept) continue;
        bool first = true;
        int value = 0;
        for (const auto& [key, amp] : support) {
            int v = read_register_value(c, r, key);
            if (first) {
                value = v;
                first = false;
            } else if (v != value) {
                throw std::logic_error("extract: register '" + r.name +
                                       "' is not in a single basis state");
            }
        }
    }
}
}  // namespace

AmplitudeMap extract(const Circuit& c, const SimState& state,
                     const std::vector<std::string>& registers) {
    if (state.mode != SimMode::Exact) throw std::logic_error("extract: exact mode only");
    check_clean(c, state.exact, registers);
    AmplitudeMap out;
    for (const auto& [key, amp] : state.exact) {
        std::string s;
        for (const auto& name : registers) s += register_digits(c, c.reg(name), key);
        out.add(s, amp);
    }
    return out;
}

std::map<std::string, double> extract_float(const Circuit& c, const SimState& state,
                                            const std::vector<std::string>& registers) {
    if (state.mode != SimMode::Float) throw std::logic_error("extract_float: float mode only");
    check_clean(c, state.flt, registers);
    std::map<std::string, double> out;
    for (const auto& [key, amp] : state.flt) {
        std::string s;
        for (const auto& name : registers) s += register_digits(c, c.reg(name), key);
        out[s] += amp;
    }
    return out;
}

}  // namespace schur
