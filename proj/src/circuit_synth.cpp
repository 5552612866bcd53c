#include "schur/circuit_synth.hpp"

#include <stdexcept>

namespace schur {

namespace {

int ceil_log(int base, int min_capacity) {
    // smallest w with base^w >= min_capacity
    int w = 0;
    long long v = 1;
    while (v < min_capacity) {
        v *= base;
        ++w;
    }
    return w;
}

std::vector<int> reg_bits(const Register& r) {
    std::vector<int> bits;
    for (int i = 0; i < r.width; ++i) bits.push_back(r.base + i);
    return bits;
}

std::vector<QutritBits> reg_trits(const Register& r) {
    std::vector<QutritBits> trits;
    for (int t = 0; t < r.width / 2; ++t)
        trits.push_back({r.base + 2 * t, r.base + 2 * t + 1});
    return trits;
}

void emit(std::vector<Gate>& gates, const BlockGates& block) {
    for (const auto& g : block.all()) gates.push_back(g);
}

}  // namespace

SynthesisPlan make_plan(Group g, int n) {
    if (n < 1) throw std::invalid_argument("make_plan: n must be positive");
    SynthesisPlan plan;
    plan.group = g;
    plan.n = n;
    if (g == Group::SU2) {
        plan.lambda_width = ceil_log(2, n + 1);
        plan.weight_width = plan.lambda_width;
        plan.carry_width = std::max(plan.lambda_width - 1, 1);
    } else {
        plan.lambda_width = ceil_log(3, n + 1);
        // k+m reaches 2(P+Q) <= 2n
        plan.weight_width = ceil_log(3, 2 * n + 1);
        plan.carry_width = std::max(plan.lambda_width, plan.weight_width);
    }
    return plan;
}

Circuit SynthesisPlan::skeleton() const {
    Circuit c;
    c.n = n;
    if (group == Group::SU2) {
        c.group = "su2";
        c.add_register("lambda1", RegisterKind::QubitArray, lambda_width, RegisterRole::Data);
        c.add_register("lambda2", RegisterKind::QubitArray, lambda_width, RegisterRole::Data);
        c.add_register("q", RegisterKind::QubitArray, weight_width, RegisterRole::Data);
        if (n > 1) c.add_register("p", RegisterKind::QubitArray, n - 1, RegisterRole::Data);
        c.add_register("anc", RegisterKind::QubitArray, 1, RegisterRole::Ancilla);
        c.add_register("carry", RegisterKind::QubitArray, carry_width, RegisterRole::Carry);
    } else {
        c.group = "su3";
        for (const char* name : {"lambda1", "lambda2", "lambda3"})
            c.add_register(name, RegisterKind::PaddedQutritArray, 2 * lambda_width,
                           RegisterRole::Data);
        for (const char* name : {"wkl", "wlm", "wkm"})
            c.add_register(name, RegisterKind::PaddedQutritArray, 2 * weight_width,
                           RegisterRole::Data);
        if (n > 1)
            c.add_register("p", RegisterKind::PaddedQutritArray, 2 * (n - 1),
                           RegisterRole::Data);
        c.add_register("anc", RegisterKind::QubitArray, 3, RegisterRole::Ancilla);
        c.add_register("carry", RegisterKind::QubitArray, carry_width, RegisterRole::Carry);
    }
    return c;
}

std::vector<Gate> build_ucg_inv_su2(const SynthesisPlan& plan, int step_index) {
    if (plan.group != Group::SU2) throw std::invalid_argument("plan group mismatch");
    if (step_index < 0 || step_index >= plan.n - 1)
        throw std::out_of_range("build_ucg_inv_su2: step index out of range");
    Circuit c = plan.skeleton();
    auto lam1 = reg_bits(c.reg("lambda1"));
    auto lam2 = reg_bits(c.reg("lambda2"));
    auto q = reg_bits(c.reg("q"));
    auto carries = reg_bits(c.reg("carry"));
    int anc = c.reg("anc").base;
    // block j consumes path entry p_{n-1-j}, stored at p-bit n-2-j
    int p = c.reg("p").base + (plan.n - 2 - step_index);

    std::vector<Gate> gates;
    gates.push_back(make_cnot(p, anc));  // ancilla 1 -> 1-p
    emit(gates, binary_sub_qubit(lam2, anc, carries));
    emit(gates, binary_sub_qubit(lam1, p, carries));
    emit(gates, binary_add_qubit(q, anc, carries));
    gates.push_back(make_cnot(p, anc));  // ancilla back to 1
    Gate rot;
    rot.type = GateType::DATA_ROT;
    rot.formula_id = "su2_cg_angle";
    rot.targets = {p};
    rot.operands = {"lambda1", "lambda2", "q"};
    gates.push_back(rot);
    emit(gates, binary_sub_qubit(q, p, carries));  // q' = q_mid - p'
    return gates;
}

std::vector<Gate> build_ucg_inv_su3(const SynthesisPlan& plan, int step_index) {
    if (plan.group != Group::SU3) throw std::invalid_argument("plan group mismatch");
    if (step_index < 0 || step_index >= plan.n - 1)
        throw std::out_of_range("build_ucg_inv_su3: step index out of range");
    Circuit c = plan.skeleton();
    auto lam1 = reg_trits(c.reg("lambda1"));
    auto lam2 = reg_trits(c.reg("lambda2"));
    auto lam3 = reg_trits(c.reg("lambda3"));
    auto wkl = reg_trits(c.reg("wkl"));
    auto wlm = reg_trits(c.reg("wlm"));
    auto wkm = reg_trits(c.reg("wkm"));
    auto carries = reg_bits(c.reg("carry"));
    int anc1 = c.reg("anc").base;  // anc2 (base+1) and anc3 (base+2) stay idle
    const Register& preg = c.reg("p");
    int slot = plan.n - 2 - step_index;
    int p_hi = preg.base + 2 * slot;
    int p_lo = preg.base + 2 * slot + 1;

    std::vector<Gate> gates;
    // diagram update: one box off the row named by p
    emit(gates, ternary_sub_qubit(lam1, p_hi, carries));
    emit(gates, ternary_sub_qubit(lam2, p_lo, carries));
    gates.push_back(make_cnot(p_lo, anc1));  // 1 - p(2)
    gates.push_back(make_cnot(p_hi, anc1));  // 1 - p(2) - p(1)
    emit(gates, ternary_sub_qubit(lam3, anc1, carries));
    // change of variables: all three pair sums shift by 2 when p names row 3
    emit(gates, ternary_add_twice_qubit(wkm, anc1, carries));
    emit(gates, ternary_add_twice_qubit(wlm, anc1, carries));
    emit(gates, ternary_add_twice_qubit(wkl, anc1, carries));
    // ancilla recovery before the rotation
    gates.push_back(make_cnot(p_hi, anc1));
    gates.push_back(make_cnot(p_lo, anc1));
    // route-resolved rotation; also applies the isospin corrections to the
    // l+m / k+m sums so no branch bookkeeping survives the gate
    Gate rot;
    rot.type = GateType::DATA_ROT;
    rot.formula_id = "su3_rho_sigma";
    rot.targets = {p_hi, p_lo};
    rot.operands = {"lambda1", "lambda2", "lambda3", "wkl", "wlm", "wkm"};
    gates.push_back(rot);
    // remaining weight updates read the emitted quark q
    emit(gates, ternary_sub_qubit(wlm, p_hi, carries));           // -(q == u)
    emit(gates, ternary_register_sub(wkm, {p_hi, p_lo}, carries));  // -q
    emit(gates, ternary_sub_qubit(wkl, p_hi, carries));
    emit(gates, ternary_sub_qubit(wkl, p_lo, carries));
    return gates;
}

namespace {
Circuit build_cascade(Group g, int n) {
    if (n < 2) throw std::invalid_argument("build_usch_inv: n must be at least 2");
    SynthesisPlan plan = make_plan(g, n);
    Circuit c = plan.skeleton();
    int anc = c.reg("anc").base;
    c.gates.push_back(make_not(anc));  // the borrowed ancilla runs at 1
    for (int j = 0; j < n - 1; ++j) {
        auto block = g == Group::SU2 ? build_ucg_inv_su2(plan, j) : build_ucg_inv_su3(plan, j);
        c.gates.insert(c.gates.end(), block.begin(), block.end());
    }
    c.gates.push_back(make_not(anc));
    c.validate();
    return c;
}
}  // namespace

Circuit build_usch_inv_su2(int n) { return build_cascade(Group::SU2, n); }
Circuit build_usch_inv_su3(int n) { return build_cascade(Group::SU3, n); }
Circuit build_usch_inv(Group g, int n) { return build_cascade(g, n); }

std::map<std::string, int> label_assignment(const Circuit& c, const SchurLabel& label) {
    validate_label(label);
    std::map<std::string, int> a;
    if (label.group == Group::SU2) {
        if (c.group != "su2") throw std::invalid_argument("label/circuit group mismatch");
        a["lambda1"] = label.partition.row(0);
        a["lambda2"] = label.partition.row(1);
        a["q"] = label.q;
        int pval = 0;
        for (int i = int(label.path.size()) - 1; i >= 0; --i) pval = 2 * pval + label.path[i];
        if (!label.path.empty()) a["p"] = pval;
    } else {
        if (c.group != "su3") throw std::invalid_argument("label/circuit group mismatch");
        a["lambda1"] = label.partition.row(0);
        a["lambda2"] = label.partition.row(1);
        a["lambda3"] = label.partition.row(2);
        a["wkl"] = label.k + label.l;
        a["wlm"] = label.l + label.m;
        a["wkm"] = label.k + label.m;
        int pval = 0;
        for (int i = int(label.path.size()) - 1; i >= 0; --i) pval = 3 * pval + label.path[i];
        if (!label.path.empty()) a["p"] = pval;
    }
    if (int(label.path.size()) + 1 != c.n)
        throw std::invalid_argument("label particle count does not match the circuit");
    return a;
}

namespace {
template <typename Support>
void check_terminal(const Circuit& c, const Support& support) {
    const bool su2 = c.group == "su2";
    for (const auto& [key, amp] : support) {
        if (read_register_value(c, c.reg("lambda1"), key) != 1 ||
            read_register_value(c, c.reg("lambda2"), key) != 0 ||
            (!su2 && read_register_value(c, c.reg("lambda3"), key) != 0))
            throw std::logic_error("readout: diagram register did not reach the fundamental");
        if (read_register_value(c, c.reg("anc"), key) != 0)
            throw std::logic_error("readout: dirty ancilla");
        if (read_register_value(c, c.reg("carry"), key) != 0)
            throw std::logic_error("readout: dirty carry pool");
        if (!su2) {
            int kl = read_register_value(c, c.reg("wkl"), key);
            int lm = read_register_value(c, c.reg("wlm"), key);
            int km = read_register_value(c, c.reg("wkm"), key);
            // final weight must name a single-quark state
            if (!((kl == 1 && lm == 1 && km == 2) || (kl == 1 && lm == 0 && km == 1) ||
                  (kl == 0 && lm == 0 && km == 0)))
                throw std::logic_error("readout: weight register is not a single-quark state");
        }
    }
}

template <typename Support, typename Emit>
void readout_keys(const Circuit& c, const Support& support, Emit&& emit_fn) {
    check_terminal(c, support);
    const bool su2 = c.group == "su2";
    const Register* preg = c.n > 1 ? &c.reg("p") : nullptr;
    for (const auto& [key, amp] : support) {
        std::string s;
        if (su2) {
            int q = read_register_value(c, c.reg("q"), key);
            if (q > 1) throw std::logic_error("readout: weight register above the fundamental");
            s += char('0' + q);
            for (int i = 0; i < c.n - 1; ++i) s += char('0' + key.get(preg->base + i));
        } else {
            s += char('0' + read_register_value(c, c.reg("wkm"), key));
            for (int i = 0; i < c.n - 1; ++i) {
                int hi = key.get(preg->base + 2 * i), lo = key.get(preg->base + 2 * i + 1);
                if (hi && lo) throw std::logic_error("readout: invalid qutrit padding");
                s += char('0' + 2 * hi + lo);
            }
        }
        emit_fn(s, amp);
    }
}
}  // namespace

AmplitudeMap readout_map(const Circuit& c, const SimState& state) {
    if (state.mode != SimMode::Exact) throw std::logic_error("readout_map: exact mode only");
    AmplitudeMap out;
    readout_keys(c, state.exact, [&](const std::string& s, const SqrtSum& amp) {
        out.add(s, amp);
    });
    return out;
}

std::map<std::string, double> readout_map_float(const Circuit& c, const SimState& state) {
    if (state.mode != SimMode::Float) throw std::logic_error("readout_map_float: float mode only");
    std::map<std::string, double> out;
    readout_keys(c, state.flt, [&](const std::string& s, double amp) { out[s] += amp; });
    return out;
}

AmplitudeMap simulate_label(const Circuit& c, const SchurLabel& label, SimMode mode) {
    SimState st = run(c, label_assignment(c, label), mode);
    if (mode != SimMode::Exact)
        throw std::invalid_argument("simulate_label: use run/readout_map_float for float mode");
    return readout_map(c, st);
}

ResourcePrediction predicted_resources(Group g, int n) {
    ResourcePrediction out;
    SynthesisPlan plan = make_plan(g, n);
    long long blocks = n - 1;
    if (g == Group::SU2) {
        long long W = plan.lambda_width;
        out.published["CNOT"] = blocks * (4 * W + 2);
        out.published["CCNOT"] = blocks * (4 * (W - 1));
        out.published["NOT"] = 0;
        out.published["DATA_ROT"] = blocks;
        out.own["CNOT"] = blocks * (5 * W + 1);
        out.own["CCNOT"] = blocks * (8 * (W - 1));
        out.own["NOT"] = 2;
        out.own["DATA_ROT"] = blocks;
    } else {
        long long Wp = plan.lambda_width;  // the published form uses one width
        out.published["CNOT"] = blocks * (36 * Wp + 20);
        out.published["CCNOT"] = blocks * (36 * Wp + 14);
        out.published["NOT"] = blocks * (24 * Wp + 10);
        out.published["DATA_ROT"] = blocks;
        long long Wl = plan.lambda_width, Ww = plan.weight_width;
        // 3 sub-qubit on the diagram rows, 3 sub-qubit plus 3 add-twice plus
        // one register-sub on the weights, 4 ancilla CNOTs per block
        out.own["NOT"] = blocks * (6 * Wl + 14 * Ww + 2) + 2;
        out.own["CNOT"] = blocks * (9 * Wl + 18 * Ww + 9);
        out.own["CCNOT"] = blocks * (12 * Wl + 31 * Ww + 2);
        out.own["DATA_ROT"] = blocks;
    }
    return out;
}

}  // namespace schur
