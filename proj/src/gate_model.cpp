#include "schur/gate_model.hpp"

#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

namespace schur {

const char* gate_type_name(GateType t) {
    switch (t) {
        case GateType::NOT: return "NOT";
        case GateType::CNOT: return "CNOT";
        case GateType::CCNOT: return "CCNOT";
        case GateType::CRY: return "CRY";
        case GateType::CR3: return "CR3";
        case GateType::DATA_ROT: return "DATA_ROT";
    }
    return "?";
}

namespace {
GateType gate_type_from(const std::string& s) {
    if (s == "NOT") return GateType::NOT;
    if (s == "CNOT") return GateType::CNOT;
    if (s == "CCNOT") return GateType::CCNOT;
    if (s == "CRY") return GateType::CRY;
    if (s == "CR3") return GateType::CR3;
    if (s == "DATA_ROT") return GateType::DATA_ROT;
    throw std::invalid_argument("unknown gate type " + s);
}
}  // namespace

Gate make_not(int t) {
    Gate g;
    g.type = GateType::NOT;
    g.targets = {t};
    return g;
}
Gate make_cnot(int c, int t, int polarity) {
    Gate g;
    g.type = GateType::CNOT;
    g.targets = {t};
    g.controls = {{c, polarity}};
    return g;
}
Gate make_ccnot(int c1, int c2, int t) {
    Gate g;
    g.type = GateType::CCNOT;
    g.targets = {t};
    g.controls = {{c1, 1}, {c2, 1}};
    return g;
}

int Circuit::total_bits() const {
    int total = 0;
    for (const auto& r : registers) total += r.width;
    return total;
}

const Register& Circuit::reg(const std::string& name) const {
    for (const auto& r : registers)
        if (r.name == name) return r;
    throw std::out_of_range("no register named " + name);
}

void Circuit::add_register(const std::string& name, RegisterKind kind, int width,
                           RegisterRole role) {
    if (kind == RegisterKind::PaddedQutritArray && width % 2 != 0)
        throw std::invalid_argument("padded qutrit register needs an even bit width");
    Register r{name, kind, width, role, total_bits()};
    registers.push_back(r);
}

void Circuit::validate() const {
    int bits = total_bits();
    for (const auto& g : gates) {
        std::set<int> used;
        for (int t : g.targets) {
            if (t < 0 || t >= bits) throw std::logic_error("gate target out of range");
            if (!used.insert(t).second) throw std::logic_error("duplicate gate bit");
        }
        for (const auto& c : g.controls) {
            if (c.bit < 0 || c.bit >= bits) throw std::logic_error("gate control out of range");
            if (!used.insert(c.bit).second)
                throw std::logic_error("gate controls and targets must be disjoint");
            if (c.polarity != 0 && c.polarity != 1) throw std::logic_error("bad polarity");
        }
        if (g.type == GateType::DATA_ROT) {
            for (const auto& name : g.operands) reg(name);  // throws if undeclared
            if (g.formula_id.empty()) throw std::logic_error("DATA_ROT without formula_id");
        }
    }
}

std::string Circuit::to_json() const {
    nlohmann::json j;
    j["group"] = group;
    j["n"] = n;
    j["registers"] = nlohmann::json::array();
    for (const auto& r : registers) {
        j["registers"].push_back(
            {{"name", r.name},
             {"kind", r.kind == RegisterKind::QubitArray ? "qubit-array" : "padded-qutrit-array"},
             {"width", r.width},
             {"role", r.role == RegisterRole::Data
                          ? "data"
                          : (r.role == RegisterRole::Ancilla ? "ancilla" : "carry")}});
    }
    j["gates"] = nlohmann::json::array();
    for (const auto& g : gates) {
        nlohmann::json jg;
        jg["type"] = gate_type_name(g.type);
        jg["targets"] = g.targets;
        jg["controls"] = nlohmann::json::array();
        for (const auto& c : g.controls)
            jg["controls"].push_back({{"bit", c.bit}, {"polarity", c.polarity}});
        if (g.type == GateType::DATA_ROT) {
            jg["formula_id"] = g.formula_id;
            jg["operands"] = g.operands;
        }
        if (g.type == GateType::CRY || g.type == GateType::CR3) {
            jg["theta_num"] = g.theta_num;
            jg["theta_den"] = g.theta_den;
        }
        j["gates"].push_back(jg);
    }
    return j.dump(2);
}

Circuit Circuit::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Circuit c;
    c.group = j.at("group").get<std::string>();
    c.n = j.at("n").get<int>();
    for (const auto& jr : j.at("registers")) {
        std::string kind = jr.at("kind").get<std::string>();
        std::string role = jr.at("role").get<std::string>();
        c.add_register(jr.at("name").get<std::string>(),
                       kind == "qubit-array" ? RegisterKind::QubitArray
                                             : RegisterKind::PaddedQutritArray,
                       jr.at("width").get<int>(),
                       role == "data" ? RegisterRole::Data
                                      : (role == "ancilla" ? RegisterRole::Ancilla
                                                           : RegisterRole::Carry));
    }
    for (const auto& jg : j.at("gates")) {
        Gate g;
        g.type = gate_type_from(jg.at("type").get<std::string>());
        g.targets = jg.at("targets").get<std::vector<int>>();
        for (const auto& jc : jg.at("controls"))
            g.controls.push_back({jc.at("bit").get<int>(), jc.at("polarity").get<int>()});
        if (jg.contains("formula_id")) g.formula_id = jg.at("formula_id").get<std::string>();
        if (jg.contains("operands")) g.operands = jg.at("operands").get<std::vector<std::string>>();
        if (jg.contains("theta_num")) g.theta_num = jg.at("theta_num").get<long long>();
        if (jg.contains("theta_den")) g.theta_den = jg.at("theta_den").get<long long>();
        c.gates.push_back(g);
    }
    c.validate();
    return c;
}

std::vector<Gate> BlockGates::all() const {
    std::vector<Gate> out = compute;
    out.insert(out.end(), uncompute.begin(), uncompute.end());
    return out;
}

BlockGates binary_add_qubit(const std::vector<int>& bits, int a,
                            const std::vector<int>& carries) {
    const int w = int(bits.size());
    if (w == 0) throw std::invalid_argument("binary_add_qubit: empty register");
    if (int(carries.size()) < w - 1)
        throw std::invalid_argument("binary_add_qubit: not enough carry bits");
    BlockGates out;
    for (int k = 0; k < w; ++k) {
        int in = k == 0 ? a : carries[k - 1];
        if (k < w - 1) out.compute.push_back(make_ccnot(bits[k], in, carries[k]));
        out.compute.push_back(make_cnot(in, bits[k]));
    }
    for (int k = w - 2; k >= 0; --k) {
        int in = k == 0 ? a : carries[k - 1];
        // carry = b_orig & in = (b' ^ in) & in = (b' & in) ^ in
        out.uncompute.push_back(make_ccnot(bits[k], in, carries[k]));
        out.uncompute.push_back(make_cnot(in, carries[k]));
    }
    return out;
}

BlockGates binary_sub_qubit(const std::vector<int>& bits, int a,
                            const std::vector<int>& carries) {
    const int w = int(bits.size());
    if (w == 0) throw std::invalid_argument("binary_sub_qubit: empty register");
    if (int(carries.size()) < w - 1)
        throw std::invalid_argument("binary_sub_qubit: not enough borrow bits");
    BlockGates out;
    for (int k = 0; k < w; ++k) {
        int in = k == 0 ? a : carries[k - 1];
        out.compute.push_back(make_cnot(in, bits[k]));  // r = b ^ in
        if (k < w - 1) out.compute.push_back(make_ccnot(in, bits[k], carries[k]));
    }
    for (int k = w - 2; k >= 0; --k) {
        int in = k == 0 ? a : carries[k - 1];
        out.uncompute.push_back(make_ccnot(in, bits[k], carries[k]));  // borrow = in & r
    }
    return out;
}

BlockGates ternary_unit_add1(QutritBits b, int a, int c) {
    BlockGates out;
    out.compute.push_back(make_not(b.hi));
    out.compute.push_back(make_ccnot(b.hi, a, b.lo));
    out.compute.push_back(make_not(b.hi));
    out.compute.push_back(make_ccnot(b.hi, a, c));
    out.compute.push_back(make_cnot(a, b.hi));
    out.compute.push_back(make_ccnot(b.lo, a, b.hi));
    // carry = a & hi_orig = (a & hi') ^ (a & lo') ^ a
    out.uncompute.push_back(make_ccnot(b.hi, a, c));
    out.uncompute.push_back(make_ccnot(b.lo, a, c));
    out.uncompute.push_back(make_cnot(a, c));
    return out;
}

BlockGates ternary_unit_add2(QutritBits b, int a, int c) {
    // digit updates avoid the carry wire so several units can share it
    BlockGates out;
    out.compute.push_back(make_not(b.lo));
    out.compute.push_back(make_ccnot(b.lo, a, b.hi));  // hi ^= a & ~lo
    out.compute.push_back(make_not(b.lo));
    out.compute.push_back(make_cnot(a, b.lo));
    out.compute.push_back(make_ccnot(b.hi, a, b.lo));  // lo ^= a & (1 ^ hi')
    out.compute.push_back(make_cnot(a, c));
    out.compute.push_back(make_ccnot(b.hi, a, c));  // carry = a & ~hi'
    // same expression clears it
    out.uncompute.push_back(make_cnot(a, c));
    out.uncompute.push_back(make_ccnot(b.hi, a, c));
    return out;
}

BlockGates ternary_unit_sub1(QutritBits b, int a, int c) {
    BlockGates out;
    out.compute.push_back(make_cnot(a, c));
    out.compute.push_back(make_ccnot(b.hi, a, c));
    out.compute.push_back(make_ccnot(b.lo, a, c));  // borrow = a & ~hi & ~lo
    out.compute.push_back(make_not(b.lo));
    out.compute.push_back(make_ccnot(b.lo, a, b.hi));
    out.compute.push_back(make_not(b.lo));
    out.compute.push_back(make_cnot(a, b.lo));
    out.compute.push_back(make_cnot(c, b.lo));
    // borrow = a & hi'
    out.uncompute.push_back(make_ccnot(b.hi, a, c));
    return out;
}

BlockGates ternary_unit_sub2(QutritBits b, int a, int c) {
    BlockGates out;
    out.compute.push_back(make_cnot(a, c));
    out.compute.push_back(make_ccnot(b.hi, a, c));  // borrow = a & ~hi
    out.compute.push_back(make_not(b.hi));
    out.compute.push_back(make_ccnot(b.hi, a, b.lo));
    out.compute.push_back(make_not(b.hi));
    out.compute.push_back(make_cnot(a, b.hi));
    out.compute.push_back(make_ccnot(b.lo, a, b.hi));
    // borrow = a & (hi' ^ lo')
    out.uncompute.push_back(make_ccnot(b.hi, a, c));
    out.uncompute.push_back(make_ccnot(b.lo, a, c));
    return out;
}

namespace {
void append(BlockGates& dst, const BlockGates& src) {
    dst.compute.insert(dst.compute.end(), src.compute.begin(), src.compute.end());
    // carry uncomputation runs in reverse unit order
    dst.uncompute.insert(dst.uncompute.begin(), src.uncompute.begin(), src.uncompute.end());
}

void check_qutrit_reg(const std::vector<QutritBits>& reg, const std::vector<int>& carries) {
    if (reg.empty()) throw std::invalid_argument("ternary op: empty register");
    if (carries.size() < reg.size())
        throw std::invalid_argument("ternary op: not enough carry bits");
}
}  // namespace

BlockGates ternary_add_qubit(const std::vector<QutritBits>& reg, int a,
                             const std::vector<int>& carries) {
    check_qutrit_reg(reg, carries);
    BlockGates out;
    for (std::size_t k = 0; k < reg.size(); ++k)
        append(out, ternary_unit_add1(reg[k], k == 0 ? a : carries[k - 1], carries[k]));
    return out;
}

BlockGates ternary_sub_qubit(const std::vector<QutritBits>& reg, int a,
                             const std::vector<int>& carries) {
    check_qutrit_reg(reg, carries);
    BlockGates out;
    for (std::size_t k = 0; k < reg.size(); ++k)
        append(out, ternary_unit_sub1(reg[k], k == 0 ? a : carries[k - 1], carries[k]));
    return out;
}

BlockGates ternary_add_twice_qubit(const std::vector<QutritBits>& reg, int a,
                                   const std::vector<int>& carries) {
    check_qutrit_reg(reg, carries);
    BlockGates out;
    append(out, ternary_unit_add2(reg[0], a, carries[0]));
    for (std::size_t k = 1; k < reg.size(); ++k)
        append(out, ternary_unit_add1(reg[k], carries[k - 1], carries[k]));
    return out;
}

BlockGates ternary_register_add(const std::vector<QutritBits>& reg, QutritBits addend,
                                const std::vector<int>& carries) {
    check_qutrit_reg(reg, carries);
    BlockGates out;
    append(out, ternary_unit_add1(reg[0], addend.lo, carries[0]));
    append(out, ternary_unit_add2(reg[0], addend.hi, carries[0]));
    for (std::size_t k = 1; k < reg.size(); ++k)
        append(out, ternary_unit_add1(reg[k], carries[k - 1], carries[k]));
    return out;
}

BlockGates ternary_register_sub(const std::vector<QutritBits>& reg, QutritBits subtrahend,
                                const std::vector<int>& carries) {
    check_qutrit_reg(reg, carries);
    BlockGates out;
    append(out, ternary_unit_sub1(reg[0], subtrahend.lo, carries[0]));
    append(out, ternary_unit_sub2(reg[0], subtrahend.hi, carries[0]));
    for (std::size_t k = 1; k < reg.size(); ++k)
        append(out, ternary_unit_sub1(reg[k], carries[k - 1], carries[k]));
    return out;
}

ResourceCount count_resources(const std::vector<Gate>& gates) {
    ResourceCount rc;
    for (const char* t : {"NOT", "CNOT", "CCNOT", "CRY", "CR3", "DATA_ROT"}) rc.by_type[t] = 0;
    for (const auto& g : gates) {
        rc.by_type[gate_type_name(g.type)]++;
        if (g.type == GateType::DATA_ROT) rc.data_rot_by_formula[g.formula_id]++;
        rc.total_gates++;
    }
    return rc;
}

ResourceCount count_resources(const Circuit& circuit) {
    ResourceCount rc = count_resources(circuit.gates);
    rc.total_bits = circuit.total_bits();
    return rc;
}

}  // namespace schur
