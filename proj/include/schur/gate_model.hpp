#pragma once

#include <map>
#include <string>
#include <vector>

#include "schur/rep_core.hpp"

namespace schur {

enum class GateType { NOT, CNOT, CCNOT, CRY, CR3, DATA_ROT };

const char* gate_type_name(GateType t);

enum class RegisterKind { QubitArray, PaddedQutritArray };
enum class RegisterRole { Data, Ancilla, Carry };

struct Register {
    std::string name;
    RegisterKind kind = RegisterKind::QubitArray;
    int width = 0;  // bit count (even for padded qutrit arrays)
    RegisterRole role = RegisterRole::Data;
    int base = 0;  // first global bit index (derived)
};

struct Control {
    int bit = 0;
    int polarity = 1;  // 0 acts on |0>, like the tilde-control convention
};

struct Gate {
    GateType type = GateType::NOT;
    std::vector<int> targets;
    std::vector<Control> controls;
    // DATA_ROT only: which formula evaluates the rotation from live registers
    std::string formula_id;
    std::vector<std::string> operands;
    // static CRY / CR3 only: cos^2(theta) = theta_num / theta_den
    long long theta_num = 0, theta_den = 1;
};

Gate make_not(int t);
Gate make_cnot(int c, int t, int polarity = 1);
Gate make_ccnot(int c1, int c2, int t);

struct Circuit {
    std::string group;  // "su2" | "su3"
    int n = 0;
    std::vector<Register> registers;
    std::vector<Gate> gates;

    int total_bits() const;
    const Register& reg(const std::string& name) const;
    void add_register(const std::string& name, RegisterKind kind, int width, RegisterRole role);
    void validate() const;  // every gate well-formed against the register table

    std::string to_json() const;
    static Circuit from_json(const std::string& text);
};

// gate list split into the arithmetic compute path (whose counts the
// complexity formulas quote) and the carry/borrow uncomputation
struct BlockGates {
    std::vector<Gate> compute;
    std::vector<Gate> uncompute;
    std::vector<Gate> all() const;
};

// ripple add/subtract of a single bit into a little-endian qubit register;
// register bits in `bits`, carries drawn from `carries` (bits.size()-1 used)
BlockGates binary_add_qubit(const std::vector<int>& bits, int addend_bit,
                            const std::vector<int>& carries);
BlockGates binary_sub_qubit(const std::vector<int>& bits, int subtrahend_bit,
                            const std::vector<int>& carries);

// a qutrit as a (high, low) bit pair: value = 2*hi + lo, 11 forbidden
struct QutritBits {
    int hi = 0, lo = 0;
};

// single-qutrit units: add/subtract 1 or 2 (controlled on `a`), with carry
// or borrow accumulated into `c` (xor; at most one unit per level fires)
BlockGates ternary_unit_add1(QutritBits b, int a, int c);
BlockGates ternary_unit_add2(QutritBits b, int a, int c);
BlockGates ternary_unit_sub1(QutritBits b, int a, int c);
BlockGates ternary_unit_sub2(QutritBits b, int a, int c);

// ripple constructors over a little-endian qutrit register
BlockGates ternary_add_qubit(const std::vector<QutritBits>& reg, int addend_bit,
                             const std::vector<int>& carries);
BlockGates ternary_sub_qubit(const std::vector<QutritBits>& reg, int subtrahend_bit,
                             const std::vector<int>& carries);
BlockGates ternary_add_twice_qubit(const std::vector<QutritBits>& reg, int addend_bit,
                                   const std::vector<int>& carries);
BlockGates ternary_register_add(const std::vector<QutritBits>& reg, QutritBits addend,
                                const std::vector<int>& carries);
BlockGates ternary_register_sub(const std::vector<QutritBits>& reg, QutritBits subtrahend,
                                const std::vector<int>& carries);

struct ResourceCount {
    std::map<std::string, long long> by_type;        // NOT, CNOT, CCNOT, CRY, CR3, DATA_ROT
    std::map<std::string, long long> data_rot_by_formula;
    int total_bits = 0;
    long long total_gates = 0;
};
ResourceCount count_resources(const Circuit& circuit);
ResourceCount count_resources(const std::vector<Gate>& gates);

}  // namespace schur
