#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "schur/amplitude_map.hpp"
#include "schur/gate_model.hpp"
#include "schur/sqrt_rational.hpp"

namespace schur {

enum class SimMode { Exact, Float };

// basis assignment over all circuit bits, packed little-endian, <= 128 bits
struct BitKey {
    std::array<std::uint64_t, 2> w{0, 0};
    bool get(int bit) const { return (w[bit >> 6] >> (bit & 63)) & 1; }
    void set(int bit, bool v) {
        if (v)
            w[bit >> 6] |= std::uint64_t(1) << (bit & 63);
        else
            w[bit >> 6] &= ~(std::uint64_t(1) << (bit & 63));
    }
    friend bool operator<(const BitKey& a, const BitKey& b) {
        return a.w[1] != b.w[1] ? a.w[1] < b.w[1] : a.w[0] < b.w[0];
    }
    friend bool operator==(const BitKey& a, const BitKey& b) { return a.w == b.w; }
};

// sparse state vector over the circuit's bit registers
class SimState {
  public:
    SimMode mode = SimMode::Exact;
    std::map<BitKey, SqrtSum> exact;
    std::map<BitKey, double> flt;

    std::size_t support() const {
        return mode == SimMode::Exact ? exact.size() : flt.size();
    }
    Rational norm_squared_exact() const;
    double norm_squared_float() const;
};

// register value helpers on a key
int read_register_value(const Circuit& c, const Register& r, const BitKey& key);
void write_register_value(const Circuit& c, const Register& r, BitKey& key, int value);

// initial single-basis state; assignment maps register name -> integer value
// (binary for qubit arrays, base-3 for padded qutrit arrays); registers not
// named start at 0; ancilla/carry registers must be 0
SimState init_state(const Circuit& c, const std::map<std::string, int>& assignment,
                    SimMode mode = SimMode::Exact);

void apply_gate(const Circuit& c, SimState& state, const Gate& gate);

SimState run(const Circuit& c, const std::map<std::string, int>& assignment,
             SimMode mode = SimMode::Exact);

// marginalise onto the named registers; every other register must hold a
// single basis value across the support, otherwise this reports the dirty
// register by name
AmplitudeMap extract(const Circuit& c, const SimState& state,
                     const std::vector<std::string>& registers);
std::map<std::string, double> extract_float(const Circuit& c, const SimState& state,
                                            const std::vector<std::string>& registers);

}  // namespace schur
