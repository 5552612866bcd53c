#pragma once

#include <map>
#include <string>

#include "schur/amplitude_map.hpp"
#include "schur/gate_model.hpp"
#include "schur/rep_core.hpp"
#include "schur/state_sim.hpp"

namespace schur {

// register layout of the inverse Schur cascade
struct SynthesisPlan {
    Group group = Group::SU2;
    int n = 0;
    int lambda_width = 0;  // qubits (SU2) or qutrits (SU3) per diagram-row register
    int weight_width = 0;  // ditto for the weight registers
    int carry_width = 0;   // shared pool, bits
    Circuit skeleton() const;  // registers declared, no gates
};

SynthesisPlan make_plan(Group g, int n);

// one inverse-CG block; step_index counts blocks from 0 (the block consuming
// the last path entry) to n-2
std::vector<Gate> build_ucg_inv_su2(const SynthesisPlan& plan, int step_index);
std::vector<Gate> build_ucg_inv_su3(const SynthesisPlan& plan, int step_index);

Circuit build_usch_inv_su2(int n);
Circuit build_usch_inv_su3(int n);
Circuit build_usch_inv(Group g, int n);

// register assignment encoding a Schur label as the circuit input
std::map<std::string, int> label_assignment(const Circuit& c, const SchurLabel& label);

// read the computational-basis amplitude map off a finished run; verifies the
// terminal contract: diagram register at the fundamental, ancillas and
// carries clean
AmplitudeMap readout_map(const Circuit& c, const SimState& state);
std::map<std::string, double> readout_map_float(const Circuit& c, const SimState& state);

// decompose a label by simulating the synthesized circuit
AmplitudeMap simulate_label(const Circuit& c, const SchurLabel& label,
                            SimMode mode = SimMode::Exact);

struct ResourcePrediction {
    // the published closed forms with the ceiling width convention
    std::map<std::string, long long> published;
    // this project's own exact closed forms (carry uncomputation included)
    std::map<std::string, long long> own;
};
ResourcePrediction predicted_resources(Group g, int n);

}  // namespace schur
