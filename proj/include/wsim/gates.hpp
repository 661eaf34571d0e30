#pragma once

#include <string>
#include <utility>
#include <variant>

#include "wsim/fock.hpp"

namespace wsim {

// Half-wave plate at 22.5 degrees: H -> (H+V)/sqrt2, V -> (H-V)/sqrt2.
struct HadamardGate {
    ModeId mode;
    bool operator==(const HadamardGate&) const = default;
};

// Polarizing beamsplitter. Transmits H (in1->out1, in2->out2) and reflects V
// (in1->out2, in2->out1) with reflection phase +1. The same wiring merges two
// rails back into one when only complementary polarizations can arrive.
struct PbsGate {
    ModeId in1;
    ModeId in2;
    ModeId out1;
    ModeId out2;
    bool operator==(const PbsGate&) const = default;
};

// Path coupler: funnels whichever input carries a photon into out, keeping
// its polarization. Both inputs occupied is outside its contract.
struct PcGate {
    ModeId in1;
    ModeId in2;
    ModeId out;
    bool operator==(const PcGate&) const = default;
};

// Flips the target photon's polarization when the control photon is V.
// A vacuum input on either side leaves the term unchanged (scaled by eta).
struct CnotGate {
    ModeId control;
    ModeId target;
    bool operator==(const CnotGate&) const = default;
};

// Composite two-port element: splits control and target onto auxiliary rails
// with two PBSs, applies a cNOT between the V rails, then merges back with a
// PBS and a PC. Net effect: (V,V) -> (V,H), every other input fixed.
// Non-unitary as a map on the two-port polarization space.
struct VGate {
    ModeId control;
    ModeId target;
    ModeId aux1;  // carries control's V component while the gate runs
    ModeId aux2;  // carries target's V component while the gate runs
    bool operator==(const VGate&) const = default;
};

using Gate = std::variant<HadamardGate, PbsGate, PcGate, CnotGate, VGate>;

// Amplitude rescale a cNOT applies when one of its modes is vacuum, fixed
// to 1 so vacuum terms pass through unchanged.
inline constexpr Amplitude vacuum_eta{1.0, 0.0};

StateVector apply_hadamard(const StateVector& state, ModeId mode);

// Output modes may alias input modes (inputs are consumed first). Throws
// PhysicsError when two photons land in one output mode or an output mode
// already holds an unrelated photon.
StateVector apply_pbs(const StateVector& state, const PbsGate& g);

// Throws PhysicsError when both inputs are occupied in some term, or the
// output mode already holds an unrelated photon.
StateVector apply_pc(const StateVector& state, const PcGate& g);

StateVector apply_cnot(const StateVector& state, const CnotGate& g);

// Runs the three-step optical construction (split / cNOT / merge). Both aux
// modes must be vacuum in every term; modes beyond the state's declared set
// are added and removed transparently, so the result spans the same modes as
// the input.
StateVector apply_vgate_composite(const StateVector& state, const VGate& g);

// Direct two-port rule the composite construction must reproduce:
// (V,V) -> (V,H), all other pairs (including vacuum) unchanged.
std::pair<Occupancy, Occupancy> vgate_truth_table(std::pair<Occupancy, Occupancy> in);

StateVector apply_gate(const StateVector& state, const Gate& gate);

// Canonical one-line statement form, e.g. "had 1", "pbs 1 2 -> 3 4",
// "vgate 4 2". Doubles as the circuit description language syntax.
std::string gate_text(const Gate& gate);

// cNOTs consumed by one gate: 1 for CnotGate, 1 for the cNOT inside a VGate.
int cnot_count(const Gate& gate);

}  // namespace wsim
