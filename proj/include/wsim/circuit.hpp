#pragma once

#include <string>
#include <vector>

#include "wsim/gates.hpp"

namespace wsim {

// gate_index is -1 for circuit-level findings.
struct Diagnostic {
    int gate_index;
    std::string message;
    bool operator==(const Diagnostic&) const = default;
};

class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

  private:
    std::vector<Diagnostic> diagnostics_;
};

// Declared spatial modes 1..mode_count plus an ordered gate list. V gates
// receive auxiliary modes above the declared range; add_vgate hands them out
// deterministically (two per V gate, in gate order) so that circuits built
// through this interface serialize and re-parse to identical structures.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int mode_count) : mode_count_(mode_count) {}

    int mode_count() const { return mode_count_; }
    const std::vector<Gate>& gates() const { return gates_; }

    void add_hadamard(ModeId mode) { gates_.emplace_back(HadamardGate{mode}); }
    void add_pbs(ModeId in1, ModeId in2, ModeId out1, ModeId out2) {
        gates_.emplace_back(PbsGate{in1, in2, out1, out2});
    }
    void add_pc(ModeId in1, ModeId in2, ModeId out) { gates_.emplace_back(PcGate{in1, in2, out}); }
    void add_cnot(ModeId control, ModeId target) { gates_.emplace_back(CnotGate{control, target}); }
    void add_vgate(ModeId control, ModeId target);
    void add_gate(Gate gate) { gates_.push_back(std::move(gate)); }

    bool operator==(const Circuit&) const = default;

  private:
    int mode_count_ = 0;
    std::vector<Gate> gates_;
};

// Static checks: mode references within the declared range (V-gate aux above
// it and private to one gate), distinct modes per gate, and no PBS/PC output
// wired onto a mode an earlier splitter may already have routed a photon
// into. Occupancy clashes that depend on the particular input surface at run
// time instead.
std::vector<Diagnostic> validate(const Circuit& circuit);

struct TraceStep {
    int gate_index;
    std::string description;  // canonical gate text, e.g. "had 1"
    StateVector state;
};

struct ExecutionTrace {
    Configuration input;
    StateVector initial;
    std::vector<TraceStep> steps;  // one entry per gate, in order
    StateVector final_state;
};

// Applies the gate list in order, capturing the state after every gate.
// Throws ValidationError when validate() reports diagnostics, and re-throws
// gate physics errors annotated with the gate index. States span the
// declared modes only; V-gate aux rails live and die inside each gate.
ExecutionTrace run(const Circuit& circuit, const Configuration& input,
                   double prune_epsilon = default_prune_epsilon);

// Same gate loop without trace capture, for feeding a circuit fragment an
// arbitrary (possibly entangled) state.
StateVector apply_circuit(const Circuit& circuit, const StateVector& initial);

// {"input": {"config": ...}, "steps": [{"gate": i, "desc": ..., "state":
// [...]}, ...], "final": [...]}
nlohmann::ordered_json trace_to_json(const ExecutionTrace& trace);

// Explicit cNOTs plus one per V gate.
int cnot_count(const Circuit& circuit);

// Hadamards on modes 1 and 3 followed by cNOT(1,2) and cNOT(3,4): turns
// |H,V,H,V> into the product of two two-photon Bell pairs of W type,
// (|HV>+|VH>)/sqrt2 on modes 1,2 and on modes 3,4.
Circuit build_bell_stage();

// The four V gates, in application order V(4,2), V(1,4), V(2,3), V(3,1)
// (control listed first), that convert the Bell-pair product into the
// four-photon W state.
Circuit build_v_cascade();

// Bell stage followed by the V cascade on four modes; uses six cNOTs in
// total (two explicit, one inside each V gate). Run on input HVHV it yields
// the four-qubit W state with certainty.
Circuit build_w_creation_circuit();

}  // namespace wsim
