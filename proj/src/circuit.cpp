#include "wsim/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wsim {

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    std::ostringstream out;
    out << "circuit failed validation:";
    for (const auto& d : diagnostics) {
        out << "\n  ";
        if (d.gate_index >= 0) out << "gate " << d.gate_index << ": ";
        out << d.message;
    }
    return out.str();
}

// All mode ids one gate touches, aux rails included.
std::vector<ModeId> referenced_modes(const Gate& gate) {
    return std::visit(
        [](const auto& g) -> std::vector<ModeId> {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, HadamardGate>) return {g.mode};
            if constexpr (std::is_same_v<G, PbsGate>) return {g.in1, g.in2, g.out1, g.out2};
            if constexpr (std::is_same_v<G, PcGate>) return {g.in1, g.in2, g.out};
            if constexpr (std::is_same_v<G, CnotGate>) return {g.control, g.target};
            if constexpr (std::is_same_v<G, VGate>) return {g.control, g.target, g.aux1, g.aux2};
        },
        gate);
}

// Mode ids that must fall inside the declared range (aux rails excluded).
std::vector<ModeId> declared_mode_refs(const Gate& gate) {
    if (const auto* v = std::get_if<VGate>(&gate)) return {v->control, v->target};
    return referenced_modes(gate);
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

void Circuit::add_vgate(ModeId control, ModeId target) {
    int existing = 0;
    for (const Gate& g : gates_)
        if (std::holds_alternative<VGate>(g)) ++existing;
    ModeId aux1 = mode_count_ + 2 * existing + 1;
    ModeId aux2 = mode_count_ + 2 * existing + 2;
    gates_.emplace_back(VGate{control, target, aux1, aux2});
}

std::vector<Diagnostic> validate(const Circuit& circuit) {
    std::vector<Diagnostic> diagnostics;
    if (circuit.mode_count() < 0)
        diagnostics.push_back({-1, "negative mode count"});

    // Aux rails must sit above the declared range and belong to one gate only.
    std::set<ModeId> aux_modes;
    for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
        if (const auto* v = std::get_if<VGate>(&circuit.gates()[i])) {
            for (ModeId aux : {v->aux1, v->aux2}) {
                if (aux <= circuit.mode_count())
                    diagnostics.push_back({static_cast<int>(i),
                                           "vgate aux mode " + std::to_string(aux) +
                                               " collides with the declared modes"});
                if (!aux_modes.insert(aux).second)
                    diagnostics.push_back({static_cast<int>(i), "vgate aux mode " +
                                                                    std::to_string(aux) +
                                                                    " reused by another gate"});
            }
        }
    }

    // Modes an earlier PBS/PC may have routed a photon into.
    std::set<ModeId> maybe_written;

    for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
        const Gate& gate = circuit.gates()[i];
        const int index = static_cast<int>(i);

        for (ModeId m : declared_mode_refs(gate)) {
            if (m < 1 || m > circuit.mode_count())
                diagnostics.push_back({index, "references undeclared mode " + std::to_string(m) +
                                                  " (declared 1.." +
                                                  std::to_string(circuit.mode_count()) + ")"});
            if (aux_modes.count(m))
                diagnostics.push_back(
                    {index, "references mode " + std::to_string(m) + " reserved as a vgate aux"});
        }

        std::vector<ModeId> refs = referenced_modes(gate);
        std::set<ModeId> distinct(refs.begin(), refs.end());
        if (distinct.size() != refs.size())
            diagnostics.push_back({index, "self-referencing gate: '" + gate_text(gate) +
                                              "' lists the same mode twice"});

        if (const auto* pbs = std::get_if<PbsGate>(&gate)) {
            for (ModeId out : {pbs->out1, pbs->out2})
                if (maybe_written.count(out) && out != pbs->in1 && out != pbs->in2)
                    diagnostics.push_back({index, "pbs output mode " + std::to_string(out) +
                                                      " may already carry a routed photon"});
            maybe_written.erase(pbs->in1);
            maybe_written.erase(pbs->in2);
            maybe_written.insert(pbs->out1);
            maybe_written.insert(pbs->out2);
        } else if (const auto* pc = std::get_if<PcGate>(&gate)) {
            if (maybe_written.count(pc->out) && pc->out != pc->in1 && pc->out != pc->in2)
                diagnostics.push_back({index, "pc output mode " + std::to_string(pc->out) +
                                                  " may already carry a routed photon"});
            maybe_written.erase(pc->in1);
            maybe_written.erase(pc->in2);
            maybe_written.insert(pc->out);
        }
    }
    return diagnostics;
}

ExecutionTrace run(const Circuit& circuit, const Configuration& input, double prune_epsilon) {
    std::vector<Diagnostic> diagnostics = validate(circuit);
    if (!diagnostics.empty()) throw ValidationError(std::move(diagnostics));
    if (input.mode_count() != circuit.mode_count())
        throw std::invalid_argument("run: input spans " + std::to_string(input.mode_count()) +
                                    " modes, circuit declares " +
                                    std::to_string(circuit.mode_count()));

    StateVector state = StateVector::basis_state(input, 1.0, prune_epsilon);
    ExecutionTrace trace{input, state, {}, state};
    for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
        const Gate& gate = circuit.gates()[i];
        try {
            state = apply_gate(state, gate);
        } catch (const PhysicsError& e) {
            throw PhysicsError("gate " + std::to_string(i) + " (" + gate_text(gate) +
                               "): " + e.what());
        }
        trace.steps.push_back({static_cast<int>(i), gate_text(gate), state});
    }
    trace.final_state = state;
    return trace;
}

StateVector apply_circuit(const Circuit& circuit, const StateVector& initial) {
    std::vector<Diagnostic> diagnostics = validate(circuit);
    if (!diagnostics.empty()) throw ValidationError(std::move(diagnostics));
    if (initial.mode_count() != circuit.mode_count())
        throw std::invalid_argument("apply_circuit: state spans " +
                                    std::to_string(initial.mode_count()) +
                                    " modes, circuit declares " +
                                    std::to_string(circuit.mode_count()));
    StateVector state = initial;
    for (std::size_t i = 0; i < circuit.gates().size(); ++i) {
        try {
            state = apply_gate(state, circuit.gates()[i]);
        } catch (const PhysicsError& e) {
            throw PhysicsError("gate " + std::to_string(i) + " (" +
                               gate_text(circuit.gates()[i]) + "): " + e.what());
        }
    }
    return state;
}

nlohmann::ordered_json trace_to_json(const ExecutionTrace& trace) {
    nlohmann::ordered_json out;
    out["input"] = {{"config", format_configuration(trace.input)}};
    out["steps"] = nlohmann::ordered_json::array();
    for (const TraceStep& step : trace.steps) {
        nlohmann::ordered_json entry;
        entry["gate"] = step.gate_index;
        entry["desc"] = step.description;
        entry["state"] = state_to_json(step.state);
        out["steps"].push_back(std::move(entry));
    }
    out["final"] = state_to_json(trace.final_state);
    return out;
}

int cnot_count(const Circuit& circuit) {
    int total = 0;
    for (const Gate& g : circuit.gates()) total += cnot_count(g);
    return total;
}

Circuit build_bell_stage() {
    Circuit circuit(4);
    circuit.add_hadamard(1);
    circuit.add_hadamard(3);
    circuit.add_cnot(1, 2);
    circuit.add_cnot(3, 4);
    return circuit;
}

Circuit build_v_cascade() {
    Circuit circuit(4);
    circuit.add_vgate(4, 2);
    circuit.add_vgate(1, 4);
    circuit.add_vgate(2, 3);
    circuit.add_vgate(3, 1);
    return circuit;
}

Circuit build_w_creation_circuit() {
    Circuit circuit(4);
    circuit.add_hadamard(1);
    circuit.add_hadamard(3);
    circuit.add_cnot(1, 2);
    circuit.add_cnot(3, 4);
    circuit.add_vgate(4, 2);
    circuit.add_vgate(1, 4);
    circuit.add_vgate(2, 3);
    circuit.add_vgate(3, 1);
    return circuit;
}

}  // namespace wsim
