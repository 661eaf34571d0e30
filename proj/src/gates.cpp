#include "wsim/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wsim {

namespace {

constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

void place_photon(Configuration& config, ModeId mode, Occupancy photon, const char* element) {
    if (is_photon(config.at(mode)))
        throw PhysicsError(std::string(element) + ": two photons bunched in mode " +
                           std::to_string(mode));
    config.set(mode, photon);
}

}  // namespace

StateVector apply_hadamard(const StateVector& state, ModeId mode) {
    return apply_basis_map(state, [&](const Configuration& config) {
        Occupancy occ = config.at(mode);
        StateVector image(state.mode_count(), state.prune_epsilon());
        if (!is_photon(occ)) {
            image.add_term(config, 1.0);
            return image;
        }
        Configuration with_h = config;
        with_h.set(mode, Occupancy::PhotonH);
        Configuration with_v = config;
        with_v.set(mode, Occupancy::PhotonV);
        image.add_term(with_h, inv_sqrt2);
        image.add_term(with_v, occ == Occupancy::PhotonH ? inv_sqrt2 : -inv_sqrt2);
        return image;
    });
}

StateVector apply_pbs(const StateVector& state, const PbsGate& g) {
    return apply_basis_map(state, [&](const Configuration& config) {
        Occupancy p1 = config.at(g.in1);
        Occupancy p2 = config.at(g.in2);
        Configuration routed = config;
        routed.set(g.in1, Occupancy::Vacuum);
        routed.set(g.in2, Occupancy::Vacuum);
        if (is_photon(p1))
            place_photon(routed, polarization_of(p1) == Polarization::H ? g.out1 : g.out2, p1,
                         "pbs");
        if (is_photon(p2))
            place_photon(routed, polarization_of(p2) == Polarization::H ? g.out2 : g.out1, p2,
                         "pbs");
        return StateVector::basis_state(routed, 1.0, state.prune_epsilon());
    });
}

StateVector apply_pc(const StateVector& state, const PcGate& g) {
    return apply_basis_map(state, [&](const Configuration& config) {
        Occupancy p1 = config.at(g.in1);
        Occupancy p2 = config.at(g.in2);
        if (is_photon(p1) && is_photon(p2))
            throw PhysicsError("pc: collision, both input modes " + std::to_string(g.in1) +
                               " and " + std::to_string(g.in2) + " occupied");
        Configuration merged = config;
        merged.set(g.in1, Occupancy::Vacuum);
        merged.set(g.in2, Occupancy::Vacuum);
        if (is_photon(p1)) place_photon(merged, g.out, p1, "pc");
        if (is_photon(p2)) place_photon(merged, g.out, p2, "pc");
        return StateVector::basis_state(merged, 1.0, state.prune_epsilon());
    });
}

StateVector apply_cnot(const StateVector& state, const CnotGate& g) {
    return apply_basis_map(state, [&](const Configuration& config) {
        Occupancy c = config.at(g.control);
        Occupancy t = config.at(g.target);
        if (!is_photon(c) || !is_photon(t))
            return StateVector::basis_state(config, vacuum_eta, state.prune_epsilon());
        Configuration out = config;
        if (c == Occupancy::PhotonV)
            out.set(g.target,
                    t == Occupancy::PhotonH ? Occupancy::PhotonV : Occupancy::PhotonH);
        return StateVector::basis_state(out, 1.0, state.prune_epsilon());
    });
}

StateVector apply_vgate_composite(const StateVector& state, const VGate& g) {
    const ModeId ids[] = {g.control, g.target, g.aux1, g.aux2};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (ids[i] == ids[j])
                throw std::invalid_argument("vgate: modes must be pairwise distinct, got " +
                                            gate_text(g) + " with aux " + std::to_string(g.aux1) +
                                            "," + std::to_string(g.aux2));
    const int original_modes = state.mode_count();
    const int needed = std::max({original_modes, g.aux1, g.aux2});
    StateVector s = widened(state, needed);
    for (const auto& [config, amp] : s.terms()) {
        if (is_photon(config.at(g.aux1)) || is_photon(config.at(g.aux2)))
            throw PhysicsError("vgate: aux mode occupied before the gate in " +
                               format_configuration(config));
    }
    // Step 1: split each port onto its H rail (in place) and V rail (aux).
    s = apply_pbs(s, PbsGate{g.control, g.aux1, g.control, g.aux1});
    s = apply_pbs(s, PbsGate{g.target, g.aux2, g.target, g.aux2});
    // Step 2: cNOT between the V rails; fires only when both ports were V.
    s = apply_cnot(s, CnotGate{g.aux1, g.aux2});
    // Step 3: merge back. The control rail pair holds complementary
    // polarizations, so a PBS suffices; the target rail may carry a flipped
    // (H) photon on the aux side, which only a PC can fold back.
    s = apply_pbs(s, PbsGate{g.control, g.aux1, g.control, g.aux1});
    s = apply_pc(s, PcGate{g.target, g.aux2, g.target});
    for (const auto& [config, amp] : s.terms()) {
        if (is_photon(config.at(g.aux1)) || is_photon(config.at(g.aux2)))
            throw PhysicsError("vgate: aux mode still occupied after the merge in " +
                               format_configuration(config));
    }
    return shrunk(s, original_modes);
}

std::pair<Occupancy, Occupancy> vgate_truth_table(std::pair<Occupancy, Occupancy> in) {
    if (in.first == Occupancy::PhotonV && in.second == Occupancy::PhotonV)
        return {Occupancy::PhotonV, Occupancy::PhotonH};
    return in;
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
    return std::visit(
        [&](const auto& g) -> StateVector {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, HadamardGate>) return apply_hadamard(state, g.mode);
            if constexpr (std::is_same_v<G, PbsGate>) return apply_pbs(state, g);
            if constexpr (std::is_same_v<G, PcGate>) return apply_pc(state, g);
            if constexpr (std::is_same_v<G, CnotGate>) return apply_cnot(state, g);
            if constexpr (std::is_same_v<G, VGate>) return apply_vgate_composite(state, g);
        },
        gate);
}

std::string gate_text(const Gate& gate) {
    return std::visit(
        [](const auto& g) -> std::string {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, HadamardGate>) {
                return "had " + std::to_string(g.mode);
            } else if constexpr (std::is_same_v<G, PbsGate>) {
                return "pbs " + std::to_string(g.in1) + " " + std::to_string(g.in2) + " -> " +
                       std::to_string(g.out1) + " " + std::to_string(g.out2);
            } else if constexpr (std::is_same_v<G, PcGate>) {
                return "pc " + std::to_string(g.in1) + " " + std::to_string(g.in2) + " -> " +
                       std::to_string(g.out);
            } else if constexpr (std::is_same_v<G, CnotGate>) {
                return "cnot " + std::to_string(g.control) + " " + std::to_string(g.target);
            } else {
                return "vgate " + std::to_string(g.control) + " " + std::to_string(g.target);
            }
        },
        gate);
}

int cnot_count(const Gate& gate) {
    if (std::holds_alternative<CnotGate>(gate) || std::holds_alternative<VGate>(gate)) return 1;
    return 0;
}

}  // namespace wsim
