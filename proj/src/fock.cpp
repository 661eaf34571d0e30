#include "wsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wsim {

char to_char(Polarization p) { return p == Polarization::H ? 'H' : 'V'; }

Polarization polarization_of(Occupancy o) {
    switch (o) {
        case Occupancy::PhotonH: return Polarization::H;
        case Occupancy::PhotonV: return Polarization::V;
        case Occupancy::Vacuum: break;
    }
    throw std::logic_error("polarization_of: mode is vacuum");
}

char to_char(Occupancy o) {
    switch (o) {
        case Occupancy::Vacuum: return '0';
        case Occupancy::PhotonH: return 'H';
        case Occupancy::PhotonV: return 'V';
    }
    throw std::logic_error("to_char: bad occupancy");
}

Occupancy Configuration::at(ModeId mode) const {
    if (mode < 1 || mode > mode_count())
        throw std::out_of_range("Configuration::at: mode " + std::to_string(mode) +
                                " outside 1.." + std::to_string(mode_count()));
    return slots_[static_cast<std::size_t>(mode - 1)];
}

void Configuration::set(ModeId mode, Occupancy occ) {
    if (mode < 1 || mode > mode_count())
        throw std::out_of_range("Configuration::set: mode " + std::to_string(mode) +
                                " outside 1.." + std::to_string(mode_count()));
    slots_[static_cast<std::size_t>(mode - 1)] = occ;
}

int Configuration::photon_count() const {
    int n = 0;
    for (Occupancy o : slots_)
        if (is_photon(o)) ++n;
    return n;
}

std::string format_configuration(const Configuration& config) {
    std::string out;
    out.reserve(static_cast<std::size_t>(config.mode_count()));
    for (ModeId m = 1; m <= config.mode_count(); ++m) out.push_back(to_char(config.at(m)));
    return out;
}

Configuration parse_configuration(std::string_view text) {
    Configuration config(static_cast<int>(text.size()));
    for (std::size_t i = 0; i < text.size(); ++i) {
        ModeId mode = static_cast<ModeId>(i) + 1;
        switch (text[i]) {
            case '0': config.set(mode, Occupancy::Vacuum); break;
            case 'H': config.set(mode, Occupancy::PhotonH); break;
            case 'V': config.set(mode, Occupancy::PhotonV); break;
            default:
                throw std::invalid_argument(std::string("parse_configuration: bad character '") +
                                            text[i] + "' (want H, V or 0)");
        }
    }
    return config;
}

StateVector::StateVector(int mode_count, double prune_epsilon)
    : mode_count_(mode_count), prune_epsilon_(prune_epsilon) {
    if (mode_count < 0) throw std::invalid_argument("StateVector: negative mode count");
    if (!(prune_epsilon >= 0.0))
        throw std::invalid_argument("StateVector: prune epsilon must be a non-negative number");
}

StateVector StateVector::basis_state(const Configuration& config, Amplitude amp,
                                     double prune_epsilon) {
    StateVector state(config.mode_count(), prune_epsilon);
    state.add_term(config, amp);
    return state;
}

void StateVector::add_term(const Configuration& config, Amplitude amp) {
    if (config.mode_count() != mode_count_)
        throw std::invalid_argument("StateVector::add_term: configuration has " +
                                    std::to_string(config.mode_count()) + " modes, state has " +
                                    std::to_string(mode_count_));
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
        throw std::invalid_argument("StateVector::add_term: non-finite amplitude");
    auto [it, inserted] = terms_.try_emplace(config, amp);
    if (!inserted) it->second += amp;
    if (std::abs(it->second) <= prune_epsilon_) terms_.erase(it);
}

Amplitude StateVector::amplitude(const Configuration& config) const {
    auto it = terms_.find(config);
    return it == terms_.end() ? Amplitude{0.0, 0.0} : it->second;
}

double norm(const StateVector& state) {
    double sum = 0.0;
    for (const auto& [config, amp] : state.terms()) sum += std::norm(amp);
    return std::sqrt(sum);
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
    if (a.mode_count() != b.mode_count())
        throw std::invalid_argument("inner_product: mode sets differ (" +
                                    std::to_string(a.mode_count()) + " vs " +
                                    std::to_string(b.mode_count()) + ")");
    // Iterate the smaller map, look up in the larger.
    const StateVector& small = a.term_count() <= b.term_count() ? a : b;
    const StateVector& large = a.term_count() <= b.term_count() ? b : a;
    Amplitude sum{0.0, 0.0};
    for (const auto& [config, amp] : small.terms()) {
        Amplitude other = large.amplitude(config);
        if (&small == &a)
            sum += std::conj(amp) * other;
        else
            sum += std::conj(other) * amp;
    }
    return sum;
}

StateVector apply_basis_map(const StateVector& state,
                            const std::function<StateVector(const Configuration&)>& f) {
    StateVector result(state.mode_count(), state.prune_epsilon());
    for (const auto& [config, amp] : state.terms()) {
        StateVector image = f(config);
        if (image.mode_count() != state.mode_count())
            throw std::invalid_argument("apply_basis_map: basis rule changed the mode set");
        for (const auto& [image_config, image_amp] : image.terms())
            result.add_term(image_config, amp * image_amp);
    }
    return result;
}

StateVector widened(const StateVector& state, int new_mode_count) {
    if (new_mode_count < state.mode_count())
        throw std::invalid_argument("widened: new mode count is smaller");
    StateVector result(new_mode_count, state.prune_epsilon());
    for (const auto& [config, amp] : state.terms()) {
        Configuration wide(new_mode_count);
        for (ModeId m = 1; m <= config.mode_count(); ++m) wide.set(m, config.at(m));
        result.add_term(wide, amp);
    }
    return result;
}

StateVector shrunk(const StateVector& state, int new_mode_count) {
    if (new_mode_count > state.mode_count())
        throw std::invalid_argument("shrunk: new mode count is larger");
    StateVector result(new_mode_count, state.prune_epsilon());
    for (const auto& [config, amp] : state.terms()) {
        for (ModeId m = new_mode_count + 1; m <= config.mode_count(); ++m)
            if (is_photon(config.at(m)))
                throw PhysicsError("photon stranded in dropped mode " + std::to_string(m) +
                                   " of " + format_configuration(config));
        Configuration narrow(new_mode_count);
        for (ModeId m = 1; m <= new_mode_count; ++m) narrow.set(m, config.at(m));
        result.add_term(narrow, amp);
    }
    return result;
}

double max_amplitude_difference(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (const auto& [config, amp] : a.terms()) worst = std::max(worst, std::abs(amp - b.amplitude(config)));
    for (const auto& [config, amp] : b.terms()) worst = std::max(worst, std::abs(a.amplitude(config) - amp));
    return worst;
}

nlohmann::ordered_json state_to_json(const StateVector& state) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& [config, amp] : state.terms()) {
        nlohmann::ordered_json term;
        term["config"] = format_configuration(config);
        term["re"] = amp.real();
        term["im"] = amp.imag();
        out.push_back(std::move(term));
    }
    return out;
}

}  // namespace wsim
