#pragma once

#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace wsim {

using Amplitude = std::complex<double>;

// Spatial mode label, 1-based to match the circuit description language.
using ModeId = int;

// Canonical order H < V; serialized as 'H' / 'V'.
enum class Polarization : unsigned char { H = 0, V = 1 };

char to_char(Polarization p);

// One spatial mode holds either nothing or a single polarized photon.
// Ordered Vacuum < H < V so that configuration comparison matches the
// lexicographic order of the rendered text ('0' < 'H' < 'V').
enum class Occupancy : unsigned char { Vacuum = 0, PhotonH = 1, PhotonV = 2 };

constexpr Occupancy photon(Polarization p) {
    return p == Polarization::H ? Occupancy::PhotonH : Occupancy::PhotonV;
}
constexpr bool is_photon(Occupancy o) { return o != Occupancy::Vacuum; }
Polarization polarization_of(Occupancy o);  // throws std::logic_error on Vacuum
char to_char(Occupancy o);

// Raised when a gate would put two photons into one spatial mode (bunching)
// or a path coupler sees both inputs occupied (collision). The run loop
// annotates the message with the offending gate index.
class PhysicsError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Basis state: an occupancy for every declared spatial mode.
class Configuration {
  public:
    Configuration() = default;
    explicit Configuration(int mode_count)
        : slots_(static_cast<std::size_t>(mode_count), Occupancy::Vacuum) {}

    int mode_count() const { return static_cast<int>(slots_.size()); }
    Occupancy at(ModeId mode) const;          // modes are 1-based
    void set(ModeId mode, Occupancy occ);
    int photon_count() const;

    auto operator<=>(const Configuration&) const = default;

  private:
    std::vector<Occupancy> slots_;
};

// "HVHV", vacuum rendered as '0' (e.g. "HV00"); one char per mode in mode order.
std::string format_configuration(const Configuration& config);

// Inverse of format_configuration; throws std::invalid_argument on any
// character outside {H, V, 0}.
Configuration parse_configuration(std::string_view text);

inline constexpr double default_prune_epsilon = 1e-12;

// Sparse complex linear combination of configurations over a fixed mode set.
// Terms whose modulus falls to prune_epsilon or below are dropped eagerly,
// and iteration order is the canonical configuration order.
class StateVector {
  public:
    using TermMap = std::map<Configuration, Amplitude>;

    explicit StateVector(int mode_count, double prune_epsilon = default_prune_epsilon);

    static StateVector basis_state(const Configuration& config, Amplitude amp = 1.0,
                                   double prune_epsilon = default_prune_epsilon);

    int mode_count() const { return mode_count_; }
    double prune_epsilon() const { return prune_epsilon_; }
    std::size_t term_count() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    // Accumulates into any existing term and prunes the result if it falls
    // to prune_epsilon or below. Rejects non-finite amplitudes and
    // configurations over a different mode set.
    void add_term(const Configuration& config, Amplitude amp);

    // Zero for configurations not present.
    Amplitude amplitude(const Configuration& config) const;

    const TermMap& terms() const { return terms_; }

  private:
    int mode_count_ = 0;
    double prune_epsilon_ = default_prune_epsilon;
    TermMap terms_;
};

double norm(const StateVector& state);

// <a|b> = sum over shared configurations of conj(amp_a) * amp_b.
// Throws std::invalid_argument if the mode sets differ.
Amplitude inner_product(const StateVector& a, const StateVector& b);

// Linear extension of a per-basis rule: sum of amp * f(config) over all
// terms, like terms combined. Errors raised by f propagate. Every state f
// returns must share the input's mode set.
StateVector apply_basis_map(const StateVector& state,
                            const std::function<StateVector(const Configuration&)>& f);

// Pads every configuration with vacuum modes up to new_mode_count.
StateVector widened(const StateVector& state, int new_mode_count);

// Drops modes above new_mode_count; every dropped mode must be vacuum in
// every term, otherwise a PhysicsError reports the stranded photon.
StateVector shrunk(const StateVector& state, int new_mode_count);

// Largest |amp_a - amp_b| over the union of configurations of both states.
double max_amplitude_difference(const StateVector& a, const StateVector& b);

// [{"config": "HVHV", "re": 0.5, "im": 0.0}, ...] sorted by config text.
nlohmann::ordered_json state_to_json(const StateVector& state);

}  // namespace wsim
