#pragma once

#include <string>
#include <vector>

#include "wsim/circuit.hpp"

namespace wsim {

// Equal superposition (amplitude 1/sqrt n) of the n fully occupied
// configurations with exactly one V photon among H photons. n >= 2.
StateVector w_state(int n);

// |<target|state>|^2 for unit-norm pure states; rejects inputs whose norm
// strays from 1 by more than 1e-9.
double fidelity(const StateVector& state, const StateVector& target);

// Dense complex matrix over the 2^m fully occupied polarization
// configurations of an m-mode circuit, ordered by configuration text
// (HH..H first, VV..V last). Deliberately built from explicit per-gate
// matrices rather than the sparse term-rewriting path, so the two can
// cross-check each other.
class DenseOperator {
  public:
    explicit DenseOperator(int mode_count);  // identity

    int mode_count() const { return mode_count_; }
    int dim() const { return dim_; }

    Amplitude& at(int row, int col) { return entries_[static_cast<std::size_t>(row) * dim_ + col]; }
    Amplitude at(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * dim_ + col];
    }

    DenseOperator operator*(const DenseOperator& rhs) const;
    DenseOperator adjoint() const;

    // Basis-index mapping: mode 1 is the most significant digit, H=0, V=1.
    static int index_of(const Configuration& config);  // rejects vacuum modes
    static Configuration config_at(int index, int mode_count);

    // Column as a sparse state over the same modes, pruned at prune_epsilon.
    StateVector column_state(int col, double prune_epsilon = default_prune_epsilon) const;

  private:
    int mode_count_;
    int dim_;
    std::vector<Amplitude> entries_;
};

// Product of the circuit's gate matrices in application order. Supported
// gates: Hadamard, cNOT and V (whose matrix comes straight from the direct
// truth table). Top-level PBS/PC reroute photons between spatial modes and
// leave the fully occupied basis, so they are rejected.
DenseOperator build_dense_operator(const Circuit& circuit);

double max_entry_difference(const DenseOperator& a, const DenseOperator& b);

// max |(M^dagger M - I)_{ij}|; 0 for a unitary matrix.
double unitarity_defect(const DenseOperator& m);

struct SchemeComponent {
    std::string label;
    double probability;                    // in (0, 1]
    int count;                             // >= 1
    bool order_of_magnitude_only = false;  // probability known only to its decade
};

// A named W-state construction strategy: its ideal success rate with perfect
// gates plus the per-gate realization probabilities that multiply into the
// end-to-end figure.
struct SchemeModel {
    std::string name;
    double structural_probability;  // in (0, 1]
    std::vector<SchemeComponent> components;
    std::vector<std::string> notes;
};

struct SuccessReport {
    std::string scheme;
    double structural;
    double end_to_end;
    std::vector<std::string> notes;
};

// end_to_end = structural * product of probability^count over components.
// Throws std::invalid_argument on probabilities outside (0,1] or counts < 1.
SuccessReport end_to_end_probability(const SchemeModel& model);

// The seven four-qubit W-state strategies compared by this artifact: four
// probabilistic fusion schemes and three deterministic circuits. cNOT
// components across all schemes use cnot_probability (1/9 for the linear
// optical realization, 1/4 with entangled ancilla pairs, 1 for an ideal
// gate).
std::vector<SchemeModel> builtin_scheme_table(double cnot_probability);

std::vector<SuccessReport> scheme_reports(const std::vector<SchemeModel>& models);

// [{"scheme": ..., "structural": ..., "end_to_end": ..., "notes": [...]}, ...]
nlohmann::ordered_json reports_to_json(const std::vector<SuccessReport>& reports);

std::string render_report_table(const std::vector<SuccessReport>& reports);

}  // namespace wsim
