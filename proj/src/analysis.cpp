#include "wsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wsim {

namespace {

std::string format_probability(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

}  // namespace

StateVector w_state(int n) {
    if (n < 2) throw std::invalid_argument("w_state: need at least 2 qubits");
    StateVector state(n);
    const Amplitude amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (ModeId excited = 1; excited <= n; ++excited) {
        Configuration config(n);
        for (ModeId m = 1; m <= n; ++m)
            config.set(m, m == excited ? Occupancy::PhotonV : Occupancy::PhotonH);
        state.add_term(config, amp);
    }
    return state;
}

double fidelity(const StateVector& state, const StateVector& target) {
    constexpr double norm_tolerance = 1e-9;
    for (const auto* s : {&state, &target}) {
        double n = norm(*s);
        if (std::abs(n - 1.0) > norm_tolerance)
            throw std::invalid_argument("fidelity: state norm " + format_probability(n) +
                                        " is not 1 (fidelity is defined for unit states)");
    }
    return std::norm(inner_product(target, state));
}

DenseOperator::DenseOperator(int mode_count)
    : mode_count_(mode_count), dim_(1 << mode_count),
      entries_(static_cast<std::size_t>(dim_) * dim_, Amplitude{0.0, 0.0}) {
    if (mode_count < 0 || mode_count > 16)
        throw std::invalid_argument("DenseOperator: mode count outside 0..16");
    for (int i = 0; i < dim_; ++i) at(i, i) = 1.0;
}

DenseOperator DenseOperator::operator*(const DenseOperator& rhs) const {
    if (mode_count_ != rhs.mode_count_)
        throw std::invalid_argument("DenseOperator: mode count mismatch in product");
    DenseOperator result(mode_count_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) {
            Amplitude sum{0.0, 0.0};
            for (int k = 0; k < dim_; ++k) sum += at(r, k) * rhs.at(k, c);
            result.at(r, c) = sum;
        }
    return result;
}

DenseOperator DenseOperator::adjoint() const {
    DenseOperator result(mode_count_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) result.at(r, c) = std::conj(at(c, r));
    return result;
}

int DenseOperator::index_of(const Configuration& config) {
    int index = 0;
    for (ModeId m = 1; m <= config.mode_count(); ++m) {
        Occupancy occ = config.at(m);
        if (!is_photon(occ))
            throw std::invalid_argument("DenseOperator: configuration " +
                                        format_configuration(config) +
                                        " has a vacuum mode, outside the dense basis");
        index = (index << 1) | (occ == Occupancy::PhotonV ? 1 : 0);
    }
    return index;
}

Configuration DenseOperator::config_at(int index, int mode_count) {
    Configuration config(mode_count);
    for (ModeId m = 1; m <= mode_count; ++m) {
        bool v = (index >> (mode_count - m)) & 1;
        config.set(m, v ? Occupancy::PhotonV : Occupancy::PhotonH);
    }
    return config;
}

StateVector DenseOperator::column_state(int col, double prune_epsilon) const {
    StateVector state(mode_count_, prune_epsilon);
    for (int row = 0; row < dim_; ++row) {
        Amplitude amp = at(row, col);
        if (amp != Amplitude{0.0, 0.0}) state.add_term(config_at(row, mode_count_), amp);
    }
    return state;
}

namespace {

int mode_bit(ModeId mode, int mode_count) { return 1 << (mode_count - mode); }

DenseOperator dense_hadamard(ModeId mode, int mode_count) {
    DenseOperator m(mode_count);
    const double s = 1.0 / std::sqrt(2.0);
    const int mask = mode_bit(mode, mode_count);
    for (int col = 0; col < m.dim(); ++col) {
        m.at(col, col) = 0.0;
        int h_index = col & ~mask;
        int v_index = col | mask;
        if ((col & mask) == 0) {  // H -> (H + V)/sqrt2
            m.at(h_index, col) = s;
            m.at(v_index, col) = s;
        } else {  // V -> (H - V)/sqrt2
            m.at(h_index, col) = s;
            m.at(v_index, col) = -s;
        }
    }
    return m;
}

DenseOperator dense_cnot(ModeId control, ModeId target, int mode_count) {
    DenseOperator m(mode_count);
    const int cmask = mode_bit(control, mode_count);
    const int tmask = mode_bit(target, mode_count);
    for (int col = 0; col < m.dim(); ++col) {
        m.at(col, col) = 0.0;
        int row = (col & cmask) ? (col ^ tmask) : col;
        m.at(row, col) = 1.0;
    }
    return m;
}

DenseOperator dense_vgate(ModeId control, ModeId target, int mode_count) {
    DenseOperator m(mode_count);
    const int cmask = mode_bit(control, mode_count);
    const int tmask = mode_bit(target, mode_count);
    for (int col = 0; col < m.dim(); ++col) {
        m.at(col, col) = 0.0;
        int row = ((col & cmask) && (col & tmask)) ? (col & ~tmask) : col;
        m.at(row, col) = 1.0;
    }
    return m;
}

}  // namespace

DenseOperator build_dense_operator(const Circuit& circuit) {
    DenseOperator total(circuit.mode_count());
    for (const Gate& gate : circuit.gates()) {
        DenseOperator step = std::visit(
            [&](const auto& g) -> DenseOperator {
                using G = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<G, HadamardGate>)
                    return dense_hadamard(g.mode, circuit.mode_count());
                else if constexpr (std::is_same_v<G, CnotGate>)
                    return dense_cnot(g.control, g.target, circuit.mode_count());
                else if constexpr (std::is_same_v<G, VGate>)
                    return dense_vgate(g.control, g.target, circuit.mode_count());
                else
                    throw std::invalid_argument(
                        "build_dense_operator: '" + gate_text(g) +
                        "' reroutes photons between spatial modes and cannot be expressed "
                        "over the fully occupied basis");
            },
            gate);
        total = step * total;
    }
    return total;
}

double max_entry_difference(const DenseOperator& a, const DenseOperator& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("max_entry_difference: dimension mismatch");
    double worst = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) worst = std::max(worst, std::abs(a.at(r, c) - b.at(r, c)));
    return worst;
}

double unitarity_defect(const DenseOperator& m) {
    DenseOperator product = m.adjoint() * m;
    double worst = 0.0;
    for (int r = 0; r < product.dim(); ++r)
        for (int c = 0; c < product.dim(); ++c) {
            Amplitude expected = (r == c) ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
            worst = std::max(worst, std::abs(product.at(r, c) - expected));
        }
    return worst;
}

SuccessReport end_to_end_probability(const SchemeModel& model) {
    if (!(model.structural_probability > 0.0) || model.structural_probability > 1.0)
        throw std::invalid_argument("scheme '" + model.name +
                                    "': structural probability outside (0,1]");
    SuccessReport report{model.name, model.structural_probability, model.structural_probability,
                         model.notes};
    for (const SchemeComponent& component : model.components) {
        if (!(component.probability > 0.0) || component.probability > 1.0)
            throw std::invalid_argument("scheme '" + model.name + "': component '" +
                                        component.label + "' probability outside (0,1]");
        if (component.count < 1)
            throw std::invalid_argument("scheme '" + model.name + "': component '" +
                                        component.label + "' count below 1");
        report.end_to_end *=
            std::pow(component.probability, static_cast<double>(component.count));
        if (component.order_of_magnitude_only)
            report.notes.push_back(component.label + " probability " +
                                   format_probability(component.probability) +
                                   " is an order-of-magnitude estimate");
    }
    if (report.end_to_end != report.structural) {
        char decade[16];
        std::snprintf(decade, sizeof(decade), "1e%+03d",
                      static_cast<int>(std::floor(std::log10(report.end_to_end))));
        report.notes.push_back(std::string("end-to-end probability of order ") + decade);
    }
    return report;
}

std::vector<SchemeModel> builtin_scheme_table(double cnot_probability) {
    if (!(cnot_probability > 0.0) || cnot_probability > 1.0)
        throw std::invalid_argument("builtin_scheme_table: cnot probability outside (0,1]");
    const SchemeComponent toffoli{"toffoli", 1.0 / 32.0, 1, false};
    const SchemeComponent fredkin{"fredkin", 1e-3, 1, true};
    auto cnots = [&](int count) { return SchemeComponent{"cnot", cnot_probability, count, false}; };

    std::vector<SchemeModel> table;
    table.push_back({"basic fusion of two Bell pairs",
                     4.0 / 9.0,
                     {},
                     {"linear optical fusion gate, entangled pairs as resource"}});
    table.push_back({"Fredkin-enhanced fusion",
                     2.0 / 3.0,
                     {fredkin},
                     {"entangled pairs as resource",
                      "gate inventory beyond the Fredkin is not modeled"}});
    table.push_back({"fusion of four Bell pairs",
                     1.0 / 4.0,
                     {cnots(3), toffoli},
                     {"entangled pairs as resource"}});
    table.push_back({"fusion of three W states",
                     1.0 / 3.0,
                     {},
                     {"two Bell pairs and a three-qubit W state as resource",
                      "needs a Fredkin gate and two basic fusion gates, not modeled as "
                      "components"}});
    table.push_back({"deterministic five-cnot plus Toffoli circuit",
                     1.0,
                     {cnots(5), toffoli},
                     {"unentangled photons as input"}});
    table.push_back({"deterministic eight-cnot circuit",
                     1.0,
                     {cnots(8)},
                     {"unentangled photons as input"}});
    table.push_back({"deterministic six-cnot circuit (this preset)",
                     1.0,
                     {cnots(6)},
                     {"unentangled photons as input"}});
    return table;
}

std::vector<SuccessReport> scheme_reports(const std::vector<SchemeModel>& models) {
    std::vector<SuccessReport> reports;
    reports.reserve(models.size());
    for (const SchemeModel& model : models) reports.push_back(end_to_end_probability(model));
    return reports;
}

nlohmann::ordered_json reports_to_json(const std::vector<SuccessReport>& reports) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const SuccessReport& report : reports) {
        nlohmann::ordered_json entry;
        entry["scheme"] = report.scheme;
        entry["structural"] = report.structural;
        entry["end_to_end"] = report.end_to_end;
        entry["notes"] = report.notes;
        out.push_back(std::move(entry));
    }
    return out;
}

std::string render_report_table(const std::vector<SuccessReport>& reports) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-52s  %-12s  %-12s  %s\n", "scheme", "structural",
                  "end-to-end", "notes");
    out << line;
    for (const SuccessReport& report : reports) {
        std::string notes;
        for (std::size_t i = 0; i < report.notes.size(); ++i) {
            if (i) notes += "; ";
            notes += report.notes[i];
        }
        std::snprintf(line, sizeof(line), "%-52s  %-12.6g  %-12.6g  ", report.scheme.c_str(),
                      report.structural, report.end_to_end);
        out << line << notes << "\n";
    }
    return out.str();
}

}  // namespace wsim
