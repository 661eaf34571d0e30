// wsim: command-line front end for the polarization-encoded photonic
// circuit simulator. Exit codes: 0 success, 1 circuit parse errors,
// 2 physics errors (bunching / path-coupler collision / oracle mismatch),
// 3 validation and usage errors.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wsim/analysis.hpp"
#include "wsim/circuit.hpp"
#include "wsim/qcdl.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_parse = 1;
constexpr int exit_physics = 2;
constexpr int exit_validation = 3;

// Thrown where a clean exit code is already known.
struct CommandExit {
    int code;
    std::string message;  // printed to stderr when non-empty
};

double prune_epsilon_from_env() {
    const char* text = std::getenv("WSIM_EPSILON");
    if (!text) return wsim::default_prune_epsilon;
    char* end = nullptr;
    double value = std::strtod(text, &end);
    if (end == text || *end != '\0' || !std::isfinite(value) || value < 0.0)
        throw CommandExit{exit_validation,
                          std::string("WSIM_EPSILON: expected a non-negative decimal, got '") +
                              text + "'"};
    return value;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CommandExit{exit_validation, "cannot open '" + path + "'"};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

wsim::Circuit load_circuit(const std::string& path) {
    wsim::qcdl::ParseResult result = wsim::qcdl::parse(read_file(path));
    if (!result.ok()) {
        std::string message;
        for (const auto& error : result.errors) {
            if (!message.empty()) message += '\n';
            message += path + ":" + wsim::qcdl::format_error(error);
        }
        throw CommandExit{exit_parse, message};
    }
    std::vector<wsim::Diagnostic> diagnostics = wsim::validate(*result.circuit);
    if (!diagnostics.empty()) {
        std::string message;
        for (const auto& d : diagnostics) {
            if (!message.empty()) message += '\n';
            message += path + ": ";
            if (d.gate_index >= 0) message += "gate " + std::to_string(d.gate_index) + ": ";
            message += d.message;
        }
        throw CommandExit{exit_validation, message};
    }
    return *result.circuit;
}

// "HVHV" or "1:H,2:V,3:H,4:V"; every declared mode must carry a photon.
wsim::Configuration parse_input_spec(const std::string& text, int mode_count) {
    auto fail = [&](const std::string& why) -> void {
        throw CommandExit{exit_validation, "input '" + text + "': " + why};
    };
    wsim::Configuration config(mode_count);
    if (text.find(':') == std::string::npos) {
        if (static_cast<int>(text.size()) != mode_count)
            fail("expected " + std::to_string(mode_count) + " polarization characters");
        for (int i = 0; i < mode_count; ++i) {
            char c = text[static_cast<std::size_t>(i)];
            if (c != 'H' && c != 'V')
                fail("mode " + std::to_string(i + 1) +
                     ": expected H or V (every input port carries a photon)");
            config.set(i + 1, c == 'H' ? wsim::Occupancy::PhotonH : wsim::Occupancy::PhotonV);
        }
        return config;
    }
    std::istringstream stream(text);
    std::string entry;
    int assigned = 0;
    while (std::getline(stream, entry, ',')) {
        std::size_t colon = entry.find(':');
        if (colon == std::string::npos || colon + 2 != entry.size())
            fail("expected MODE:P entries like 1:H");
        int mode = 0;
        try {
            mode = std::stoi(entry.substr(0, colon));
        } catch (const std::exception&) {
            fail("bad mode number in '" + entry + "'");
        }
        if (mode < 1 || mode > mode_count) fail("mode " + std::to_string(mode) + " undeclared");
        if (wsim::is_photon(config.at(mode)))
            fail("mode " + std::to_string(mode) + " assigned twice");
        char p = entry[colon + 1];
        if (p != 'H' && p != 'V') fail("polarization must be H or V in '" + entry + "'");
        config.set(mode, p == 'H' ? wsim::Occupancy::PhotonH : wsim::Occupancy::PhotonV);
        ++assigned;
    }
    if (assigned != mode_count)
        fail("all " + std::to_string(mode_count) + " modes need a photon, got " +
             std::to_string(assigned));
    return config;
}

void print_state_text(const wsim::StateVector& state, const char* indent = "") {
    for (const auto& [config, amp] : state.terms())
        std::printf("%s%s  %.12g  %.12g\n", indent, wsim::format_configuration(config).c_str(),
                    amp.real(), amp.imag());
}

wsim::ExecutionTrace run_or_rethrow(const wsim::Circuit& circuit,
                                    const wsim::Configuration& input, double epsilon) {
    try {
        return wsim::run(circuit, input, epsilon);
    } catch (const wsim::PhysicsError& e) {
        throw CommandExit{exit_physics, e.what()};
    }
}

int cmd_run(const std::string& path, const std::string& input_text, bool json,
            const std::string& fidelity_target) {
    if (!fidelity_target.empty() && fidelity_target != "w4")
        throw CommandExit{exit_validation,
                          "--fidelity: unsupported target '" + fidelity_target + "' (try w4)"};
    double epsilon = prune_epsilon_from_env();
    wsim::Circuit circuit = load_circuit(path);
    wsim::Configuration input = parse_input_spec(input_text, circuit.mode_count());
    wsim::ExecutionTrace trace = run_or_rethrow(circuit, input, epsilon);

    double fidelity_value = 0.0;
    if (!fidelity_target.empty()) {
        if (circuit.mode_count() != 4)
            throw CommandExit{exit_validation, "--fidelity=w4 needs a four-mode circuit"};
        try {
            fidelity_value = wsim::fidelity(trace.final_state, wsim::w_state(4));
        } catch (const std::invalid_argument& e) {
            throw CommandExit{exit_physics, e.what()};
        }
    }

    if (json) {
        if (fidelity_target.empty()) {
            std::printf("%s\n", wsim::state_to_json(trace.final_state).dump(2).c_str());
        } else {
            nlohmann::ordered_json doc;
            doc["final"] = wsim::state_to_json(trace.final_state);
            doc["fidelity_w4"] = fidelity_value;
            std::printf("%s\n", doc.dump(2).c_str());
        }
    } else {
        print_state_text(trace.final_state);
        if (!fidelity_target.empty()) std::printf("fidelity(w4) = %.12g\n", fidelity_value);
    }
    return exit_ok;
}

int cmd_trace(const std::string& path, const std::string& input_text, bool json) {
    double epsilon = prune_epsilon_from_env();
    wsim::Circuit circuit = load_circuit(path);
    wsim::Configuration input = parse_input_spec(input_text, circuit.mode_count());
    wsim::ExecutionTrace trace = run_or_rethrow(circuit, input, epsilon);

    if (json) {
        std::printf("%s\n", wsim::trace_to_json(trace).dump(2).c_str());
        return exit_ok;
    }
    std::printf("input: %s\n", wsim::format_configuration(trace.input).c_str());
    for (const wsim::TraceStep& step : trace.steps) {
        std::printf("gate %d: %s\n", step.gate_index, step.description.c_str());
        print_state_text(step.state, "  ");
    }
    std::printf("final:\n");
    print_state_text(trace.final_state, "  ");
    return exit_ok;
}

int cmd_compare(bool json, const std::string& cnot_p) {
    double probability = 0.0;
    if (cnot_p == "1/9")
        probability = 1.0 / 9.0;
    else if (cnot_p == "1/4")
        probability = 1.0 / 4.0;
    else if (cnot_p == "1")
        probability = 1.0;
    else
        throw CommandExit{exit_validation,
                          "--cnot-p: unknown value '" + cnot_p + "' (want 1/9, 1/4 or 1)"};

    std::vector<wsim::SuccessReport> reports =
        wsim::scheme_reports(wsim::builtin_scheme_table(probability));
    if (json)
        std::printf("%s\n", wsim::reports_to_json(reports).dump(2).c_str());
    else
        std::printf("cnot probability: %s\n\n%s", cnot_p.c_str(),
                    wsim::render_report_table(reports).c_str());
    return exit_ok;
}

int cmd_oracle_check(const std::string& path) {
    double epsilon = prune_epsilon_from_env();
    wsim::Circuit circuit = load_circuit(path);
    if (circuit.mode_count() < 1 || circuit.mode_count() > 10)
        throw CommandExit{exit_validation,
                          "oracle-check: circuit must declare between 1 and 10 modes"};
    wsim::DenseOperator dense = [&] {
        try {
            return wsim::build_dense_operator(circuit);
        } catch (const std::invalid_argument& e) {
            throw CommandExit{exit_validation, e.what()};
        }
    }();
    double worst = 0.0;
    for (int col = 0; col < dense.dim(); ++col) {
        wsim::Configuration input = wsim::DenseOperator::config_at(col, circuit.mode_count());
        wsim::StateVector sparse = run_or_rethrow(circuit, input, epsilon).final_state;
        worst = std::max(worst,
                         wsim::max_amplitude_difference(dense.column_state(col, epsilon), sparse));
    }
    bool pass = worst < 1e-12;
    std::printf("%d basis inputs, max deviation %.3g\n%s\n", dense.dim(), worst,
                pass ? "PASS" : "FAIL");
    return pass ? exit_ok : exit_physics;
}

int cmd_validate(const std::string& path) {
    wsim::qcdl::ParseResult result = wsim::qcdl::parse(read_file(path));
    if (!result.ok()) {
        for (const auto& error : result.errors)
            std::fprintf(stderr, "%s:%s\n", path.c_str(),
                         wsim::qcdl::format_error(error).c_str());
        return exit_parse;
    }
    std::vector<wsim::Diagnostic> diagnostics = wsim::validate(*result.circuit);
    if (diagnostics.empty()) {
        std::printf("ok: %d modes, %zu gates, %d cnots\n", result.circuit->mode_count(),
                    result.circuit->gates().size(), wsim::cnot_count(*result.circuit));
        return exit_ok;
    }
    for (const auto& d : diagnostics) {
        if (d.gate_index >= 0)
            std::fprintf(stderr, "%s: gate %d: %s\n", path.c_str(), d.gate_index,
                         d.message.c_str());
        else
            std::fprintf(stderr, "%s: %s\n", path.c_str(), d.message.c_str());
    }
    return exit_validation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator for polarization-encoded photonic circuits"};
    app.require_subcommand(1);

    std::string circuit_path;
    std::string input_text;
    std::string fidelity_target;
    std::string cnot_p = "1/9";
    bool json = false;

    CLI::App* run_cmd = app.add_subcommand("run", "execute a circuit and print the final state");
    run_cmd->add_option("circuit", circuit_path, ".wqc circuit file")->required();
    run_cmd->add_option("input", input_text, "input like HVHV or 1:H,2:V,3:H,4:V")->required();
    run_cmd->add_flag("--json", json, "emit JSON instead of the text table");
    run_cmd->add_option("--fidelity", fidelity_target,
                        "also report fidelity against a target (w4)");

    CLI::App* trace_cmd =
        app.add_subcommand("trace", "execute a circuit and print the state after every gate");
    trace_cmd->add_option("circuit", circuit_path, ".wqc circuit file")->required();
    trace_cmd->add_option("input", input_text, "input like HVHV")->required();
    trace_cmd->add_flag("--json", json, "emit the trace as JSON");

    CLI::App* compare_cmd = app.add_subcommand(
        "compare", "success probabilities of the built-in W-state construction schemes");
    compare_cmd->add_flag("--json", json, "emit the report as JSON");
    compare_cmd->add_option("--cnot-p", cnot_p, "cnot realization probability: 1/9, 1/4 or 1");

    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle-check", "compare the sparse run against a dense matrix on every basis input");
    oracle_cmd->add_option("circuit", circuit_path, ".wqc circuit file")->required();

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "parse and statically check a circuit file");
    validate_cmd->add_option("circuit", circuit_path, ".wqc circuit file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(circuit_path, input_text, json, fidelity_target);
        if (trace_cmd->parsed()) return cmd_trace(circuit_path, input_text, json);
        if (compare_cmd->parsed()) return cmd_compare(json, cnot_p);
        if (oracle_cmd->parsed()) return cmd_oracle_check(circuit_path);
        if (validate_cmd->parsed()) return cmd_validate(circuit_path);
    } catch (const CommandExit& e) {
        if (!e.message.empty()) std::fprintf(stderr, "%s\n", e.message.c_str());
        return e.code;
    } catch (const wsim::ValidationError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return exit_validation;
    } catch (const wsim::PhysicsError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return exit_physics;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_validation;
    }
    return exit_validation;
}
