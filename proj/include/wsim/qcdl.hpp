#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wsim/circuit.hpp"

namespace wsim::qcdl {

struct SourceSpan {
    int line = 1;  // 1-based
    int column = 1;
    bool operator==(const SourceSpan&) const = default;
};

enum class ParseErrorKind {
    UnknownKeyword,
    Arity,
    BadInteger,
    MissingModesDecl,
    DuplicateModesDecl,
};

struct ParseError {
    SourceSpan span;
    ParseErrorKind kind;
    std::string message;
};

namespace stmt {
struct ModesDecl {
    int count;
    bool operator==(const ModesDecl&) const = default;
};
struct Had {
    ModeId mode;
    bool operator==(const Had&) const = default;
};
struct Pbs {
    ModeId in1, in2, out1, out2;
    bool operator==(const Pbs&) const = default;
};
struct Pc {
    ModeId in1, in2, out;
    bool operator==(const Pc&) const = default;
};
struct Cnot {
    ModeId control, target;
    bool operator==(const Cnot&) const = default;
};
struct Vgate {
    ModeId control, target;  // aux rails are allocated above the declared modes
    bool operator==(const Vgate&) const = default;
};
}  // namespace stmt

struct Statement {
    SourceSpan span;
    std::variant<stmt::ModesDecl, stmt::Had, stmt::Pbs, stmt::Pc, stmt::Cnot, stmt::Vgate> node;
    bool operator==(const Statement&) const = default;
};

// One statement per line, '#' comments, blank lines ignored. Recovers per
// line: every malformed line contributes at least one error and parsing
// continues on the next line.
std::vector<Statement> parse_statements(std::string_view source, std::vector<ParseError>& errors);

// circuit is engaged exactly when errors is empty.
struct ParseResult {
    std::optional<Circuit> circuit;
    std::vector<ParseError> errors;
    bool ok() const { return errors.empty(); }
};

// Grammar, one statement per line:
//   modes N                 (must come first, exactly once)
//   had M
//   pbs IN1 IN2 -> OUT1 OUT2
//   pc IN1 IN2 -> OUT
//   cnot CONTROL TARGET
//   vgate CONTROL TARGET
// Mode numbers are positive integers. Errors are returned, never thrown.
ParseResult parse(std::string_view source);

// Canonical form: modes declaration first, one gate per line, single spaces,
// newline-terminated. parse(serialize(c)) == c for circuits built through
// Circuit's add_* interface.
std::string serialize(const Circuit& circuit);

std::string to_string(ParseErrorKind kind);

// "line:column: message", the shape the CLI prints on stderr.
std::string format_error(const ParseError& error);

}  // namespace wsim::qcdl
