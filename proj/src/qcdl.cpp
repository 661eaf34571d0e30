#include "wsim/qcdl.hpp"

#include <charconv>

namespace wsim::qcdl {

namespace {

struct Token {
    std::string_view text;
    int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#')
            ++i;
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

constexpr int max_mode_number = 1000000;

// Positive integer or nothing; the caller reports BadInteger.
std::optional<int> parse_positive_int(std::string_view text) {
    int value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || value < 1 || value > max_mode_number)
        return std::nullopt;
    return value;
}

class LineParser {
  public:
    LineParser(int line_number, const std::vector<Token>& tokens, std::vector<ParseError>& errors)
        : line_(line_number), tokens_(tokens), errors_(errors) {}

    std::optional<Statement> parse() {
        const Token& keyword = tokens_[0];
        SourceSpan span{line_, keyword.column};
        if (keyword.text == "modes") return finish(span, parse_modes());
        if (keyword.text == "had") return finish(span, parse_had());
        if (keyword.text == "pbs") return finish(span, parse_pbs());
        if (keyword.text == "pc") return finish(span, parse_pc());
        if (keyword.text == "cnot") return finish(span, parse_cnot());
        if (keyword.text == "vgate") return finish(span, parse_vgate());
        errors_.push_back({span, ParseErrorKind::UnknownKeyword,
                           "unknown keyword '" + std::string(keyword.text) + "'"});
        return std::nullopt;
    }

  private:
    using Node = decltype(Statement::node);

    template <typename T>
    std::optional<Statement> finish(SourceSpan span, std::optional<T> node) {
        if (!node) return std::nullopt;
        return Statement{span, Node(*node)};
    }

    bool check_arity(std::size_t expected, const char* shape) {
        if (tokens_.size() == expected) return true;
        errors_.push_back({{line_, tokens_[0].column},
                           ParseErrorKind::Arity,
                           std::string("expected '") + shape + "', got " +
                               std::to_string(tokens_.size() - 1) + " argument token(s)"});
        return false;
    }

    bool check_arrow(std::size_t index, const char* shape) {
        if (tokens_.size() > index && tokens_[index].text == "->") return true;
        int column = tokens_.size() > index ? tokens_[index].column : tokens_[0].column;
        errors_.push_back({{line_, column},
                           ParseErrorKind::Arity,
                           std::string("expected '->' between inputs and outputs in '") + shape +
                               "'"});
        return false;
    }

    std::optional<int> mode_arg(std::size_t index) {
        const Token& token = tokens_[index];
        std::optional<int> value = parse_positive_int(token.text);
        if (!value)
            errors_.push_back({{line_, token.column},
                               ParseErrorKind::BadInteger,
                               "expected positive integer, got '" + std::string(token.text) +
                                   "'"});
        return value;
    }

    std::optional<stmt::ModesDecl> parse_modes() {
        if (!check_arity(2, "modes N")) return std::nullopt;
        auto count = mode_arg(1);
        if (!count) return std::nullopt;
        return stmt::ModesDecl{*count};
    }

    std::optional<stmt::Had> parse_had() {
        if (!check_arity(2, "had M")) return std::nullopt;
        auto mode = mode_arg(1);
        if (!mode) return std::nullopt;
        return stmt::Had{*mode};
    }

    std::optional<stmt::Pbs> parse_pbs() {
        if (!check_arity(6, "pbs IN1 IN2 -> OUT1 OUT2") ||
            !check_arrow(3, "pbs IN1 IN2 -> OUT1 OUT2"))
            return std::nullopt;
        auto in1 = mode_arg(1), in2 = mode_arg(2), out1 = mode_arg(4), out2 = mode_arg(5);
        if (!in1 || !in2 || !out1 || !out2) return std::nullopt;
        return stmt::Pbs{*in1, *in2, *out1, *out2};
    }

    std::optional<stmt::Pc> parse_pc() {
        if (!check_arity(5, "pc IN1 IN2 -> OUT") || !check_arrow(3, "pc IN1 IN2 -> OUT"))
            return std::nullopt;
        auto in1 = mode_arg(1), in2 = mode_arg(2), out = mode_arg(4);
        if (!in1 || !in2 || !out) return std::nullopt;
        return stmt::Pc{*in1, *in2, *out};
    }

    std::optional<stmt::Cnot> parse_cnot() {
        if (!check_arity(3, "cnot CONTROL TARGET")) return std::nullopt;
        auto control = mode_arg(1), target = mode_arg(2);
        if (!control || !target) return std::nullopt;
        return stmt::Cnot{*control, *target};
    }

    std::optional<stmt::Vgate> parse_vgate() {
        if (!check_arity(3, "vgate CONTROL TARGET")) return std::nullopt;
        auto control = mode_arg(1), target = mode_arg(2);
        if (!control || !target) return std::nullopt;
        return stmt::Vgate{*control, *target};
    }

    int line_;
    const std::vector<Token>& tokens_;
    std::vector<ParseError>& errors_;
};

}  // namespace

std::vector<Statement> parse_statements(std::string_view source, std::vector<ParseError>& errors) {
    std::vector<Statement> statements;
    int line_number = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        std::size_t newline = source.find('\n', pos);
        std::string_view line = source.substr(
            pos, newline == std::string_view::npos ? std::string_view::npos : newline - pos);
        ++line_number;
        std::vector<Token> tokens = tokenize(line);
        if (!tokens.empty()) {
            LineParser parser(line_number, tokens, errors);
            if (std::optional<Statement> statement = parser.parse())
                statements.push_back(std::move(*statement));
        }
        if (newline == std::string_view::npos) break;
        pos = newline + 1;
    }
    return statements;
}

ParseResult parse(std::string_view source) {
    ParseResult result;
    std::vector<Statement> statements = parse_statements(source, result.errors);

    std::optional<int> mode_count;
    bool missing_decl_reported = false;
    Circuit circuit;

    for (const Statement& statement : statements) {
        if (const auto* decl = std::get_if<stmt::ModesDecl>(&statement.node)) {
            if (mode_count) {
                result.errors.push_back({statement.span, ParseErrorKind::DuplicateModesDecl,
                                         "duplicate modes declaration"});
            } else {
                mode_count = decl->count;
                circuit = Circuit(decl->count);
            }
            continue;
        }
        if (!mode_count && !missing_decl_reported) {
            result.errors.push_back({statement.span, ParseErrorKind::MissingModesDecl,
                                     "first statement must be 'modes N'"});
            missing_decl_reported = true;
        }
        std::visit(
            [&](const auto& node) {
                using N = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<N, stmt::Had>) {
                    circuit.add_hadamard(node.mode);
                } else if constexpr (std::is_same_v<N, stmt::Pbs>) {
                    circuit.add_pbs(node.in1, node.in2, node.out1, node.out2);
                } else if constexpr (std::is_same_v<N, stmt::Pc>) {
                    circuit.add_pc(node.in1, node.in2, node.out);
                } else if constexpr (std::is_same_v<N, stmt::Cnot>) {
                    circuit.add_cnot(node.control, node.target);
                } else if constexpr (std::is_same_v<N, stmt::Vgate>) {
                    circuit.add_vgate(node.control, node.target);
                }
            },
            statement.node);
    }

    if (!mode_count && !missing_decl_reported)
        result.errors.push_back(
            {{1, 1}, ParseErrorKind::MissingModesDecl, "no statements; expected 'modes N' first"});

    if (result.errors.empty()) result.circuit = std::move(circuit);
    return result;
}

std::string serialize(const Circuit& circuit) {
    std::string out = "modes " + std::to_string(circuit.mode_count()) + "\n";
    for (const Gate& gate : circuit.gates()) {
        out += gate_text(gate);
        out += '\n';
    }
    return out;
}

std::string to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::UnknownKeyword: return "unknown keyword";
        case ParseErrorKind::Arity: return "arity";
        case ParseErrorKind::BadInteger: return "bad integer";
        case ParseErrorKind::MissingModesDecl: return "missing modes declaration";
        case ParseErrorKind::DuplicateModesDecl: return "duplicate modes declaration";
    }
    return "unknown";
}

std::string format_error(const ParseError& error) {
    return std::to_string(error.span.line) + ":" + std::to_string(error.span.column) + ": " +
           error.message;
}

}  // namespace wsim::qcdl
