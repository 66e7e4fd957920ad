// Copyright 2026 The flyq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flyq/netlist.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "overloaded.h"

namespace flyq {

using internal::overloaded;

namespace {

struct Token {
    std::string_view text;
    int column;
};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && lower(a) == lower(b);
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) {
        line = line.substr(0, hash);
    }
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i])) {
            ++i;
        }
        if (i > start) {
            tokens.push_back(Token{line.substr(start, i - start), static_cast<int>(start) + 1});
        }
    }
    return tokens;
}

std::string quoted(std::string_view s) {
    // Keep diagnostics printable when fed arbitrary bytes.
    std::string out = "'";
    for (unsigned char c : s.substr(0, 40)) {
        out += (c >= 0x20 && c < 0x7f) ? static_cast<char>(c) : '?';
    }
    if (s.size() > 40) {
        out += "...";
    }
    return out + "'";
}

std::string rail_name(std::size_t rail) {
    return "q" + std::to_string(rail);
}

std::string number(double value) {
    return fmt::format("{}", value);
}

struct Attribute {
    std::string_view value;
    int column;
};

class Parser {
   public:
    ParseResult run(std::string_view text) {
        int line_number = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto end = text.find('\n', pos);
            if (end == std::string_view::npos) {
                end = text.size();
            }
            ++line_number;
            line_ = line_number;
            statement(tokenize(text.substr(pos, end - pos)));
            pos = end + 1;
        }
        if (!circuit_) {
            error(Token{"", 1}, "no rails declared", 1);
        } else {
            check_register_detection();
        }

        ParseResult result;
        result.diagnostics = std::move(diagnostics_);
        if (!failed_) {
            result.circuit = std::move(circuit_);
        }
        return result;
    }

   private:
    void error(const Token &at, std::string message, int line = 0) {
        diagnostics_.push_back(ParseDiagnostic{line ? line : line_, at.column, std::move(message), Severity::error});
        failed_ = true;
    }

    void warning(const Token &at, std::string message) {
        diagnostics_.push_back(ParseDiagnostic{line_, at.column, std::move(message), Severity::warning});
    }

    void statement(const std::vector<Token> &tokens) {
        if (tokens.empty()) {
            return;
        }
        const std::string keyword = lower(tokens[0].text);
        if (keyword == "rails") {
            rails(tokens);
            return;
        }
        static const char *const known[] = {
            "segment", "sep", "ps", "bs", "cc", "hadamard", "fredkin", "dualrail", "set"};
        if (std::find(std::begin(known), std::end(known), keyword) == std::end(known)) {
            error(tokens[0], "unknown statement " + quoted(tokens[0].text));
            return;
        }
        if (!circuit_) {
            if (!rails_error_reported_) {
                error(tokens[0], "rails must be declared before " + quoted(tokens[0].text));
                rails_error_reported_ = true;
            }
            // Still run the rail-independent checks below so every line gets feedback.
        }
        if (keyword == "segment") {
            segment(tokens);
        } else if (keyword == "sep") {
            sep(tokens);
        } else if (keyword == "ps") {
            phase_shifter(tokens);
        } else if (keyword == "bs") {
            coupler(tokens);
        } else if (keyword == "cc") {
            coulomb(tokens);
        } else if (keyword == "hadamard") {
            macro(tokens, MacroKind::hadamard);
        } else if (keyword == "fredkin") {
            macro(tokens, MacroKind::fredkin);
        } else if (keyword == "dualrail") {
            dual_rail(tokens);
        } else {
            detector(tokens);
        }
    }

    std::optional<std::size_t> rail(const Token &token) {
        const auto text = token.text;
        if (text.size() < 2 || text[0] != 'q' ||
            !std::all_of(text.begin() + 1, text.end(), [](unsigned char c) { return std::isdigit(c); })) {
            error(token, "expected a rail name like q0, got " + quoted(text));
            return std::nullopt;
        }
        std::size_t index = 0;
        const auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), index);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            error(token, "rail index out of range in " + quoted(text));
            return std::nullopt;
        }
        if (!circuit_) {
            return std::nullopt;
        }
        if (index >= circuit_->n_rails()) {
            error(token, fmt::format("rail {} out of range ({} rails declared)", quoted(text), circuit_->n_rails()));
            return std::nullopt;
        }
        return index;
    }

    std::optional<double> quantity(std::string_view text, int column, std::string_view unit) {
        const Token at{text, column};
        if (text.size() >= unit.size() && iequals(text.substr(text.size() - unit.size()), unit)) {
            const auto digits = text.substr(0, text.size() - unit.size());
            double value = 0;
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
            if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
                error(at, fmt::format("expected a number before '{}' in {}", unit, quoted(text)));
                return std::nullopt;
            }
            if (!std::isfinite(value)) {
                error(at, "value must be finite in " + quoted(text));
                return std::nullopt;
            }
            return value;
        }
        double value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc() && ptr == text.data() + text.size()) {
            error(at, fmt::format("missing unit suffix '{}' after {}", unit, quoted(text)));
        } else {
            error(at, fmt::format("expected a quantity in '{}', got {}", unit, quoted(text)));
        }
        return std::nullopt;
    }

    // Splits "key=value" tokens from the positional ones; rejects duplicates and unknown keys.
    std::optional<std::map<std::string, Attribute>> attributes(
        const std::vector<Token> &tokens, std::size_t first, std::initializer_list<std::string_view> allowed,
        std::vector<Token> *flags = nullptr) {
        std::map<std::string, Attribute> out;
        bool ok = true;
        for (std::size_t i = first; i < tokens.size(); ++i) {
            const auto &token = tokens[i];
            const auto eq = token.text.find('=');
            if (eq == std::string_view::npos) {
                if (flags != nullptr) {
                    flags->push_back(token);
                } else {
                    error(token, "unexpected " + quoted(token.text));
                    ok = false;
                }
                continue;
            }
            const std::string key = lower(token.text.substr(0, eq));
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                error(token, "unknown attribute " + quoted(token.text.substr(0, eq)));
                ok = false;
                continue;
            }
            if (out.count(key)) {
                error(token, "attribute " + quoted(key) + " given twice");
                ok = false;
                continue;
            }
            out[key] = Attribute{token.text.substr(eq + 1), token.column + static_cast<int>(eq) + 1};
        }
        if (!ok) {
            return std::nullopt;
        }
        return out;
    }

    std::optional<double> required(
        const std::map<std::string, Attribute> &attrs, const Token &statement, const std::string &key,
        std::string_view unit) {
        const auto it = attrs.find(key);
        if (it == attrs.end()) {
            error(statement, fmt::format("missing attribute {}=<x>{}", key, unit));
            return std::nullopt;
        }
        return quantity(it->second.value, it->second.column, unit);
    }

    // Optional len=<x>um. Returns false on a malformed value.
    bool element_length(const std::map<std::string, Attribute> &attrs, std::optional<double> &length) {
        const auto it = attrs.find("len");
        if (it == attrs.end()) {
            return true;
        }
        const auto value = quantity(it->second.value, it->second.column, "um");
        if (!value) {
            return false;
        }
        if (*value < 0) {
            error(Token{it->second.value, it->second.column}, "element length must be non-negative");
            return false;
        }
        length = *value;
        return true;
    }

    // Runs a circuit mutation, turning contract violations into diagnostics.
    template <class F>
    void commit(const Token &at, F &&mutate) {
        if (!circuit_) {
            return;
        }
        try {
            mutate(*circuit_);
        } catch (const std::exception &e) {
            error(at, e.what());
        }
    }

    bool distinct(const Token &a, const Token &b, const char *message) {
        if (a.text == b.text) {
            error(b, message);
            return false;
        }
        return true;
    }

    void rails(const std::vector<Token> &tokens) {
        if (tokens.size() != 2) {
            error(tokens[0], "expected: rails <n>");
            return;
        }
        if (circuit_) {
            error(tokens[0], fmt::format("rails already declared on line {}", rails_line_));
            return;
        }
        const auto text = tokens[1].text;
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            error(tokens[1], "expected a rail count, got " + quoted(text));
            return;
        }
        if (n == 0) {
            error(tokens[1], "rail count must be at least 1");
            return;
        }
        if (n > kMaxRails) {
            error(tokens[1], fmt::format("at most {} rails are supported", kMaxRails));
            return;
        }
        circuit_.emplace(n);
        rails_line_ = line_;
    }

    void segment(const std::vector<Token> &tokens) {
        if (tokens.size() != 3) {
            error(tokens[0], "expected: segment <rail> <length>um");
            return;
        }
        const auto r = rail(tokens[1]);
        const auto length = quantity(tokens[2].text, tokens[2].column, "um");
        if (length && *length < 0) {
            error(tokens[2], "segment length must be non-negative");
            return;
        }
        if (r && length) {
            commit(tokens[0], [&](Circuit &c) { c.add_segment(*r, *length); });
        }
    }

    void sep(const std::vector<Token> &tokens) {
        if (tokens.size() < 2) {
            error(tokens[0], "expected: sep <rail> [delay=<t>ps] [empty]");
            return;
        }
        const auto r = rail(tokens[1]);
        std::vector<Token> flags;
        const auto attrs = attributes(tokens, 2, {"delay"}, &flags);
        bool emits = true;
        bool ok = attrs.has_value();
        for (const auto &flag : flags) {
            if (iequals(flag.text, "empty") && emits) {
                emits = false;
            } else {
                error(flag, "unexpected " + quoted(flag.text));
                ok = false;
            }
        }
        double delay = 0;
        if (attrs && attrs->count("delay")) {
            const auto &a = attrs->at("delay");
            const auto value = quantity(a.value, a.column, "ps");
            if (!value) {
                ok = false;
            } else if (*value < 0) {
                error(Token{a.value, a.column}, "emission delay must be non-negative");
                ok = false;
            } else {
                delay = *value;
            }
        }
        if (r && ok) {
            commit(tokens[0], [&](Circuit &c) { c.add_source(SepSource{*r, delay, emits}); });
        }
    }

    void phase_shifter(const std::vector<Token> &tokens) {
        if (tokens.size() < 3) {
            error(tokens[0], "expected: ps <rail> phi=<x>rad");
            return;
        }
        const auto r = rail(tokens[1]);
        const auto attrs = attributes(tokens, 2, {"phi", "len"});
        if (!attrs) {
            return;
        }
        const auto phi = required(*attrs, tokens[0], "phi", "rad");
        std::optional<double> length;
        const bool length_ok = element_length(*attrs, length);
        if (r && phi && length_ok) {
            commit(tokens[0], [&](Circuit &c) { c.add_element(GateElement{PhaseShifter{*r, *phi}, length}); });
        }
    }

    void coupler(const std::vector<Token> &tokens) {
        if (tokens.size() < 4) {
            error(tokens[0], "expected: bs <railA> <railB> lc=<x>um lt=<x>um");
            return;
        }
        if (!distinct(tokens[1], tokens[2], "coupler rails must be distinct")) {
            return;
        }
        const auto a = rail(tokens[1]);
        const auto b = rail(tokens[2]);
        const auto attrs = attributes(tokens, 3, {"lc", "lt", "len"});
        if (!attrs) {
            return;
        }
        const auto lc = required(*attrs, tokens[0], "lc", "um");
        const auto lt = required(*attrs, tokens[0], "lt", "um");
        if (lc && *lc < 0) {
            error(tokens[0], "coupling length must be non-negative");
            return;
        }
        if (lt && *lt <= 0) {
            error(tokens[0], "transfer length must be positive");
            return;
        }
        std::optional<double> length;
        const bool length_ok = element_length(*attrs, length);
        if (a && b && lc && lt && length_ok) {
            commit(tokens[0], [&](Circuit &c) {
                c.add_element(GateElement{WaveguideCoupler{RailPair{*a, *b}, *lc, *lt}, length});
            });
        }
    }

    void coulomb(const std::vector<Token> &tokens) {
        if (tokens.size() < 4) {
            error(tokens[0], "expected: cc <railA> <railB> chit=<x>rad");
            return;
        }
        if (!distinct(tokens[1], tokens[2], "coulomb coupler rails must be distinct")) {
            return;
        }
        const auto a = rail(tokens[1]);
        const auto b = rail(tokens[2]);
        const auto attrs = attributes(tokens, 3, {"chit", "len"});
        if (!attrs) {
            return;
        }
        const auto chi_t = required(*attrs, tokens[0], "chit", "rad");
        std::optional<double> length;
        const bool length_ok = element_length(*attrs, length);
        if (a && b && chi_t && length_ok) {
            commit(tokens[0], [&](Circuit &c) {
                c.add_element(GateElement{CoulombCoupler{RailPair{*a, *b}, *chi_t}, length});
            });
        }
    }

    void macro(const std::vector<Token> &tokens, MacroKind kind) {
        const std::size_t n = kind == MacroKind::hadamard ? 2 : 3;
        if (tokens.size() != n + 1) {
            error(tokens[0], kind == MacroKind::hadamard ? "expected: hadamard <rail0> <rail1>"
                                                         : "expected: fredkin <control> <target0> <target1>");
            return;
        }
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 1; j < i; ++j) {
                if (!distinct(tokens[j], tokens[i], "macro rails must be distinct")) {
                    return;
                }
            }
        }
        MacroCall call{kind, {}};
        for (std::size_t i = 1; i <= n; ++i) {
            const auto r = rail(tokens[i]);
            if (!r) {
                return;
            }
            call.rails.push_back(*r);
        }
        commit(tokens[0], [&](Circuit &c) { c.add_macro(call); });
    }

    void dual_rail(const std::vector<Token> &tokens) {
        if (tokens.size() != 4) {
            error(tokens[0], "expected: dualrail <name> <rail0> <rail1>");
            return;
        }
        const auto name = tokens[1].text;
        const bool valid_name =
            (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
            std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
        if (!valid_name) {
            error(tokens[1], "invalid register name " + quoted(name));
            return;
        }
        if (!distinct(tokens[2], tokens[3], "dual-rail rails must be distinct")) {
            return;
        }
        const auto a = rail(tokens[2]);
        const auto b = rail(tokens[3]);
        if (a && b) {
            commit(tokens[0], [&](Circuit &c) {
                c.add_register(RegisterDecl{std::string(name), RailPair{*a, *b}});
                register_lines_.push_back(line_);
            });
        }
    }

    void detector(const std::vector<Token> &tokens) {
        if (tokens.size() != 2) {
            error(tokens[0], "expected: set <rail>");
            return;
        }
        const auto r = rail(tokens[1]);
        if (!r || !circuit_) {
            return;
        }
        if (circuit_->is_detected(*r)) {
            warning(tokens[1], "rail " + quoted(tokens[1].text) + " already has a detector");
            return;
        }
        commit(tokens[0], [&](Circuit &c) { c.add_detector(*r); });
    }

    void check_register_detection() {
        if (circuit_->detectors().empty()) {
            return;
        }
        const auto &regs = circuit_->registers();
        for (std::size_t i = 0; i < regs.size(); ++i) {
            for (auto r : {regs[i].pair.first, regs[i].pair.second}) {
                if (!circuit_->is_detected(r)) {
                    error(
                        Token{"", 1},
                        fmt::format("register '{}' uses rail {} which has no set detector", regs[i].name, rail_name(r)),
                        register_lines_[i]);
                }
            }
        }
    }

    std::optional<Circuit> circuit_;
    std::vector<ParseDiagnostic> diagnostics_;
    std::vector<int> register_lines_;
    bool failed_ = false;
    bool rails_error_reported_ = false;
    int line_ = 1;
    int rails_line_ = 0;
};

std::string attribute_suffix(const GateElement &element) {
    return element.length_um ? " len=" + number(*element.length_um) + "um" : "";
}

std::string statement(const Instruction &instruction) {
    return std::visit(
        overloaded{
            [](const GateElement &element) {
                return std::visit(
                    overloaded{
                        [&](const PhaseShifter &g) {
                            return fmt::format("ps {} phi={}rad", rail_name(g.rail), number(g.phi));
                        },
                        [&](const WaveguideCoupler &g) {
                            return fmt::format(
                                "bs {} {} lc={}um lt={}um", rail_name(g.rails.first), rail_name(g.rails.second),
                                number(g.coupling_length_um), number(g.transfer_length_um));
                        },
                        [&](const CoulombCoupler &g) {
                            return fmt::format(
                                "cc {} {} chit={}rad", rail_name(g.rails.first), rail_name(g.rails.second),
                                number(g.chi_t));
                        },
                    },
                    element.gate) +
                       attribute_suffix(element);
            },
            [](const MacroCall &m) {
                std::string out = m.kind == MacroKind::hadamard ? "hadamard" : "fredkin";
                for (auto r : m.rails) {
                    out += " " + rail_name(r);
                }
                return out;
            },
        },
        instruction);
}

}  // namespace

std::string format_diagnostic(const ParseDiagnostic &diagnostic) {
    return fmt::format(
        "{}:{}: {}: {}", diagnostic.line, diagnostic.column,
        diagnostic.severity == Severity::error ? "error" : "warning", diagnostic.message);
}

ParseResult parse_netlist(std::string_view source_text) {
    return Parser().run(source_text);
}

std::string describe(const Instruction &instruction) {
    return std::visit(
        overloaded{
            [](const GateElement &element) {
                std::string out = std::visit(
                    overloaded{
                        [](const PhaseShifter &) { return std::string("ps"); },
                        [](const WaveguideCoupler &) { return std::string("bs"); },
                        [](const CoulombCoupler &) { return std::string("cc"); },
                    },
                    element.gate);
                for (auto r : element_rails(element)) {
                    out += " " + rail_name(r);
                }
                return out;
            },
            [](const MacroCall &m) { return statement(m); },
        },
        instruction);
}

std::string serialize_netlist(const Circuit &circuit) {
    std::string out = fmt::format("rails {}\n", circuit.n_rails());
    for (const auto &s : circuit.sources()) {
        out += fmt::format("sep {} delay={}ps{}\n", rail_name(s.rail), number(s.emission_delay_ps), s.emits ? "" : " empty");
    }
    for (const auto &r : circuit.registers()) {
        out += fmt::format("dualrail {} {} {}\n", r.name, rail_name(r.pair.first), rail_name(r.pair.second));
    }
    const auto &segments = circuit.segments();
    std::vector<std::size_t> slot(circuit.n_rails(), 0);
    auto wire = [&](std::size_t rail, std::size_t k) {
        if (segments[rail][k] != 0) {
            out += fmt::format("segment {} {}um\n", rail_name(rail), number(segments[rail][k]));
        }
    };
    for (const auto &instruction : circuit.instructions()) {
        for (auto rail : instruction_rails(instruction)) {
            wire(rail, slot[rail]++);
        }
        out += statement(instruction) + "\n";
    }
    for (std::size_t rail = 0; rail < circuit.n_rails(); ++rail) {
        wire(rail, slot[rail]);
    }
    for (auto d : circuit.detectors()) {
        out += fmt::format("set {}\n", rail_name(d));
    }
    return out;
}

}  // namespace flyq
