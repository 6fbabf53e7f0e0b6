#include "hardysim/circuit.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <set>
#include <sstream>

namespace hardysim {

namespace {

// Rethrows preserving the error type, with the failing step attached.
[[noreturn]] void rethrow_with_step(const Error& e, const std::string& name, std::size_t step) {
    const std::string msg =
        "circuit " + name + " step " + std::to_string(step) + ": " + e.what();
    if (dynamic_cast<const ImpossibleOutcomeError*>(&e)) throw ImpossibleOutcomeError(msg);
    if (dynamic_cast<const EntangledModeError*>(&e)) throw EntangledModeError(msg);
    if (dynamic_cast<const DegenerateStateError*>(&e)) throw DegenerateStateError(msg);
    if (dynamic_cast<const ArgumentError*>(&e)) throw ArgumentError(msg);
    throw Error(msg);
}

struct LiveModes {
    std::set<std::string> live;
    std::set<std::string> consumed;

    bool known(const std::string& l) const { return live.count(l) || consumed.count(l); }
};

void check_port(const LiveModes& modes, const std::string& port, std::size_t step_idx,
                std::vector<Diagnostic>& diags) {
    if (modes.live.count(port)) return;
    if (modes.consumed.count(port))
        diags.push_back({step_idx, "mode already consumed: " + port});
    else
        diags.push_back({step_idx, "undeclared mode label: " + port});
}

}  // namespace

std::vector<Diagnostic> validate(const Circuit& c, const std::vector<std::string>& initial_labels) {
    std::vector<Diagnostic> diags;
    LiveModes modes;
    for (const auto& l : initial_labels) modes.live.insert(l);

    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        const CircuitStep& step = c.steps[i];
        if (const auto* s = std::get_if<AddFockStep>(&step)) {
            if (s->labels.size() != s->occupations.size() || s->labels.size() != s->cutoffs.size()) {
                diags.push_back({i, "add_fock: labels/occupations/cutoffs lengths differ"});
                continue;
            }
            for (std::size_t j = 0; j < s->labels.size(); ++j) {
                const auto& l = s->labels[j];
                if (modes.known(l)) {
                    diags.push_back({i, "duplicate mode label: " + l});
                    continue;
                }
                if (s->cutoffs[j] < 0 || s->cutoffs[j] > kMaxOccupation)
                    diags.push_back({i, "add_fock: cutoff out of range for " + l});
                else if (s->occupations[j] < 0 || s->occupations[j] > s->cutoffs[j])
                    diags.push_back({i, "add_fock: occupation exceeds cutoff for " + l});
                modes.live.insert(l);
            }
            if (modes.live.size() > static_cast<std::size_t>(kMaxModes))
                diags.push_back({i, "more than " + std::to_string(kMaxModes) + " live modes"});
        } else if (const auto* s = std::get_if<AddCoherentStep>(&step)) {
            if (modes.known(s->label))
                diags.push_back({i, "duplicate mode label: " + s->label});
            if (!std::isfinite(s->alpha.real()) || !std::isfinite(s->alpha.imag()))
                diags.push_back({i, "add_coherent: alpha must be finite"});
            if (s->cutoff < -1 || s->cutoff > kMaxOccupation)
                diags.push_back({i, "add_coherent: cutoff out of range"});
            modes.live.insert(s->label);
            if (modes.live.size() > static_cast<std::size_t>(kMaxModes))
                diags.push_back({i, "more than " + std::to_string(kMaxModes) + " live modes"});
        } else if (const auto* s = std::get_if<BeamSplitterStep>(&step)) {
            check_port(modes, s->port_a, i, diags);
            check_port(modes, s->port_b, i, diags);
            if (s->port_a == s->port_b) diags.push_back({i, "beam_splitter ports must differ"});
            if (!(s->t >= 0.0 && s->t <= 1.0))
                diags.push_back({i, "beam_splitter: t must be in [0, 1]"});
        } else if (const auto* s = std::get_if<PhaseStep>(&step)) {
            check_port(modes, s->port, i, diags);
            if (!std::isfinite(s->theta)) diags.push_back({i, "phase: theta must be finite"});
        } else if (const auto* s = std::get_if<MirrorStep>(&step)) {
            check_port(modes, s->port, i, diags);
        } else if (const auto* s = std::get_if<ConditionStep>(&step)) {
            check_port(modes, s->port, i, diags);
            if (s->count < 0) diags.push_back({i, "condition: count must be >= 0"});
            modes.live.erase(s->port);
            modes.consumed.insert(s->port);
        } else if (const auto* s = std::get_if<DropFactorizedStep>(&step)) {
            check_port(modes, s->port, i, diags);
            if (!(s->tol > 0.0)) diags.push_back({i, "drop_factorized: tol must be > 0"});
            modes.live.erase(s->port);
            modes.consumed.insert(s->port);
        }
    }
    return diags;
}

RunResult run(const Circuit& c, const RunOptions& options, const PureState* initial) {
    std::vector<std::string> initial_labels = initial ? initial->labels() : std::vector<std::string>{};
    const std::vector<Diagnostic> diags = validate(c, initial_labels);
    if (!diags.empty()) {
        std::ostringstream os;
        os << "circuit " << c.name << " is not well-formed:";
        for (const auto& d : diags) os << " [step " << d.step << "] " << d.message << ";";
        throw ArgumentError(os.str());
    }

    RunResult result;
    PureState state = initial ? *initial : PureState();
    // Weight ledger: branch + deficit + discarded == 1 throughout.
    double deficit = std::min(1.0, initial ? initial->norm_deficit() : 0.0);
    double branch = 1.0 - deficit;
    double discarded = 0.0;

    const auto absorb_prune = [&](PureState& s) {
        if (options.prune_eps <= 0.0) return;
        double removed = 0.0;
        const double before = s.intended_weight();
        s = prune(s, options.prune_eps, &removed);
        if (removed > 0.0 && before > 0.0) {
            const double frac = removed / before;
            deficit += branch * frac;
            branch *= 1.0 - frac;
        }
    };

    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        try {
            const CircuitStep& step = c.steps[i];
            if (const auto* s = std::get_if<AddFockStep>(&step)) {
                if (!s->labels.empty())
                    state = tensor(state, fock_state(s->occupations, s->cutoffs, s->labels));
            } else if (const auto* s = std::get_if<AddCoherentStep>(&step)) {
                int cutoff = s->cutoff;
                if (options.cutoff_override > 0) {
                    cutoff = options.cutoff_override;
                } else if (cutoff < 0) {
                    cutoff = coherent_cutoff(std::abs(s->alpha), options.tail_threshold) +
                             options.cutoff_extra;
                }
                PureState coh = coherent_state(s->alpha, cutoff, s->label);
                const double d = coh.norm_deficit();
                deficit += branch * d;
                branch *= 1.0 - d;
                state = tensor(state, coh);
            } else if (const auto* s = std::get_if<BeamSplitterStep>(&step)) {
                state = apply_beam_splitter(state, {s->t, s->port_a, s->port_b});
                absorb_prune(state);
            } else if (const auto* s = std::get_if<PhaseStep>(&step)) {
                state = apply_phase(state, {s->theta, s->port});
            } else if (const auto* s = std::get_if<MirrorStep>(&step)) {
                state = apply_mirror(state, {s->port});
            } else if (const auto* s = std::get_if<ConditionStep>(&step)) {
                ConditionResult cond = condition_on_count(state, s->port, s->count);
                result.trace.record(
                    "condition " + s->port + " == " + std::to_string(s->count), cond.probability);
                discarded += branch * (1.0 - cond.probability);
                branch *= cond.probability;
                state = std::move(cond.remaining);
            } else if (const auto* s = std::get_if<DropFactorizedStep>(&step)) {
                PureState factor;
                state = drop_factorized_mode(state, s->port, s->tol, &factor);
                result.trace.record("drop " + s->port + ": " + brief_state_string(factor), 1.0);
            }
        } catch (const Error& e) {
            rethrow_with_step(e, c.name, i);
        }
    }

    result.final_state = std::move(state);
    result.total_norm_deficit = deficit;
    result.discarded_weight = discarded;
    result.branch_weight = branch;
    return result;
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    out += '"';
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_int_list(const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out + "]";
}

std::string fmt_label_list(const std::vector<std::string>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += quote(v[i]);
    }
    return out + "]";
}

}  // namespace

std::string to_text(const Circuit& c) {
    std::ostringstream os;
    os << "circuit " << quote(c.name) << " {\n";
    for (const CircuitStep& step : c.steps) {
        os << "  ";
        if (const auto* s = std::get_if<AddFockStep>(&step)) {
            os << "add_fock labels=" << fmt_label_list(s->labels)
               << " occupations=" << fmt_int_list(s->occupations)
               << " cutoffs=" << fmt_int_list(s->cutoffs);
        } else if (const auto* s = std::get_if<AddCoherentStep>(&step)) {
            os << "add_coherent label=" << quote(s->label)
               << " alpha_re=" << fmt_double(s->alpha.real())
               << " alpha_im=" << fmt_double(s->alpha.imag()) << " cutoff="
               << (s->cutoff < 0 ? std::string("auto") : std::to_string(s->cutoff));
        } else if (const auto* s = std::get_if<BeamSplitterStep>(&step)) {
            os << "beam_splitter port_a=" << quote(s->port_a) << " port_b=" << quote(s->port_b)
               << " t=" << fmt_double(s->t);
        } else if (const auto* s = std::get_if<PhaseStep>(&step)) {
            os << "phase port=" << quote(s->port) << " theta=" << fmt_double(s->theta);
        } else if (const auto* s = std::get_if<MirrorStep>(&step)) {
            os << "mirror port=" << quote(s->port);
        } else if (const auto* s = std::get_if<ConditionStep>(&step)) {
            os << "condition port=" << quote(s->port) << " count=" << std::to_string(s->count);
        } else if (const auto* s = std::get_if<DropFactorizedStep>(&step)) {
            os << "drop_factorized port=" << quote(s->port) << " tol=" << fmt_double(s->tol);
        }
        os << "\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size()) {
            if (std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            } else if (text[pos] == '#') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        if (pos >= text.size()) throw ArgumentError("circuit text: unexpected end of input");
        return text[pos];
    }

    void expect(char ch) {
        if (peek() != ch)
            throw ArgumentError(std::string("circuit text: expected '") + ch + "' near offset " +
                                std::to_string(pos));
        ++pos;
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (start == pos) throw ArgumentError("circuit text: expected a word near offset " +
                                              std::to_string(pos));
        return text.substr(start, pos - start);
    }

    std::string quoted() {
        expect('"');
        std::string out;
        while (pos < text.size() && text[pos] != '"') {
            if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
            out += text[pos++];
        }
        if (pos >= text.size()) throw ArgumentError("circuit text: unterminated string");
        ++pos;
        return out;
    }

    double number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                                     std::strchr("+-.eE", text[pos]) != nullptr))
            ++pos;
        if (start == pos)
            throw ArgumentError("circuit text: expected a number near offset " +
                                std::to_string(pos));
        try {
            return std::stod(text.substr(start, pos - start));
        } catch (const std::exception&) {
            throw ArgumentError("circuit text: bad number near offset " + std::to_string(start));
        }
    }

    std::vector<std::string> label_list() {
        expect('[');
        std::vector<std::string> out;
        if (peek() != ']') {
            out.push_back(quoted());
            while (peek() == ',') {
                ++pos;
                out.push_back(quoted());
            }
        }
        expect(']');
        return out;
    }

    std::vector<int> int_list() {
        expect('[');
        std::vector<int> out;
        if (peek() != ']') {
            out.push_back(static_cast<int>(number()));
            while (peek() == ',') {
                ++pos;
                out.push_back(static_cast<int>(number()));
            }
        }
        expect(']');
        return out;
    }

    void expect_key(const std::string& key) {
        const std::string w = word();
        if (w != key)
            throw ArgumentError("circuit text: expected key '" + key + "', got '" + w + "'");
        expect('=');
    }
};

}  // namespace

Circuit parse_circuit(const std::string& text) {
    Parser p(text);
    if (p.word() != "circuit") throw ArgumentError("circuit text: must start with 'circuit'");
    Circuit c;
    c.name = p.quoted();
    p.expect('{');
    while (p.peek() != '}') {
        const std::string kind = p.word();
        if (kind == "add_fock") {
            AddFockStep s;
            p.expect_key("labels");
            s.labels = p.label_list();
            p.expect_key("occupations");
            s.occupations = p.int_list();
            p.expect_key("cutoffs");
            s.cutoffs = p.int_list();
            c.steps.emplace_back(std::move(s));
        } else if (kind == "add_coherent") {
            AddCoherentStep s;
            p.expect_key("label");
            s.label = p.quoted();
            p.expect_key("alpha_re");
            const double re = p.number();
            p.expect_key("alpha_im");
            const double im = p.number();
            s.alpha = Complex{re, im};
            p.expect_key("cutoff");
            if (p.peek() == 'a') {
                if (p.word() != "auto") throw ArgumentError("circuit text: bad cutoff value");
                s.cutoff = -1;
            } else {
                s.cutoff = static_cast<int>(p.number());
            }
            c.steps.emplace_back(std::move(s));
        } else if (kind == "beam_splitter") {
            BeamSplitterStep s;
            p.expect_key("port_a");
            s.port_a = p.quoted();
            p.expect_key("port_b");
            s.port_b = p.quoted();
            p.expect_key("t");
            s.t = p.number();
            c.steps.emplace_back(std::move(s));
        } else if (kind == "phase") {
            PhaseStep s;
            p.expect_key("port");
            s.port = p.quoted();
            p.expect_key("theta");
            s.theta = p.number();
            c.steps.emplace_back(std::move(s));
        } else if (kind == "mirror") {
            MirrorStep s;
            p.expect_key("port");
            s.port = p.quoted();
            c.steps.emplace_back(std::move(s));
        } else if (kind == "condition") {
            ConditionStep s;
            p.expect_key("port");
            s.port = p.quoted();
            p.expect_key("count");
            s.count = static_cast<int>(p.number());
            c.steps.emplace_back(std::move(s));
        } else if (kind == "drop_factorized") {
            DropFactorizedStep s;
            p.expect_key("port");
            s.port = p.quoted();
            p.expect_key("tol");
            s.tol = p.number();
            c.steps.emplace_back(std::move(s));
        } else {
            throw ArgumentError("circuit text: unknown step kind '" + kind + "'");
        }
    }
    p.expect('}');
    if (!p.at_end()) throw ArgumentError("circuit text: trailing content after '}'");
    return c;
}

}  // namespace hardysim
