#include "sparsecard/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

namespace sparsecard {

namespace {

struct Cursor {
    const std::string& text;
    std::size_t line;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw validation_error("line " + std::to_string(line) + ", column " +
                               std::to_string(pos + 1) + ": " + why);
    }
    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected a name");
        return text.substr(start, pos - start);
    }
    double number() {
        skip_ws();
        std::size_t consumed = 0;
        double v;
        try {
            v = std::stod(text.substr(pos), &consumed);
        } catch (const std::exception&) {
            fail("expected a number");
        }
        pos += consumed;
        return v;
    }
    std::int64_t integer() {
        skip_ws();
        std::size_t start = pos;
        double v = number();
        auto r = static_cast<std::int64_t>(v);
        if (static_cast<double>(r) != v) {
            pos = start;
            fail("expected an integer");
        }
        return r;
    }
    std::vector<double> number_list_in_parens() {
        expect('(');
        std::vector<double> vals;
        vals.push_back(number());
        skip_ws();
        while (peek() == ',') {
            ++pos;
            vals.push_back(number());
            skip_ws();
        }
        expect(')');
        return vals;
    }
};

PenaltySpec parse_penalty(Cursor& cur) {
    std::string name = cur.word();
    if (name == "clique") return CliquePenalty{};
    if (name == "sqrt") return SqrtPenalty{};
    if (name == "dlin") {
        cur.skip_ws();
        cur.expect('(');
        double d = cur.number();
        cur.skip_ws();
        cur.expect(')');
        if (!(d > 0.0)) cur.fail("dlin delta must be > 0");
        return DeltaLinear{d};
    }
    if (name == "pow") {
        cur.skip_ws();
        cur.expect('(');
        double p = cur.number();
        cur.skip_ws();
        cur.expect(')');
        if (!(p > 0.0) || !(p <= 1.0)) cur.fail("pow exponent must lie in (0,1]");
        return PowPenalty{p};
    }
    if (name == "vals") {
        cur.skip_ws();
        return ExplicitAsym{cur.number_list_in_parens()};
    }
    if (name == "symvals") {
        cur.skip_ws();
        return ExplicitSym{cur.number_list_in_parens()};
    }
    cur.fail("unknown penalty spec '" + name + "'");
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

PenaltySpec parse_penalty_spec(const std::string& text) {
    Cursor cur{text, 1};
    PenaltySpec p = parse_penalty(cur);
    if (!cur.done()) cur.fail("trailing characters after penalty spec");
    return p;
}

std::string format_penalty_spec(const PenaltySpec& p) {
    return std::visit(
        [](const auto& spec) -> std::string {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, DeltaLinear>)
                return "dlin(" + format_double(spec.delta) + ")";
            else if constexpr (std::is_same_v<T, CliquePenalty>)
                return "clique";
            else if constexpr (std::is_same_v<T, SqrtPenalty>)
                return "sqrt";
            else if constexpr (std::is_same_v<T, PowPenalty>)
                return "pow(" + format_double(spec.p) + ")";
            else {
                constexpr bool asym = std::is_same_v<T, ExplicitAsym>;
                std::string out = asym ? "vals(" : "symvals(";
                for (std::size_t i = 0; i < spec.values.size(); ++i) {
                    if (i) out += ",";
                    out += format_double(spec.values[i]);
                }
                return out + ")";
            }
        },
        p);
}

DSFMInstance parse_instance(std::istream& in) {
    DSFMInstance inst;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::int64_t declared_r = 0;
    while (std::getline(in, line)) {
        ++lineno;
        Cursor cur{line, lineno};
        if (cur.done() || cur.peek() == '#') continue;
        if (!have_header) {
            inst.n = cur.integer();
            declared_r = cur.integer();
            if (!cur.done()) cur.fail("header must be exactly 'n R'");
            if (inst.n < 1) cur.fail("n must be >= 1");
            if (declared_r < 0) cur.fail("R must be >= 0");
            have_header = true;
            continue;
        }
        Component comp;
        comp.penalty = parse_penalty(cur);
        std::int64_t k = cur.integer();
        if (k < 1) cur.fail("support size must be >= 1");
        comp.support.reserve(static_cast<std::size_t>(k));
        for (std::int64_t i = 0; i < k; ++i) {
            std::int64_t v = cur.integer();
            if (v < 1 || v > inst.n) cur.fail("node id " + std::to_string(v) + " outside [1,n]");
            comp.support.push_back(v - 1);
        }
        if (!cur.done()) cur.fail("trailing characters after component");
        std::sort(comp.support.begin(), comp.support.end());
        if (std::adjacent_find(comp.support.begin(), comp.support.end()) != comp.support.end())
            cur.fail("duplicate node id in support");
        inst.components.push_back(std::move(comp));
    }
    if (!have_header) throw validation_error("instance file has no 'n R' header");
    if (static_cast<std::int64_t>(inst.components.size()) != declared_r)
        throw validation_error("instance declares R=" + std::to_string(declared_r) + " but has " +
                               std::to_string(inst.components.size()) + " component lines");
    inst.validate(/*require_nonnegative=*/false);
    return inst;
}

void write_instance(const DSFMInstance& inst, std::ostream& out) {
    out << inst.n << " " << inst.components.size() << "\n";
    for (const Component& comp : inst.components) {
        out << format_penalty_spec(comp.penalty) << " " << comp.support.size();
        for (std::int64_t v : comp.support) out << " " << (v + 1);
        out << "\n";
    }
}

}  // namespace sparsecard
