#include "qrg/groupspec.hpp"

#include <cctype>

#include "qrg/errors.hpp"
#include "qrg/gf.hpp"

namespace qrg {
namespace {

[[noreturn]] void spec_error(std::size_t pos, const std::string& what) {
    throw InputError("group spec error at position " + std::to_string(pos) + ": " + what);
}

struct SpecParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit SpecParser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            spec_error(pos, std::string("expected '") + c + "'");
        ++pos;
    }
    std::uint64_t parse_uint(const char* what) {
        skip_ws();
        const std::size_t start = pos;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            spec_error(start, std::string("expected ") + what);
        std::uint64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
            if (v > 1'000'000'000'000ULL) spec_error(start, "parameter too large");
            ++pos;
        }
        return v;
    }
    std::string parse_name() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) spec_error(start, "expected a family name");
        return text.substr(start, pos - start);
    }
    void end() {
        skip_ws();
        if (pos != text.size()) spec_error(pos, "trailing input");
    }
};

void check_prime_power(std::uint64_t q, std::size_t pos) {
    if (q < 2) spec_error(pos, std::to_string(q) + " is not a prime power");
    try {
        prime_power_split(q);
    } catch (const InputError&) {
        spec_error(pos, std::to_string(q) + " is not a prime power");
    }
}

} // namespace

GroupSpec parse_group_spec(const std::string& text) {
    SpecParser p(text);
    p.skip_ws();
    if (text.compare(p.pos, 6, "table:") == 0) {
        GroupSpec s;
        s.kind = GroupSpec::Kind::Table;
        s.path = text.substr(p.pos + 6);
        // Trim surrounding whitespace from the path but keep interior spaces.
        while (!s.path.empty() && std::isspace(static_cast<unsigned char>(s.path.back())))
            s.path.pop_back();
        std::size_t lead = 0;
        while (lead < s.path.size() && std::isspace(static_cast<unsigned char>(s.path[lead])))
            ++lead;
        s.path.erase(0, lead);
        if (s.path.empty()) spec_error(p.pos + 6, "expected a file path after 'table:'");
        return s;
    }
    const std::size_t name_pos = p.pos;
    const std::string name = p.parse_name();
    GroupSpec s;
    if (name == "PSL" || name == "SL" || name == "SU" || name == "PSU") {
        s.kind = GroupSpec::Kind::Classical;
        s.fam = name == "PSL"  ? MatFamily::PSL
                : name == "SL" ? MatFamily::SL
                : name == "SU" ? MatFamily::SU
                               : MatFamily::PSU;
        p.expect('(');
        const std::size_t dpos = p.pos;
        const std::uint64_t d = p.parse_uint("the dimension d");
        if (d < 2 || d > 64) spec_error(dpos, "dimension must be between 2 and 64");
        p.expect(',');
        const std::size_t qpos = p.pos;
        s.q = p.parse_uint("the field size q");
        p.expect(')');
        p.end();
        check_prime_power(s.q, qpos);
        s.d = static_cast<int>(d);
        return s;
    }
    GroupSpec::Kind kind;
    if (name == "Alt")
        kind = GroupSpec::Kind::Alt;
    else if (name == "Sym")
        kind = GroupSpec::Kind::Sym;
    else if (name == "C")
        kind = GroupSpec::Kind::Cyclic;
    else if (name == "D")
        kind = GroupSpec::Kind::Dihedral;
    else
        spec_error(name_pos, "unknown family '" + name +
                                 "' (expected PSL, SL, SU, PSU, Alt, Sym, C, D or table:<path>)");
    s.kind = kind;
    p.expect('(');
    const std::size_t mpos = p.pos;
    s.m = p.parse_uint("the parameter m");
    if (s.m == 0) spec_error(mpos, "parameter must be positive");
    p.expect(')');
    p.end();
    return s;
}

std::string print_group_spec(const GroupSpec& spec) {
    switch (spec.kind) {
    case GroupSpec::Kind::Classical: {
        const char* fam = spec.fam == MatFamily::PSL  ? "PSL"
                          : spec.fam == MatFamily::SL ? "SL"
                          : spec.fam == MatFamily::SU ? "SU"
                                                      : "PSU";
        return std::string(fam) + "(" + std::to_string(spec.d) + "," +
               std::to_string(spec.q) + ")";
    }
    case GroupSpec::Kind::Alt:
        return "Alt(" + std::to_string(spec.m) + ")";
    case GroupSpec::Kind::Sym:
        return "Sym(" + std::to_string(spec.m) + ")";
    case GroupSpec::Kind::Cyclic:
        return "C(" + std::to_string(spec.m) + ")";
    case GroupSpec::Kind::Dihedral:
        return "D(" + std::to_string(spec.m) + ")";
    case GroupSpec::Kind::Table:
        return "table:" + spec.path;
    }
    throw InputError("unreachable group spec kind");
}

GroupPtr build_group(const GroupSpec& spec, const GroupOptions& opts) {
    switch (spec.kind) {
    case GroupSpec::Kind::Classical:
        return make_classical(spec.fam, spec.d, spec.q, opts);
    case GroupSpec::Kind::Alt:
        if (spec.m > 20) throw CapExceeded("Alt parameter too large to enumerate");
        return make_alternating(static_cast<std::uint32_t>(spec.m), opts);
    case GroupSpec::Kind::Sym:
        if (spec.m > 20) throw CapExceeded("Sym parameter too large to enumerate");
        return make_symmetric(static_cast<std::uint32_t>(spec.m), opts);
    case GroupSpec::Kind::Cyclic:
        return make_cyclic(spec.m, opts);
    case GroupSpec::Kind::Dihedral:
        return make_dihedral(spec.m, opts);
    case GroupSpec::Kind::Table:
        return load_cayley_table(spec.path, opts);
    }
    throw InputError("unreachable group spec kind");
}

} // namespace qrg
