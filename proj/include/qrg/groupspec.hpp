#pragma once

#include <string>

#include "qrg/families.hpp"
#include "qrg/group.hpp"

namespace qrg {

// Parsed textual group spec.  Grammar:
//   PSL(d,q) | SL(d,q) | SU(d,q) | PSU(d,q) | Alt(m) | Sym(m) | C(m) | D(m)
//   | table:<path>
// Whitespace around tokens is ignored; q must be a prime power.
struct GroupSpec {
    enum class Kind { Classical, Alt, Sym, Cyclic, Dihedral, Table };
    Kind kind = Kind::Cyclic;
    MatFamily fam = MatFamily::SL; // Classical only
    int d = 0;                     // Classical only
    std::uint64_t q = 0;           // Classical only
    std::uint64_t m = 0;           // Alt / Sym / C / D parameter
    std::string path;              // Table only
};

// Positioned syntax errors ("group spec error at position N: ...").
GroupSpec parse_group_spec(const std::string& text);

// Canonical form; parse(print(s)) == s.
std::string print_group_spec(const GroupSpec& spec);

GroupPtr build_group(const GroupSpec& spec, const GroupOptions& opts = {});

} // namespace qrg
