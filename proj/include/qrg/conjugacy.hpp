#pragma once

#include <cstdint>
#include <vector>

#include "qrg/group.hpp"

namespace qrg {

// Partition of the element set into conjugacy classes with a deterministic
// ordering: by element order, then class size, then least member index.
// Class 0 is always the identity class.
struct ConjClasses {
    std::vector<Elem> rep;                  // least member of each class
    std::vector<std::uint64_t> size;        // class sizes
    std::vector<std::uint64_t> elem_order;  // order of the class elements
    std::vector<std::uint32_t> of;          // element index -> class index
    std::vector<std::uint32_t> inverse_class; // class containing the inverses
    std::vector<std::vector<Elem>> members; // ascending element lists

    std::size_t count() const { return rep.size(); }
};

ConjClasses conjugacy_classes(const FiniteGroup& G);

} // namespace qrg
