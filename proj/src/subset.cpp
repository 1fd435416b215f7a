#include "qrg/subset.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "qrg/errors.hpp"
#include "qrg/rng.hpp"

namespace qrg {
namespace {

void require_subset_support(const FiniteGroup& G) {
    if (!G.enumerated())
        throw CapExceeded("subset operations need an enumerated group (order " +
                          std::to_string(G.order()) + " exceeds the enumeration cap)");
}

// Floyd's sampling: `size` distinct values from [0, universe), deterministic
// in the seed, O(size) memory.
std::vector<std::uint64_t> sample_distinct(std::uint64_t universe, std::uint64_t size,
                                           Rng& rng) {
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(size) * 2);
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(size));
    for (std::uint64_t j = universe - size; j < universe; ++j) {
        const std::uint64_t t = rng.below(j + 1);
        const std::uint64_t pick = chosen.count(t) ? j : t;
        chosen.insert(pick);
        out.push_back(pick);
    }
    return out;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    std::uint64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty())
        throw InputError("bad " + what + " '" + text + "' in subset spec");
    return value;
}

std::vector<Elem> parse_index_list(const FiniteGroup& G, const std::string& text) {
    std::vector<Elem> idx;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::uint64_t v = parse_u64(text.substr(pos, comma - pos), "element index");
        if (v >= G.order())
            throw InputError("element index " + std::to_string(v) +
                             " out of range for a group of order " + std::to_string(G.order()));
        idx.push_back(static_cast<Elem>(v));
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return idx;
}

} // namespace

Subset subset_from_indices(const FiniteGroup& G, const std::vector<Elem>& idx) {
    require_subset_support(G);
    Subset S(G.order());
    for (Elem g : idx) {
        if (g >= G.order())
            throw InputError("element index " + std::to_string(g) +
                             " out of range for a group of order " + std::to_string(G.order()));
        if (S.test(g))
            throw InputError("duplicate element index " + std::to_string(g) + " in subset");
        S.add(g);
    }
    return S;
}

Subset subset_random(const FiniteGroup& G, std::uint64_t size, std::uint64_t seed) {
    require_subset_support(G);
    if (size > G.order())
        throw InputError("subset size " + std::to_string(size) +
                         " exceeds the group order " + std::to_string(G.order()));
    Subset S(G.order());
    Rng rng(seed);
    for (std::uint64_t g : sample_distinct(G.order(), size, rng))
        S.add(static_cast<Elem>(g));
    return S;
}

Subset subset_random_symmetric(const FiniteGroup& G, std::uint64_t size, std::uint64_t seed) {
    require_subset_support(G);
    const std::uint64_t n = G.order();
    if (size > n)
        throw InputError("subset size " + std::to_string(size) +
                         " exceeds the group order " + std::to_string(n));
    // Partition the group into self-inverse elements and inverse pairs.
    std::vector<Elem> selfinv;
    std::vector<Elem> pair_lo; // the smaller index of each {g, g^-1} pair
    for (Elem g = 0; g < n; ++g) {
        const Elem h = G.inv(g);
        if (h == g)
            selfinv.push_back(g);
        else if (g < h)
            pair_lo.push_back(g);
    }
    // size = k + 2m with k self-inverse picks and m pairs; use the fewest
    // self-inverse elements that the pair supply allows.
    const std::uint64_t pairs_avail = pair_lo.size();
    std::uint64_t k = size % 2;
    if (size > k + 2 * pairs_avail) k = size - 2 * pairs_avail;
    if (k > selfinv.size())
        throw InputError("no inverse-closed subset of size " + std::to_string(size) +
                         " exists in this group");
    const std::uint64_t m = (size - k) / 2;
    Rng rng(seed);
    Subset S(n);
    for (std::uint64_t i : sample_distinct(selfinv.size(), k, rng))
        S.add(selfinv[static_cast<std::size_t>(i)]);
    for (std::uint64_t i : sample_distinct(pairs_avail, m, rng)) {
        const Elem g = pair_lo[static_cast<std::size_t>(i)];
        S.add(g);
        S.add(G.inv(g));
    }
    return S;
}

Subset subset_coset(const FiniteGroup& G, const std::vector<Elem>& gens, Elem rep) {
    require_subset_support(G);
    if (rep >= G.order())
        throw InputError("coset representative " + std::to_string(rep) +
                         " out of range for a group of order " + std::to_string(G.order()));
    for (Elem g : gens)
        if (g >= G.order())
            throw InputError("subgroup generator index " + std::to_string(g) +
                             " out of range for a group of order " + std::to_string(G.order()));
    const Bitset H = subgroup_closure(G, gens);
    Subset S(G.order());
    H.for_each([&](std::size_t h) { S.add(G.mul(static_cast<Elem>(h), rep)); });
    return S;
}

Subset parse_subset_spec(const FiniteGroup& G, const std::string& spec) {
    if (spec.empty()) throw InputError("empty subset spec");
    auto split3 = [&](const std::string& tail, const char* what)
        -> std::pair<std::string, std::string> {
        const std::size_t colon = tail.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= tail.size())
            throw InputError(std::string("subset spec '") + what +
                             ":' needs two ':'-separated arguments");
        return {tail.substr(0, colon), tail.substr(colon + 1)};
    };
    if (spec.rfind("random:", 0) == 0) {
        auto [a, b] = split3(spec.substr(7), "random");
        return subset_random(G, parse_u64(a, "size"), parse_u64(b, "seed"));
    }
    if (spec.rfind("randsym:", 0) == 0) {
        auto [a, b] = split3(spec.substr(8), "randsym");
        return subset_random_symmetric(G, parse_u64(a, "size"), parse_u64(b, "seed"));
    }
    if (spec.rfind("coset:", 0) == 0) {
        auto [a, b] = split3(spec.substr(6), "coset");
        const std::uint64_t rep = parse_u64(b, "coset representative");
        if (rep >= G.order())
            throw InputError("coset representative " + std::to_string(rep) +
                             " out of range for a group of order " + std::to_string(G.order()));
        return subset_coset(G, parse_index_list(G, a), static_cast<Elem>(rep));
    }
    return subset_from_indices(G, parse_index_list(G, spec));
}

bool subset_is_symmetric(const FiniteGroup& G, const Subset& S, Elem* witness) {
    bool ok = true;
    S.mask.for_each([&](std::size_t g) {
        if (!ok) return;
        if (!S.test(G.inv(static_cast<Elem>(g)))) {
            ok = false;
            if (witness) *witness = static_cast<Elem>(g);
        }
    });
    return ok;
}

} // namespace qrg
