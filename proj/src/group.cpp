#include "qrg/group.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

namespace qrg {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t bytes) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

std::uint64_t FiniteGroup::hash_perm_key(const std::uint32_t* img) const {
    return fnv1a(img, sizeof(std::uint32_t) * degree_);
}

std::uint64_t FiniteGroup::hash_mat_key(const GFElem* m) const {
    return fnv1a(m, sizeof(GFElem) * static_cast<std::size_t>(dim_) * dim_);
}

Elem FiniteGroup::lookup_perm(const std::uint32_t* img) const {
    auto it = perm_index_.find(hash_perm_key(img));
    if (it != perm_index_.end())
        for (Elem e : it->second)
            if (std::memcmp(&perm_flat_[static_cast<std::size_t>(e) * degree_], img,
                            sizeof(std::uint32_t) * degree_) == 0)
                return e;
    throw InputError("permutation is not an element of " + name_);
}

Elem FiniteGroup::lookup_mat(const GFElem* m) const {
    std::size_t sz = static_cast<std::size_t>(dim_) * dim_;
    auto it = mat_index_.find(hash_mat_key(m));
    if (it != mat_index_.end())
        for (Elem e : it->second)
            if (std::memcmp(&mat_flat_[static_cast<std::size_t>(e) * sz], m,
                            sizeof(GFElem) * sz) == 0)
                return e;
    throw InputError("matrix is not an element of " + name_);
}

void FiniteGroup::require_enumerated() const {
    if (!enumerated_)
        throw CapExceeded(name_ + " was constructed above the enumeration cap; "
                          "only matrix-level operations are available");
}

Elem FiniteGroup::mul_raw(Elem a, Elem b) const {
    switch (backend_) {
        case Backend::Table:
            return table_[static_cast<std::size_t>(a) * order_ + b];
        case Backend::Permutation: {
            const std::uint32_t* pa = &perm_flat_[static_cast<std::size_t>(a) * degree_];
            const std::uint32_t* pb = &perm_flat_[static_cast<std::size_t>(b) * degree_];
            std::vector<std::uint32_t> c(degree_);
            for (std::uint32_t i = 0; i < degree_; ++i) c[i] = pb[pa[i]];
            return lookup_perm(c.data());
        }
        case Backend::Matrix: {
            GFMat c = canonical(mat_mul(*field_, matrix(a), matrix(b)));
            return lookup_mat(c.a.data());
        }
    }
    throw InputError("unknown backend");
}

Elem FiniteGroup::mul(Elem a, Elem b) const {
    require_enumerated();
    if (a >= order_ || b >= order_)
        throw InputError("element index out of range for " + name_);
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
    return mul_raw(a, b);
}

Elem FiniteGroup::inv(Elem a) const {
    require_enumerated();
    if (a >= order_) throw InputError("element index out of range for " + name_);
    return inv_[a];
}

Elem FiniteGroup::power(Elem g, std::int64_t e) const {
    require_enumerated();
    if (e < 0) {
        g = inv(g);
        e = -e;
    }
    Elem r = 0, base = g;
    std::uint64_t k = static_cast<std::uint64_t>(e);
    while (k) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

std::uint64_t FiniteGroup::element_order(Elem g) const {
    require_enumerated();
    std::uint64_t n = 1;
    Elem x = g;
    while (x != 0) {
        x = mul(x, g);
        ++n;
    }
    return n;
}

Elem FiniteGroup::random_element(Rng& rng) const {
    require_enumerated();
    return static_cast<Elem>(rng.below(order_));
}

Perm FiniteGroup::perm(Elem g) const {
    require_enumerated();
    if (backend_ != Backend::Permutation)
        throw InputError(name_ + " has no permutation backend");
    Perm out;
    out.p.assign(perm_flat_.begin() + static_cast<std::size_t>(g) * degree_,
                 perm_flat_.begin() + static_cast<std::size_t>(g + 1) * degree_);
    return out;
}

GFMat FiniteGroup::matrix(Elem g) const {
    require_enumerated();
    if (backend_ != Backend::Matrix) throw InputError(name_ + " has no matrix backend");
    GFMat m(dim_);
    std::size_t sz = static_cast<std::size_t>(dim_) * dim_;
    std::copy_n(mat_flat_.begin() + static_cast<std::size_t>(g) * sz, sz, m.a.begin());
    return m;
}

GFMat FiniteGroup::canonical(GFMat m) const {
    if (scalars_.size() <= 1) return m;
    GFMat best = m;
    for (GFElem s : scalars_) {
        if (s == 1) continue;
        GFMat cand = mat_scalar_mul(*field_, s, m);
        if (cand.a < best.a) best = cand;
    }
    return best;
}

GFMat FiniteGroup::random_matrix(Rng& rng, int walk_steps) const {
    if (backend_ != Backend::Matrix) throw InputError(name_ + " has no matrix backend");
    std::vector<GFMat> slate = gen_mats_;
    if (slate.empty()) return canonical(mat_identity(*field_, dim_));
    while (slate.size() < 8) slate.push_back(slate[slate.size() % gen_mats_.size()]);
    for (int step = 0; step < walk_steps; ++step) {
        std::size_t i = rng.below(slate.size());
        std::size_t j = rng.below(slate.size() - 1);
        if (j >= i) ++j;
        GFMat other = slate[j];
        if (rng.next() & 1) other = mat_inverse(*field_, other);
        slate[i] = (rng.next() & 1) ? mat_mul(*field_, slate[i], other)
                                    : mat_mul(*field_, other, slate[i]);
    }
    return canonical(slate[rng.below(slate.size())]);
}

void FiniteGroup::enumerate_perm(const std::vector<Perm>& gens, const GroupOptions& opts) {
    perm_flat_.clear();
    perm_index_.clear();
    perm_flat_.reserve(static_cast<std::size_t>(degree_) * 64);
    Perm id(degree_);
    perm_flat_.insert(perm_flat_.end(), id.p.begin(), id.p.end());
    perm_index_[hash_perm_key(id.p.data())].push_back(0);
    std::uint64_t count = 1;

    auto known = [&](const std::uint32_t* img) -> bool {
        auto it = perm_index_.find(hash_perm_key(img));
        if (it == perm_index_.end()) return false;
        for (Elem e : it->second)
            if (std::memcmp(&perm_flat_[static_cast<std::size_t>(e) * degree_], img,
                            sizeof(std::uint32_t) * degree_) == 0)
                return true;
        return false;
    };

    std::vector<std::uint32_t> scratch(degree_);
    for (std::uint64_t head = 0; head < count; ++head) {
        for (const auto& s : gens) {
            const std::uint32_t* pg = &perm_flat_[static_cast<std::size_t>(head) * degree_];
            for (std::uint32_t i = 0; i < degree_; ++i) scratch[i] = s.p[pg[i]];
            if (!known(scratch.data())) {
                if (count >= opts.cap_enum)
                    throw CapExceeded("enumeration of " + name_ + " exceeds the cap of " +
                                      std::to_string(opts.cap_enum) + " elements");
                perm_flat_.insert(perm_flat_.end(), scratch.begin(), scratch.end());
                perm_index_[hash_perm_key(scratch.data())].push_back(
                    static_cast<Elem>(count));
                ++count;
            }
        }
    }
    order_ = count;
}

void FiniteGroup::enumerate_matrix(const std::vector<GFMat>& gens, const GroupOptions& opts) {
    mat_flat_.clear();
    mat_index_.clear();
    std::size_t sz = static_cast<std::size_t>(dim_) * dim_;
    GFMat id = canonical(mat_identity(*field_, dim_));
    mat_flat_.insert(mat_flat_.end(), id.a.begin(), id.a.end());
    mat_index_[hash_mat_key(id.a.data())].push_back(0);
    std::uint64_t count = 1;

    auto known = [&](const GFElem* m) -> bool {
        auto it = mat_index_.find(hash_mat_key(m));
        if (it == mat_index_.end()) return false;
        for (Elem e : it->second)
            if (std::memcmp(&mat_flat_[static_cast<std::size_t>(e) * sz], m,
                            sizeof(GFElem) * sz) == 0)
                return true;
        return false;
    };

    for (std::uint64_t head = 0; head < count; ++head) {
        for (const auto& s : gens) {
            GFMat g(dim_);
            std::copy_n(mat_flat_.begin() + static_cast<std::size_t>(head) * sz, sz,
                        g.a.begin());
            GFMat prod = canonical(mat_mul(*field_, g, s));
            if (!known(prod.a.data())) {
                if (count >= opts.cap_enum)
                    throw CapExceeded("enumeration of " + name_ + " exceeds the cap of " +
                                      std::to_string(opts.cap_enum) + " elements");
                mat_flat_.insert(mat_flat_.end(), prod.a.begin(), prod.a.end());
                mat_index_[hash_mat_key(prod.a.data())].push_back(static_cast<Elem>(count));
                ++count;
            }
        }
    }
    order_ = count;
}

void FiniteGroup::build_table_and_inverses(const GroupOptions& opts) {
    inv_.assign(order_, 0);
    if (backend_ == Backend::Permutation) {
        std::vector<std::uint32_t> scratch(degree_);
        for (Elem g = 0; g < order_; ++g) {
            const std::uint32_t* pg = &perm_flat_[static_cast<std::size_t>(g) * degree_];
            for (std::uint32_t i = 0; i < degree_; ++i) scratch[pg[i]] = i;
            inv_[g] = lookup_perm(scratch.data());
        }
    } else if (backend_ == Backend::Matrix) {
        for (Elem g = 0; g < order_; ++g) {
            GFMat m = canonical(mat_inverse(*field_, matrix(g)));
            inv_[g] = lookup_mat(m.a.data());
        }
    }
    if (order_ <= opts.cap_table && backend_ != Backend::Table) {
        table_.resize(static_cast<std::size_t>(order_) * order_);
        for (Elem a = 0; a < order_; ++a)
            for (Elem b = 0; b < order_; ++b)
                table_[static_cast<std::size_t>(a) * order_ + b] = mul_raw(a, b);
    }
}

GroupPtr FiniteGroup::from_table(std::vector<Elem> flat, std::uint64_t n,
                                 const GroupOptions& opts, std::string name) {
    if (n == 0) throw InputError("empty multiplication table");
    if (flat.size() != n * n) throw InputError("multiplication table must hold n*n entries");
    if (n > opts.cap_table)
        throw CapExceeded("table backend supports at most " + std::to_string(opts.cap_table) +
                          " elements, got " + std::to_string(n));
    for (Elem v : flat)
        if (v >= n) throw InputError("table entry out of range");
    for (Elem j = 0; j < n; ++j) {
        if (flat[j] != j) throw InputError("row 0 of the table must be the identity row");
        if (flat[static_cast<std::size_t>(j) * n] != j)
            throw InputError("column 0 of the table must be the identity column");
    }
    // Latin-square check: every row and column is a permutation.
    std::vector<bool> seen(n);
    for (Elem i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), false);
        for (Elem j = 0; j < n; ++j) {
            Elem v = flat[static_cast<std::size_t>(i) * n + j];
            if (seen[v]) throw InputError("row " + std::to_string(i) + " repeats an element");
            seen[v] = true;
        }
        std::fill(seen.begin(), seen.end(), false);
        for (Elem j = 0; j < n; ++j) {
            Elem v = flat[static_cast<std::size_t>(j) * n + i];
            if (seen[v])
                throw InputError("column " + std::to_string(i) + " repeats an element");
            seen[v] = true;
        }
    }
    auto at = [&](Elem a, Elem b) { return flat[static_cast<std::size_t>(a) * n + b]; };
    // Associativity: exhaustive when affordable, else a fixed random sample.
    if (n <= 200) {
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                for (Elem c = 0; c < n; ++c)
                    if (at(at(a, b), c) != at(a, at(b, c)))
                        throw InputError("table is not associative at (" + std::to_string(a) +
                                         "," + std::to_string(b) + "," + std::to_string(c) +
                                         ")");
    } else {
        Rng rng(0x5eedULL);
        for (int t = 0; t < 10000; ++t) {
            Elem a = static_cast<Elem>(rng.below(n));
            Elem b = static_cast<Elem>(rng.below(n));
            Elem c = static_cast<Elem>(rng.below(n));
            if (at(at(a, b), c) != at(a, at(b, c)))
                throw InputError("table is not associative at (" + std::to_string(a) + "," +
                                 std::to_string(b) + "," + std::to_string(c) + ")");
        }
    }

    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->backend_ = Backend::Table;
    g->order_ = n;
    g->name_ = std::move(name);
    g->table_ = std::move(flat);
    g->inv_.assign(n, 0);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            if (g->table_[static_cast<std::size_t>(a) * n + b] == 0) {
                g->inv_[a] = b;
                break;
            }
    // Greedy generating set: smallest indices whose closure grows.
    Bitset closed(n);
    closed.set(0);
    std::vector<Elem> gens;
    for (Elem i = 1; i < n; ++i) {
        if (closed.test(i)) continue;
        gens.push_back(i);
        closed = subgroup_closure(*g, gens);
    }
    g->gen_idx_ = std::move(gens);
    return g;
}

GroupPtr FiniteGroup::from_perm_generators(std::vector<Perm> gens, std::uint32_t degree,
                                           const GroupOptions& opts, std::string name,
                                           std::uint64_t expected_order) {
    for (const auto& p : gens)
        if (p.degree() != degree) throw InputError("generator degree mismatch");
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->backend_ = Backend::Permutation;
    g->degree_ = degree;
    g->name_ = std::move(name);
    if (expected_order > opts.cap_enum)
        throw CapExceeded("order of " + g->name_ + " (" + std::to_string(expected_order) +
                          ") exceeds the enumeration cap of " + std::to_string(opts.cap_enum));
    g->enumerate_perm(gens, opts);
    g->chain_ = StabChain(gens);
    if (g->chain_.order() != g->order_)
        throw TheoremViolation("stabilizer-chain order " + std::to_string(g->chain_.order()) +
                               " disagrees with enumeration " + std::to_string(g->order_) +
                               " for " + g->name_);
    if (expected_order != 0 && expected_order != g->order_)
        throw TheoremViolation("constructed order " + std::to_string(g->order_) +
                               " disagrees with the expected " +
                               std::to_string(expected_order) + " for " + g->name_);
    g->build_table_and_inverses(opts);
    for (const auto& p : gens) {
        if (p.is_identity()) continue;
        Elem e = g->lookup_perm(p.p.data());
        if (std::find(g->gen_idx_.begin(), g->gen_idx_.end(), e) == g->gen_idx_.end())
            g->gen_idx_.push_back(e);
    }
    return g;
}

GroupPtr FiniteGroup::from_matrix_generators(GFqPtr field, int dim, std::vector<GFMat> gens,
                                             std::vector<GFElem> projective_scalars,
                                             std::uint64_t expected_order,
                                             const GroupOptions& opts, std::string name,
                                             std::optional<LieType> lie,
                                             std::uint64_t unitary_q) {
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->backend_ = Backend::Matrix;
    g->field_ = std::move(field);
    g->dim_ = dim;
    g->name_ = std::move(name);
    g->lie_ = lie;
    g->unitary_q_ = unitary_q;
    g->scalars_ = std::move(projective_scalars);
    if (g->scalars_.empty()) g->scalars_ = {1};

    for (auto& m : gens) m = g->canonical(m);

    if (expected_order > opts.cap_enum) {
        g->enumerated_ = false;
        g->order_ = expected_order;
        g->gen_mats_ = std::move(gens);
        return g;
    }
    g->enumerate_matrix(gens, opts);
    if (expected_order != 0 && expected_order != g->order_)
        throw TheoremViolation("constructed order " + std::to_string(g->order_) +
                               " disagrees with the expected " +
                               std::to_string(expected_order) + " for " + g->name_);
    g->build_table_and_inverses(opts);
    for (const auto& m : gens) {
        GFMat id = mat_identity(*g->field_, dim);
        if (g->canonical(id) == m) continue;
        Elem e = g->lookup_mat(m.a.data());
        if (e != 0 &&
            std::find(g->gen_idx_.begin(), g->gen_idx_.end(), e) == g->gen_idx_.end())
            g->gen_idx_.push_back(e);
    }
    g->gen_mats_ = std::move(gens);
    return g;
}

Bitset subgroup_closure(const FiniteGroup& G, const std::vector<Elem>& gens) {
    Bitset member(G.order());
    member.set(0);
    std::vector<Elem> work = {0};
    for (std::size_t head = 0; head < work.size(); ++head) {
        Elem g = work[head];
        for (Elem s : gens) {
            Elem h = G.mul(g, s);
            if (!member.test(h)) {
                member.set(h);
                work.push_back(h);
            }
        }
    }
    return member;
}

std::optional<Bitset> subgroup_closure_capped(const FiniteGroup& G,
                                              const std::vector<Elem>& gens,
                                              std::uint64_t watermark) {
    Bitset member(G.order());
    member.set(0);
    std::uint64_t count = 1;
    std::vector<Elem> work = {0};
    for (std::size_t head = 0; head < work.size(); ++head) {
        Elem g = work[head];
        for (Elem s : gens) {
            Elem h = G.mul(g, s);
            if (!member.test(h)) {
                member.set(h);
                work.push_back(h);
                if (++count > watermark) return std::nullopt;
            }
        }
    }
    return member;
}

Bitset commutator_subgroup(const FiniteGroup& G) {
    std::vector<Elem> gens;
    auto push_unique = [&](Elem e) {
        if (e != 0 && std::find(gens.begin(), gens.end(), e) == gens.end()) gens.push_back(e);
    };
    for (Elem a : G.generators())
        for (Elem b : G.generators())
            push_unique(G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b)));
    Bitset H = subgroup_closure(G, gens);
    // Close up to normality: conjugating the generating set by the group
    // generators is enough, iterated to a fixed point.
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Elem> current = gens;
        for (Elem s : G.generators())
            for (Elem h : current) {
                Elem c = G.mul(G.mul(s, h), G.inv(s));
                if (!H.test(c)) {
                    gens.push_back(c);
                    H = subgroup_closure(G, gens);
                    grew = true;
                }
            }
    }
    return H;
}

bool is_perfect(const FiniteGroup& G) { return commutator_subgroup(G).count() == G.order(); }

std::uint64_t group_exponent(const FiniteGroup& G) {
    // lcm over one representative per cyclic subgroup would do; orders repeat
    // so lcm over all elements is computed with gcd shortcuts.
    std::uint64_t e = 1;
    for (Elem g = 0; g < G.order(); ++g) {
        std::uint64_t o = G.element_order(g);
        e = std::lcm(e, o);
    }
    return e;
}

GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B, const GroupOptions& opts) {
    std::uint64_t n = A->order() * B->order();
    if (n > opts.cap_table)
        throw CapExceeded("direct product of order " + std::to_string(n) +
                          " exceeds the table backend cap");
    std::vector<Elem> flat(n * n);
    std::uint64_t nb = B->order();
    for (Elem a1 = 0; a1 < A->order(); ++a1)
        for (Elem b1 = 0; b1 < nb; ++b1)
            for (Elem a2 = 0; a2 < A->order(); ++a2)
                for (Elem b2 = 0; b2 < nb; ++b2) {
                    Elem x = static_cast<Elem>(a1 * nb + b1);
                    Elem y = static_cast<Elem>(a2 * nb + b2);
                    flat[static_cast<std::size_t>(x) * n + y] =
                        static_cast<Elem>(A->mul(a1, a2) * nb + B->mul(b1, b2));
                }
    return FiniteGroup::from_table(std::move(flat), n, opts,
                                   A->name() + "x" + B->name());
}

GroupPtr load_cayley_table(const std::string& path, const GroupOptions& opts) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open table file: " + path);
    std::uint64_t n = 0;
    if (!(in >> n) || n == 0) throw InputError("table file must start with the order");
    if (n > opts.cap_table)
        throw CapExceeded("table file declares order " + std::to_string(n) +
                          " beyond the table cap of " + std::to_string(opts.cap_table));
    std::vector<Elem> flat;
    flat.reserve(n * n);
    for (std::uint64_t i = 0; i < n * n; ++i) {
        std::uint64_t v;
        if (!(in >> v)) throw InputError("table file ended early: expected " +
                                         std::to_string(n * n) + " entries");
        if (v >= n) throw InputError("table entry " + std::to_string(v) + " out of range");
        flat.push_back(static_cast<Elem>(v));
    }
    return FiniteGroup::from_table(std::move(flat), n, opts, "table:" + path);
}

bool is_simple(const FiniteGroup& G) {
    if (G.order() == 1) return false;
    // The normal closure of any non-identity element must be everything.
    // One representative per conjugacy class suffices; classes are recomputed
    // here cheaply rather than pulling in the full class machinery.
    Bitset seen(G.order());
    for (Elem g = 1; g < G.order(); ++g) {
        if (seen.test(g)) continue;
        // conjugation orbit of g
        std::vector<Elem> orbit = {g};
        Bitset in_orbit(G.order());
        in_orbit.set(g);
        for (std::size_t head = 0; head < orbit.size(); ++head)
            for (Elem s : G.generators()) {
                Elem c = G.mul(G.mul(s, orbit[head]), G.inv(s));
                if (!in_orbit.test(c)) {
                    in_orbit.set(c);
                    orbit.push_back(c);
                }
            }
        for (Elem x : orbit) seen.set(x);
        // The subgroup generated by a full class is normal.
        if (subgroup_closure(G, orbit).count() != G.order()) return false;
    }
    return true;
}

} // namespace qrg
