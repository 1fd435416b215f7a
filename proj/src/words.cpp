#include "qrg/words.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <thread>
#include <unordered_set>

#include "qrg/conjugacy.hpp"
#include "qrg/errors.hpp"
#include "qrg/matgf.hpp"
#include "qrg/rng.hpp"

namespace qrg {
namespace {

[[noreturn]] void syntax_error(std::size_t pos, const std::string& what) {
    throw InputError("word syntax error at position " + std::to_string(pos) + ": " + what);
}

void push_reduced(std::vector<WordTerm>& out, int letter, long long exponent) {
    if (exponent == 0) return;
    if (!out.empty() && out.back().letter == letter) {
        out.back().exponent += exponent;
        if (out.back().exponent == 0) out.pop_back();
        return;
    }
    out.push_back({letter, exponent});
}

void append_word(std::vector<WordTerm>& out, const std::vector<WordTerm>& w) {
    for (const auto& t : w) push_reduced(out, t.letter, t.exponent);
}

std::vector<WordTerm> inverse_word(const std::vector<WordTerm>& w) {
    std::vector<WordTerm> out;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        push_reduced(out, it->letter, -it->exponent);
    return out;
}

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    int max_letter = -1;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool at(char c) { return pos < text.size() && text[pos] == c; }

    long long parse_int() {
        const std::size_t start = pos;
        bool neg = false;
        if (at('-')) { neg = true; ++pos; }
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            syntax_error(start, "expected an integer exponent");
        long long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1'000'000) syntax_error(start, "exponent too large");
            ++pos;
        }
        return neg ? -v : v;
    }

    // sequence of factors until one of the stop characters (or end of text)
    std::vector<WordTerm> parse_sequence(const char* stops) {
        std::vector<WordTerm> out;
        bool any = false;
        while (true) {
            skip_ws();
            if (pos >= text.size() || std::strchr(stops, text[pos])) break;
            any = true;
            std::vector<WordTerm> atom;
            const char c = text[pos];
            if (c == '[') {
                ++pos;
                const std::vector<WordTerm> u = parse_sequence(",]");
                skip_ws();
                if (!at(',')) syntax_error(pos, "expected ',' inside commutator");
                ++pos;
                const std::vector<WordTerm> v = parse_sequence(",]");
                skip_ws();
                if (!at(']')) syntax_error(pos, "expected ']' closing commutator");
                ++pos;
                append_word(atom, inverse_word(u));
                append_word(atom, inverse_word(v));
                append_word(atom, u);
                append_word(atom, v);
            } else if (c == 'x' && pos + 1 < text.size() &&
                       std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
                const int digit = text[pos + 1] - '0';
                if (digit == 0) syntax_error(pos, "letters are x1..x9");
                max_letter = std::max(max_letter, digit - 1);
                atom.push_back({digit - 1, 1});
                pos += 2;
            } else if (c >= 'a' && c <= 'z') {
                max_letter = std::max(max_letter, c - 'a');
                atom.push_back({c - 'a', 1});
                ++pos;
            } else {
                syntax_error(pos, std::string("unexpected character '") + c + "'");
            }
            long long e = 1;
            skip_ws();
            if (at('^')) {
                ++pos;
                skip_ws();
                e = parse_int();
            }
            if (atom.size() == 1 && !atom.empty()) {
                push_reduced(out, atom[0].letter, atom[0].exponent * e);
            } else {
                const std::vector<WordTerm> base = e < 0 ? inverse_word(atom) : atom;
                for (long long i = 0; i < std::llabs(e); ++i) append_word(out, base);
            }
        }
        if (!any) syntax_error(pos, "empty word factor");
        return out;
    }
};

} // namespace

Word parse_word(const std::string& text) {
    Parser p(text);
    Word w;
    w.terms = p.parse_sequence("");
    p.skip_ws();
    if (p.pos != text.size()) syntax_error(p.pos, "trailing input");
    w.arity = p.max_letter + 1;
    return w;
}

std::string word_to_string(const Word& w) {
    if (w.trivial()) return "1";
    std::string out;
    for (const auto& t : w.terms) {
        if (!out.empty()) out += ' ';
        out += 'x';
        out += std::to_string(t.letter + 1);
        if (t.exponent != 1) out += '^' + std::to_string(t.exponent);
    }
    return out;
}

Elem evaluate_word(const FiniteGroup& G, const Word& w, const std::vector<Elem>& tuple) {
    if (static_cast<int>(tuple.size()) < w.arity)
        throw InputError("word of arity " + std::to_string(w.arity) + " evaluated on " +
                         std::to_string(tuple.size()) + " elements");
    Elem acc = 0;
    for (const auto& t : w.terms)
        acc = G.mul(acc, G.power(tuple[static_cast<std::size_t>(t.letter)], t.exponent));
    return acc;
}

namespace {

void require_nontrivial(const std::vector<Word>& ws) {
    if (ws.empty()) throw InputError("need at least one word");
    for (const auto& w : ws)
        if (w.trivial())
            throw InputError("the trivial word is not allowed here (its value set is {identity})");
}

// Exact value set of one word.
Bitset exact_value_set(const FiniteGroup& G, const Word& w, const ConjClasses* cls,
                       const WordValueOptions& opts) {
    const std::uint64_t n = G.order();
    Bitset V(n);
    if (w.arity <= 1) {
        // w(hgh^-1) = h w(g) h^-1, so one representative per class suffices and
        // each value contributes its whole conjugacy class.
        for (std::size_t i = 0; i < cls->count(); ++i) {
            const Elem v = evaluate_word(G, w, {cls->rep[i]});
            for (Elem m : cls->members[cls->of[v]]) V.set(m);
        }
        return V;
    }
    unsigned __int128 tuples = 1;
    for (int i = 0; i < w.arity; ++i) {
        tuples *= n;
        if (tuples > opts.work_cap)
            throw CapExceeded("exact word values need more than the work cap of " +
                              std::to_string(opts.work_cap) + " tuples");
    }
    const int workers = std::max(1, opts.workers);
    auto run = [&](Elem lo, Elem hi, Bitset& out) {
        std::vector<Elem> tuple(static_cast<std::size_t>(w.arity), 0);
        for (Elem first = lo; first < hi; ++first) {
            tuple[0] = first;
            std::fill(tuple.begin() + 1, tuple.end(), 0);
            while (true) {
                out.set(evaluate_word(G, w, tuple));
                int pos = w.arity - 1;
                while (pos >= 1) {
                    if (++tuple[static_cast<std::size_t>(pos)] < n) break;
                    tuple[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 1) break;
            }
        }
    };
    if (workers == 1 || n < 64) {
        run(0, static_cast<Elem>(n), V);
    } else {
        const std::size_t nb = std::min<std::uint64_t>(workers, n);
        std::vector<Bitset> parts(nb, Bitset(n));
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < nb; ++t)
            pool.emplace_back([&, t]() {
                run(static_cast<Elem>(n * t / nb), static_cast<Elem>(n * (t + 1) / nb),
                    parts[t]);
            });
        for (auto& th : pool) th.join();
        for (const auto& p : parts) V |= p;
    }
    return V;
}

} // namespace

WordValueSet word_value_set(const FiniteGroup& G, const std::vector<Word>& ws,
                            const WordValueOptions& opts) {
    require_nontrivial(ws);
    if (!G.enumerated())
        throw CapExceeded("word value sets need an enumerated group");
    const std::uint64_t n = G.order();

    bool exact = true;
    for (const auto& w : ws) {
        if (w.arity <= 1) continue;
        unsigned __int128 tuples = 1;
        for (int i = 0; i < w.arity && exact; ++i) {
            tuples *= n;
            if (tuples > opts.work_cap) exact = false;
        }
    }

    WordValueSet out;
    out.exact = exact;
    Bitset V(n);
    if (exact) {
        std::optional<ConjClasses> cls;
        for (const auto& w : ws)
            if (w.arity <= 1 && !cls) cls = conjugacy_classes(G);
        bool first = true;
        for (const auto& w : ws) {
            const Bitset Vi = exact_value_set(G, w, cls ? &*cls : nullptr, opts);
            if (first) {
                V = Vi;
                first = false;
            } else {
                V &= Vi;
            }
        }
        if (!V.test(0))
            throw TheoremViolation("word value set does not contain the identity");
        bool closed = true;
        V.for_each([&](std::size_t v) {
            if (!closed) return;
            for (Elem h : G.generators())
                if (!V.test(G.mul(G.mul(h, static_cast<Elem>(v)), G.inv(h)))) closed = false;
        });
        if (!closed)
            throw TheoremViolation("word value set is not closed under conjugation");
    } else {
        // Seeded sampling: mark values of random tuples, intersect per word.
        // The count of distinct marked values is a lower estimate of |w̄(G)|.
        bool first = true;
        for (std::size_t wi = 0; wi < ws.size(); ++wi) {
            const Word& w = ws[wi];
            Bitset Vi(n);
            Rng rng(opts.seed * 0x9e3779b97f4a7c15ULL + wi);
            std::vector<Elem> tuple(static_cast<std::size_t>(std::max(w.arity, 1)));
            for (std::uint64_t t = 0; t < opts.trials; ++t) {
                for (auto& g : tuple) g = static_cast<Elem>(rng.below(n));
                Vi.set(evaluate_word(G, w, tuple));
            }
            if (first) {
                V = Vi;
                first = false;
            } else {
                V &= Vi;
            }
        }
        out.trials = opts.trials;
    }
    out.mask.mask = std::move(V);
    out.mask.count = out.mask.mask.count();
    out.size = out.mask.count;
    out.density = static_cast<double>(out.size) / static_cast<double>(n);
    if (!exact)
        out.radius = 3.0 * std::sqrt(out.density * (1.0 - out.density) /
                                     static_cast<double>(opts.trials));
    return out;
}

WaringReport waring_check(const FiniteGroup& L, const std::vector<Word>& ws, bool sparse,
                          bool check_distinct, const WordValueOptions& opts) {
    require_nontrivial(ws);
    const WordValueSet vs = word_value_set(L, ws, opts);
    if (!vs.exact)
        throw CapExceeded("the covering check needs the exact word value set");
    WaringReport rep;
    rep.wbar_size = vs.size;
    rep.sparse = sparse;

    Subset W = vs.mask;
    double threshold = 0;
    if (sparse) {
        if (!L.lie())
            throw InputError("sparse mode needs Lie-type parameters (q and rank)");
        const double q = static_cast<double>(L.lie()->q);
        const double r = static_cast<double>(L.lie()->rank);
        threshold = static_cast<double>(vs.size) / std::pow(q, r / 13.0);
        rep.sparse_size = static_cast<std::uint64_t>(std::ceil(threshold));
        rep.sparse_size = std::max<std::uint64_t>(1, std::min(rep.sparse_size, vs.size));
        const std::vector<Elem> all = vs.mask.elements();
        // Seeded sample without replacement (Floyd).
        std::unordered_set<std::uint64_t> chosen;
        Rng rng(opts.seed ^ 0x57a7e11edULL);
        Subset Ws(L.order());
        for (std::uint64_t j = all.size() - rep.sparse_size; j < all.size(); ++j) {
            const std::uint64_t t = rng.below(j + 1);
            const std::uint64_t pick = chosen.count(t) ? j : t;
            chosen.insert(pick);
            Ws.add(all[static_cast<std::size_t>(pick)]);
        }
        W = std::move(Ws);
    }

    ProductOptions popts;
    popts.workers = opts.workers;
    popts.work_cap = opts.work_cap;
    const Subset W2 = product_set(L, W, W, popts);
    const Subset W3 = product_set(L, W2, W, popts);
    rep.cover.subset_size = W.count;
    rep.cover.threshold = threshold;
    rep.cover.above_threshold = false; // empirical: the theorem is asymptotic
    rep.cover.covers = W3.count == L.order();
    rep.cover.products_computed = W.count * W.count + W2.count * W.count;
    if (!rep.cover.covers)
        for (Elem g = 0; g < L.order() && rep.cover.missing.size() < 10; ++g)
            if (!W3.test(g)) rep.cover.missing.push_back(g);

    if (check_distinct) {
        const std::vector<Elem> hs = W.elements();
        const unsigned __int128 cost =
            static_cast<unsigned __int128>(L.order()) * hs.size() * hs.size();
        if (cost > opts.work_cap)
            throw CapExceeded("distinct-factor scan cost is above the work cap of " +
                              std::to_string(opts.work_cap));
        rep.distinct_checked = true;
        for (Elem g = 0; g < L.order(); ++g) {
            bool found = false;
            for (Elem h1 : hs) {
                const Elem h1i = L.mul(L.inv(h1), g);
                for (Elem h2 : hs) {
                    if (h2 == h1) continue;
                    const Elem h3 = L.mul(L.inv(h2), h1i);
                    if (h3 != h1 && h3 != h2 && W.test(h3)) { found = true; break; }
                }
                if (found) break;
            }
            if (!found) ++rep.distinct_failures;
        }
        rep.distinct_covers = rep.distinct_failures == 0;
    }
    return rep;
}

bool is_regular_semisimple(const FiniteGroup& G, Elem g) {
    if (G.backend() != Backend::Matrix)
        throw InputError("regular semisimple detection needs a matrix group");
    return mat_regular_semisimple(G.field(), G.matrix(g));
}

RsFraction rs_fraction(const FiniteGroup& G, const WordValueOptions& opts) {
    if (G.backend() != Backend::Matrix)
        throw InputError("regular semisimple census needs a matrix group");
    RsFraction rep;
    rep.q = G.field().q();
    if (G.enumerated()) {
        rep.exact = true;
        rep.total = G.order();
        for (Elem g = 0; g < G.order(); ++g)
            if (mat_regular_semisimple(G.field(), G.matrix(g))) ++rep.hits;
        rep.fraction = static_cast<double>(rep.hits) / static_cast<double>(rep.total);
        return rep;
    }
    // Monte Carlo over a product-replacement walk: mutate a slate of group
    // elements in place, emit products of random slate pairs.
    const GFq& F = G.field();
    std::vector<GFMat> slate = G.matrix_generators();
    if (slate.empty()) throw InputError("matrix group has no generators to sample from");
    while (slate.size() < 8) slate.push_back(slate[slate.size() % 2]);
    Rng rng(opts.seed ^ 0x5a7e5a7e5a7e5a7eULL);
    auto step = [&]() {
        const std::size_t i = rng.below(slate.size());
        std::size_t j = rng.below(slate.size() - 1);
        if (j >= i) ++j;
        const GFMat& other =
            rng.below(2) ? slate[j] : mat_inverse(F, slate[j]);
        slate[i] = rng.below(2) ? mat_mul(F, slate[i], other) : mat_mul(F, other, slate[i]);
    };
    for (int burn = 0; burn < 2000; ++burn) step();
    const std::uint64_t trials = opts.trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (int s = 0; s < 20; ++s) step();
        // Distinct slate entries are nearly independent uniform draws; the
        // same entry twice would emit a perfect square, and squares are not
        // uniformly distributed over the group.
        const std::size_t a = rng.below(slate.size());
        std::size_t b = rng.below(slate.size() - 1);
        if (b >= a) ++b;
        const GFMat sample = mat_mul(F, slate[a], slate[b]);
        if (mat_regular_semisimple(F, sample)) ++rep.hits;
    }
    rep.total = trials;
    rep.fraction = static_cast<double>(rep.hits) / static_cast<double>(trials);
    rep.radius =
        3.0 * std::sqrt(rep.fraction * (1.0 - rep.fraction) / static_cast<double>(trials));
    return rep;
}

GenProbReport random_pair_generates(const FiniteGroup& L, const std::vector<Word>& ws,
                                    std::uint64_t trials, const WordValueOptions& opts) {
    const WordValueSet vs = word_value_set(L, ws, opts);
    if (!vs.exact)
        throw CapExceeded("generation probability needs the exact word value set");
    GenProbReport rep;
    rep.wbar_size = vs.size;
    rep.trials = trials;
    const std::vector<Elem> values = vs.mask.elements();
    if (values.empty()) return rep;
    Rng rng(opts.seed ^ 0x6e7a11edb00ULL);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const Elem a = values[rng.below(values.size())];
        const Elem b = values[rng.below(values.size())];
        // A proper subgroup has order at most n/2, so exceeding the watermark
        // certifies generation without completing the closure.
        const auto closure = subgroup_closure_capped(L, {a, b}, L.order() / 2);
        if (!closure) ++rep.successes;
    }
    rep.frequency = static_cast<double>(rep.successes) / static_cast<double>(trials);
    return rep;
}

} // namespace qrg
