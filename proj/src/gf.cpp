#include "qrg/gf.hpp"

#include <algorithm>
#include <cassert>

namespace qrg {

std::pair<std::uint64_t, int> prime_power_split(std::uint64_t q) {
    if (q < 2) throw InputError("field size must be at least 2, got " + std::to_string(q));
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return {q, 1}; // q itself is prime
    int f = 0;
    std::uint64_t m = q;
    while (m % p == 0) {
        m /= p;
        ++f;
    }
    if (m != 1)
        throw InputError("field size " + std::to_string(q) + " is not a prime power");
    return {p, f};
}

namespace {

// Digits of the encoding, least significant (constant coefficient) first.
std::vector<GFElem> decode(std::uint64_t v, std::uint64_t p, int f) {
    std::vector<GFElem> d(f, 0);
    for (int i = 0; i < f; ++i) {
        d[i] = static_cast<GFElem>(v % p);
        v /= p;
    }
    return d;
}

std::uint64_t encode(const std::vector<GFElem>& d, std::uint64_t p) {
    std::uint64_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

// Polynomial arithmetic over the prime field GF(p), used only while
// bootstrapping the extension-field tables.
using PPoly = std::vector<std::uint64_t>;

void pnorm(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmul(const PPoly& a, const PPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    pnorm(c);
    return c;
}

PPoly pmod(PPoly a, const PPoly& m, std::uint64_t p) {
    pnorm(a);
    while (a.size() >= m.size()) {
        std::uint64_t lead = a.back(); // m is monic
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::uint64_t sub = lead * m[i] % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        pnorm(a);
        if (a.empty()) break;
    }
    return a;
}

bool pdivides(const PPoly& d, const PPoly& a, std::uint64_t p) {
    return pmod(a, d, p).empty();
}

bool pirreducible(const PPoly& a, std::uint64_t p) {
    int deg = static_cast<int>(a.size()) - 1;
    if (deg <= 0) return false;
    if (deg == 1) return true;
    // Trial division by all monic polynomials of degree 1..deg/2.
    for (int k = 1; 2 * k <= deg; ++k) {
        std::uint64_t count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            PPoly cand(k + 1, 0);
            std::uint64_t t = v;
            for (int i = 0; i < k; ++i) {
                cand[i] = t % p;
                t /= p;
            }
            cand[k] = 1;
            if (pdivides(cand, a, p)) return false;
        }
    }
    return true;
}

// Least monic irreducible of degree f over GF(p), in encoding order of the
// lower coefficients.
PPoly least_irreducible(std::uint64_t p, int f) {
    std::uint64_t count = 1;
    for (int i = 0; i < f; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
        PPoly cand(f + 1, 0);
        std::uint64_t t = v;
        for (int i = 0; i < f; ++i) {
            cand[i] = t % p;
            t /= p;
        }
        cand[f] = 1;
        if (pirreducible(cand, p)) return cand;
    }
    // Unreachable: irreducibles exist in every degree over every finite field.
    throw InputError("no irreducible polynomial found");
}

} // namespace

GFq::GFq(std::uint64_t q) {
    auto [p, f] = prime_power_split(q);
    if (q > 1024)
        throw CapExceeded("field size " + std::to_string(q) +
                          " exceeds the supported maximum of 1024");
    q_ = q;
    p_ = p;
    f_ = f;

    PPoly mod;
    if (f > 1) {
        mod = least_irreducible(p, f);
        modulus_.assign(mod.begin(), mod.end());
    } else {
        modulus_ = {0, 1}; // x, by convention
    }

    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);

    for (std::uint64_t a = 0; a < q; ++a) {
        auto da = decode(a, p, f);
        std::vector<GFElem> dn(f);
        for (int i = 0; i < f; ++i) dn[i] = static_cast<GFElem>((p - da[i]) % p);
        neg_[a] = static_cast<GFElem>(encode(dn, p));
        for (std::uint64_t b = 0; b < q; ++b) {
            auto db = decode(b, p, f);
            std::vector<GFElem> ds(f);
            for (int i = 0; i < f; ++i) ds[i] = static_cast<GFElem>((da[i] + db[i]) % p);
            add_[a * q + b] = static_cast<GFElem>(encode(ds, p));

            PPoly pa(da.begin(), da.end()), pb(db.begin(), db.end());
            pnorm(pa);
            pnorm(pb);
            PPoly prod = pmul(pa, pb, p);
            if (f > 1) prod = pmod(prod, mod, p);
            std::vector<GFElem> dp(f, 0);
            for (std::size_t i = 0; i < prod.size(); ++i) dp[i] = static_cast<GFElem>(prod[i]);
            mul_[a * q + b] = static_cast<GFElem>(encode(dp, p));
        }
    }
    for (std::uint64_t a = 1; a < q; ++a)
        for (std::uint64_t b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) {
                inv_[a] = static_cast<GFElem>(b);
                break;
            }
}

GFElem GFq::inv(GFElem a) const {
    if (a == 0) throw InputError("division by zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
}

GFElem GFq::pow(GFElem a, std::uint64_t e) const {
    GFElem r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

GFElem GFq::primitive_element() const {
    for (std::uint64_t a = 1; a < q_; ++a) {
        std::uint64_t ord = 1;
        GFElem x = static_cast<GFElem>(a);
        while (x != 1) {
            x = mul(x, static_cast<GFElem>(a));
            ++ord;
        }
        if (ord == q_ - 1) return static_cast<GFElem>(a);
    }
    throw InputError("no primitive element found"); // impossible for a field
}

GFqPtr make_field(std::uint64_t q) { return std::make_shared<const GFq>(q); }

// --- polynomial helpers -----------------------------------------------------

int poly_degree(const GFPoly& a) { return static_cast<int>(a.size()) - 1; }

void poly_normalize(GFPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

GFPoly poly_add(const GFq& F, const GFPoly& a, const GFPoly& b) {
    GFPoly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        GFElem x = i < a.size() ? a[i] : 0;
        GFElem y = i < b.size() ? b[i] : 0;
        c[i] = F.add(x, y);
    }
    poly_normalize(c);
    return c;
}

GFPoly poly_mul(const GFq& F, const GFPoly& a, const GFPoly& b) {
    if (a.empty() || b.empty()) return {};
    GFPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    }
    poly_normalize(c);
    return c;
}

std::pair<GFPoly, GFPoly> poly_divmod(const GFq& F, const GFPoly& a, const GFPoly& b) {
    if (b.empty()) throw InputError("polynomial division by zero");
    GFPoly r = a, q;
    poly_normalize(r);
    if (r.size() >= b.size()) q.assign(r.size() - b.size() + 1, 0);
    GFElem leadinv = F.inv(b.back());
    while (r.size() >= b.size()) {
        GFElem c = F.mul(r.back(), leadinv);
        std::size_t shift = r.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
        poly_normalize(r);
        if (r.empty()) break;
    }
    poly_normalize(q);
    return {q, r};
}

GFPoly poly_mod(const GFq& F, const GFPoly& a, const GFPoly& b) {
    return poly_divmod(F, a, b).second;
}

GFPoly poly_gcd(const GFq& F, GFPoly a, GFPoly b) {
    poly_normalize(a);
    poly_normalize(b);
    while (!b.empty()) {
        GFPoly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        GFElem s = F.inv(a.back());
        for (auto& c : a) c = F.mul(c, s);
    }
    return a;
}

GFPoly poly_derivative(const GFq& F, const GFPoly& a) {
    if (a.size() <= 1) return {};
    GFPoly d(a.size() - 1, 0);
    for (std::size_t i = 1; i < a.size(); ++i) {
        GFElem k = 0; // i reduced into the field through repeated addition of 1
        for (std::size_t j = 0; j < i % F.p(); ++j) k = F.add(k, 1);
        d[i - 1] = F.mul(k, a[i]);
    }
    poly_normalize(d);
    return d;
}

GFElem poly_eval(const GFq& F, const GFPoly& a, GFElem x) {
    GFElem r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

bool poly_is_squarefree(const GFq& F, const GFPoly& a) {
    if (poly_degree(a) <= 0) throw InputError("squarefree test needs a nonconstant polynomial");
    GFPoly d = poly_derivative(F, a);
    if (d.empty()) return false; // a = g(x^p), so every root repeats
    return poly_degree(poly_gcd(F, a, d)) == 0;
}

namespace {

// All monic polynomials of degree k over F, in encoding order of the lower
// coefficients.
std::vector<GFPoly> monic_of_degree(const GFq& F, int k) {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= F.q();
    std::vector<GFPoly> out;
    out.reserve(count);
    for (std::uint64_t v = 0; v < count; ++v) {
        GFPoly cand(k + 1, 0);
        std::uint64_t t = v;
        for (int i = 0; i < k; ++i) {
            cand[i] = static_cast<GFElem>(t % F.q());
            t /= F.q();
        }
        cand[k] = 1;
        out.push_back(std::move(cand));
    }
    return out;
}

} // namespace

bool poly_is_irreducible(const GFq& F, const GFPoly& a) {
    int deg = poly_degree(a);
    if (deg <= 0) return false;
    if (deg == 1) return true;
    for (int k = 1; 2 * k <= deg; ++k)
        for (const auto& d : monic_of_degree(F, k))
            if (poly_mod(F, a, d).empty()) return false;
    return true;
}

std::vector<GFPoly> poly_factor(const GFq& F, GFPoly a) {
    poly_normalize(a);
    if (poly_degree(a) < 1 || a.back() != 1)
        throw InputError("factorization expects a monic nonconstant polynomial");
    std::vector<GFPoly> factors;
    int k = 1;
    while (poly_degree(a) > 0) {
        if (2 * k > poly_degree(a)) {
            factors.push_back(a); // remainder is irreducible
            break;
        }
        bool hit = false;
        for (const auto& d : monic_of_degree(F, k)) {
            auto [q, r] = poly_divmod(F, a, d);
            if (r.empty() && poly_is_irreducible(F, d)) {
                factors.push_back(d);
                a = q;
                hit = true;
                break;
            }
        }
        if (!hit) ++k;
    }
    return factors;
}

} // namespace qrg
