#include "qrg/chartable.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qrg/errors.hpp"

namespace qrg {
namespace {

// ---------------------------------------------------------------- mod-ell ---

std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    a += b;
    if (a >= m) a -= m;
    return a;
}

std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + m - b;
}

std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powm(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulm(r, a, m);
        a = mulm(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invm(std::uint64_t a, std::uint64_t m) {
    if (a % m == 0) throw TheoremViolation("modular inverse of zero requested");
    return powm(a, m - 2, m); // m prime
}

bool is_prime(std::uint64_t x) {
    if (x < 2) return false;
    for (std::uint64_t d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t x) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= x; ++d) {
        if (x % d == 0) {
            out.push_back(d);
            while (x % d == 0) x /= d;
        }
    }
    if (x > 1) out.push_back(x);
    return out;
}

std::uint64_t primitive_root(std::uint64_t ell) {
    auto facs = prime_factors(ell - 1);
    for (std::uint64_t g = 2; g < ell; ++g) {
        bool ok = true;
        for (std::uint64_t f : facs)
            if (powm(g, (ell - 1) / f, ell) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw TheoremViolation("no primitive root found for the working prime");
}

// Square root mod an odd prime (Tonelli-Shanks); returns the root in
// [0, ell), or throws if the input is a non-residue.
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t ell) {
    a %= ell;
    if (a == 0) return 0;
    if (powm(a, (ell - 1) / 2, ell) != 1)
        throw TheoremViolation("modular square root of a non-residue requested");
    if (ell % 4 == 3) return powm(a, (ell + 1) / 4, ell);
    std::uint64_t q = ell - 1, s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    std::uint64_t z = 2;
    while (powm(z, (ell - 1) / 2, ell) != ell - 1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = powm(z, q, ell);
    std::uint64_t t = powm(a, q, ell);
    std::uint64_t r = powm(a, (q + 1) / 2, ell);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) { tt = mulm(tt, tt, ell); ++i; }
        std::uint64_t b = powm(c, std::uint64_t{1} << (m - i - 1), ell);
        m = i;
        c = mulm(b, b, ell);
        t = mulm(t, c, ell);
        r = mulm(r, b, ell);
    }
    return r;
}

// ------------------------------------------------------- linear algebra -----

using ModVec = std::vector<std::uint64_t>;
using ModMat = std::vector<ModVec>; // row major

// Characteristic polynomial mod ell (monic, coefficients ascending) via
// similarity reduction to upper Hessenberg form followed by the leading
// principal minor recurrence.  O(m^3).
ModVec charpoly_mod(ModMat M, std::uint64_t ell) {
    const std::size_t m = M.size();
    for (std::size_t col = 0; col + 2 < m; ++col) {
        std::size_t piv = 0;
        for (std::size_t r = col + 1; r < m; ++r)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv == 0) continue; // column already Hessenberg below the diagonal
        if (piv != col + 1) {
            std::swap(M[piv], M[col + 1]);
            for (std::size_t r = 0; r < m; ++r) std::swap(M[r][piv], M[r][col + 1]);
        }
        const std::uint64_t inv = invm(M[col + 1][col], ell);
        for (std::size_t r = col + 2; r < m; ++r) {
            const std::uint64_t f = mulm(M[r][col], inv, ell);
            if (f == 0) continue;
            // Similarity transform: clear M[r][col] with row col+1, then add
            // column r back into column col+1 to compensate.
            for (std::size_t c = 0; c < m; ++c)
                M[r][c] = subm(M[r][c], mulm(f, M[col + 1][c], ell), ell);
            for (std::size_t r2 = 0; r2 < m; ++r2)
                M[r2][col + 1] = addm(M[r2][col + 1], mulm(f, M[r2][r], ell), ell);
        }
    }
    std::vector<ModVec> p(m + 1);
    p[0] = {1};
    for (std::size_t k = 1; k <= m; ++k) {
        ModVec acc(k + 1, 0);
        // (x - H[k-1][k-1]) * p[k-1]
        for (std::size_t j = 0; j < p[k - 1].size(); ++j) {
            acc[j + 1] = addm(acc[j + 1], p[k - 1][j], ell);
            acc[j] = subm(acc[j], mulm(M[k - 1][k - 1], p[k - 1][j], ell), ell);
        }
        std::uint64_t prod = 1;
        for (std::size_t i = k - 1; i-- > 0;) {
            prod = mulm(prod, M[i + 1][i], ell);
            const std::uint64_t coef = mulm(M[i][k - 1], prod, ell);
            if (coef == 0) continue;
            for (std::size_t j = 0; j < p[i].size(); ++j)
                acc[j] = subm(acc[j], mulm(coef, p[i][j], ell), ell);
        }
        p[k] = std::move(acc);
    }
    return p[m];
}

std::uint64_t poly_eval(const ModVec& p, std::uint64_t x, std::uint64_t ell) {
    std::uint64_t acc = 0;
    for (std::size_t j = p.size(); j-- > 0;) acc = addm(mulm(acc, x, ell), p[j], ell);
    return acc;
}

// Null space basis of M (m x m), columns returned in reduced form. O(m^3).
std::vector<ModVec> kernel_mod(ModMat M, std::uint64_t ell) {
    const std::size_t m = M.size();
    std::vector<std::size_t> pivot_of_col(m, SIZE_MAX);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < m; ++col) {
        std::size_t piv = SIZE_MAX;
        for (std::size_t r = rank; r < m; ++r)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv == SIZE_MAX) continue;
        std::swap(M[piv], M[rank]);
        const std::uint64_t inv = invm(M[rank][col], ell);
        for (std::size_t c = col; c < m; ++c) M[rank][c] = mulm(M[rank][c], inv, ell);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || M[r][col] == 0) continue;
            const std::uint64_t f = M[r][col];
            for (std::size_t c = col; c < m; ++c)
                M[r][c] = subm(M[r][c], mulm(f, M[rank][c], ell), ell);
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    std::vector<ModVec> basis;
    for (std::size_t col = 0; col < m; ++col) {
        if (pivot_of_col[col] != SIZE_MAX) continue;
        ModVec v(m, 0);
        v[col] = 1;
        for (std::size_t c = 0; c < m; ++c)
            if (pivot_of_col[c] != SIZE_MAX)
                v[c] = subm(0, M[pivot_of_col[c]][col], ell);
        basis.push_back(std::move(v));
    }
    return basis;
}

// A subspace of F_ell^s kept as columns in reduced column echelon form:
// pivot_rows[r] is the unique row where basis column r has a 1 and every
// other basis column has 0, which makes coordinate extraction a lookup.
struct Subspace {
    std::vector<ModVec> cols;          // each of length s
    std::vector<std::size_t> pivot_rows;
};

Subspace echelonize(std::vector<ModVec> cols, std::uint64_t ell) {
    const std::size_t s = cols.empty() ? 0 : cols[0].size();
    Subspace out;
    std::size_t done = 0;
    for (std::size_t row = 0; row < s && done < cols.size(); ++row) {
        std::size_t piv = SIZE_MAX;
        for (std::size_t c = done; c < cols.size(); ++c)
            if (cols[c][row] != 0) { piv = c; break; }
        if (piv == SIZE_MAX) continue;
        std::swap(cols[done], cols[piv]);
        const std::uint64_t inv = invm(cols[done][row], ell);
        for (std::size_t r = 0; r < s; ++r) cols[done][r] = mulm(cols[done][r], inv, ell);
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c == done || cols[c][row] == 0) continue;
            const std::uint64_t f = cols[c][row];
            for (std::size_t r = 0; r < s; ++r)
                cols[c][r] = subm(cols[c][r], mulm(f, cols[done][r], ell), ell);
        }
        out.pivot_rows.push_back(row);
        ++done;
    }
    if (done != cols.size())
        throw TheoremViolation("eigenspace basis degenerated during splitting");
    cols.resize(done);
    out.cols = std::move(cols);
    return out;
}

} // namespace

CharacterTable character_table(const FiniteGroup& G, const ConjClasses& cls) {
    const std::uint64_t n = G.order();
    const std::size_t s = cls.count();
    if (s > 300)
        throw CapExceeded("character table limited to 300 conjugacy classes, got " +
                          std::to_string(s));

    // Exponent of the group = lcm of the class element orders.
    std::uint64_t expo = 1;
    for (std::size_t i = 0; i < s; ++i)
        expo = std::lcm(expo, cls.elem_order[i]);

    // Working prime: ell = 1 mod exponent, ell > 2 sqrt(n), ell coprime to n.
    // The first condition supplies all needed roots of unity in F_ell, the
    // second makes degrees and eigenvalue multiplicities recoverable from
    // residues, the third keeps the class algebra semisimple mod ell.
    std::uint64_t ell = expo + 1;
    const double two_sqrt_n = 2.0 * std::sqrt(static_cast<double>(n));
    while (!(is_prime(ell) &&
             static_cast<double>(ell) > two_sqrt_n &&
             n % ell != 0))
        ell += expo;

    // Class matrix B_i over F_ell: B_i[j][k] = a_ijk, the number of ways to
    // write a fixed element of class k as (element of class i) * (element of
    // class j).  One pass over the group per class i: count
    // m[j][k] = #{ y in class j : rep_i * y in class k }, then
    // a_ijk = |C_i| * m[j][k] / |C_k| (exact division).
    auto class_matrix = [&](std::size_t i) {
        std::vector<std::vector<std::uint64_t>> m(s, std::vector<std::uint64_t>(s, 0));
        const Elem rep = cls.rep[i];
        for (Elem y = 0; y < n; ++y)
            ++m[cls.of[y]][cls.of[G.mul(rep, y)]];
        ModMat B(s, ModVec(s, 0));
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t k = 0; k < s; ++k) {
                const std::uint64_t num = cls.size[i] * m[j][k];
                if (num % cls.size[k] != 0)
                    throw TheoremViolation("class algebra structure constant is not integral");
                B[j][k] = (num / cls.size[k]) % ell;
            }
        return B;
    };

    // Simultaneous diagonalization: refine a partition of F_ell^s into common
    // eigenspaces of the commuting family {B_1, ..., B_{s-1}}.  Distinct
    // irreducible characters have distinct central character vectors, so the
    // refinement must terminate with s one-dimensional spaces.
    std::vector<Subspace> spaces;
    {
        std::vector<ModVec> id_cols(s, ModVec(s, 0));
        for (std::size_t c = 0; c < s; ++c) id_cols[c][c] = 1;
        spaces.push_back(echelonize(std::move(id_cols), ell));
    }
    for (std::size_t i = 1; i < s; ++i) {
        if (spaces.size() == s) break;
        const ModMat B = class_matrix(i);
        std::vector<Subspace> next;
        for (Subspace& V : spaces) {
            const std::size_t dim = V.cols.size();
            if (dim == 1) {
                next.push_back(std::move(V));
                continue;
            }
            // Restriction of B to V in the basis V.cols: the image of each
            // basis column has coordinates read off at the pivot rows.
            ModMat R(dim, ModVec(dim, 0));
            std::vector<ModVec> images(dim, ModVec(s, 0));
            for (std::size_t c = 0; c < dim; ++c) {
                for (std::size_t r = 0; r < s; ++r) {
                    std::uint64_t acc = 0;
                    for (std::size_t t = 0; t < s; ++t)
                        if (B[r][t] && V.cols[c][t])
                            acc = addm(acc, mulm(B[r][t], V.cols[c][t], ell), ell);
                    images[c][r] = acc;
                }
                for (std::size_t r = 0; r < dim; ++r) R[r][c] = images[c][V.pivot_rows[r]];
            }
            // Invariance check: the image must lie in V exactly.
            for (std::size_t c = 0; c < dim; ++c) {
                ModVec recon(s, 0);
                for (std::size_t r = 0; r < dim; ++r)
                    for (std::size_t t = 0; t < s; ++t)
                        recon[t] = addm(recon[t], mulm(R[r][c], V.cols[r][t], ell), ell);
                if (recon != images[c])
                    throw TheoremViolation("class matrix does not preserve a candidate eigenspace");
            }
            const ModVec cp = charpoly_mod(R, ell);
            std::size_t split_total = 0;
            for (std::uint64_t lam = 0; lam < ell; ++lam) {
                if (poly_eval(cp, lam, ell) != 0) continue;
                ModMat shifted = R;
                for (std::size_t d = 0; d < dim; ++d)
                    shifted[d][d] = subm(shifted[d][d], lam, ell);
                const std::vector<ModVec> ker = kernel_mod(shifted, ell);
                if (ker.empty())
                    throw TheoremViolation("characteristic root with empty eigenspace");
                std::vector<ModVec> lifted(ker.size(), ModVec(s, 0));
                for (std::size_t kk = 0; kk < ker.size(); ++kk)
                    for (std::size_t r = 0; r < dim; ++r)
                        if (ker[kk][r])
                            for (std::size_t t = 0; t < s; ++t)
                                lifted[kk][t] = addm(lifted[kk][t],
                                                     mulm(ker[kk][r], V.cols[r][t], ell), ell);
                split_total += ker.size();
                next.push_back(echelonize(std::move(lifted), ell));
                if (split_total == dim) break;
            }
            if (split_total != dim)
                throw TheoremViolation("a class matrix failed to diagonalize over the working prime");
        }
        spaces = std::move(next);
    }
    if (spaces.size() != s)
        throw TheoremViolation("class matrices did not separate all characters");

    // Each 1-dimensional common eigenspace, scaled so the identity-class
    // coordinate is 1, is a vector of central character values
    // u_i = |C_i| chi(g_i) / chi(1) mod ell.
    std::vector<ModVec> omega(s);
    for (std::size_t t = 0; t < s; ++t) {
        ModVec u = spaces[t].cols[0];
        if (u[0] == 0)
            throw TheoremViolation("central character vanishes on the identity class");
        const std::uint64_t inv = invm(u[0], ell);
        for (auto& x : u) x = mulm(x, inv, ell);
        omega[t] = std::move(u);
    }

    // Degrees from the first orthogonality relation:
    //   d^2 = n / sum_i u_i u_{i*} / |C_i|  (mod ell),
    // then the integer degree is the square root below ell/2.
    const std::uint64_t n_mod = n % ell;
    std::vector<std::uint64_t> degree(s);
    std::vector<ModVec> chi_mod(s, ModVec(s, 0)); // character residues
    for (std::size_t t = 0; t < s; ++t) {
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < s; ++i) {
            const std::uint64_t term =
                mulm(mulm(omega[t][i], omega[t][cls.inverse_class[i]], ell),
                     invm(cls.size[i] % ell, ell), ell);
            sum = addm(sum, term, ell);
        }
        if (sum == 0)
            throw TheoremViolation("degree normalization sum vanished mod the working prime");
        const std::uint64_t d2 = mulm(n_mod, invm(sum, ell), ell);
        std::uint64_t d = sqrt_mod(d2, ell);
        if (d > ell / 2) d = ell - d;
        if (d == 0 || d * d > n)
            throw TheoremViolation("recovered character degree is out of range");
        degree[t] = d;
        for (std::size_t i = 0; i < s; ++i)
            chi_mod[t][i] = mulm(mulm(d % ell, omega[t][i], ell),
                                 invm(cls.size[i] % ell, ell), ell);
    }
    {
        std::uint64_t sum_sq = 0;
        for (std::size_t t = 0; t < s; ++t) sum_sq += degree[t] * degree[t];
        if (sum_sq != n)
            throw TheoremViolation("character degree squares do not sum to the group order");
    }

    // Deterministic character order: trivial character first (all residues 1),
    // then by degree with ties broken by the residue vectors.
    std::vector<std::size_t> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    auto is_trivial = [&](std::size_t t) {
        for (std::size_t i = 0; i < s; ++i)
            if (chi_mod[t][i] != 1 % ell) return false;
        return true;
    };
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        const bool ta = is_trivial(a), tb = is_trivial(b);
        if (ta != tb) return ta;
        if (degree[a] != degree[b]) return degree[a] < degree[b];
        return chi_mod[a] < chi_mod[b];
    });
    if (!is_trivial(perm[0]))
        throw TheoremViolation("trivial character missing from the solved table");

    // Lift to complex values.  chi(g) = sum_t a_t zeta_m^t where m = |g|,
    // zeta_m = exp(2 pi i / m) and a_t is the multiplicity of the eigenvalue
    // zeta_m^t in the representing matrix; a_t is recovered mod ell by a
    // discrete Fourier transform over the power classes of g, and is an exact
    // integer because 0 <= a_t <= degree < ell / 2.
    const std::uint64_t w = powm(primitive_root(ell), (ell - 1) / expo, ell);
    std::vector<std::vector<std::size_t>> power_class(s);
    for (std::size_t i = 0; i < s; ++i) {
        const std::uint64_t m = cls.elem_order[i];
        power_class[i].resize(m);
        Elem g = 0;
        for (std::uint64_t u = 0; u < m; ++u) {
            power_class[i][u] = cls.of[g];
            g = G.mul(g, cls.rep[i]);
        }
    }
    constexpr double kPi = 3.14159265358979323846;
    CharacterTable out;
    out.n = n;
    out.ell = ell;
    out.degrees.resize(s);
    out.values.assign(s, std::vector<std::complex<double>>(s));
    for (std::size_t row = 0; row < s; ++row) {
        const std::size_t t = perm[row];
        out.degrees[row] = degree[t];
        for (std::size_t i = 0; i < s; ++i) {
            const std::uint64_t m = cls.elem_order[i];
            const std::uint64_t z = powm(w, expo / m, ell);
            const std::uint64_t zinv = invm(z, ell);
            const std::uint64_t minv = invm(m % ell, ell);
            std::complex<double> value = 0;
            std::uint64_t mult_sum = 0;
            for (std::uint64_t tt = 0; tt < m; ++tt) {
                std::uint64_t a = 0;
                for (std::uint64_t u = 0; u < m; ++u)
                    a = addm(a, mulm(chi_mod[t][power_class[i][u]],
                                     powm(zinv, (u * tt) % m, ell), ell), ell);
                a = mulm(a, minv, ell);
                if (a > degree[t])
                    throw TheoremViolation("eigenvalue multiplicity exceeds the character degree");
                mult_sum += a;
                if (a)
                    value += static_cast<double>(a) *
                             std::polar(1.0, 2.0 * kPi * static_cast<double>(tt) /
                                                 static_cast<double>(m));
            }
            if (mult_sum != degree[t])
                throw TheoremViolation("eigenvalue multiplicities do not sum to the degree");
            out.values[row][i] = value;
        }
    }

    // Orthogonality residuals over the complex table.
    double row_res = 0;
    for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = a; b < s; ++b) {
            std::complex<double> acc = 0;
            for (std::size_t i = 0; i < s; ++i)
                acc += static_cast<double>(cls.size[i]) * out.values[a][i] *
                       std::conj(out.values[b][i]);
            const double target = (a == b) ? static_cast<double>(n) : 0.0;
            row_res = std::max(row_res, std::abs(acc - target) / static_cast<double>(n));
        }
    double col_res = 0;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i; j < s; ++j) {
            std::complex<double> acc = 0;
            for (std::size_t a = 0; a < s; ++a)
                acc += out.values[a][i] * std::conj(out.values[a][j]);
            const double target =
                (i == j) ? static_cast<double>(n) / static_cast<double>(cls.size[i]) : 0.0;
            col_res = std::max(col_res, std::abs(acc - target));
        }
    out.row_residual = row_res;
    out.col_residual = col_res;
    if (row_res > 1e-8 || col_res > 1e-8)
        throw TheoremViolation("character table failed orthogonality verification");
    return out;
}

std::uint64_t min_nontrivial_degree(const CharacterTable& table) {
    if (table.degrees.size() < 2)
        throw InputError("the trivial group has no nontrivial irreducible character");
    // Trivial character is row 0 by construction.
    std::uint64_t best = UINT64_MAX;
    for (std::size_t t = 1; t < table.degrees.size(); ++t)
        best = std::min(best, table.degrees[t]);
    return best;
}

std::uint64_t min_nontrivial_degree(const FiniteGroup& G) {
    const ConjClasses cls = conjugacy_classes(G);
    return min_nontrivial_degree(character_table(G, cls));
}

} // namespace qrg
