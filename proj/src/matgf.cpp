#include "qrg/matgf.hpp"

#include <cassert>

namespace qrg {

GFMat mat_identity(const GFq& F, int d) {
    (void)F;
    GFMat m(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1;
    return m;
}

GFMat mat_mul(const GFq& F, const GFMat& x, const GFMat& y) {
    assert(x.d == y.d);
    GFMat z(x.d);
    for (int i = 0; i < x.d; ++i)
        for (int k = 0; k < x.d; ++k) {
            GFElem v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < x.d; ++j)
                z.at(i, j) = F.add(z.at(i, j), F.mul(v, y.at(k, j)));
        }
    return z;
}

GFMat mat_scalar_mul(const GFq& F, GFElem s, const GFMat& x) {
    GFMat z(x.d);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = F.mul(s, x.a[i]);
    return z;
}

GFElem mat_det(const GFq& F, GFMat x) {
    // Gaussian elimination with pivot search; determinant accumulates sign
    // through explicit row swaps.
    GFElem det = 1;
    int d = x.d;
    for (int col = 0; col < d; ++col) {
        int pivot = -1;
        for (int r = col; r < d; ++r)
            if (x.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int j = 0; j < d; ++j) std::swap(x.at(pivot, j), x.at(col, j));
            det = F.neg(det);
        }
        det = F.mul(det, x.at(col, col));
        GFElem inv = F.inv(x.at(col, col));
        for (int r = col + 1; r < d; ++r) {
            GFElem factor = F.mul(x.at(r, col), inv);
            if (factor == 0) continue;
            for (int j = col; j < d; ++j)
                x.at(r, j) = F.sub(x.at(r, j), F.mul(factor, x.at(col, j)));
        }
    }
    return det;
}

GFMat mat_inverse(const GFq& F, const GFMat& x) {
    int d = x.d;
    GFMat m = x, inv = mat_identity(F, d);
    for (int col = 0; col < d; ++col) {
        int pivot = -1;
        for (int r = col; r < d; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw InputError("matrix is singular");
        if (pivot != col)
            for (int j = 0; j < d; ++j) {
                std::swap(m.at(pivot, j), m.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        GFElem s = F.inv(m.at(col, col));
        for (int j = 0; j < d; ++j) {
            m.at(col, j) = F.mul(s, m.at(col, j));
            inv.at(col, j) = F.mul(s, inv.at(col, j));
        }
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            GFElem factor = m.at(r, col);
            if (factor == 0) continue;
            for (int j = 0; j < d; ++j) {
                m.at(r, j) = F.sub(m.at(r, j), F.mul(factor, m.at(col, j)));
                inv.at(r, j) = F.sub(inv.at(r, j), F.mul(factor, inv.at(col, j)));
            }
        }
    }
    return inv;
}

GFMat mat_entrywise_pow(const GFq& F, const GFMat& x, std::uint64_t e) {
    GFMat z(x.d);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = F.pow(x.a[i], e);
    return z;
}

GFMat mat_transpose(const GFMat& x) {
    GFMat z(x.d);
    for (int i = 0; i < x.d; ++i)
        for (int j = 0; j < x.d; ++j) z.at(j, i) = x.at(i, j);
    return z;
}

GFPoly mat_charpoly(const GFq& F, const GFMat& x) {
    // Berkowitz: build the coefficient vector of det(tI - leading minor)
    // iteratively through Toeplitz products.  Coefficient vectors are stored
    // highest power first during the recursion and flipped at the end.
    int n = x.d;
    if (n == 0) return {1};
    std::vector<GFElem> c = {1, F.neg(x.at(0, 0))}; // charpoly of the 1x1 minor
    for (int k = 1; k < n; ++k) {
        // R = row (x[k][0..k-1]), C = column (x[0..k-1][k]), M = leading k*k minor.
        // Toeplitz column entries: t_0 = 1, t_1 = -x[k][k], t_{j+2} = -(R M^j C).
        std::vector<GFElem> t(k + 2, 0);
        t[0] = 1;
        t[1] = F.neg(x.at(k, k));
        std::vector<GFElem> v(k); // running M^j C
        for (int i = 0; i < k; ++i) v[i] = x.at(i, k);
        for (int j = 0; j + 2 <= k + 1; ++j) {
            GFElem dot = 0;
            for (int i = 0; i < k; ++i) dot = F.add(dot, F.mul(x.at(k, i), v[i]));
            t[j + 2] = F.neg(dot);
            if (j + 3 <= k + 1) {
                std::vector<GFElem> nv(k, 0);
                for (int i = 0; i < k; ++i) {
                    if (v[i] == 0) continue;
                    for (int r = 0; r < k; ++r)
                        nv[r] = F.add(nv[r], F.mul(x.at(r, i), v[i]));
                }
                v = std::move(nv);
            }
        }
        // c_new (length k+2) = Toeplitz(t) * c (length k+1)
        std::vector<GFElem> nc(k + 2, 0);
        for (int i = 0; i < k + 2; ++i)
            for (int j = 0; j <= i && j < k + 1; ++j)
                nc[i] = F.add(nc[i], F.mul(t[i - j], c[j]));
        c = std::move(nc);
    }
    GFPoly out(c.rbegin(), c.rend());
    return out;
}

bool mat_regular_semisimple(const GFq& F, const GFMat& x) {
    return poly_is_squarefree(F, mat_charpoly(F, x));
}

} // namespace qrg
