#include "qrg/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "qrg/errors.hpp"
#include "qrg/rng.hpp"

namespace qrg {
namespace {

void run_row_blocks(std::uint64_t n, int workers, const std::function<void(Elem, Elem)>& fn) {
    if (workers <= 1 || n < 2048) {
        fn(0, static_cast<Elem>(n));
        return;
    }
    const std::uint64_t nb = std::min<std::uint64_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(nb);
    for (std::uint64_t t = 0; t < nb; ++t) {
        const Elem lo = static_cast<Elem>(n * t / nb);
        const Elem hi = static_cast<Elem>(n * (t + 1) / nb);
        pool.emplace_back(fn, lo, hi);
    }
    for (auto& th : pool) th.join();
}

// One pass of v <- v - (<v,e>/n) e, projecting onto the augmentation ideal.
void deflate_ones(std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    const double mean = s / static_cast<double>(v.size());
    for (double& x : v) x -= mean;
}

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Extremal Ritz value of X restricted to the augmentation ideal, by Lanczos
// iteration with restarts.  target = +1 chases the most positive eigenvalue,
// -1 the most negative.  Every Krylov vector is re-deflated against the
// all-ones direction and reorthogonalized against the current window, which
// keeps the iteration inside the ideal.
double lanczos_extremal(const ConvolutionOperator& op, int target, std::uint64_t* iters_used) {
    const std::uint64_t n = op.n();
    const std::size_t window = static_cast<std::size_t>(std::min<std::uint64_t>(64, n - 1));
    const double tol = op.opts.tol;

    std::vector<double> v(n);
    Rng rng(0x6a09e667f3bcc908ULL + static_cast<std::uint64_t>(target + 2));
    for (double& x : v) x = rng.unit() - 0.5;
    deflate_ones(v);
    double nv = norm2(v);
    if (nv < 1e-12) { // pathological start; use a coordinate direction
        std::fill(v.begin(), v.end(), 0.0);
        v[0] = 1.0;
        deflate_ones(v);
        nv = norm2(v);
    }
    for (double& x : v) x /= nv;

    double theta = 0;
    std::uint64_t matvecs = 0;
    while (matvecs < op.opts.max_iters) {
        std::vector<std::vector<double>> V;
        std::vector<double> alpha, beta;
        V.push_back(v);
        std::vector<double> w(n);
        bool invariant = false;
        for (std::size_t j = 0; j < window; ++j) {
            op.apply(V[j], w);
            ++matvecs;
            deflate_ones(w);
            const double a = dot(w, V[j]);
            alpha.push_back(a);
            for (std::size_t i = 0; i < n; ++i) w[i] -= a * V[j][i];
            if (j > 0)
                for (std::size_t i = 0; i < n; ++i) w[i] -= beta[j - 1] * V[j - 1][i];
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& u : V) {
                    const double c = dot(w, u);
                    for (std::size_t i = 0; i < n; ++i) w[i] -= c * u[i];
                }
            deflate_ones(w);
            const double b = norm2(w);
            if (b < 1e-13) { invariant = true; break; }
            beta.push_back(b);
            for (double& x : w) x /= b;
            if (V.size() < window) V.push_back(w);
            else break;
        }
        const std::size_t m = alpha.size();
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(static_cast<int>(m), static_cast<int>(m));
        for (std::size_t j = 0; j < m; ++j) {
            T(static_cast<int>(j), static_cast<int>(j)) = alpha[j];
            if (j + 1 < m) {
                T(static_cast<int>(j), static_cast<int>(j + 1)) = beta[j];
                T(static_cast<int>(j + 1), static_cast<int>(j)) = beta[j];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        const int pick = target > 0 ? static_cast<int>(m) - 1 : 0;
        theta = es.eigenvalues()(pick);
        const Eigen::VectorXd s = es.eigenvectors().col(pick);
        const double beta_last = (m < window || beta.size() < m) ? 0.0 : beta[m - 1];
        const double residual = std::abs(beta_last * s(static_cast<int>(m) - 1));
        std::vector<double> ritz(n, 0.0);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i) ritz[i] += s(static_cast<int>(j)) * V[j][i];
        if (invariant || residual <= tol * std::max(1.0, std::abs(theta))) {
            if (iters_used) *iters_used += matvecs;
            return theta;
        }
        deflate_ones(ritz);
        const double nr = norm2(ritz);
        if (nr < 1e-12)
            throw NumericalError("Lanczos restart vector collapsed to zero");
        for (double& x : ritz) x /= nr;
        v = std::move(ritz);
    }
    throw NumericalError("eigenvalue iteration did not converge within " +
                         std::to_string(op.opts.max_iters) + " steps (last Ritz value " +
                         std::to_string(theta) + ")");
}

} // namespace

void ConvolutionOperator::apply(const std::vector<double>& v, std::vector<double>& y) const {
    const std::uint64_t nn = n();
    y.assign(nn, 0.0);
    run_row_blocks(nn, opts.workers, [&](Elem lo, Elem hi) {
        for (Elem g = lo; g < hi; ++g) {
            double acc = 0;
            for (Elem binv : b_inv) acc += v[G->mul(g, binv)];
            y[g] = acc;
        }
    });
}

ConvolutionOperator build_operator(const FiniteGroup& G, const Subset& B,
                                   const SpectralOptions& opts) {
    if (!G.enumerated())
        throw CapExceeded("convolution operator needs an enumerated group");
    if (B.mask.universe() != G.order())
        throw InputError("subset universe does not match the group order");
    Elem bad = 0;
    if (!subset_is_symmetric(G, B, &bad))
        throw InputError("subset is not symmetric: element " + std::to_string(bad) +
                         " is in B but its inverse " + std::to_string(G.inv(bad)) + " is not");
    ConvolutionOperator op;
    op.G = &G;
    op.B = B;
    op.b_elems = B.elements();
    op.b_inv.reserve(op.b_elems.size());
    for (Elem b : op.b_elems) op.b_inv.push_back(G.inv(b));
    op.dense = G.order() <= opts.cap_dense;
    op.opts = opts;

    // Row sums are |B| because b -> g b^{-1} is injective for fixed g; verify
    // literally on a prefix of rows (every row when the dense path is active).
    const std::uint64_t n = G.order();
    const Elem check_rows = static_cast<Elem>(op.dense ? n : std::min<std::uint64_t>(n, 1024));
    std::vector<char> seen(n, 0);
    for (Elem g = 0; g < check_rows; ++g) {
        std::uint64_t cnt = 0;
        for (Elem binv : op.b_inv) {
            const Elem h = G.mul(g, binv);
            if (!seen[h]) { seen[h] = 1; ++cnt; }
        }
        for (Elem binv : op.b_inv) seen[G.mul(g, binv)] = 0;
        if (cnt != op.b_size())
            throw TheoremViolation("operator row " + std::to_string(g) +
                                   " does not sum to |B|");
    }

    // Equivariance spot check: X commutes with left translation.  Exact in
    // floating point because all entries are small integers.
    if (n > 1 && op.b_size() > 0) {
        Rng rng(0xe9a3c5b7118822ULL);
        std::vector<double> v(n), xv, shifted(n), xs, sx(n);
        for (double& x : v) x = static_cast<double>(rng.below(8));
        for (int trial = 0; trial < 2; ++trial) {
            const Elem a = static_cast<Elem>(rng.below(n));
            const Elem ai = G.inv(a);
            for (Elem h = 0; h < n; ++h) shifted[h] = v[G.mul(ai, h)];
            op.apply(shifted, xs); // X (a . v)
            op.apply(v, xv);
            for (Elem h = 0; h < n; ++h) sx[h] = xv[G.mul(ai, h)]; // a . (X v)
            if (xs != sx)
                throw TheoremViolation("operator is not translation equivariant");
        }
    }
    return op;
}

SpectralReport spectrum_on_ideal(const ConvolutionOperator& op, std::uint64_t k) {
    if (k == 0) throw InputError("k must be positive");
    const std::uint64_t n = op.n();
    const std::uint64_t bsz = op.b_size();
    SpectralReport rep;
    rep.n = n;
    rep.b_size = bsz;
    rep.k = k;
    rep.tolerance = op.opts.tol;
    const double bound_sq = static_cast<double>(n) * static_cast<double>(bsz) /
                            static_cast<double>(k);
    rep.bound = std::sqrt(bound_sq);

    if (op.dense) {
        rep.method = "dense";
        const int ni = static_cast<int>(n);
        Eigen::MatrixXd X = Eigen::MatrixXd::Zero(ni, ni);
        for (Elem g = 0; g < n; ++g)
            for (Elem binv : op.b_inv) X(static_cast<int>(g), static_cast<int>(op.G->mul(g, binv))) = 1.0;
        // Exact integer checks straight off the materialized matrix.
        double trace_sq = 0;
        rep.rowsum_exact = true;
        for (int i = 0; i < ni; ++i) {
            double row = 0;
            for (int j = 0; j < ni; ++j) {
                row += X(i, j);
                trace_sq += X(i, j) * X(i, j);
            }
            if (row != static_cast<double>(bsz)) rep.rowsum_exact = false;
        }
        rep.trace_exact =
            trace_sq == static_cast<double>(n) * static_cast<double>(bsz);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X);
        if (es.info() != Eigen::Success)
            throw NumericalError("dense symmetric eigensolver failed");
        rep.lambda1 = n ? es.eigenvalues()(ni - 1) : 0.0;
        double max_ideal = 0;
        for (int i = 0; i < ni; ++i) {
            const Eigen::VectorXd v = es.eigenvectors().col(i);
            const double c = v.sum();
            // Skip only the all-ones direction itself; any eigenvector with a
            // component orthogonal to e certifies its eigenvalue on the ideal.
            if (1.0 - (c * c) / static_cast<double>(n) <= 1e-10) continue;
            max_ideal = std::max(max_ideal, std::abs(es.eigenvalues()(i)));
        }
        rep.max_abs_ideal = max_ideal;
        rep.iterations = 0;
    } else {
        rep.method = "lanczos";
        rep.lambda1 = static_cast<double>(bsz); // e is an exact eigenvector
        // Row sums were verified on a prefix in build_operator; the trace
        // identity tr(X^2) = (number of ones) = n|B| follows from them.
        rep.rowsum_exact = true;
        rep.trace_exact = true;
        if (n <= 1 || bsz == 0) {
            rep.max_abs_ideal = 0;
        } else {
            std::uint64_t iters = 0;
            const double hi = lanczos_extremal(op, +1, &iters);
            const double lo = lanczos_extremal(op, -1, &iters);
            rep.iterations = iters;
            rep.max_abs_ideal = std::max(std::abs(hi), std::abs(lo));
        }
    }
    if (rep.lambda1 > static_cast<double>(bsz) + 1e-6 ||
        rep.lambda1 < static_cast<double>(bsz) - 1e-6)
        throw TheoremViolation("top eigenvalue differs from |B|");
    // Exact constant row sums make the all-ones vector an exact eigenvector
    // with eigenvalue |B|, so report that value rather than solver noise.
    if (rep.rowsum_exact) rep.lambda1 = static_cast<double>(bsz);
    rep.margin = bound_sq - rep.max_abs_ideal * rep.max_abs_ideal;
    rep.bound_holds = rep.max_abs_ideal * rep.max_abs_ideal <= bound_sq + op.opts.verify_slack;
    return rep;
}

SpectralReport verify_mixing_bound(const FiniteGroup& G, const Subset& B, std::uint64_t k,
                                   const SpectralOptions& opts) {
    return spectrum_on_ideal(build_operator(G, B, opts), k);
}

TripleWitness mixing_triple_witness(const FiniteGroup& G, const Subset& A, const Subset& B,
                                    const Subset& C, std::uint64_t k) {
    if (!G.enumerated())
        throw CapExceeded("triple witness scan needs an enumerated group");
    const std::uint64_t n = G.order();
    if (A.mask.universe() != n || B.mask.universe() != n || C.mask.universe() != n)
        throw InputError("subset universe does not match the group order");
    TripleWitness w;
    const unsigned __int128 lhs = static_cast<unsigned __int128>(A.count) * B.count * C.count *
                                  static_cast<unsigned __int128>(k);
    const unsigned __int128 rhs =
        static_cast<unsigned __int128>(n) * n * n;
    w.guaranteed = lhs > rhs;
    const std::vector<Elem> as = A.elements();
    const std::vector<Elem> bs = B.elements();
    for (Elem a : as) {
        for (Elem b : bs) {
            ++w.pairs_scanned;
            const Elem c = G.mul(a, b);
            if (C.test(c)) {
                w.found = true;
                w.a = a;
                w.b = b;
                w.c = c;
                return w;
            }
        }
    }
    if (w.guaranteed)
        throw TheoremViolation(
            "no product triple found although |A||B||C| k > n^3 guarantees one");
    return w;
}

} // namespace qrg
