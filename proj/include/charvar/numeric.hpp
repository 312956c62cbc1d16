#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "charvar/errors.hpp"
#include "charvar/matrix.hpp"

namespace charvar {

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic Jacobi; one rotation is already exact
// for the 2x2 case).
// ---------------------------------------------------------------------------

template <int N>
struct HermitianEig {
    std::array<double, N> values;  // ascending
    Matrix<N> vectors;             // unitary, eigenvectors as columns
};

namespace detail {

/// Unitary plane rotation W (identity outside rows/cols p,q) such that
/// W^dag A W has zero (p,q) entry. Standard dephase-then-rotate scheme.
template <int N>
Matrix<N> jacobi_rotation(const Matrix<N>& a, int p, int q) {
    const cplx apq = a(p, q);
    const double b = std::abs(apq);
    Matrix<N> w = Matrix<N>::identity();
    if (b == 0.0) return w;
    const cplx phase = apq / b;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * b);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    w(p, p) = c;
    w(p, q) = s;
    w(q, p) = -s * std::conj(phase);
    w(q, q) = c * std::conj(phase);
    return w;
}

}  // namespace detail

template <int N>
HermitianEig<N> hermitian_eig(Matrix<N> a) {
    a = hermitian_part(a);
    Matrix<N> v = Matrix<N>::identity();
    const double stop = 1e-15 * std::max(1.0, a.frobenius_norm());
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < N - 1; ++p)
            for (int q = p + 1; q < N; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= stop) break;
        for (int p = 0; p < N - 1; ++p)
            for (int q = p + 1; q < N; ++q) {
                if (std::abs(a(p, q)) <= stop / (2 * N)) continue;
                Matrix<N> w = detail::jacobi_rotation(a, p, q);
                a = w.adjoint() * a * w;
                v = v * w;
            }
        a = hermitian_part(a);
    }

    HermitianEig<N> out;
    std::array<int, N> order;
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    for (int i = 0; i < N; ++i) {
        out.values[i] = a(order[i], order[i]).real();
        for (int r = 0; r < N; ++r) out.vectors(r, i) = v(r, order[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Small dynamic complex matrices and one-sided Jacobi SVD. These carry the
// stacked commutator operators (up to (m+n)*n^2 rows by n^2-1 columns), where
// fixed-size types do not fit.
// ---------------------------------------------------------------------------

struct DynMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> a;

    DynMatrix() = default;
    DynMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, cplx(0.0)) {}

    cplx& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const cplx& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static DynMatrix identity(int n) {
        DynMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

struct SvdResult {
    std::vector<double> sigma;  // descending
    DynMatrix v;                // right singular vectors as columns

    int rank(double rel_tol = kRankTol) const {
        if (sigma.empty() || sigma[0] == 0.0) return 0;
        int r = 0;
        for (double s : sigma)
            if (s > rel_tol * sigma[0]) ++r;
        return r;
    }

    int nullity(double rel_tol = kRankTol) const { return int(sigma.size()) - rank(rel_tol); }

    double condition() const {
        if (sigma.empty() || sigma.back() == 0.0) return std::numeric_limits<double>::infinity();
        return sigma.front() / sigma.back();
    }
};

/// One-sided Jacobi SVD. Orthogonalizes the columns of A by right rotations;
/// accurate for the tiny tall systems used here, including small singular
/// values.
inline SvdResult svd_onesided(DynMatrix m) {
    const int c = m.cols;
    const int r = m.rows;
    DynMatrix v = DynMatrix::identity(c);

    auto col_dot = [&](int i, int j) {  // <col_i, col_j> with conjugation on i
        cplx s = 0.0;
        for (int k = 0; k < r; ++k) s += std::conj(m.at(k, i)) * m.at(k, j);
        return s;
    };

    for (int sweep = 0; sweep < 64; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < c - 1; ++i)
            for (int j = i + 1; j < c; ++j) {
                const double a = col_dot(i, i).real();
                const double b = col_dot(j, j).real();
                const cplx g = col_dot(i, j);
                const double gm = std::abs(g);
                if (gm <= 1e-30 + 1e-15 * std::sqrt(a * b)) continue;
                rotated = true;
                const cplx phase = g / gm;
                const double tau = (b - a) / (2.0 * gm);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;
                // W = [[cs, sn], [-sn*conj(phase), cs*conj(phase)]] acting on columns i, j
                const cplx w11 = cs, w12 = sn;
                const cplx w21 = -sn * std::conj(phase), w22 = cs * std::conj(phase);
                for (int k = 0; k < r; ++k) {
                    const cplx u = m.at(k, i), w = m.at(k, j);
                    m.at(k, i) = u * w11 + w * w21;
                    m.at(k, j) = u * w12 + w * w22;
                }
                for (int k = 0; k < c; ++k) {
                    const cplx u = v.at(k, i), w = v.at(k, j);
                    v.at(k, i) = u * w11 + w * w21;
                    v.at(k, j) = u * w12 + w * w22;
                }
            }
        if (!rotated) break;
    }

    std::vector<double> sig(c);
    for (int i = 0; i < c; ++i) {
        double s = 0.0;
        for (int k = 0; k < r; ++k) s += std::norm(m.at(k, i));
        sig[i] = std::sqrt(s);
    }
    std::vector<int> order(c);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return sig[i] > sig[j]; });

    SvdResult out;
    out.sigma.resize(c);
    out.v = DynMatrix(c, c);
    for (int i = 0; i < c; ++i) {
        out.sigma[i] = sig[order[i]];
        for (int k = 0; k < c; ++k) out.v.at(k, i) = v.at(k, order[i]);
    }
    return out;
}

/// Orthonormal basis (coefficient vectors) of the numeric null space.
inline std::vector<std::vector<cplx>> null_space(const SvdResult& svd, double rel_tol = kRankTol) {
    std::vector<std::vector<cplx>> basis;
    const int c = int(svd.sigma.size());
    const double cutoff = svd.sigma.empty() ? 0.0 : rel_tol * svd.sigma[0];
    for (int i = 0; i < c; ++i) {
        if (svd.sigma[i] > cutoff && svd.sigma[0] > 0.0) continue;
        std::vector<cplx> col(c);
        for (int k = 0; k < c; ++k) col[k] = svd.v.at(k, i);
        basis.push_back(std::move(col));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Eigenvalues of general 2x2 / 3x3 complex matrices via the characteristic
// polynomial, with Newton polish.
// ---------------------------------------------------------------------------

namespace detail {

inline std::array<cplx, 2> quadratic_roots(const cplx& b, const cplx& c) {
    // roots of z^2 + b z + c
    const cplx disc = std::sqrt(b * b - 4.0 * c);
    const cplx s1 = -b + disc;
    const cplx s2 = -b - disc;
    const cplx big = (std::abs(s1) >= std::abs(s2)) ? s1 : s2;
    if (std::abs(big) < 1e-300) return {-b * 0.5, -b * 0.5};
    const cplx r1 = big * 0.5;
    return {r1, c / r1};
}

inline std::array<cplx, 3> cubic_roots(const cplx& a, const cplx& b, const cplx& c) {
    // roots of z^3 + a z^2 + b z + c (Cardano on the depressed cubic)
    const cplx p = b - a * a / 3.0;
    const cplx q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const cplx shift = -a / 3.0;
    std::array<cplx, 3> roots;
    const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    cplx u3 = -q / 2.0 + disc;
    if (std::abs(u3) < std::abs(-q / 2.0 - disc)) u3 = -q / 2.0 - disc;
    if (std::abs(u3) < 1e-300) {
        // p ~ 0 and q ~ 0: triple root of the depressed cubic at 0
        const cplx r = std::pow(-q, 1.0 / 3.0);
        const cplx w(-0.5, std::sqrt(3.0) / 2.0);
        roots = {r + shift, r * w + shift, r * std::conj(w) + shift};
        return roots;
    }
    const cplx u = std::pow(u3, 1.0 / 3.0);
    const cplx w(-0.5, std::sqrt(3.0) / 2.0);
    std::array<cplx, 3> us = {u, u * w, u * std::conj(w)};
    for (int i = 0; i < 3; ++i) roots[i] = us[i] - p / (3.0 * us[i]) + shift;
    return roots;
}

inline cplx polish_root(cplx z, const cplx& a, const cplx& b, const cplx& c, bool cubic) {
    auto eval = [&](const cplx& w) {
        return cubic ? ((w + a) * w + b) * w + c : (w + a) * w + b;
    };
    // guarded Newton: only accept steps that reduce |p|; at multiple roots
    // both p and p' sink into rounding noise and a raw step can jump O(1)
    for (int it = 0; it < 3; ++it) {
        const cplx f = eval(z);
        const cplx df = cubic ? (3.0 * z + 2.0 * a) * z + b : 2.0 * z + a;
        if (std::abs(df) < 1e-300) break;
        const cplx trial = z - f / df;
        if (!(std::abs(eval(trial)) < std::abs(f))) break;
        z = trial;
    }
    return z;
}

inline double arg_canonical(const cplx& z) {
    double t = std::arg(z);       // in (-pi, pi]
    if (t == -std::acos(-1.0)) t = std::acos(-1.0);
    return t;
}

}  // namespace detail

/// Eigenvalues only, sorted by argument ascending in (-pi, pi], ties broken
/// by modulus.
///
/// Roots of the characteristic polynomial split like sqrt(eps) (double) or
/// cbrt(eps) (triple) at multiple eigenvalues, which would break the 1e-8
/// degeneracy semantics downstream. Near-coincident root candidates are
/// therefore refined to the derivative root (double) or tr/N (triple) when
/// the polynomial residual confirms the multiple-root structure; genuinely
/// separated spectra are left at their accurate simple-root values.
template <int N>
std::array<cplx, N> eigenvalues(const Matrix<N>& m) {
    std::array<cplx, N> ev;
    if constexpr (N == 2) {
        const cplx a = -m.trace();
        const cplx b = m.det();
        auto r = detail::quadratic_roots(a, b);
        ev = {detail::polish_root(r[0], a, b, 0.0, false),
              detail::polish_root(r[1], a, b, 0.0, false)};

        const double scale = std::max({1.0, std::abs(ev[0]), std::abs(ev[1])});
        const double eps = 2.2e-16;
        auto p = [&](const cplx& z) { return (z + a) * z + b; };
        if (std::abs(ev[0] - ev[1]) <= 2e-5 * scale) {
            const cplx cand = -a * 0.5;
            const double floor = 1e3 * eps * scale * scale;
            if (std::abs(p(cand)) <=
                std::max(4.0 * (std::abs(p(ev[0])) + std::abs(p(ev[1]))), floor))
                ev[0] = ev[1] = cand;
        }
    } else {
        const cplx a = -m.trace();
        const cplx tr2 = (m * m).trace();
        const cplx b = (m.trace() * m.trace() - tr2) * 0.5;
        const cplx c = -m.det();
        auto r = detail::cubic_roots(a, b, c);
        for (int i = 0; i < 3; ++i) ev[i] = detail::polish_root(r[i], a, b, c, true);

        double scale = 1.0;
        for (const auto& z : ev) scale = std::max(scale, std::abs(z));
        const double eps = 2.2e-16;
        const double detect = 2e-5 * scale;
        auto p = [&](const cplx& z) { return ((z + a) * z + b) * z + c; };
        auto dp = [&](const cplx& z) { return (3.0 * z + 2.0 * a) * z + b; };

        const bool all_close = std::abs(ev[0] - ev[1]) <= detect &&
                               std::abs(ev[1] - ev[2]) <= detect &&
                               std::abs(ev[0] - ev[2]) <= detect;
        bool done = false;
        if (all_close) {
            const cplx cand = -a / 3.0;
            if (std::abs(dp(cand)) <= 1e3 * eps * scale * scale) {
                ev = {cand, cand, cand};
                done = true;
            }
        }
        if (!done) {
            // closest pair as a double-root candidate
            int pi = 0, pj = 1;
            double best = std::abs(ev[0] - ev[1]);
            if (std::abs(ev[0] - ev[2]) < best) {
                best = std::abs(ev[0] - ev[2]);
                pi = 0;
                pj = 2;
            }
            if (std::abs(ev[1] - ev[2]) < best) {
                best = std::abs(ev[1] - ev[2]);
                pi = 1;
                pj = 2;
            }
            if (best <= detect) {
                const auto crit = detail::quadratic_roots(2.0 * a / 3.0, b / 3.0);
                const cplx mean = (ev[pi] + ev[pj]) * 0.5;
                const cplx cand =
                    std::abs(crit[0] - mean) <= std::abs(crit[1] - mean) ? crit[0] : crit[1];
                const double floor = 1e3 * eps * scale * scale * scale;
                if (std::abs(p(cand)) <=
                    std::max(4.0 * (std::abs(p(ev[pi])) + std::abs(p(ev[pj]))), floor))
                    ev[pi] = ev[pj] = cand;
            }
        }
    }
    std::sort(ev.begin(), ev.end(), [](const cplx& x, const cplx& y) {
        const double ax = detail::arg_canonical(x), ay = detail::arg_canonical(y);
        if (ax != ay) return ax < ay;
        return std::abs(x) < std::abs(y);
    });
    return ev;
}

namespace detail {

/// Clusters indices of near-equal values (union by pairwise distance).
template <int N>
std::vector<std::vector<int>> cluster_values(const std::array<cplx, N>& vals, double tol) {
    std::array<int, N> root;
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int i) {
        while (root[i] != i) i = root[i];
        return i;
    };
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (std::abs(vals[i] - vals[j]) <= tol) root[find(j)] = find(i);
    std::vector<std::vector<int>> clusters;
    for (int i = 0; i < N; ++i) {
        if (find(i) != i) continue;
        std::vector<int> c;
        for (int j = 0; j < N; ++j)
            if (find(j) == find(i)) c.push_back(j);
        clusters.push_back(std::move(c));
    }
    return clusters;
}

/// Fixes the phase of a column so its largest entry is real positive.
template <int N>
void canonicalize_column(Matrix<N>& m, int col) {
    int best = 0;
    double bv = -1.0;
    for (int r = 0; r < N; ++r) {
        double v = std::abs(m(r, col));
        if (v > bv) {
            bv = v;
            best = r;
        }
    }
    if (bv <= 0.0) return;
    const cplx ph = m(best, col) / bv;
    for (int r = 0; r < N; ++r) m(r, col) /= ph;
}

}  // namespace detail

template <int N>
struct SpectralDecomposition {
    std::array<cplx, N> values;  // canonical order, cluster-repeated
    Matrix<N> vectors;           // eigenvectors as columns, orthonormal per cluster
    double vector_condition = 1.0;
    bool diagonalizable = true;
};

/// Eigendecomposition of a general (possibly non-normal) small matrix.
/// Near-degenerate eigenvalues (gap below cluster_tol) are treated as a
/// single degenerate cluster, and per-cluster eigenvector bases come from
/// the SVD null space of the shifted matrix.
template <int N>
SpectralDecomposition<N> spectral_decompose(const Matrix<N>& m, double cluster_tol = kClusterTol) {
    SpectralDecomposition<N> out;
    const std::array<cplx, N> ev = eigenvalues(m);
    const double scale = std::max(1.0, std::abs(ev[N - 1]));
    auto clusters = detail::cluster_values<N>(ev, cluster_tol * scale);

    int filled = 0;
    for (const auto& cluster : clusters) {
        cplx mean = 0.0;
        for (int idx : cluster) mean += ev[idx];
        mean /= double(cluster.size());

        DynMatrix shifted(N, N);
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c)
                shifted.at(r, c) = m(r, c) - (r == c ? mean : cplx(0.0));
        SvdResult svd = svd_onesided(shifted);
        auto null = null_space(svd, kRankTol);
        if (int(null.size()) < int(cluster.size())) {
            out.diagonalizable = false;
            // fall back to the smallest singular directions so the basis is complete
            while (int(null.size()) < int(cluster.size())) {
                std::vector<cplx> col(N);
                int take = N - 1 - int(null.size());
                for (int k = 0; k < N; ++k) col[k] = svd.v.at(k, take);
                null.push_back(std::move(col));
            }
        }
        for (size_t j = 0; j < cluster.size(); ++j) {
            for (int r = 0; r < N; ++r) out.vectors(r, filled) = null[j][r];
            out.values[filled] = mean;
            detail::canonicalize_column(out.vectors, filled);
            ++filled;
        }
    }

    // condition number of the eigenvector matrix
    DynMatrix q(N, N);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) q.at(r, c) = out.vectors(r, c);
    out.vector_condition = svd_onesided(q).condition();
    if (!(out.vector_condition <= 1e8)) out.diagonalizable = false;
    return out;
}

template <int N>
struct NormalEig {
    std::array<cplx, N> values;
    Matrix<N> vectors;  // unitary
};

namespace detail {

template <int K, int N>
void refine_cluster_block(const Matrix<N>& b, Matrix<N>& q, const std::vector<int>& cols) {
    // Diagonalizes the Hermitian block Qc^dag B Qc and rotates the columns.
    Matrix<K> bc;
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            cplx s = 0.0;
            for (int r = 0; r < N; ++r)
                for (int c = 0; c < N; ++c) s += std::conj(q(r, cols[i])) * b(r, c) * q(c, cols[j]);
            bc(i, j) = s;
        }
    HermitianEig<K> eg = hermitian_eig(bc);
    std::array<std::array<cplx, N>, K> fresh{};
    for (int jnew = 0; jnew < K; ++jnew)
        for (int r = 0; r < N; ++r) {
            cplx s = 0.0;
            for (int i = 0; i < K; ++i) s += q(r, cols[i]) * eg.vectors(i, jnew);
            fresh[jnew][r] = s;
        }
    for (int jnew = 0; jnew < K; ++jnew)
        for (int r = 0; r < N; ++r) q(r, cols[jnew]) = fresh[jnew][r];
}

}  // namespace detail

/// Eigendecomposition of a normal matrix through its commuting Hermitian and
/// skew-Hermitian parts; eigenvectors come out orthonormal.
template <int N>
NormalEig<N> normal_eig(const Matrix<N>& m, double cluster_tol = kClusterTol) {
    const Matrix<N> a = hermitian_part(m);
    Matrix<N> b = (m - m.adjoint()) * cplx(0.0, -0.5);  // Hermitian
    HermitianEig<N> ea = hermitian_eig(a);
    Matrix<N> q = ea.vectors;

    const double scale = std::max(1.0, m.frobenius_norm());
    std::array<cplx, N> avals;
    for (int i = 0; i < N; ++i) avals[i] = ea.values[i];
    auto clusters = detail::cluster_values<N>(avals, cluster_tol * scale);
    for (const auto& cluster : clusters) {
        if (cluster.size() == 2) {
            detail::refine_cluster_block<2, N>(b, q, cluster);
        } else if (cluster.size() == 3) {
            if constexpr (N == 3) detail::refine_cluster_block<3, N>(b, q, cluster);
        }
    }

    NormalEig<N> out;
    out.vectors = q;
    for (int i = 0; i < N; ++i) {
        cplx lam = 0.0;  // Rayleigh quotient v^dag M v
        for (int r = 0; r < N; ++r) {
            cplx mv = 0.0;
            for (int c = 0; c < N; ++c) mv += m(r, c) * q(c, i);
            lam += std::conj(q(r, i)) * mv;
        }
        out.values[i] = lam;
    }
    // canonical order by argument
    std::array<int, N> order;
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        const double ai = detail::arg_canonical(out.values[i]);
        const double aj = detail::arg_canonical(out.values[j]);
        if (ai != aj) return ai < aj;
        return std::abs(out.values[i]) < std::abs(out.values[j]);
    });
    NormalEig<N> sorted;
    for (int i = 0; i < N; ++i) {
        sorted.values[i] = out.values[order[i]];
        for (int r = 0; r < N; ++r) sorted.vectors(r, i) = out.vectors(r, order[i]);
    }
    for (int i = 0; i < N; ++i) detail::canonicalize_column(sorted.vectors, i);
    return sorted;
}

}  // namespace charvar
