#pragma once

#include <vector>

#include "charvar/elements.hpp"
#include "charvar/numeric.hpp"
#include "charvar/parabolic.hpp"
#include "charvar/random.hpp"
#include "charvar/trace_coords.hpp"

namespace charvar {

/// Shape of a punctured surface: genus g with b punctures, of which the
/// first m carry parabolic constraints. The free group identification uses
/// m + n = 2g + b - 1 generators, with b > m.
struct SurfaceData {
    int genus = 0;
    int punctures = 1;
    int m = 0;
    int n = 0;

    SurfaceData(int g, int b, int m_in, int n_in) : genus(g), punctures(b), m(m_in), n(n_in) {
        if (g < 0 || b < 1 || m < 0 || n < 0)
            throw Error(ErrorCode::ShapeMismatch, "negative surface datum");
        if (m >= b) throw Error(ErrorCode::ShapeMismatch, "requires b > m");
        if (m + n != 2 * g + b - 1)
            throw Error(ErrorCode::ShapeMismatch, "m + n must equal 2g + b - 1");
    }

    int generators() const { return m + n; }
};

struct BoundaryVector {
    GroupKind group;
    std::vector<ClassPoint> points;
};

/// Product of tuple components along a word of signed 1-based generator
/// indices (negative = inverse); the empty word gives the identity.
template <int N>
GroupElement<N> word_evaluate(const std::vector<GroupElement<N>>& tuple,
                              const std::vector<int>& word) {
    Matrix<N> acc = Matrix<N>::identity();
    for (int idx : word) {
        if (idx == 0 || std::abs(idx) > int(tuple.size()))
            throw Error(ErrorCode::IndexOutOfRange, "word index out of range");
        const GroupElement<N>& g = tuple[std::abs(idx) - 1];
        acc = acc * (idx > 0 ? g.mat() : g.inverse().mat());
    }
    return GroupElement<N>(acc);
}

namespace detail {

/// rho(gamma_b) = (prod_i [alpha_i, beta_i] * gamma_1 ... gamma_{b-1})^{-1},
/// with the tuple holding (gamma_1..gamma_{b-1}, alpha_1..alpha_g,
/// beta_1..beta_g) as the free generator images.
template <int N>
GroupElement<N> last_boundary_loop(const std::vector<GroupElement<N>>& tuple,
                                   const SurfaceData& surf) {
    std::vector<int> word;
    const int b = surf.punctures;
    for (int i = 0; i < surf.genus; ++i) {
        const int ai = b + i;            // 1-based index of alpha_{i+1}
        const int bi = b + surf.genus + i;
        word.insert(word.end(), {ai, bi, -ai, -bi});
    }
    for (int j = 1; j <= b - 1; ++j) word.push_back(j);
    return word_evaluate(tuple, word).inverse();
}

}  // namespace detail

/// Boundary map: class coordinates of the images of the b puncture loops.
/// The first b-1 loops are generator images; the last is determined by the
/// surface group relation.
template <int N>
BoundaryVector boundary(const std::vector<GroupElement<N>>& tuple, const SurfaceData& surf) {
    if (int(tuple.size()) != surf.generators())
        throw Error(ErrorCode::ShapeMismatch, "tuple length must be m + n");
    BoundaryVector out;
    out.group = N == 2 ? GroupKind::SL2 : GroupKind::SL3;
    for (int i = 0; i < surf.punctures - 1; ++i)
        out.points.push_back(class_coordinates(tuple[i]));
    out.points.push_back(class_coordinates(detail::last_boundary_loop(tuple, surf)));
    return out;
}

/// Parabolic boundary map: class coordinates of the first m components.
template <int N>
BoundaryVector boundary_par(const std::vector<GroupElement<N>>& tuple, int m) {
    if (m < 0 || m > int(tuple.size()))
        throw Error(ErrorCode::ShapeMismatch, "m exceeds tuple length");
    BoundaryVector out;
    out.group = N == 2 ? GroupKind::SL2 : GroupKind::SL3;
    for (int i = 0; i < m; ++i) out.points.push_back(class_coordinates(tuple[i]));
    return out;
}

inline double class_point_distance(const ClassPoint& a, const ClassPoint& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.coords.size(); ++i)
        d = std::max(d, std::abs(a.coords[i] - b.coords[i]));
    return d;
}

/// Discrepancy of the commutative square: projection of the boundary onto
/// the first m factors against the parabolic boundary. Both legs compute the
/// same traces, so this is machine zero.
template <int N>
double diagram_check(const std::vector<GroupElement<N>>& tuple, const SurfaceData& surf) {
    const BoundaryVector full = boundary(tuple, surf);
    const BoundaryVector par = boundary_par(tuple, surf.m);
    double worst = 0.0;
    for (int i = 0; i < surf.m; ++i)
        worst = std::max(worst, class_point_distance(full.points[i], par.points[i]));
    return worst;
}

/// Membership of the tuple's class in the relative character variety over
/// bvec: sup-distance of boundary(tuple) from bvec at most tol.
template <int N>
bool relative_fiber_membership(const std::vector<GroupElement<N>>& tuple, const SurfaceData& surf,
                               const BoundaryVector& bvec, double tol) {
    const BoundaryVector bd = boundary(tuple, surf);
    if (bd.points.size() != bvec.points.size())
        throw Error(ErrorCode::ShapeMismatch, "boundary vector length mismatch");
    for (size_t i = 0; i < bd.points.size(); ++i)
        if (class_point_distance(bd.points[i], bvec.points[i]) > tol) return false;
    return true;
}

struct DimEstimate {
    int dim_H = 0;
    int dim_stab = 0;
    int dim_X = 0;
    int dim_formula = 0;
    bool match = false;
};

/// Numeric dimension estimate of the parabolic character variety:
///   dim_H    = sum_i (dim G - dim centralizer(h_i)) + n dim G
///   dim_stab = kernel dimension of X -> ([X, y_1], ..., [X, y_{m+n}]) on
///              sl(N) at sampled tuples (max over samples)
///   dim_X    = dim_H - dim G + dim_stab
///   dim_formula = (n + m - 1) dim G + dim Z(G) - m rank G
/// with dim Z(G) = 0 and rank = N - 1 for SL(N, C).
template <int N>
DimEstimate dim_estimate(const ParabolicData<N>& pardata, int n_free, int samples, Rng& rng,
                         double radius = 0.7) {
    const int m = pardata.count();
    if (m + n_free < 2) throw Error(ErrorCode::TooFewFactors, "requires m + n >= 2");

    const int dim_g = N * N - 1;
    DimEstimate out;
    out.dim_H = n_free * dim_g;
    for (int i = 0; i < m; ++i) out.dim_H += dim_g - pardata.centralizers[i].dim();

    const auto& basis = detail::traceless_basis<N>();
    const int cols = int(basis.size());
    for (int s = 0; s < samples; ++s) {
        std::vector<Matrix<N>> comps;
        for (int i = 0; i < m; ++i) {
            const GroupElement<N> q = random_group_element<N>(rng, radius);
            comps.push_back(q.mat() * pardata.h[i].mat() * q.inverse().mat());
        }
        for (int j = 0; j < n_free; ++j)
            comps.push_back(random_group_element<N>(rng, radius).mat());

        DynMatrix op(int(comps.size()) * N * N, cols);
        for (int k = 0; k < cols; ++k) {
            for (size_t c = 0; c < comps.size(); ++c) {
                const Matrix<N> cm = commutator(basis[k], comps[c]);
                for (int i = 0; i < N; ++i)
                    for (int j = 0; j < N; ++j)
                        op.at(int(c) * N * N + i * N + j, k) = cm(i, j);
            }
        }
        out.dim_stab = std::max(out.dim_stab, svd_onesided(op).nullity(kRankTol));
    }

    out.dim_X = out.dim_H - dim_g + out.dim_stab;
    out.dim_formula = (n_free + m - 1) * dim_g - m * (N - 1);
    out.match = out.dim_X == out.dim_formula;
    return out;
}

}  // namespace charvar
