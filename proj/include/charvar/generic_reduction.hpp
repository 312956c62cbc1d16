#pragma once

#include <string>
#include <vector>

#include "charvar/elements.hpp"
#include "charvar/numeric.hpp"
#include "charvar/parabolic.hpp"
#include "charvar/retraction.hpp"
#include "charvar/trace_coords.hpp"

namespace charvar {

/// True when the eigenvalues are pairwise distinct with gaps above
/// kClusterTol; for unitary x this is regularity in the Weyl-group sense and
/// the centralizer in K is the maximal torus.
template <int N>
bool is_regular(const GroupElement<N>& x) {
    const auto ev = eigenvalues(x.mat());
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (std::abs(ev[i] - ev[j]) <= kClusterTol) return false;
    return true;
}

/// A fixed regular torus element in diagonal form together with a basis of
/// its (diagonal) centralizer.
template <int N>
struct TorusContext {
    UnitaryElement<N> x;
    LieAlgebraBasis<N> torus_basis;

    static TorusContext make(const UnitaryElement<N>& x) {
        double offdiag = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if (i != j) offdiag += std::norm(x.mat()(i, j));
        if (std::sqrt(offdiag) > kValidTol)
            throw Error(ErrorCode::InvalidElement, "torus element must be diagonal");
        if (!is_regular(x.group()))
            throw Error(ErrorCode::NotRegular, "torus element must have distinct eigenvalues");
        return TorusContext{x, centralizer_basis(x.group())};
    }
};

/// eta: prepends the regular element x as the first orbit component,
/// inducing H_{h',n}/T -> H_{h,n}/K on classes for h = (x, h').
template <int N>
RepTuple<N> eta(const TorusContext<N>& ctx, const RepTuple<N>& rest) {
    if (!is_regular(ctx.x.group()))
        throw Error(ErrorCode::NotRegular, "context element is not regular");
    std::vector<UnitaryElement<N>> hs;
    hs.push_back(ctx.x);
    for (const auto& hi : rest.pardata->h) hs.push_back(hi);
    auto pardata = ParabolicData<N>::make(std::move(hs));

    std::vector<GroupElement<N>> orbit;
    orbit.push_back(ctx.x.group());
    for (const auto& y : rest.orbit) orbit.push_back(y);
    return RepTuple<N>(pardata, std::move(orbit), rest.free_parts);
}

/// Inverse direction: given a tuple over h = (x, h') whose first orbit
/// component y is unitary with the spectrum of x, finds a unitary u with
/// u y u^{-1} = x (u is determined up to a left torus factor) and returns
/// the remaining components conjugated by u, as a tuple over h'.
template <int N>
RepTuple<N> eta_inverse(const TorusContext<N>& ctx, const RepTuple<N>& tuple) {
    if (!is_regular(ctx.x.group()))
        throw Error(ErrorCode::NotRegular, "context element is not regular");
    if (tuple.m() < 1) throw Error(ErrorCode::ShapeMismatch, "tuple has no orbit component");

    const GroupElement<N>& y = tuple.orbit[0];
    if (unitary_deviation(y.mat()) > 1e-8)
        throw Error(ErrorCode::SpectrumMismatch, "first orbit component must be unitary");

    // eigenpairs of y matched against the diagonal of x
    NormalEig<N> ey = normal_eig(y.mat());
    std::array<cplx, N> xdiag;
    for (int i = 0; i < N; ++i) xdiag[i] = ctx.x.mat()(i, i);
    const auto pick = detail::match_spectra<N>(xdiag, ey.values, kClusterTol);

    // u maps the eigenvector for x_ii to e_i
    Matrix<N> u;
    for (int i = 0; i < N; ++i)
        for (int c = 0; c < N; ++c) u(i, c) = std::conj(ey.vectors(c, pick[i]));
    u = detail::unitarize(u);
    u = detail::normalize_det(u);
    const Matrix<N> uinv = u.adjoint();

    std::vector<UnitaryElement<N>> hs(tuple.pardata->h.begin() + 1, tuple.pardata->h.end());
    auto pardata = ParabolicData<N>::make(std::move(hs));

    std::vector<GroupElement<N>> orbit;
    for (int i = 1; i < tuple.m(); ++i)
        orbit.push_back(GroupElement<N>(u * tuple.orbit[i].mat() * uinv));
    std::vector<GroupElement<N>> free_parts;
    for (const auto& g : tuple.free_parts)
        free_parts.push_back(GroupElement<N>(u * g.mat() * uinv));
    return RepTuple<N>(pardata, std::move(orbit), std::move(free_parts));
}

/// Conjugation-class witness: traces of all words of length <= depth in the
/// alphabet of tuple components and their inverses, plus the fixed x when a
/// context is supplied (so that the torus ambiguity of eta_inverse cancels).
template <int N>
TraceVector fingerprint(const RepTuple<N>& tuple, const TorusContext<N>* ctx, int depth) {
    if (depth < 1) throw Error(ErrorCode::ShapeMismatch, "depth must be at least 1");

    std::vector<Matrix<N>> letters;
    std::vector<std::string> names;
    if (ctx != nullptr) {
        letters.push_back(ctx->x.mat());
        names.push_back("x");
    }
    auto add = [&](const GroupElement<N>& g, const std::string& base) {
        letters.push_back(g.mat());
        names.push_back(base);
        letters.push_back(g.inverse().mat());
        names.push_back(base + "'");
    };
    for (size_t i = 0; i < tuple.orbit.size(); ++i)
        add(tuple.orbit[i], "y" + std::to_string(i + 1));
    for (size_t j = 0; j < tuple.free_parts.size(); ++j)
        add(tuple.free_parts[j], "g" + std::to_string(j + 1));

    TraceVector out;
    // breadth-first extension: each word of length L+1 is one product away
    // from its length-L prefix
    std::vector<Matrix<N>> frontier{Matrix<N>::identity()};
    std::vector<std::string> frontier_names{""};
    for (int len = 1; len <= depth; ++len) {
        std::vector<Matrix<N>> next;
        std::vector<std::string> next_names;
        next.reserve(frontier.size() * letters.size());
        for (size_t w = 0; w < frontier.size(); ++w)
            for (size_t a = 0; a < letters.size(); ++a) {
                Matrix<N> prod = frontier[w] * letters[a];
                std::string name =
                    frontier_names[w].empty() ? names[a] : frontier_names[w] + "." + names[a];
                out.labels.push_back(name);
                out.values.push_back(prod.trace());
                next.push_back(std::move(prod));
                next_names.push_back(std::move(name));
            }
        frontier = std::move(next);
        frontier_names = std::move(next_names);
    }
    return out;
}

template <int N>
TraceVector fingerprint(const RepTuple<N>& tuple, int depth) {
    return fingerprint<N>(tuple, nullptr, depth);
}

/// Sup-distance between two fingerprints of the same shape.
inline double fingerprint_distance(const TraceVector& a, const TraceVector& b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::ShapeMismatch, "fingerprints have different shapes");
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.values[i] - b.values[i]));
    return d;
}

}  // namespace charvar
