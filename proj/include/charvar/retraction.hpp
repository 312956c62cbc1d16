#pragma once

#include <memory>
#include <vector>

#include "charvar/elements.hpp"
#include "charvar/numeric.hpp"
#include "charvar/parabolic.hpp"

namespace charvar {

namespace detail {

/// Greedy nearest-point matching of the spectrum of y against a reference
/// spectrum, reference order fixed (argument ascending). Returns the index
/// into ev_y chosen for each reference eigenvalue, or throws.
template <int N>
std::array<int, N> match_spectra(const std::array<cplx, N>& ref, const std::array<cplx, N>& ev_y,
                                 double tol) {
    std::array<int, N> pick{};
    std::array<bool, N> used{};
    for (int i = 0; i < N; ++i) {
        int best = -1;
        double bd = 1e300;
        for (int j = 0; j < N; ++j) {
            if (used[j]) continue;
            const double d = std::abs(ref[i] - ev_y[j]);
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        if (best < 0 || bd > tol)
            throw Error(ErrorCode::SpectrumMismatch, "eigenvalue multisets differ beyond tolerance");
        used[best] = true;
        pick[i] = best;
    }
    return pick;
}

}  // namespace detail

/// A point of H_{h,n}: m orbit components y_i (each with the spectrum of the
/// corresponding h_i) and n free components.
template <int N>
struct RepTuple {
    std::shared_ptr<const ParabolicData<N>> pardata;
    std::vector<GroupElement<N>> orbit;
    std::vector<GroupElement<N>> free_parts;

    RepTuple(std::shared_ptr<const ParabolicData<N>> data, std::vector<GroupElement<N>> orbit_in,
             std::vector<GroupElement<N>> free_in)
        : pardata(std::move(data)), orbit(std::move(orbit_in)), free_parts(std::move(free_in)) {
        if (!pardata || int(orbit.size()) != pardata->count())
            throw Error(ErrorCode::ShapeMismatch, "orbit component count does not match pardata");
        for (size_t i = 0; i < orbit.size(); ++i) {
            const auto ev_h = eigenvalues(pardata->h[i].mat());
            const auto ev_y = eigenvalues(orbit[i].mat());
            detail::match_spectra<N>(ev_h, ev_y, kClusterTol);
        }
    }

    int m() const { return int(orbit.size()); }
    int n() const { return int(free_parts.size()); }
};

/// The deformation retraction of G onto K: with g = k exp(p),
/// phi(g, t) = k exp(t p). t = 1 is the identity end, t = 0 the compact end.
/// Fixes SU(N) pointwise and is K x K equivariant.
template <int N>
GroupElement<N> phi(const GroupElement<N>& g, double t) {
    PolarParts<N> kp = polar_decompose(g);
    return GroupElement<N>(kp.k.mat() * exp_hermitian(kp.p.mat() * t));
}

/// Solves q h q^{-1} = y for q with det q = 1, by matching eigenbases.
/// When y is normal the returned q is unitary. Throws SpectrumMismatch or
/// NotDiagonalizable.
template <int N>
GroupElement<N> orbit_solve(const GroupElement<N>& y, const UnitaryElement<N>& h) {
    NormalEig<N> eh = normal_eig(h.mat());

    Matrix<N> qy;
    std::array<cplx, N> ev_y;
    const bool y_normal = normality_deviation(y.mat()) <= 1e-10;
    if (y_normal) {
        NormalEig<N> ey = normal_eig(y.mat());
        qy = ey.vectors;
        ev_y = ey.values;
    } else {
        SpectralDecomposition<N> sd = spectral_decompose(y.mat());
        if (!sd.diagonalizable)
            throw Error(ErrorCode::NotDiagonalizable, "orbit component has a defective eigenvalue");
        qy = sd.vectors;
        ev_y = sd.values;
    }

    const auto pick = detail::match_spectra<N>(eh.values, ev_y, kClusterTol);
    Matrix<N> qy_matched;
    for (int i = 0; i < N; ++i)
        for (int r = 0; r < N; ++r) qy_matched(r, i) = qy(r, pick[i]);

    Matrix<N> q = qy_matched * eh.vectors.adjoint();
    if (y_normal) q = detail::unitarize(q);
    q = detail::normalize_det(q);
    return GroupElement<N>(q);
}

/// Per-factor data of the product retraction path: evaluable at any
/// t in [0, 1], t = 1 reproducing the input tuple and t = 0 landing in the
/// compact locus H_{h,n}^K.
template <int N>
struct RetractionPath {
    struct OrbitLeg {
        UnitaryElement<N> kappa;
        HermitianDirection<N> pi;
    };
    struct FreeLeg {
        UnitaryElement<N> k;
        HermitianDirection<N> p;
    };

    std::shared_ptr<const ParabolicData<N>> pardata;
    std::vector<OrbitLeg> orbit;
    std::vector<FreeLeg> free_parts;
};

/// Builds the retraction path of a tuple: orbit components follow
/// y_i(t) = kappa_i exp(t pi_i) h_i exp(-t pi_i) kappa_i^{-1} where
/// orbit_solve output factors as kappa_i exp(pi_i); free components follow
/// g_j(t) = k_j exp(t p_j).
template <int N>
RetractionPath<N> build_retraction(const RepTuple<N>& tuple) {
    RetractionPath<N> path;
    path.pardata = tuple.pardata;
    for (int i = 0; i < tuple.m(); ++i) {
        GroupElement<N> q = orbit_solve(tuple.orbit[i], tuple.pardata->h[i]);
        PolarParts<N> kp = polar_decompose(q);
        path.orbit.push_back({kp.k, kp.p});
    }
    for (int j = 0; j < tuple.n(); ++j) {
        PolarParts<N> kp = polar_decompose(tuple.free_parts[j]);
        path.free_parts.push_back({kp.k, kp.p});
    }
    return path;
}

template <int N>
RepTuple<N> evaluate_path(const RetractionPath<N>& path, double t) {
    std::vector<GroupElement<N>> orbit;
    std::vector<GroupElement<N>> free_parts;
    for (size_t i = 0; i < path.orbit.size(); ++i) {
        const auto& leg = path.orbit[i];
        const Matrix<N> e = exp_hermitian(leg.pi.mat() * t);
        const Matrix<N> einv = exp_hermitian(leg.pi.mat() * (-t));
        const Matrix<N> y =
            leg.kappa.mat() * e * path.pardata->h[i].mat() * einv * leg.kappa.mat().adjoint();
        orbit.push_back(GroupElement<N>(y));
    }
    for (const auto& leg : path.free_parts) {
        free_parts.push_back(GroupElement<N>(leg.k.mat() * exp_hermitian(leg.p.mat() * t)));
    }
    return RepTuple<N>(path.pardata, std::move(orbit), std::move(free_parts));
}

}  // namespace charvar
