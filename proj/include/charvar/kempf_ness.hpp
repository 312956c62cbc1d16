#pragma once

#include <deque>
#include <string>
#include <vector>

#include "charvar/elements.hpp"
#include "charvar/parabolic.hpp"

namespace charvar {

/// A point of G^m x G^n acted on by (prod G_i) x G: the f_i parametrize the
/// orbit factors as cosets (y_i = f_i h_i f_i^{-1}), the g_j are the free
/// conjugation factors.
template <int N>
struct KnPoint {
    std::vector<GroupElement<N>> f;
    std::vector<GroupElement<N>> g;
};

/// The Kempf-Ness function for the matrix-entry embedding with the
/// Frobenius norm: sum of squared norms over all components. Bounded below
/// by (m + n) * N, with equality exactly on unitary tuples.
template <int N>
double kn_function(const KnPoint<N>& x) {
    double s = 0.0;
    for (const auto& fi : x.f) s += fi.mat().frobenius_norm_sq();
    for (const auto& gj : x.g) s += gj.mat().frobenius_norm_sq();
    return s;
}

/// First-order residual of the Kempf-Ness function at the identity:
///   xi    = traceless Hermitian part of sum_i f_i f_i^dag + sum_j [g_j, g_j^dag]
///   eta_i = projection of f_i^dag f_i onto the Hermitian part of Lie(G_i)
/// The residual vanishes exactly on unitary tuples.
template <int N>
struct KnResidual {
    HermitianDirection<N> xi;
    std::vector<HermitianDirection<N>> etas;

    double norm_sq() const {
        double s = xi.mat().frobenius_norm_sq();
        for (const auto& e : etas) s += e.mat().frobenius_norm_sq();
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }
};

template <int N>
KnResidual<N> kn_residual(const KnPoint<N>& x, const ParabolicData<N>& pardata) {
    if (int(x.f.size()) != pardata.count())
        throw Error(ErrorCode::DimensionMismatch, "orbit factor count does not match pardata");

    Matrix<N> grad;
    for (const auto& fi : x.f) grad += fi.mat() * fi.mat().adjoint();
    for (const auto& gj : x.g) grad += commutator(gj.mat(), gj.mat().adjoint());

    KnResidual<N> res;
    res.xi = HermitianDirection<N>(traceless_hermitian_part(grad));
    for (size_t i = 0; i < x.f.size(); ++i) {
        const Matrix<N> p = x.f[i].mat().adjoint() * x.f[i].mat();
        Matrix<N> eta = project_onto(pardata.herm_centralizers[i], hermitian_part(p));
        res.etas.push_back(HermitianDirection<N>(traceless_hermitian_part(eta)));
    }
    return res;
}

enum class FlowStatus { Converged, MaxIterations, NonClosedOrbitSuspected };

inline const char* flow_status_name(FlowStatus s) {
    switch (s) {
        case FlowStatus::Converged: return "Converged";
        case FlowStatus::MaxIterations: return "MaxIterations";
        case FlowStatus::NonClosedOrbitSuspected: return "NonClosedOrbitSuspected";
    }
    return "Unknown";
}

struct KnReport {
    std::vector<double> f_trace;  // Kempf-Ness values of accepted steps
    double residual_norm = 0.0;
    long iterations = 0;
    FlowStatus status = FlowStatus::Converged;
};

namespace detail {

template <int N>
void renormalize_dets(KnPoint<N>& x) {
    auto fix = [](GroupElement<N>& g) {
        if (std::abs(g.mat().det() - cplx(1.0)) > 1e-10)
            g = GroupElement<N>(normalize_det(g.mat()));
    };
    for (auto& fi : x.f) fix(fi);
    for (auto& gj : x.g) fix(gj);
}

}  // namespace detail

/// First-order descent of the Kempf-Ness function. One step moves
///   f_i <- exp(-s xi) f_i exp(-s eta_i),   g_j <- exp(-s xi) g_j exp(s xi)
/// with a backtracking step size (initial s = 1/(1 + ||residual||), shrink
/// factor 0.5, Armijo sufficient decrease). Stagnating residual decay while
/// above tolerance (or at the moment tolerance is reached) flags a suspected
/// non-closed orbit; there is no terminating certificate for closedness, so
/// this is a diagnostic, not a proof.
template <int N>
std::pair<KnPoint<N>, KnReport> kn_flow(KnPoint<N> x, const ParabolicData<N>& pardata, double tol,
                                        long max_iter) {
    constexpr int kWindow = 500;
    constexpr double kStallRatio = 0.999;  // < 1e-3 relative decrease per window
    constexpr double kLateRatio = 0.9;     // stagnation test at the moment of convergence
    constexpr double kArmijo = 1e-4;

    KnReport report;
    std::deque<double> history;
    double f_cur = kn_function(x);
    report.f_trace.push_back(f_cur);

    for (long it = 0; it < max_iter; ++it) {
        const KnResidual<N> res = kn_residual(x, pardata);
        const double r = res.norm();
        report.residual_norm = r;
        report.iterations = it;
        history.push_back(r);
        if (int(history.size()) > kWindow + 1) history.pop_front();

        const bool window_full = int(history.size()) == kWindow + 1;
        if (r <= tol) {
            const bool stagnant = window_full && history.front() > 0.0 &&
                                  r / history.front() > kLateRatio;
            report.status =
                stagnant ? FlowStatus::NonClosedOrbitSuspected : FlowStatus::Converged;
            return {std::move(x), std::move(report)};
        }
        if (window_full && history.front() > 0.0 && r / history.front() > kStallRatio) {
            report.status = FlowStatus::NonClosedOrbitSuspected;
            return {std::move(x), std::move(report)};
        }

        double s = 1.0 / (1.0 + r);
        bool accepted = false;
        const double r2 = res.norm_sq();
        while (s > 1e-18) {
            const Matrix<N> left = exp_hermitian(res.xi.mat() * (-s));
            const Matrix<N> right = exp_hermitian(res.xi.mat() * s);
            KnPoint<N> trial;
            for (size_t i = 0; i < x.f.size(); ++i) {
                const Matrix<N> e = exp_hermitian(res.etas[i].mat() * (-s));
                trial.f.push_back(GroupElement<N>(left * x.f[i].mat() * e));
            }
            for (const auto& gj : x.g)
                trial.g.push_back(GroupElement<N>(left * gj.mat() * right));
            const double f_new = kn_function(trial);
            if (f_new <= f_cur - kArmijo * s * 2.0 * r2) {
                detail::renormalize_dets(trial);
                x = std::move(trial);
                f_cur = f_new;
                report.f_trace.push_back(f_cur);
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted) {
            report.status = r <= tol ? FlowStatus::Converged : FlowStatus::MaxIterations;
            report.iterations = it;
            return {std::move(x), std::move(report)};
        }
    }

    const KnResidual<N> res = kn_residual(x, pardata);
    report.residual_norm = res.norm();
    report.iterations = max_iter;
    report.status =
        report.residual_norm <= tol ? FlowStatus::Converged : FlowStatus::MaxIterations;
    return {std::move(x), std::move(report)};
}

enum class OrbitStatus { Closed, NotClosed, Inconclusive };

inline const char* orbit_status_name(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::Closed: return "Closed";
        case OrbitStatus::NotClosed: return "NotClosed";
        case OrbitStatus::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

/// Closed-orbit diagnostic: runs the descent flow with a generous budget and
/// maps the outcome. Converged -> Closed, stall -> NotClosed, exhausted
/// budget -> Inconclusive.
template <int N>
OrbitStatus closed_orbit_probe(const KnPoint<N>& x, const ParabolicData<N>& pardata,
                               double tol = 1e-6, long budget = 1000000) {
    auto [end, report] = kn_flow(x, pardata, tol, budget);
    switch (report.status) {
        case FlowStatus::Converged: return OrbitStatus::Closed;
        case FlowStatus::NonClosedOrbitSuspected: return OrbitStatus::NotClosed;
        case FlowStatus::MaxIterations: return OrbitStatus::Inconclusive;
    }
    return OrbitStatus::Inconclusive;
}

}  // namespace charvar
