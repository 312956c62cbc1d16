#pragma once

#include <memory>
#include <vector>

#include "charvar/elements.hpp"
#include "charvar/matrix.hpp"
#include "charvar/numeric.hpp"

namespace charvar {

namespace detail {

/// Orthonormal complex basis of traceless N x N matrices (dimension N^2 - 1):
/// off-diagonal units E_ij and normalized diagonal differences.
template <int N>
const std::vector<Matrix<N>>& traceless_basis() {
    static const std::vector<Matrix<N>> basis = [] {
        std::vector<Matrix<N>> b;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                if (i == j) continue;
                Matrix<N> m;
                m(i, j) = 1.0;
                b.push_back(m);
            }
        // diag(1,-1,0,...)/sqrt(2), diag(1,1,-2,...)/sqrt(6), ...
        for (int k = 1; k < N; ++k) {
            Matrix<N> m;
            for (int i = 0; i < k; ++i) m(i, i) = 1.0;
            m(k, k) = -double(k);
            m *= cplx(1.0 / std::sqrt(double(k * (k + 1))), 0.0);
            b.push_back(m);
        }
        return b;
    }();
    return basis;
}

/// Orthonormal real basis of traceless Hermitian N x N matrices
/// (real dimension N^2 - 1): symmetric pairs, antisymmetric pairs, diagonals.
template <int N>
const std::vector<Matrix<N>>& hermitian_traceless_basis() {
    static const std::vector<Matrix<N>> basis = [] {
        std::vector<Matrix<N>> b;
        const double s = 1.0 / std::sqrt(2.0);
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                Matrix<N> sym;
                sym(i, j) = s;
                sym(j, i) = s;
                b.push_back(sym);
                Matrix<N> asym;
                asym(i, j) = cplx(0.0, -s);
                asym(j, i) = cplx(0.0, s);
                b.push_back(asym);
            }
        for (int k = 1; k < N; ++k) {
            Matrix<N> m;
            for (int i = 0; i < k; ++i) m(i, i) = 1.0;
            m(k, k) = -double(k);
            m *= cplx(1.0 / std::sqrt(double(k * (k + 1))), 0.0);
            b.push_back(m);
        }
        return b;
    }();
    return basis;
}

}  // namespace detail

/// Basis of the centralizer Lie algebra {X in sl(N,C) : Xh = hX}, computed
/// as the null space of X -> Xh - hX on traceless matrices (SVD rank cut at
/// kRankTol). For diagonalizable h the dimension is (sum of squared
/// eigenvalue multiplicities) - 1.
template <int N>
LieAlgebraBasis<N> centralizer_basis(const GroupElement<N>& h) {
    const auto& basis = detail::traceless_basis<N>();
    const int cols = int(basis.size());
    DynMatrix op(N * N, cols);
    for (int k = 0; k < cols; ++k) {
        const Matrix<N> c = basis[k] * h.mat() - h.mat() * basis[k];
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) op.at(i * N + j, k) = c(i, j);
    }
    auto null = null_space(svd_onesided(op), kRankTol);

    LieAlgebraBasis<N> out;
    for (const auto& coeffs : null) {
        Matrix<N> m;
        for (int k = 0; k < cols; ++k) m += basis[k] * coeffs[k];
        out.elements.push_back(m);
    }
    return out;
}

/// Real orthonormal basis of {X Hermitian traceless : Xh = hX}; this is the
/// Hermitian part of Lie(G_h), i.e. i * Lie(K_h).
template <int N>
std::vector<Matrix<N>> hermitian_commutant_basis(const GroupElement<N>& h) {
    const auto& basis = detail::hermitian_traceless_basis<N>();
    const int cols = int(basis.size());
    // real-linear operator: stack real and imaginary parts of Xh - hX
    DynMatrix op(2 * N * N, cols);
    for (int k = 0; k < cols; ++k) {
        const Matrix<N> c = basis[k] * h.mat() - h.mat() * basis[k];
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                op.at(i * N + j, k) = c(i, j).real();
                op.at(N * N + i * N + j, k) = c(i, j).imag();
            }
    }
    auto null = null_space(svd_onesided(op), kRankTol);

    std::vector<Matrix<N>> out;
    for (const auto& coeffs : null) {
        Matrix<N> m;
        for (int k = 0; k < cols; ++k) m += basis[k] * coeffs[k].real();
        out.push_back(hermitian_part(m));
    }
    return out;
}

/// The fixed parabolic datum h = (h_1, ..., h_m) together with precomputed
/// centralizer bases for each factor.
template <int N>
struct ParabolicData {
    std::vector<UnitaryElement<N>> h;
    std::vector<LieAlgebraBasis<N>> centralizers;          // Lie(G_i), complex
    std::vector<std::vector<Matrix<N>>> herm_centralizers; // Hermitian part of Lie(G_i), real basis
    std::vector<LieAlgebraBasis<N>> compact_centralizers;  // Lie(K_i) = skew-Hermitian part, real basis

    int count() const { return int(h.size()); }

    static std::shared_ptr<const ParabolicData> make(std::vector<UnitaryElement<N>> hs) {
        auto data = std::make_shared<ParabolicData>();
        data->h = std::move(hs);
        for (const auto& hi : data->h) {
            data->centralizers.push_back(centralizer_basis(hi.group()));
            auto herm = hermitian_commutant_basis(hi.group());
            LieAlgebraBasis<N> compact;
            for (const auto& b : herm) compact.elements.push_back(b * cplx(0.0, 1.0));
            data->herm_centralizers.push_back(std::move(herm));
            data->compact_centralizers.push_back(std::move(compact));
        }
        return data;
    }
};

/// Orthogonal (real Frobenius) projection of a Hermitian matrix onto the
/// span of an orthonormal Hermitian basis.
template <int N>
Matrix<N> project_onto(const std::vector<Matrix<N>>& basis, const Matrix<N>& p) {
    Matrix<N> out;
    for (const auto& b : basis) {
        const double coeff = frobenius_inner(b, p).real();
        out += b * coeff;
    }
    return out;
}

}  // namespace charvar
