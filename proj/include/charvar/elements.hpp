#pragma once

#include <utility>
#include <vector>

#include "charvar/errors.hpp"
#include "charvar/matrix.hpp"
#include "charvar/numeric.hpp"

namespace charvar {

/// Element of SL(N, C): determinant one within kValidTol.
template <int N>
class GroupElement {
public:
    explicit GroupElement(const Matrix<N>& m) : mat_(m) {
        if (!m.all_finite())
            throw Error(ErrorCode::InvalidElement, "group element has non-finite entries");
        if (std::abs(m.det() - cplx(1.0)) > kValidTol)
            throw Error(ErrorCode::InvalidElement, "determinant is not 1");
    }

    static GroupElement identity() { return GroupElement(Matrix<N>::identity()); }

    const Matrix<N>& mat() const { return mat_; }

    GroupElement inverse() const { return GroupElement(mat_.adjugate() * (cplx(1.0) / mat_.det())); }

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
        return GroupElement(a.mat_ * b.mat_);
    }

private:
    Matrix<N> mat_;
};

/// Element of SU(N).
template <int N>
class UnitaryElement {
public:
    explicit UnitaryElement(const Matrix<N>& m) : mat_(m) {
        if (!m.all_finite())
            throw Error(ErrorCode::InvalidElement, "unitary element has non-finite entries");
        if (unitary_deviation(m) > kValidTol)
            throw Error(ErrorCode::InvalidElement, "matrix is not unitary");
        if (std::abs(m.det() - cplx(1.0)) > kValidTol)
            throw Error(ErrorCode::InvalidElement, "determinant is not 1");
    }

    static UnitaryElement identity() { return UnitaryElement(Matrix<N>::identity()); }

    const Matrix<N>& mat() const { return mat_; }

    GroupElement<N> group() const { return GroupElement<N>(mat_); }

    UnitaryElement inverse() const { return UnitaryElement(mat_.adjoint()); }

    friend UnitaryElement operator*(const UnitaryElement& a, const UnitaryElement& b) {
        return UnitaryElement(a.mat_ * b.mat_);
    }

private:
    Matrix<N> mat_;
};

/// Traceless Hermitian matrix: a direction in the Cartan complement p of
/// su(N) inside sl(N, C).
template <int N>
class HermitianDirection {
public:
    HermitianDirection() : mat_(Matrix<N>::zero()) {}

    explicit HermitianDirection(const Matrix<N>& m) : mat_(m) {
        if (!m.all_finite())
            throw Error(ErrorCode::InvalidElement, "direction has non-finite entries");
        if (hermitian_deviation(m) > kValidTol)
            throw Error(ErrorCode::InvalidElement, "matrix is not Hermitian");
        if (std::abs(m.trace()) > kValidTol)
            throw Error(ErrorCode::InvalidElement, "matrix is not traceless");
    }

    static HermitianDirection zero() { return HermitianDirection(); }

    const Matrix<N>& mat() const { return mat_; }

    double norm() const { return mat_.frobenius_norm(); }

    HermitianDirection scaled(double t) const { return HermitianDirection(mat_ * t); }

private:
    Matrix<N> mat_;
};

/// Basis of a complex Lie subalgebra of sl(N, C) (or a real basis, for the
/// compact-form fields of ParabolicData).
template <int N>
struct LieAlgebraBasis {
    std::vector<Matrix<N>> elements;

    int dim() const { return int(elements.size()); }
};

// ---------------------------------------------------------------------------
// Hermitian exponential / logarithm and the polar decomposition.
// ---------------------------------------------------------------------------

/// exp of a Hermitian matrix (not necessarily traceless), via its
/// eigendecomposition.
template <int N>
Matrix<N> exp_hermitian(const Matrix<N>& h) {
    HermitianEig<N> eg = hermitian_eig(h);
    Matrix<N> d;
    for (int i = 0; i < N; ++i) d(i, i) = std::exp(eg.values[i]);
    return eg.vectors * d * eg.vectors.adjoint();
}

/// Principal log of a Hermitian positive-definite matrix.
/// Throws NotPositiveDefinite when an eigenvalue is <= kValidTol.
template <int N>
Matrix<N> log_hermitian(const Matrix<N>& p) {
    HermitianEig<N> eg = hermitian_eig(p);
    for (int i = 0; i < N; ++i)
        if (eg.values[i] <= kValidTol)
            throw Error(ErrorCode::NotPositiveDefinite, "eigenvalue below tolerance");
    Matrix<N> d;
    for (int i = 0; i < N; ++i) d(i, i) = std::log(eg.values[i]);
    return eg.vectors * d * eg.vectors.adjoint();
}

template <int N>
GroupElement<N> hermitian_exp(const HermitianDirection<N>& p) {
    return GroupElement<N>(exp_hermitian(p.mat()));
}

template <int N>
HermitianDirection<N> hermitian_log(const Matrix<N>& p) {
    return HermitianDirection<N>(log_hermitian(p));
}

namespace detail {

/// One Newton step toward the unitary polar factor; cleans up last-digit
/// drift of a near-unitary matrix.
template <int N>
Matrix<N> unitarize(const Matrix<N>& k) {
    const Matrix<N> i = Matrix<N>::identity();
    return k * (i * 1.5 - (k.adjoint() * k) * 0.5);
}

/// Principal N-th root of a determinant near the unit circle; dividing by it
/// restores det = 1 without changing conjugation action.
template <int N>
Matrix<N> normalize_det(const Matrix<N>& m) {
    const cplx d = m.det();
    const cplx root = std::exp(std::log(d) / double(N));
    return m * (cplx(1.0) / root);
}

}  // namespace detail

template <int N>
struct PolarParts {
    UnitaryElement<N> k;
    HermitianDirection<N> p;
};

/// g = k * exp(p) with k unitary and p traceless Hermitian.
template <int N>
PolarParts<N> polar_decompose(const GroupElement<N>& g) {
    const Matrix<N> gram = g.mat().adjoint() * g.mat();
    Matrix<N> p = log_hermitian(gram) * 0.5;
    p = hermitian_part(p);
    Matrix<N> k = g.mat() * exp_hermitian(-p);
    k = detail::unitarize(k);
    return PolarParts<N>{UnitaryElement<N>(k), HermitianDirection<N>(p)};
}

}  // namespace charvar
