#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>

namespace charvar {

using cplx = std::complex<double>;

/// Fixed-size N x N complex matrix (N = 2 or 3), row-major storage.
///
/// This is the ambient arithmetic type for everything in the library:
/// group elements, Lie-algebra directions and solver scratch all live in
/// this type. The Frobenius inner product tr(A^dag B) is the inner
/// product used throughout.
template <int N>
class Matrix {
    static_assert(N == 2 || N == 3, "only 2x2 and 3x3 matrices are supported");

public:
    static constexpr int dim = N;

    constexpr Matrix() = default;

    Matrix(std::initializer_list<cplx> entries) {
        int i = 0;
        for (const cplx& v : entries) {
            if (i < N * N) a_[i] = v;
            ++i;
        }
    }

    static Matrix zero() { return Matrix{}; }

    static Matrix identity() {
        Matrix m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(const std::array<cplx, N>& d) {
        Matrix m;
        for (int i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    cplx& operator()(int r, int c) { return a_[r * N + c]; }
    const cplx& operator()(int r, int c) const { return a_[r * N + c]; }

    const std::array<cplx, N * N>& data() const { return a_; }

    Matrix& operator+=(const Matrix& o) {
        for (int i = 0; i < N * N; ++i) a_[i] += o.a_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (int i = 0; i < N * N; ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Matrix& operator*=(const cplx& s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix l, const Matrix& r) { return l += r; }
    friend Matrix operator-(Matrix l, const Matrix& r) { return l -= r; }
    friend Matrix operator*(Matrix m, const cplx& s) { return m *= s; }
    friend Matrix operator*(const cplx& s, Matrix m) { return m *= s; }
    friend Matrix operator*(Matrix m, double s) { return m *= cplx(s, 0.0); }
    friend Matrix operator*(double s, Matrix m) { return m *= cplx(s, 0.0); }

    Matrix operator-() const {
        Matrix m = *this;
        for (auto& v : m.a_) v = -v;
        return m;
    }

    friend Matrix operator*(const Matrix& l, const Matrix& r) {
        Matrix m;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                cplx acc = 0.0;
                for (int k = 0; k < N; ++k) acc += l(i, k) * r(k, j);
                m(i, j) = acc;
            }
        return m;
    }

    bool operator==(const Matrix& o) const { return a_ == o.a_; }

    Matrix transpose() const {
        Matrix m;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    /// Conjugate transpose.
    Matrix adjoint() const {
        Matrix m;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    cplx det() const {
        const Matrix& m = *this;
        if constexpr (N == 2) {
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        } else {
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        }
    }

    /// Adjugate matrix; equals det(A) * A^{-1}.
    Matrix adjugate() const {
        const Matrix& m = *this;
        Matrix r;
        if constexpr (N == 2) {
            r(0, 0) = m(1, 1);
            r(0, 1) = -m(0, 1);
            r(1, 0) = -m(1, 0);
            r(1, 1) = m(0, 0);
        } else {
            r(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
            r(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
            r(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
            r(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
            r(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
            r(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
            r(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
            r(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
            r(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        }
        return r;
    }

    Matrix inverse() const {
        cplx d = det();
        return adjugate() * (cplx(1.0, 0.0) / d);
    }

    double frobenius_norm_sq() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return s;
    }

    double frobenius_norm() const { return std::sqrt(frobenius_norm_sq()); }

    bool all_finite() const {
        for (const auto& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

private:
    std::array<cplx, N * N> a_{};
};

/// Frobenius inner product tr(A^dag B).
template <int N>
cplx frobenius_inner(const Matrix<N>& a, const Matrix<N>& b) {
    cplx s = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) s += std::conj(a(i, j)) * b(i, j);
    return s;
}

template <int N>
double frobenius_distance(const Matrix<N>& a, const Matrix<N>& b) {
    return (a - b).frobenius_norm();
}

template <int N>
Matrix<N> commutator(const Matrix<N>& a, const Matrix<N>& b) {
    return a * b - b * a;
}

template <int N>
Matrix<N> hermitian_part(const Matrix<N>& a) {
    return (a + a.adjoint()) * 0.5;
}

/// Hermitian part with the trace removed; the orthogonal projection of a
/// Hermitian matrix onto traceless Hermitian matrices.
template <int N>
Matrix<N> traceless_hermitian_part(const Matrix<N>& a) {
    Matrix<N> h = hermitian_part(a);
    cplx t = h.trace() / double(N);
    for (int i = 0; i < N; ++i) h(i, i) -= t;
    return h;
}

template <int N>
double hermitian_deviation(const Matrix<N>& a) {
    return (a - a.adjoint()).frobenius_norm();
}

template <int N>
double unitary_deviation(const Matrix<N>& a) {
    return (a.adjoint() * a - Matrix<N>::identity()).frobenius_norm();
}

template <int N>
double normality_deviation(const Matrix<N>& a) {
    return (a * a.adjoint() - a.adjoint() * a).frobenius_norm();
}

}  // namespace charvar
