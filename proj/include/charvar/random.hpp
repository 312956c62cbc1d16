#pragma once

#include <cstdint>
#include <random>

#include "charvar/elements.hpp"
#include "charvar/matrix.hpp"
#include "charvar/numeric.hpp"

namespace charvar {

/// Seedable random source. All randomness in the library flows through an
/// instance of this class passed by the caller; there is no ambient state.
/// Gaussian variates are produced by an explicit Box-Muller transform on the
/// raw engine output so that streams are reproducible independent of any
/// standard-library distribution implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1).
    double uniform01() { return double(eng_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite
        const double u1 = (double((eng_() >> 11)) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::acos(-1.0) * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    cplx complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return cplx(re, im) * (1.0 / std::sqrt(2.0));
    }

    /// Per-sample derived seed for parallel batches: hash of seed XOR index.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed ^ index;
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-distributed element of SU(N): complex Ginibre sample, modified
/// Gram-Schmidt with positive-real diagonal (Haar on U(N)), then division by
/// a principal N-th root of the determinant.
template <int N>
UnitaryElement<N> random_unitary(Rng& rng) {
    Matrix<N> z;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) z(i, j) = rng.complex_gaussian();

    for (int c = 0; c < N; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            cplx proj = 0.0;
            for (int r = 0; r < N; ++r) proj += std::conj(z(r, prev)) * z(r, c);
            for (int r = 0; r < N; ++r) z(r, c) -= proj * z(r, prev);
        }
        double nrm = 0.0;
        for (int r = 0; r < N; ++r) nrm += std::norm(z(r, c));
        nrm = std::sqrt(nrm);
        for (int r = 0; r < N; ++r) z(r, c) /= nrm;
    }

    z = detail::unitarize(z);
    z = detail::normalize_det(z);
    return UnitaryElement<N>(z);
}

/// Random traceless Hermitian direction with unit Frobenius norm,
/// unitarily invariant in distribution.
template <int N>
HermitianDirection<N> random_hermitian_direction(Rng& rng) {
    Matrix<N> g;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) g(i, j) = rng.complex_gaussian();
    Matrix<N> h = traceless_hermitian_part(g);
    const double n = h.frobenius_norm();
    if (n < 1e-30) return random_hermitian_direction<N>(rng);
    return HermitianDirection<N>(h * (1.0 / n));
}

/// random_unitary * exp(radius * direction); radius 0 gives a unitary sample.
template <int N>
GroupElement<N> random_group_element(Rng& rng, double radius) {
    UnitaryElement<N> k = random_unitary<N>(rng);
    if (radius == 0.0) return k.group();
    HermitianDirection<N> h = random_hermitian_direction<N>(rng);
    return GroupElement<N>(k.mat() * exp_hermitian(h.mat() * radius));
}

/// Haar sample conditioned on having well-separated eigenvalues.
template <int N>
UnitaryElement<N> random_regular_unitary(Rng& rng, double min_gap = 1e-3) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        UnitaryElement<N> u = random_unitary<N>(rng);
        auto ev = eigenvalues(u.mat());
        double gap = 1e300;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) gap = std::min(gap, std::abs(ev[i] - ev[j]));
        if (gap > min_gap) return u;
    }
    throw Error(ErrorCode::NotRegular, "failed to sample a regular unitary element");
}

}  // namespace charvar
