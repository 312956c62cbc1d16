#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "charvar/elements.hpp"
#include "charvar/matrix.hpp"

namespace charvar {

enum class GroupKind { SL2, SL3 };

inline const char* group_kind_name(GroupKind g) { return g == GroupKind::SL2 ? "sl2" : "sl3"; }

/// Labeled vector of trace values.
struct TraceVector {
    std::vector<std::string> labels;
    std::vector<cplx> values;

    size_t size() const { return values.size(); }
};

/// Coordinates on the conjugation quotient G // G ~ T // W: the trace for
/// SL(2), the pair (tr g, tr g^{-1}) for SL(3).
struct ClassPoint {
    GroupKind group;
    std::vector<cplx> coords;
};

template <int N>
ClassPoint class_coordinates(const GroupElement<N>& g) {
    if constexpr (N == 2) {
        return ClassPoint{GroupKind::SL2, {g.mat().trace()}};
    } else {
        return ClassPoint{GroupKind::SL3, {g.mat().trace(), g.mat().inverse().trace()}};
    }
}

inline std::array<cplx, 3> sl2_trace_triple(const GroupElement<2>& g1, const GroupElement<2>& g2) {
    return {g1.mat().trace(), g2.mat().trace(), (g1.mat() * g2.mat()).trace()};
}

namespace detail {

/// Root of z + 1/z = x of larger modulus (deterministic branch; x = ±2
/// yields z = ±1).
inline cplx half_trace_root(const cplx& x) {
    const cplx disc = std::sqrt(x * x - 4.0);
    const cplx r1 = (x + disc) * 0.5;
    const cplx r2 = (x - disc) * 0.5;
    return std::abs(r1) >= std::abs(r2) ? r1 : r2;
}

}  // namespace detail

/// Section of sl2_trace_triple: for any (x, y, z) returns a pair with that
/// trace triple. g1 is upper triangular [[l,1],[0,1/l]], g2 lower triangular
/// [[u,0],[s,1/u]] with s = z - l u - 1/(l u); at x = ±2 the construction
/// degenerates to a Jordan block, which keeps the section total.
inline std::pair<GroupElement<2>, GroupElement<2>> sl2_lift(const cplx& x, const cplx& y,
                                                            const cplx& z) {
    const cplx l = detail::half_trace_root(x);
    const cplx u = detail::half_trace_root(y);
    const cplx s = z - l * u - 1.0 / (l * u);
    Matrix<2> g1{l, 1.0, 0.0, 1.0 / l};
    Matrix<2> g2{u, 0.0, s, 1.0 / u};
    return {GroupElement<2>(g1), GroupElement<2>(g2)};
}

/// The seven traces (a, b, c, d, x, y, z) of an SL(2) triple:
/// a = tr g1, b = tr g2, c = tr g3, d = tr g1 g2 g3,
/// x = tr g1 g2, y = tr g2 g3, z = tr g3 g1.
inline TraceVector sl2_seven_traces(const GroupElement<2>& g1, const GroupElement<2>& g2,
                                    const GroupElement<2>& g3) {
    TraceVector tv;
    tv.labels = {"a", "b", "c", "d", "x", "y", "z"};
    tv.values = {g1.mat().trace(),
                 g2.mat().trace(),
                 g3.mat().trace(),
                 (g1.mat() * g2.mat() * g3.mat()).trace(),
                 (g1.mat() * g2.mat()).trace(),
                 (g2.mat() * g3.mat()).trace(),
                 (g3.mat() * g1.mat()).trace()};
    return tv;
}

/// Two variants of the rank-3 trace relation. PaperPrinted carries the abcd
/// term with a minus sign and does not vanish on trace images (it evaluates
/// to -32 at the identity representation); Corrected flips that sign and
/// vanishes identically on images of sl2_seven_traces.
enum class FrickeVariant { PaperPrinted, Corrected };

inline cplx fricke_cubic(const cplx& a, const cplx& b, const cplx& c, const cplx& d, const cplx& x,
                         const cplx& y, const cplx& z,
                         FrickeVariant variant = FrickeVariant::Corrected) {
    const cplx base = x * x + y * y + z * z + x * y * z - (a * b + c * d) * x -
                      (a * d + b * c) * y - (a * c + b * d) * z - 4.0 + a * a + b * b + c * c +
                      d * d;
    const cplx q = a * b * c * d;
    return variant == FrickeVariant::PaperPrinted ? base - q : base + q;
}

inline cplx fricke_cubic(const TraceVector& seven, FrickeVariant variant = FrickeVariant::Corrected) {
    const auto& v = seven.values;
    return fricke_cubic(v[0], v[1], v[2], v[3], v[4], v[5], v[6], variant);
}

/// The nine traces (t1..t9) of an SL(3) pair:
/// t1 = tr g1, t2 = tr g1^{-1}, t3 = tr g2, t4 = tr g2^{-1}, t5 = tr g1 g2,
/// t6 = tr (g1 g2)^{-1}, t7 = tr g1^{-1} g2, t8 = tr g1 g2^{-1},
/// t9 = tr g1 g2 g1^{-1} g2^{-1}.
inline TraceVector sl3_nine_traces(const GroupElement<3>& g1, const GroupElement<3>& g2) {
    const Matrix<3>&m1 = g1.mat(), &m2 = g2.mat();
    const Matrix<3> i1 = g1.inverse().mat();
    const Matrix<3> i2 = g2.inverse().mat();
    TraceVector tv;
    tv.labels = {"t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9"};
    tv.values = {m1.trace(),
                 i1.trace(),
                 m2.trace(),
                 i2.trace(),
                 (m1 * m2).trace(),
                 (i2 * i1).trace(),
                 (i1 * m2).trace(),
                 (m1 * i2).trace(),
                 (m1 * m2 * i1 * i2).trace()};
    return tv;
}

/// Transpose both components. Preserves t1..t8 and sends t9 to
/// tr(g2^{-1} g1^{-1} g2 g1), the generically distinct second value over the
/// same first eight coordinates; applying it twice is the identity.
inline std::pair<GroupElement<3>, GroupElement<3>> sl3_transpose_involution(
    const GroupElement<3>& g1, const GroupElement<3>& g2) {
    return {GroupElement<3>(g1.mat().transpose()), GroupElement<3>(g2.mat().transpose())};
}

}  // namespace charvar
