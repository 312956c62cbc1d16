#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "charvar/boundary.hpp"
#include "charvar/elements.hpp"
#include "charvar/kempf_ness.hpp"
#include "charvar/matrix.hpp"
#include "charvar/retraction.hpp"
#include "charvar/trace_coords.hpp"

namespace charvar {

/// Insertion-ordered JSON so that emitted documents are stable
/// field-for-field across runs.
using json = nlohmann::ordered_json;

// Encoding used across the repo: complex number = [re, im]; matrix =
// row-major array of rows; group-like values = {"n": 2|3, "mat": [[...]]}.

inline json to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
    return cplx(j.at(0).get<double>(), j.at(1).get<double>());
}

template <int N>
json to_json(const Matrix<N>& m) {
    json rows = json::array();
    for (int i = 0; i < N; ++i) {
        json row = json::array();
        for (int j = 0; j < N; ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

template <int N>
Matrix<N> matrix_from_json(const json& j) {
    Matrix<N> m;
    for (int i = 0; i < N; ++i)
        for (int c = 0; c < N; ++c) m(i, c) = complex_from_json(j.at(i).at(c));
    return m;
}

template <int N>
json element_to_json(const Matrix<N>& m) {
    return json{{"n", N}, {"mat", to_json(m)}};
}

template <int N>
json to_json(const GroupElement<N>& g) {
    return element_to_json<N>(g.mat());
}
template <int N>
json to_json(const UnitaryElement<N>& u) {
    return element_to_json<N>(u.mat());
}
template <int N>
json to_json(const HermitianDirection<N>& p) {
    return element_to_json<N>(p.mat());
}

template <int N>
GroupElement<N> group_element_from_json(const json& j) {
    if (j.at("n").get<int>() != N)
        throw Error(ErrorCode::DimensionMismatch, "group element has wrong dimension");
    return GroupElement<N>(matrix_from_json<N>(j.at("mat")));
}

inline json to_json(const ClassPoint& p) {
    json coords = json::array();
    for (const auto& c : p.coords) coords.push_back(to_json(c));
    return coords;
}

inline json to_json(const BoundaryVector& bv) {
    json points = json::array();
    for (const auto& p : bv.points) points.push_back(to_json(p));
    return json{{"group", group_kind_name(bv.group)}, {"points", points}};
}

inline json to_json(const TraceVector& tv) {
    json obj = json::object();
    for (size_t i = 0; i < tv.size(); ++i) obj[tv.labels[i]] = to_json(tv.values[i]);
    return obj;
}

template <int N>
json to_json(const RepTuple<N>& tuple) {
    json orbit = json::array();
    for (const auto& y : tuple.orbit) orbit.push_back(to_json(y));
    json free_parts = json::array();
    for (const auto& g : tuple.free_parts) free_parts.push_back(to_json(g));
    return json{{"orbit", orbit}, {"free", free_parts}};
}

template <int N>
json to_json(const RetractionPath<N>& path) {
    json orbit = json::array();
    for (const auto& leg : path.orbit)
        orbit.push_back(json{{"kappa", to_json(leg.kappa)}, {"pi", to_json(leg.pi)}});
    json free_parts = json::array();
    for (const auto& leg : path.free_parts)
        free_parts.push_back(json{{"k", to_json(leg.k)}, {"p", to_json(leg.p)}});
    return json{{"orbit", orbit}, {"free", free_parts}};
}

inline json to_json(const KnReport& report) {
    return json{{"F", report.f_trace},
                {"residual", report.residual_norm},
                {"iters", report.iterations},
                {"status", flow_status_name(report.status)}};
}

inline json to_json(const DimEstimate& d) {
    return json{{"dim_H", d.dim_H},
                {"dim_stab", d.dim_stab},
                {"dim_X", d.dim_X},
                {"dim_formula", d.dim_formula},
                {"match", d.match}};
}

}  // namespace charvar
