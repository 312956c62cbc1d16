#include <catch2/catch_amalgamated.hpp>

#include "charvar/charvar.hpp"
#include "oracles.hpp"

using namespace charvar;

namespace {

template <int N>
std::shared_ptr<const ParabolicData<N>> random_pardata(Rng& rng, int m) {
    std::vector<UnitaryElement<N>> hs;
    for (int i = 0; i < m; ++i) hs.push_back(random_regular_unitary<N>(rng));
    return ParabolicData<N>::make(std::move(hs));
}

template <int N>
KnPoint<N> unitary_point(Rng& rng, int m, int n) {
    KnPoint<N> x;
    for (int i = 0; i < m; ++i) x.f.push_back(random_unitary<N>(rng).group());
    for (int j = 0; j < n; ++j) x.g.push_back(random_unitary<N>(rng).group());
    return x;
}

/// Left-translate by w and conjugate the free part: stays in the orbit of x.
template <int N>
KnPoint<N> act(const GroupElement<N>& w, const KnPoint<N>& x) {
    KnPoint<N> out;
    for (const auto& fi : x.f) out.f.push_back(GroupElement<N>(w.mat() * fi.mat()));
    for (const auto& gj : x.g)
        out.g.push_back(GroupElement<N>(w.mat() * gj.mat() * w.inverse().mat()));
    return out;
}

/// F along the curve f_i(s) = exp(s xi) f_i exp(s eta_i),
/// g_j(s) = exp(s xi) g_j exp(-s xi).
template <int N>
double f_along(const KnPoint<N>& x, const KnResidual<N>& res, double s) {
    const Matrix<N> l = exp_hermitian(res.xi.mat() * s);
    const Matrix<N> linv = exp_hermitian(res.xi.mat() * (-s));
    double f = 0.0;
    for (size_t i = 0; i < x.f.size(); ++i) {
        const Matrix<N> e = exp_hermitian(res.etas[i].mat() * s);
        f += (l * x.f[i].mat() * e).frobenius_norm_sq();
    }
    for (const auto& gj : x.g) f += (l * gj.mat() * linv).frobenius_norm_sq();
    return f;
}

}  // namespace

TEST_CASE("kn_function values and lower bound") {
    Rng rng(31);
    SECTION("unitary tuples sit at the lower bound") {
        const auto x = unitary_point<2>(rng, 1, 1);
        REQUIRE(kn_function(x) == Catch::Approx(4.0).margin(1e-12));
    }
    SECTION("diagonal example") {
        KnPoint<2> x;
        x.f.push_back(GroupElement<2>(Matrix<2>{2.0, 0.0, 0.0, 0.5}));
        REQUIRE(kn_function(x) == Catch::Approx(4.25).margin(1e-14));
    }
    SECTION("F dominates the value at the unitarized tuple") {
        for (int trial = 0; trial < 1000; ++trial) {
            KnPoint<3> x, polarized;
            for (int j = 0; j < 2; ++j) {
                const auto g = random_group_element<3>(rng, 1.5);
                x.g.push_back(g);
                polarized.g.push_back(polar_decompose(g).k.group());
            }
            REQUIRE(kn_function(x) >= kn_function(polarized) - 1e-12);
        }
    }
}

TEST_CASE("kn_residual") {
    Rng rng(32);
    SECTION("vanishes on unitary tuples") {
        auto pardata = random_pardata<2>(rng, 2);
        for (int trial = 0; trial < 200; ++trial) {
            KnPoint<2> x = unitary_point<2>(rng, 2, 1);
            REQUIRE(kn_residual(x, *pardata).norm() < 1e-12);
        }
    }
    SECTION("unipotent free component") {
        auto pardata = ParabolicData<2>::make({});
        KnPoint<2> x;
        x.g.push_back(GroupElement<2>(Matrix<2>{1.0, 1.0, 0.0, 1.0}));
        const auto res = kn_residual(x, *pardata);
        REQUIRE(res.norm() > 0.5);
        REQUIRE(frobenius_distance(res.xi.mat(), Matrix<2>{1.0, 0.0, 0.0, -1.0}) < 1e-14);
    }
    SECTION("finite differences confirm the gradient") {
        auto pardata2 = random_pardata<2>(rng, 1);
        auto pardata3 = random_pardata<3>(rng, 1);
        const double step = 1e-5;
        for (int trial = 0; trial < 100; ++trial) {
            if (trial % 2 == 0) {
                KnPoint<2> x;
                x.f.push_back(random_group_element<2>(rng, 1.0));
                x.g.push_back(random_group_element<2>(rng, 1.0));
                const auto res = kn_residual(x, *pardata2);
                if (res.norm() < 1e-3) continue;
                const double fd = (f_along(x, res, step) - f_along(x, res, -step)) / (2 * step);
                const double expected = 2.0 * res.norm_sq();
                REQUIRE(std::abs(fd - expected) < 1e-5 * std::max(1.0, std::abs(expected)));
            } else {
                KnPoint<3> x;
                x.f.push_back(random_group_element<3>(rng, 1.0));
                x.g.push_back(random_group_element<3>(rng, 1.0));
                const auto res = kn_residual(x, *pardata3);
                if (res.norm() < 1e-3) continue;
                const double fd = (f_along(x, res, step) - f_along(x, res, -step)) / (2 * step);
                const double expected = 2.0 * res.norm_sq();
                REQUIRE(std::abs(fd - expected) < 1e-5 * std::max(1.0, std::abs(expected)));
            }
        }
    }
    SECTION("residual is linear in a small displacement") {
        auto pardata = random_pardata<2>(rng, 1);
        const auto p = random_hermitian_direction<2>(rng);
        auto at = [&](double eps) {
            KnPoint<2> x;
            x.f.push_back(GroupElement<2>(exp_hermitian(p.mat() * eps) * pardata->h[0].mat()));
            return kn_residual(x, *pardata).norm();
        };
        const double r1 = at(1e-4);
        const double r2 = at(5e-5);
        REQUIRE(r1 > 0.0);
        REQUIRE(r1 / r2 == Catch::Approx(2.0).epsilon(1e-2));
    }
    SECTION("norm is invariant under compact moves") {
        auto pardata = random_pardata<2>(rng, 1);
        for (int trial = 0; trial < 100; ++trial) {
            KnPoint<2> x;
            x.f.push_back(random_group_element<2>(rng, 1.0));
            x.g.push_back(random_group_element<2>(rng, 1.0));
            const double r0 = kn_residual(x, *pardata).norm();

            const auto u = random_unitary<2>(rng);
            // unitary element of K_1: exp of a skew-Hermitian centralizer element
            Matrix<2> skew;
            for (const auto& s : pardata->compact_centralizers[0].elements)
                skew += s * (2.0 * rng.uniform01() - 1.0);
            const Matrix<2> v = oracles::expm_taylor(skew);

            KnPoint<2> moved;
            moved.f.push_back(GroupElement<2>(u.mat() * x.f[0].mat() * v));
            moved.g.push_back(GroupElement<2>(u.mat() * x.g[0].mat() * u.mat().adjoint()));
            REQUIRE(std::abs(kn_residual(moved, *pardata).norm() - r0) < 1e-8);
        }
    }
    SECTION("zero-residual points stay zero under unitary moves") {
        auto pardata = random_pardata<3>(rng, 1);
        for (int trial = 0; trial < 50; ++trial) {
            KnPoint<3> x = unitary_point<3>(rng, 1, 1);
            const auto u = random_unitary<3>(rng);
            const KnPoint<3> moved = act(u.group(), x);
            REQUIRE(kn_residual(moved, *pardata).norm() < 1e-10);
        }
    }
    SECTION("shape mismatch is reported") {
        auto pardata = random_pardata<2>(rng, 2);
        KnPoint<2> x = unitary_point<2>(rng, 1, 0);
        try {
            kn_residual(x, *pardata);
            FAIL("expected DimensionMismatch");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::DimensionMismatch);
        }
    }
}

TEST_CASE("kn_flow") {
    Rng rng(33);
    SECTION("unitary start converges immediately") {
        auto pardata = random_pardata<2>(rng, 1);
        const auto x = unitary_point<2>(rng, 1, 1);
        auto [end, report] = kn_flow(x, *pardata, 1e-6, 1000);
        REQUIRE(report.status == FlowStatus::Converged);
        REQUIRE(report.iterations == 0);
    }
    SECTION("conjugated unitary tuples flow back to the compact locus") {
        auto pardata2 = random_pardata<2>(rng, 1);
        auto pardata0 = ParabolicData<3>::make({});
        for (int trial = 0; trial < 20; ++trial) {
            {
                const auto w = random_group_element<2>(rng, 1.0);
                const KnPoint<2> x = act(w, unitary_point<2>(rng, 1, 1));
                auto [end, report] = kn_flow(x, *pardata2, 1e-6, 10000);
                REQUIRE(report.status == FlowStatus::Converged);
                REQUIRE(report.residual_norm <= 1e-6);
                for (size_t i = 1; i < report.f_trace.size(); ++i)
                    REQUIRE(report.f_trace[i] <= report.f_trace[i - 1] + 1e-12);
                for (const auto& c : end.f) REQUIRE(std::abs(c.mat().det() - cplx(1.0)) < 1e-9);
                for (const auto& c : end.g) REQUIRE(std::abs(c.mat().det() - cplx(1.0)) < 1e-9);
            }
            {
                const auto w = random_group_element<3>(rng, 0.8);
                const KnPoint<3> x = act(w, unitary_point<3>(rng, 0, 2));
                auto [end, report] = kn_flow(x, *pardata0, 1e-6, 10000);
                REQUIRE(report.status == FlowStatus::Converged);
                REQUIRE(report.residual_norm <= 1e-6);
            }
        }
    }
    SECTION("unipotent element stalls and is flagged") {
        auto pardata = ParabolicData<2>::make({});
        KnPoint<2> x;
        x.g.push_back(GroupElement<2>(Matrix<2>{1.0, 1.0, 0.0, 1.0}));
        auto [end, report] = kn_flow(x, *pardata, 1e-6, 1000000);
        REQUIRE(report.status == FlowStatus::NonClosedOrbitSuspected);
        for (size_t i = 1; i < report.f_trace.size(); ++i)
            REQUIRE(report.f_trace[i] < report.f_trace[i - 1]);
        REQUIRE(report.f_trace.back() >= 2.0);
    }
}

TEST_CASE("closed_orbit_probe") {
    Rng rng(34);
    SECTION("unitary tuples are closed") {
        auto pardata = ParabolicData<2>::make({});
        const auto x = unitary_point<2>(rng, 0, 2);
        REQUIRE(closed_orbit_probe(x, *pardata) == OrbitStatus::Closed);
    }
    SECTION("commuting semisimple pairs are closed") {
        auto pardata = ParabolicData<2>::make({});
        for (int trial = 0; trial < 10; ++trial) {
            const double l = 0.3 + 2.0 * rng.uniform01();
            const double m = 0.3 + 2.0 * rng.uniform01();
            KnPoint<2> x;
            x.g.push_back(GroupElement<2>(Matrix<2>{l, 0.0, 0.0, 1.0 / l}));
            x.g.push_back(GroupElement<2>(Matrix<2>{m, 0.0, 0.0, 1.0 / m}));
            REQUIRE(closed_orbit_probe(x, *pardata) == OrbitStatus::Closed);
        }
    }
    SECTION("a single unipotent is not closed") {
        auto pardata = ParabolicData<2>::make({});
        KnPoint<2> x;
        x.g.push_back(GroupElement<2>(Matrix<2>{1.0, 1.0, 0.0, 1.0}));
        REQUIRE(closed_orbit_probe(x, *pardata) == OrbitStatus::NotClosed);
    }
}
