#include <catch2/catch_amalgamated.hpp>

#include "charvar/charvar.hpp"

using namespace charvar;

namespace {

template <int N>
std::vector<GroupElement<N>> random_tuple(Rng& rng, int count, double radius) {
    std::vector<GroupElement<N>> t;
    for (int i = 0; i < count; ++i) t.push_back(random_group_element<N>(rng, radius));
    return t;
}

}  // namespace

TEST_CASE("word evaluation") {
    Rng rng(51);
    SECTION("empty word gives the identity") {
        const auto tuple = random_tuple<2>(rng, 2, 1.0);
        REQUIRE(frobenius_distance(word_evaluate(tuple, {}).mat(), Matrix<2>::identity()) == 0.0);
    }
    SECTION("cancelling word gives the identity") {
        const auto tuple = random_tuple<2>(rng, 2, 1.0);
        REQUIRE(frobenius_distance(word_evaluate(tuple, {1, -1}).mat(), Matrix<2>::identity()) <
                1e-12);
    }
    SECTION("genus-1 relation word evaluates consistently both ways") {
        const auto tuple = random_tuple<2>(rng, 3, 1.0);  // (gamma1, alpha1, beta1)
        const auto direct = word_evaluate(tuple, {2, 3, -2, -3, 1}).inverse();
        const auto reversed = word_evaluate(tuple, {-1, 3, 2, -3, -2});
        REQUIRE(frobenius_distance(direct.mat(), reversed.mat()) < 1e-12);
    }
    SECTION("SL(2) words have inversion-invariant traces") {
        const auto tuple = random_tuple<2>(rng, 3, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<int> word;
            const int len = 1 + int(rng.uniform01() * 4);
            for (int i = 0; i < len; ++i) {
                int idx = 1 + int(rng.uniform01() * 3);
                word.push_back(rng.uniform01() < 0.5 ? idx : -idx);
            }
            const auto w = word_evaluate(tuple, word);
            REQUIRE(std::abs(w.mat().trace() - w.inverse().mat().trace()) < 1e-12);
        }
    }
    SECTION("out-of-range indices are rejected") {
        const auto tuple = random_tuple<2>(rng, 2, 1.0);
        try {
            word_evaluate(tuple, {3});
            FAIL("expected IndexOutOfRange");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::IndexOutOfRange);
        }
    }
}

TEST_CASE("boundary maps") {
    Rng rng(52);
    SECTION("three-holed sphere over SL(2): boundary is the trace triple") {
        const SurfaceData surf(0, 3, 2, 0);
        for (int trial = 0; trial < 100; ++trial) {
            const auto tuple = random_tuple<2>(rng, 2, 1.2);
            const auto bv = boundary(tuple, surf);
            REQUIRE(bv.points.size() == 3);
            const auto t = sl2_trace_triple(tuple[0], tuple[1]);
            REQUIRE(std::abs(bv.points[0].coords[0] - t[0]) < 1e-12);
            REQUIRE(std::abs(bv.points[1].coords[0] - t[1]) < 1e-12);
            // tr((g1 g2)^{-1}) = tr(g1 g2) in SL(2)
            REQUIRE(std::abs(bv.points[2].coords[0] - t[2]) < 1e-10);
        }
    }
    SECTION("identity tuple maps to identity classes") {
        const SurfaceData surf(0, 3, 2, 0);
        const std::vector<GroupElement<3>> tuple(2, GroupElement<3>::identity());
        const auto bv = boundary(tuple, surf);
        for (const auto& p : bv.points) {
            REQUIRE(std::abs(p.coords[0] - cplx(3.0)) < 1e-12);
            REQUIRE(std::abs(p.coords[1] - cplx(3.0)) < 1e-12);
        }
    }
    SECTION("three-holed sphere over SL(3): last entry is (t6, t5)") {
        const SurfaceData surf(0, 3, 2, 0);
        for (int trial = 0; trial < 100; ++trial) {
            const auto tuple = random_tuple<3>(rng, 2, 1.0);
            const auto bv = boundary(tuple, surf);
            const auto tv = sl3_nine_traces(tuple[0], tuple[1]);
            REQUIRE(std::abs(bv.points[2].coords[0] - tv.values[5]) < 1e-10);
            REQUIRE(std::abs(bv.points[2].coords[1] - tv.values[4]) < 1e-10);
        }
    }
    SECTION("boundary is conjugation invariant") {
        const SurfaceData surf(1, 2, 1, 2);
        for (int trial = 0; trial < 100; ++trial) {
            auto tuple = random_tuple<2>(rng, 3, 1.0);
            const auto w = random_unitary<2>(rng);
            std::vector<GroupElement<2>> conj;
            for (const auto& g : tuple)
                conj.push_back(GroupElement<2>(w.mat() * g.mat() * w.mat().adjoint()));
            const auto a = boundary(tuple, surf);
            const auto b = boundary(conj, surf);
            for (size_t i = 0; i < a.points.size(); ++i)
                REQUIRE(class_point_distance(a.points[i], b.points[i]) < 1e-10);
        }
    }
    SECTION("parabolic boundary takes the first m classes") {
        const auto tuple = random_tuple<2>(rng, 2, 1.2);
        const auto bv = boundary_par(tuple, 2);
        REQUIRE(bv.points.size() == 2);
        REQUIRE(std::abs(bv.points[0].coords[0] - tuple[0].mat().trace()) == 0.0);
        REQUIRE(boundary_par(tuple, 0).points.empty());

        const auto t3 = random_tuple<3>(rng, 2, 1.0);
        const auto bv3 = boundary_par(t3, 2);
        const auto tv = sl3_nine_traces(t3[0], t3[1]);
        REQUIRE(std::abs(bv3.points[0].coords[0] - tv.values[0]) < 1e-12);
        REQUIRE(std::abs(bv3.points[0].coords[1] - tv.values[1]) < 1e-12);
        REQUIRE(std::abs(bv3.points[1].coords[0] - tv.values[2]) < 1e-12);
        REQUIRE(std::abs(bv3.points[1].coords[1] - tv.values[3]) < 1e-12);
    }
    SECTION("surface shape validation") {
        REQUIRE_THROWS_AS(SurfaceData(0, 3, 3, 0), Error);   // needs b > m
        REQUIRE_THROWS_AS(SurfaceData(0, 3, 2, 1), Error);   // m + n != 2g + b - 1
        REQUIRE_THROWS_AS(SurfaceData(0, 0, 0, 0), Error);   // b >= 1
    }
}

TEST_CASE("diagram commutativity") {
    Rng rng(53);
    SECTION("SL(2) shapes") {
        const SurfaceData s1(0, 3, 2, 0);
        const SurfaceData s2(0, 4, 3, 0);
        for (int trial = 0; trial < 300; ++trial) {
            REQUIRE(diagram_check(random_tuple<2>(rng, 2, 1.2), s1) <= 1e-12);
            REQUIRE(diagram_check(random_tuple<2>(rng, 3, 1.2), s2) <= 1e-12);
        }
    }
    SECTION("SL(3) three-holed sphere") {
        const SurfaceData surf(0, 3, 2, 0);
        for (int trial = 0; trial < 300; ++trial)
            REQUIRE(diagram_check(random_tuple<3>(rng, 2, 1.0), surf) <= 1e-12);
    }
    SECTION("genus one") {
        const SurfaceData surf(1, 2, 1, 2);
        for (int trial = 0; trial < 300; ++trial)
            REQUIRE(diagram_check(random_tuple<2>(rng, 3, 1.0), surf) <= 1e-12);
    }
}

TEST_CASE("boundary surjectivity through the section") {
    Rng rng(56);
    const SurfaceData surf(0, 3, 2, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto coord = [&] {
            return cplx(8.0 * (2.0 * rng.uniform01() - 1.0), 8.0 * (2.0 * rng.uniform01() - 1.0));
        };
        const cplx x = coord(), y = coord(), z = coord();
        const auto [g1, g2] = sl2_lift(x, y, z);
        const auto bv = boundary(std::vector<GroupElement<2>>{g1, g2}, surf);
        worst = std::max({worst, std::abs(bv.points[0].coords[0] - x),
                          std::abs(bv.points[1].coords[0] - y),
                          std::abs(bv.points[2].coords[0] - z)});
    }
    REQUIRE(worst <= 1e-9);
}

TEST_CASE("relative fibers") {
    Rng rng(54);
    const SurfaceData surf(0, 3, 2, 0);
    SECTION("a tuple lies in its own fiber and not in perturbed ones") {
        const auto tuple = random_tuple<2>(rng, 2, 1.2);
        auto bv = boundary(tuple, surf);
        REQUIRE(relative_fiber_membership(tuple, surf, bv, 1e-12));
        bv.points[1].coords[0] += 1.0;
        REQUIRE_FALSE(relative_fiber_membership(tuple, surf, bv, 1e-6));
    }
    SECTION("a parabolic fiber splits into relative fibers by the last class") {
        // fixed (tr g1, tr g2); samples with distinct z land in distinct fibers
        const cplx x0(0.7, 0.2), y0(-1.1, 0.4);
        std::vector<std::vector<GroupElement<2>>> pairs;
        std::vector<BoundaryVector> fibers;
        for (int i = 0; i < 100; ++i) {
            const cplx z(-5.0 + 0.1 * i, 0.3);  // spaced well beyond the bin width
            const auto [g1, g2] = sl2_lift(x0, y0, z);
            pairs.push_back({g1, g2});
            fibers.push_back(boundary(pairs.back(), surf));
        }
        for (size_t i = 0; i < pairs.size(); ++i) {
            int hits = 0;
            for (size_t j = 0; j < fibers.size(); ++j)
                if (relative_fiber_membership(pairs[i], surf, fibers[j], 1e-6)) ++hits;
            REQUIRE(hits == 1);
            REQUIRE(relative_fiber_membership(pairs[i], surf, fibers[i], 1e-6));
        }
    }
}

TEST_CASE("dimension estimation") {
    Rng rng(55);
    auto regular_pardata2 = [&](int m) {
        std::vector<UnitaryElement<2>> hs;
        for (int i = 0; i < m; ++i) hs.push_back(random_regular_unitary<2>(rng));
        return ParabolicData<2>::make(std::move(hs));
    };
    SECTION("SL(2), m=2: a line") {
        const auto est = dim_estimate(*regular_pardata2(2), 0, 8, rng);
        REQUIRE(est.dim_X == 1);
        REQUIRE(est.dim_formula == 1);
        REQUIRE(est.match);
        REQUIRE(est.dim_stab == 0);
    }
    SECTION("SL(2), m=3: a cubic 3-fold") {
        const auto est = dim_estimate(*regular_pardata2(3), 0, 8, rng);
        REQUIRE(est.dim_X == 3);
        REQUIRE(est.dim_formula == 3);
        REQUIRE(est.match);
    }
    SECTION("SL(3), m=2: a quartic hypersurface") {
        std::vector<UnitaryElement<3>> hs;
        for (int i = 0; i < 2; ++i) hs.push_back(random_regular_unitary<3>(rng));
        const auto est = dim_estimate(*ParabolicData<3>::make(std::move(hs)), 0, 8, rng);
        REQUIRE(est.dim_X == 4);
        REQUIRE(est.dim_formula == 4);
        REQUIRE(est.match);
    }
    SECTION("free components only") {
        const auto est = dim_estimate(*ParabolicData<2>::make({}), 2, 8, rng);
        REQUIRE(est.dim_stab == 0);  // irreducible generic pairs
        REQUIRE(est.dim_X == 3);
        REQUIRE(est.match);
    }
    SECTION("degenerate first class is flagged as non-generic") {
        std::vector<UnitaryElement<2>> hs;
        hs.push_back(UnitaryElement<2>::identity());
        hs.push_back(random_regular_unitary<2>(rng));
        const auto est = dim_estimate(*ParabolicData<2>::make(std::move(hs)), 0, 8, rng);
        // the orbit of the identity is a point: dim_H falls to 2 while the
        // sampled stabilizer grows to 1, so the estimate drops below the
        // generic count and match must report false
        REQUIRE(est.dim_H == 2);
        REQUIRE(est.dim_stab == 1);
        REQUIRE(est.dim_X == 0);
        REQUIRE(est.dim_formula == 1);
        REQUIRE_FALSE(est.match);
    }
    SECTION("too few factors") {
        try {
            dim_estimate(*ParabolicData<2>::make({}), 1, 4, rng);
            FAIL("expected TooFewFactors");
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::TooFewFactors);
        }
    }
}
