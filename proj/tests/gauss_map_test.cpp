#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "minksurf/gauss_map.hpp"

using namespace minksurf;

namespace {

PointGeometry at(const SurfaceSpec& s, double u, double v, int order = 3) {
    return adapted_frame(evaluate_immersion(s, u, v, order), u, v);
}

Grid default_grid(const SurfaceSpec& s) { return Grid::cell_centers(s.domain, 7, 7); }

const std::array<double, kTermCount> kUnit = {1, 1, 1, 1, 1};

}  // namespace

TEST(GaussMap, MatchesDualOfTangentPlane) {
    const PointGeometry pg = at(catalog_lookup("type-ii", {{"a", 1}}), 0, 0);
    const Bivector nu = gauss_map(pg);
    const Bivector dual = dual_unit_normal_bivector(values(pg.tangents[0]), values(pg.tangents[1]));
    EXPECT_LT(euclidean_norm(nu - dual), 1e-14);
    EXPECT_NEAR(bivector_inner(nu, nu), -1.0, 1e-14);
    EXPECT_NEAR(plucker_defect(nu), 0.0, 1e-14);
    EXPECT_NEAR(bivector_inner(nu, wedge(values(pg.frame[0]), values(pg.frame[1]))), 0.0, 1e-14);
}

TEST(GaussMap, PlaneIsConstant) {
    const PointGeometry pg = at(catalog_lookup("plane", {}), 0.4, -0.1);
    const JetBivector nu = gauss_map_jet(pg);
    for (std::size_t k = 0; k < 6; ++k) {
        EXPECT_EQ(nu[k].d_du().value(), 0.0);
        EXPECT_EQ(nu[k].d_dv().value(), 0.0);
    }
    const GaussLaplacianDecomposition d = laplacian_gauss_formula(pg);
    EXPECT_EQ(euclidean_norm(d.delta_nu), 0.0);
    for (const auto& t : d.terms) EXPECT_EQ(euclidean_norm(t), 0.0);
}

TEST(GaussMap, DirectLaplacianExamples) {
    EXPECT_LT(euclidean_norm(laplacian_gauss_direct(catalog_lookup("graph(u^2 - v^2)", {}), 0.3, 0.7)), 1e-8);
    const SurfaceSpec ex = catalog_lookup("example52", {});
    const PointGeometry pg = at(ex, 1.0, 0.3);
    EXPECT_LT(euclidean_norm(laplacian_gauss_direct(ex, 1.0, 0.3) + 2.0 * gauss_map(pg)), 1e-8);
}

// The trace-gradient and omega34 terms depend on the normal frame; only their
// sum (the normal derivative of H) does not, and it vanishes for parallel H.
TEST(GaussMap, TypeITermsVanish) {
    const PointGeometry pg = at(catalog_lookup("type-i", {{"b", 0.5}}), 0.3, -0.6);
    const GaussLaplacianDecomposition d = laplacian_gauss_formula(pg);
    EXPECT_LT(euclidean_norm(d.terms[kTermNu]), 1e-8);
    EXPECT_LT(euclidean_norm(d.terms[kTermNormalCurvature]), 1e-8);
    EXPECT_LT(euclidean_norm(d.terms[kTermGradTrA3] + d.terms[kTermGradTrA4] + d.terms[kTermOmega34]), 1e-8);
}

TEST(GaussMap, ProductIsFirstKindWithClosedFormF) {
    const PointGeometry pg = at(catalog_lookup("product", {{"a", 1}, {"b", 2}}), 0.5, 0.1);
    const GaussLaplacianDecomposition d = laplacian_gauss_formula(pg);
    EXPECT_LT(euclidean_norm(d.delta_nu_formula + 0.75 * d.nu), 1e-12);
    for (std::size_t t = kTermNormalCurvature; t < kTermCount; ++t) EXPECT_LT(euclidean_norm(d.terms[t]), 1e-8);
    EXPECT_NEAR(first_kind_residuals(d).f_estimate, -0.75, 1e-12);
}

TEST(GaussMap, FirstKindResidualExamples) {
    const GaussLaplacianDecomposition uv = laplacian_gauss_formula(at(catalog_lookup("graph(u*v)", {}), 0.2, 0.5));
    EXPECT_LE(uv.residual_first_kind, 1e-8);
    EXPECT_LE(uv.residual_harmonic, 1e-8);

    const GaussLaplacianDecomposition ex = laplacian_gauss_formula(at(catalog_lookup("example52", {}), 2.0, 0.2));
    EXPECT_LE(ex.residual_first_kind, 1e-8);
    EXPECT_NEAR(first_kind_residuals(ex).f_estimate, -0.125, 1e-10);

    const GaussLaplacianDecomposition cubic = laplacian_gauss_formula(at(catalog_lookup("graph(u^3)", {}), 0.5, 0.1));
    EXPECT_GT(cubic.residual_first_kind, 1e-3);
}

TEST(GaussMap, GenericFixtureActivatesEveryTerm) {
    const GaussLaplacianDecomposition d = laplacian_gauss_formula(at(fixtures::generic_surface(), 0.3, 0.2));
    for (std::size_t t = 0; t < kTermCount; ++t) EXPECT_GT(euclidean_norm(d.terms[t]), 1e-3) << t;
    EXPECT_LT(route_error(d), 1e-12);
}

TEST(GaussMap, SingleTermMutationBreaksAgreement) {
    const SurfaceSpec s = fixtures::generic_surface();
    const Grid g = default_grid(s);
    EXPECT_LE(route_agreement(s, g), 1e-6);
    for (std::size_t t = 0; t < kTermCount; ++t) {
        auto scales = kUnit;
        scales[t] = 1.01;
        EXPECT_GT(route_agreement(s, g, {}, scales), 1e-4) << t;
    }
}

TEST(GaussMap, RouteAgreementOnCatalog) {
    const std::vector<std::pair<std::string, ParamMap>> cases = {
        {"plane", {}},          {"graph(u*v)", {}},        {"type-i", {{"b", 0.5}}}, {"type-ii", {{"a", 1}}},
        {"s31-flat", {{"r", 1}}}, {"h3-flat", {{"r", 2}}}, {"example52", {}},       {"product", {{"a", 1}, {"b", 2}}},
    };
    for (const auto& [name, params] : cases) {
        const SurfaceSpec s = catalog_lookup(name, params);
        EXPECT_LE(route_agreement(s, default_grid(s)), 1e-6) << name;
    }
    EXPECT_EQ(route_agreement(catalog_lookup("plane", {}), default_grid(catalog_lookup("plane", {}))), 0.0);
}

TEST(GaussMapProperty, RouteAgreementOnRandomSurfaces) {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> d(-0.9, 0.9);
    for (int t = 0; t < 40; ++t) {
        const SurfaceSpec s = fixtures::random_surface(rng);
        const GaussLaplacianDecomposition dec = laplacian_gauss_formula(at(s, d(rng), d(rng)));
        EXPECT_LT(route_error(dec), 1e-10);
        EXPECT_NEAR(bivector_inner(dec.nu, dec.nu), -1.0, 1e-12);
    }
}

TEST(GaussMapProperty, GaugeFlipLeavesResidualsUnchanged) {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> d(-0.9, 0.9);
    for (int t = 0; t < 20; ++t) {
        const PointGeometry pg = at(fixtures::random_surface(rng), d(rng), d(rng));
        const PointGeometry flipped = flip_normal_gauge(pg);
        const GaussLaplacianDecomposition a = laplacian_gauss_formula(pg);
        const GaussLaplacianDecomposition b = laplacian_gauss_formula(flipped);
        EXPECT_LT(euclidean_norm(a.nu + b.nu), 1e-14);
        EXPECT_NEAR(a.residual_first_kind, b.residual_first_kind, 1e-12);
        EXPECT_NEAR(a.residual_harmonic, b.residual_harmonic, 1e-12);
        EXPECT_NEAR(first_kind_residuals(a).f_estimate, first_kind_residuals(b).f_estimate, 1e-12);
        EXPECT_LT(route_error(b), 1e-10);
        EXPECT_EQ(classify_point(pg), classify_point(flipped));
    }
}

TEST(GaussMapProperty, CatalogInvariants) {
    const std::vector<std::pair<std::string, ParamMap>> cases = {
        {"type-i", {{"b", 0}}}, {"type-ii", {{"a", 2}}}, {"s31-flat", {{"r", 0.5}}}, {"h3-flat", {{"r", 1}}},
        {"example52", {}},      {"product", {{"a", 3}, {"b", 4}}},
    };
    const double tau = kDefaultResidualTolerance;
    for (const auto& [name, params] : cases) {
        const SurfaceSpec s = catalog_lookup(name, params);
        for (const auto& p : evaluate_grid(s, default_grid(s))) {
            ASSERT_TRUE(p.ok) << name << ": " << p.error;
            EXPECT_LE(p.nu_norm_defect, 1e-10);
            // Parallel H kills the frame-independent sum of the derivative terms.
            if (p.dh_residual <= tau) {
                const auto& t = p.gauss.terms;
                EXPECT_LE(euclidean_norm(t[kTermGradTrA3] + t[kTermGradTrA4] + t[kTermOmega34]), 10 * tau) << name;
            }
            if (p.first_kind.residual_first_kind <= tau) {
                EXPECT_NEAR(p.first_kind.f_estimate, p.h_squared, 1e-6 * std::max(1.0, std::abs(p.h_squared)));
            }
        }
    }
}

TEST(GaussMap, HarmonicImpliesFirstKindOnNullSecondFundamentalForm) {
    for (const auto& [name, params] : std::vector<std::pair<std::string, ParamMap>>{
             {"type-i", {{"b", 0.5}}}, {"type-ii", {{"a", 1}}}, {"s31-flat", {{"r", 1}}}, {"h3-flat", {{"r", 1}}}}) {
        const SurfaceSpec s = catalog_lookup(name, params);
        for (const auto& p : evaluate_grid(s, default_grid(s))) {
            EXPECT_NEAR(p.h_squared, 0.0, 1e-10) << name;
            EXPECT_LE(p.first_kind.residual_harmonic, 1e-8) << name;
            EXPECT_LE(p.first_kind.residual_first_kind, 1e-8) << name;
        }
    }
}

TEST(Lemma42, GraphSurfaces) {
    for (const char* name : {"graph(u*v)", "graph(u^2 - v^2)", "graph(exp(u)*cos(v))"}) {
        const SurfaceSpec s = catalog_lookup(name, {});
        for (const auto& p : evaluate_grid(s, default_grid(s))) {
            ASSERT_TRUE(p.lemma42.has_value()) << name;
            EXPECT_LE(*p.lemma42, 1e-6) << name;
        }
    }
    EXPECT_EQ(lemma42_residual(at(catalog_lookup("plane", {}), 0.1, 0.1)), 0.0);
    try {
        lemma42_residual(at(catalog_lookup("example52", {}), 1.0, 0.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotApplicable);
    }
}

TEST(Grid, CellCentersAndValidation) {
    const Grid g = Grid::cell_centers({0, 1, -1, 1}, 2, 4);
    ASSERT_EQ(g.points.size(), 8u);
    EXPECT_DOUBLE_EQ(g.points[0].first, 0.25);
    EXPECT_DOUBLE_EQ(g.points[0].second, -0.75);
    EXPECT_DOUBLE_EQ(g.points.back().first, 0.75);
    EXPECT_DOUBLE_EQ(g.points.back().second, 0.75);
    EXPECT_THROW(Grid::cell_centers({0, 1, 0, 1}, 1, 4), Error);
    EXPECT_THROW(Grid::explicit_points({}), Error);
}

TEST(Grid, ResultsDoNotDependOnWorkerCount) {
    const SurfaceSpec s = fixtures::generic_surface();
    const Grid g = Grid::cell_centers(s.domain, 6, 5);
    const auto one = evaluate_grid(s, g, {3, 1e-8, 1});
    const auto many = evaluate_grid(s, g, {3, 1e-8, 7});
    ASSERT_EQ(one.size(), many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].u, many[i].u);
        EXPECT_EQ(one[i].route_error, many[i].route_error);
        EXPECT_EQ(one[i].K.gauss, many[i].K.gauss);
        EXPECT_EQ(one[i].labels, many[i].labels);
    }
}

TEST(Grid, FailedPointsAreRecorded) {
    const SurfaceSpec s = parse_surface("x1 = u\nx2 = 0\nx3 = v\nx4 = 0\n");
    const auto evals = evaluate_grid(s, Grid::cell_centers(s.domain, 3, 3));
    for (const auto& p : evals) {
        EXPECT_FALSE(p.ok);
        EXPECT_EQ(p.error_kind, ErrorKind::NotSpacelike);
    }
    EXPECT_TRUE(classify_grid(evals).empty());
}

TEST(Verdict, KnownExamples) {
    const auto check = [](const char* id, const SurfaceSpec& s) {
        const TheoremVerdict v = theorem_verdict(id, s, default_grid(s));
        EXPECT_TRUE(v.applicable) << id;
        EXPECT_TRUE(v.consistent) << id;
        EXPECT_TRUE(v.side_a.holds) << id;
        EXPECT_TRUE(v.side_b.holds) << id;
        EXPECT_NE(v.evidence.find("49 points"), std::string::npos);
    };
    check("T4.4", catalog_lookup("example52", {}));
    check("T3.5", catalog_lookup("type-i", {{"b", 0.5}}));
    check("T4.8", catalog_lookup("product", {{"a", 1}, {"b", 2}}));
    check("T4.6", catalog_lookup("s31-flat", {{"r", 1}}));
    check("T3.4", catalog_lookup("graph(u*v)", {}));
    check("T4.1", catalog_lookup("graph(u*v)", {}));
    check("T4.3", catalog_lookup("plane", {}));
    for (const char* id : {"T3.7", "T3.11"}) {
        check(id, catalog_lookup("plane", {}));
        check(id, catalog_lookup("graph(exp(u)*cos(v))", {}));
        check(id, catalog_lookup("type-ii", {{"a", 1}}));
        check(id, catalog_lookup("s31-flat", {{"r", 2}}));
        check(id, catalog_lookup("h3-flat", {{"r", 0.5}}));
    }
}

TEST(Verdict, BothSidesFailingIsConsistent) {
    const SurfaceSpec s = catalog_lookup("graph(u^3)", {});
    const TheoremVerdict v = theorem_verdict("T4.4", s, Grid::cell_centers({0.2, 1, -1, 1}, 5, 5));
    EXPECT_TRUE(v.applicable);
    EXPECT_FALSE(v.side_a.holds);
    EXPECT_FALSE(v.side_b.holds);
    EXPECT_TRUE(v.consistent);
    const TheoremVerdict six = theorem_verdict("T3.11", catalog_lookup("product", {{"a", 1}, {"b", 2}}),
                                               default_grid(catalog_lookup("plane", {})));
    EXPECT_FALSE(six.side_a.holds);
    EXPECT_FALSE(six.side_b.holds);
    EXPECT_TRUE(six.consistent);
}

TEST(Verdict, CorruptedResidualIsInconsistent) {
    const SurfaceSpec s = catalog_lookup("example52", {});
    auto evals = evaluate_grid(s, default_grid(s));
    evals[10].first_kind.residual_first_kind = 1.0;
    const TheoremVerdict v = theorem_verdict("T4.4", evals);
    EXPECT_FALSE(v.side_a.holds);
    EXPECT_TRUE(v.side_b.holds);
    EXPECT_FALSE(v.consistent);
}

TEST(Verdict, PreconditionsAndUnknownIds) {
    const SurfaceSpec s = catalog_lookup("example52", {});
    const TheoremVerdict v = theorem_verdict("T3.4", s, default_grid(s));
    EXPECT_FALSE(v.applicable);
    EXPECT_TRUE(v.consistent);
    try {
        theorem_verdict("T9.9", s, default_grid(s));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownTheorem);
    }
}

TEST(ClassifyGrid, ContainmentLabels) {
    for (double r : {0.5, 1.0, 2.0}) {
        const SurfaceSpec s31 = catalog_lookup("s31-flat", {{"r", r}});
        const SurfaceSpec h3 = catalog_lookup("h3-flat", {{"r", r}});
        EXPECT_TRUE(classify_grid(evaluate_grid(s31, default_grid(s31))).count("IN-S31"));
        EXPECT_TRUE(classify_grid(evaluate_grid(h3, default_grid(h3))).count("IN-H3"));
    }
    const SurfaceSpec lc = catalog_lookup("type-ii", {{"a", 1}});
    EXPECT_TRUE(classify_grid(evaluate_grid(lc, default_grid(lc))).count("IN-LIGHTCONE"));
    const SurfaceSpec plane = catalog_lookup("plane", {});
    const auto labels = classify_grid(evaluate_grid(plane, default_grid(plane)));
    EXPECT_FALSE(labels.count("IN-S31") || labels.count("IN-H3") || labels.count("IN-LIGHTCONE"));
}
