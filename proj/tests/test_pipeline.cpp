#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sectional;
using testing_support::bipoly_product;
using testing_support::frac;
using testing_support::leibniz_det;
using testing_support::leverrier;
using testing_support::paired_block;

namespace {

const CurvatureOperator& golden()
{
    static const CurvatureOperator r = diagonal({1, 2, 3, 4, 5, 6});
    return r;
}

std::vector<long> approx_roots(const std::vector<RootInterval>& r)
{
    std::vector<long> out;
    for (const auto& iv : r) out.push_back(std::lround(iv.approx()));
    return out;
}

} // namespace

TEST(CharacteristicSurfaceTest, IdentityFactorsIntoBlocks)
{
    const BiPoly block = paired_block(1, 1);  // (1 - x)^2 - y^2
    const BiPoly expected = bipoly_product(bipoly_product(block, block), block);
    EXPECT_EQ(characteristic_surface(constant_curvature(Rational(1))).p, expected);
}

TEST(CharacteristicSurfaceTest, DiagonalFactorsIntoPairedBlocks)
{
    const BiPoly expected = bipoly_product(bipoly_product(paired_block(1, 6), paired_block(2, 5)), paired_block(3, 4));
    const auto s = characteristic_surface(golden());
    EXPECT_EQ(s.p, expected);
    EXPECT_EQ(s.p.coefficient(6, 0), 1);
    EXPECT_EQ(s.y_leading, -1);
}

TEST(CharacteristicSurfaceTest, StructureOnRandomOperators)
{
    std::mt19937_64 rng(77);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto r = random_symmetric(seed, 5);
        const auto s = characteristic_surface(r);
        EXPECT_EQ(s.p.coefficient(0, 6), -1);
        EXPECT_EQ(s.p.coefficient(6, 0), 1);
        EXPECT_LE(s.p.total_degree(), 6);
        // Independent evaluation by the Leibniz expansion.
        for (int k = 0; k < 2; ++k) {
            const Rational x = frac(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 5) + 1);
            const Rational y = frac(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 5) + 1);
            EXPECT_EQ(s.p(x, y), leibniz_det(shifted(r, x, y).matrix()));
        }
        // p(x, 0) = det(R - xI) = det(xI - R) in even dimension.
        EXPECT_EQ(s.x_slice, leverrier(r.matrix()));
    }
}

TEST(CharacteristicSurfaceTest, RationalEntries)
{
    RatMatrix m = random_symmetric(3, 4).matrix();
    m(0, 2) = m(2, 0) = Rational(7, 3);
    m(4, 4) = Rational(-1, 2);
    const CurvatureOperator r(m);
    const auto s = characteristic_surface(r);
    EXPECT_EQ(s.x_slice, leverrier(m));
    EXPECT_EQ(s.p(Rational(1, 3), Rational(2, 5)), leibniz_det(shifted(r, Rational(1, 3), Rational(2, 5)).matrix()));
}

TEST(DiscriminantCurveTest, DegenerateOperatorsVanish)
{
    EXPECT_TRUE(discriminant_curve(characteristic_surface(constant_curvature(Rational(1)))).is_zero());
    EXPECT_TRUE(discriminant_curve(characteristic_surface(product_spheres())).is_zero());
}

TEST(DiscriminantCurveTest, GoldenRootsAreTheDiagonal)
{
    const UniPoly q = discriminant_curve(characteristic_surface(golden()));
    ASSERT_FALSE(q.is_zero());
    const UniPoly sqf = squarefree_part(q);
    for (long k = 1; k <= 6; ++k) EXPECT_EQ(sqf(Rational(k)), 0);
    EXPECT_EQ(count_real_roots(sqf, std::nullopt, std::nullopt), 6);
    const auto roots = isolate_real_roots(q);
    ASSERT_EQ(roots.size(), 6u);
    for (long k = 1; k <= 6; ++k) {
        EXPECT_TRUE(roots[static_cast<std::size_t>(k - 1)].pinned());
        EXPECT_EQ(roots[static_cast<std::size_t>(k - 1)].lower, k);
        EXPECT_EQ(roots[static_cast<std::size_t>(k - 1)].sign_class, SignClass::positive);
    }
}

TEST(DiscriminantCurveTest, MatchesPointwiseDiscriminant)
{
    const auto r = random_symmetric(31, 5);
    const auto s = characteristic_surface(r);
    const UniPoly q = discriminant_curve(s);
    EXPECT_LE(q.degree(), 30);
    for (const Rational x : {Rational(5, 7), Rational(-41, 3), Rational(100)}) {
        // Independent route: p(x, y) from the Leibniz expansion at 7 nodes in y.
        std::vector<Rational> ys;
        std::vector<Rational> vals;
        for (long t = -3; t <= 3; ++t) {
            ys.emplace_back(t);
            vals.push_back(leibniz_det(shifted(r, x, Rational(t)).matrix()));
        }
        const UniPoly f = interpolate(ys, vals, Var::y);
        EXPECT_EQ(q(x), discriminant(f));
    }
}

TEST(GenericityTest, SpecExamples)
{
    const Genericity zero = genericity(UniPoly());
    EXPECT_TRUE(zero.q_zero);
    EXPECT_FALSE(zero.disc_q.has_value());
    EXPECT_FALSE(zero.generic);

    const Genericity quad = genericity(UniPoly::from_ints({2, -3, 1}));
    EXPECT_FALSE(quad.q_zero);
    ASSERT_TRUE(quad.disc_q.has_value());
    EXPECT_EQ(*quad.disc_q, 1);
    EXPECT_TRUE(quad.generic);

    const Genericity g = genericity(discriminant_curve(characteristic_surface(golden())));
    EXPECT_TRUE(g.generic);
    EXPECT_NE(*g.disc_q, 0);

    EXPECT_FALSE(genericity(UniPoly::from_ints({1, -2, 1})).generic);
}

TEST(CriticalPointTest, SpecExamples)
{
    const auto c = is_critical_point(golden(), Rational(1), Rational(0));
    EXPECT_TRUE(c.critical);
    EXPECT_EQ(c.kernel_dimension, 1);
    ASSERT_EQ(c.leading_form.size(), 2u);
    EXPECT_NE(c.leading_form[0], 0);  // a10
    EXPECT_EQ(c.leading_form[1], 0);  // a01

    const auto o = is_critical_point(golden(), Rational(0), Rational(0));
    EXPECT_FALSE(o.critical);
    EXPECT_EQ(o.kernel_dimension, 0);
    EXPECT_EQ(o.translated.coefficient(0, 0), 720);

    const auto k = is_critical_point(constant_curvature(Rational(1)), Rational(1), Rational(1));
    EXPECT_FALSE(k.critical);
    EXPECT_EQ(k.translated.coefficient(0, 0), -1);
}

TEST(CriticalPointTest, TranslatedHomogeneousPart)
{
    const BiPoly t = characteristic_surface(shifted(golden(), Rational(1), Rational(0))).p;
    const BiPoly p1 = homogeneous_part(t, 1);
    EXPECT_NE(p1.coefficient(1, 0), 0);
    EXPECT_EQ(p1.coefficient(0, 1), 0);
    EXPECT_EQ(p1.terms().size(), 1u);

    const UniPoly f = bipoly_eval_x(characteristic_surface(golden()).p, Rational(1));
    EXPECT_EQ(f.degree(), 6);
    EXPECT_EQ(f.coefficient(0), 0);
    EXPECT_EQ(f.coefficient(1), 0);
    EXPECT_NE(f.coefficient(2), 0);
}

TEST(CriticalPointTest, HigherKernelDimension)
{
    // R = I at (1, 0): R - I = 0, so p-hat = det(-xI - yK) is homogeneous of degree 6.
    const auto c = is_critical_point(constant_curvature(Rational(1)), Rational(1), Rational(0));
    EXPECT_EQ(c.kernel_dimension, 6);
    EXPECT_TRUE(c.critical);
}

TEST(EnumerateTest, GoldenCriticalPoints)
{
    const auto s = characteristic_surface(golden());
    const UniPoly q = discriminant_curve(s);
    const auto roots = isolate_real_roots(q);
    const Enumeration e = enumerate_critical_points(golden(), s, q, roots, true);
    EXPECT_TRUE(e.violations.empty());
    ASSERT_EQ(e.points.size(), 6u);
    for (std::size_t k = 0; k < 6; ++k) {
        const CriticalPoint& c = e.points[k];
        EXPECT_TRUE(c.certified);
        EXPECT_EQ(c.certificate, CertificateMode::exact);
        EXPECT_EQ(*c.x_exact, static_cast<long>(k + 1));
        EXPECT_EQ(*c.y_exact, 0);
        EXPECT_EQ(c.kernel_dimension, 1);
        ASSERT_TRUE(c.plane.has_value());
        const auto [i, j] = kBasisPairs[k];
        EXPECT_TRUE(testing_support::spans_coordinate_plane(*c.plane, i, j));
        const auto& coeffs = *c.exact_coefficients;
        EXPECT_EQ(coeffs[0], 0);
        EXPECT_EQ(coeffs[1], 0);
        EXPECT_NE(coeffs[2], 0);
    }
}

TEST(EnumerateTest, RandomOperatorsCertifyEveryRoot)
{
    for (std::uint64_t seed : {1ULL, 2ULL, 9ULL}) {
        const auto r = random_symmetric(seed, 5);
        const AnalysisReport rep = analyze(r);
        ASSERT_TRUE(rep.generic);
        EXPECT_TRUE(rep.contract_violations.empty());
        for (const auto& c : rep.critical_points) {
            if (!c.certified) continue;
            // The recovered plane realizes the critical value.
            ASSERT_TRUE(c.plane.has_value());
            const Vec6 v = plucker(c.plane->u, c.plane->w);
            EXPECT_NEAR(sectional_value(r.to_eigen(), v), c.x, 1e-8);
            const auto fit = oracle::stationarity_residual(r.to_eigen(), v);
            EXPECT_LT(fit.residual, 1e-8);
            ASSERT_TRUE(c.bounds.has_value());
            EXPECT_GT(c.bounds->a10_lower, 0);
        }
    }
}

TEST(EnumerateTest, CloseRootsDoNotBorrowNeighbouringPoints)
{
    // q has two roots 4e-4 apart near x = 0.093 for this operator.
    const auto r = random_symmetric(37, 5);
    const AnalysisReport rep = analyze(r);
    int near = 0;
    for (const auto& c : rep.critical_points) {
        if (!c.certified) continue;
        if (std::abs(c.x - 0.093) < 1e-3) ++near;
        ASSERT_TRUE(c.plane.has_value()) << c.x << " " << c.y;
        EXPECT_LT(c.plane_wedge, 1e-9);
        EXPECT_LT(c.plane_residual, 1e-9);
    }
    EXPECT_EQ(near, 2);
}

TEST(AnalyzeTest, GoldenIsPositive)
{
    const AnalysisReport rep = analyze(golden());
    EXPECT_EQ(rep.verdict, Verdict::positive);
    ASSERT_TRUE(rep.bounds.has_value());
    EXPECT_EQ(rep.bounds->lower.lower, 1);
    EXPECT_EQ(rep.bounds->upper.upper, 6);
    EXPECT_EQ(approx_roots(rep.root_intervals), (std::vector<long>{1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(rep.definiteness, Definiteness::positive_definite);
    EXPECT_FALSE(rep.oracle.has_value());
}

TEST(AnalyzeTest, NegativeDiagonalIsNotNonnegative)
{
    const AnalysisReport rep = analyze(diagonal({-1, 2, 3, 4, 5, 6}));
    EXPECT_EQ(rep.verdict, Verdict::not_nonnegative);
    // g1 - g2 and g1 - g3 vanish at 8 and 9, which makes q non-generic here.
    EXPECT_FALSE(rep.generic);
    const bool certified_negative = std::any_of(rep.critical_points.begin(), rep.critical_points.end(), [](const CriticalPoint& c) {
        return c.certified && c.x_exact && *c.x_exact == -1;
    });
    EXPECT_TRUE(certified_negative);
}

TEST(AnalyzeTest, IdentityFallsBack)
{
    AnalyzeOptions opts;
    opts.oracle.restarts = 40;
    const AnalysisReport rep = analyze(constant_curvature(Rational(1)), opts);
    EXPECT_TRUE(rep.q_is_identically_zero);
    EXPECT_EQ(rep.verdict, Verdict::degenerate_fallback);
    EXPECT_TRUE(rep.critical_points.empty());
    ASSERT_TRUE(rep.oracle.has_value());
    EXPECT_NEAR(rep.oracle->min_value, 1.0, 1e-9);
    EXPECT_NEAR(rep.oracle->max_value, 1.0, 1e-9);
    ASSERT_TRUE(rep.witness.has_value());
    EXPECT_NEAR(rep.witness->alpha1, 1.0, 1e-9);
}

TEST(AnalyzeTest, ShiftedGoldenIsNonnegative)
{
    // diag(0, 1, ..., 5): zero is a root of q and nothing is negative.
    const AnalysisReport rep = analyze(diagonal({0, 1, 2, 3, 4, 5}));
    EXPECT_TRUE(rep.generic);
    EXPECT_TRUE(rep.zero_is_root);
    EXPECT_EQ(rep.verdict, Verdict::nonnegative);
    EXPECT_EQ(exit_code(rep.verdict), 0);
}

TEST(AnalyzeTest, RejectsAsymmetric)
{
    RatMatrix m = RatMatrix::identity(6);
    m(1, 2) = 3;
    EXPECT_THROW(analyze(CurvatureOperator(m)), std::invalid_argument);
}

TEST(AnalyzeTest, VerdictAgreesWithOracleOnRandomOperators)
{
    for (std::uint64_t seed = 40; seed < 46; ++seed) {
        const auto r = random_symmetric(seed, 5);
        AnalyzeOptions opts;
        opts.run_oracle = true;
        opts.oracle.restarts = 60;
        const AnalysisReport rep = analyze(r, opts);
        ASSERT_TRUE(rep.generic);
        ASSERT_TRUE(rep.oracle_comparison.has_value());
        EXPECT_TRUE(rep.oracle_comparison->consistent);
        if (rep.verdict == Verdict::positive) EXPECT_GT(rep.oracle->min_value, -1e-9);
        if (rep.verdict == Verdict::not_nonnegative) EXPECT_LT(rep.oracle->min_value, 1e-9);
    }
}

TEST(AnalyzeTest, PerturbationIsReportedSeparately)
{
    AnalyzeOptions opts;
    opts.perturb = Rational(1, 1000);
    opts.oracle.restarts = 20;
    const AnalysisReport rep = analyze(constant_curvature(Rational(1)), opts);
    EXPECT_EQ(rep.verdict, Verdict::degenerate_fallback);
    ASSERT_TRUE(rep.perturbation.has_value());
    EXPECT_EQ(rep.perturbation->epsilon, Rational(1, 1000));
    // I + eps * Delta is generic and positive for small eps.
    EXPECT_EQ(rep.perturbation->verdict, Verdict::positive);
    const AnalysisReport again = analyze(constant_curvature(Rational(1)), opts);
    EXPECT_EQ(again.perturbation->perturbed, rep.perturbation->perturbed);
}

TEST(DefinitenessTest, MatchesEigenvalues)
{
    EXPECT_EQ(classify_definiteness(characteristic_surface(golden()).x_slice), Definiteness::positive_definite);
    EXPECT_EQ(classify_definiteness(characteristic_surface(diagonal({-1, -2, -3, -4, -5, -6})).x_slice),
              Definiteness::negative_definite);
    EXPECT_EQ(classify_definiteness(characteristic_surface(product_spheres()).x_slice), Definiteness::indefinite_or_singular);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        RatMatrix m = random_symmetric(seed, 3).matrix() + RatMatrix::identity(6) * Rational(static_cast<long>(seed % 9));
        const CurvatureOperator r(m);
        Eigen::SelfAdjointEigenSolver<Mat6> s(r.to_eigen(), Eigen::EigenvaluesOnly);
        const double lo = s.eigenvalues()(0);
        const double hi = s.eigenvalues()(5);
        const Definiteness d = classify_definiteness(leverrier(m));
        if (lo > 1e-9) EXPECT_EQ(d, Definiteness::positive_definite);
        if (hi < -1e-9) EXPECT_EQ(d, Definiteness::negative_definite);
        if (lo < -1e-9 && hi > 1e-9) EXPECT_EQ(d, Definiteness::indefinite_or_singular);
    }
}

TEST(VerdictTest, ExitCodes)
{
    EXPECT_EQ(exit_code(Verdict::positive), 0);
    EXPECT_EQ(exit_code(Verdict::nonnegative), 0);
    EXPECT_EQ(exit_code(Verdict::positive_sufficient_only), 0);
    EXPECT_EQ(exit_code(Verdict::not_nonnegative), 1);
    EXPECT_EQ(exit_code(Verdict::degenerate_fallback), 2);
    EXPECT_EQ(parse_verdict("NONNEGATIVE"), Verdict::nonnegative);
    EXPECT_THROW(parse_verdict("MAYBE"), std::invalid_argument);
}
