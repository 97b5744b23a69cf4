#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include <uqd/noise.hpp>

using namespace uqd;

namespace {

struct Empirical {
    double mean = 0.0;
    double variance = 0.0;
};

Empirical moments(const std::vector<double>& xs)
{
    double m = 0.0;
    for (double x : xs)
        m += x;
    m /= xs.size();
    double v = 0.0;
    for (double x : xs)
        v += (x - m) * (x - m);
    return {m, v / xs.size()};
}

// Central fourth moment of a Gaussian mixture (component-wise), used for the standard
// error of the sample variance: se = sqrt((mu4 - var^2) / n).
double mixture_mu4(const std::vector<std::array<double, 3>>& comps /* weight, mean, sigma */, double mu)
{
    double m4 = 0.0;
    for (const auto& [w, m, s] : comps) {
        const double d = m - mu;
        m4 += w * (d * d * d * d + 6 * d * d * s * s + 3 * s * s * s * s);
    }
    return m4;
}

} // namespace

TEST(SampleScalar, BimodalWithAlphaOneIsTheFirstMode)
{
    const NoiseDistribution bimodal = Bimodal{1.0, {0.0, 0.0}, 0.3, {-1.0, -1.0}, 0.3};
    const NoiseDistribution gauss = Gaussian{0.3};
    RngStream a(9, 1), b(9, 1);
    for (int i = 0; i < 1000; ++i) {
        // mode pick consumes one uniform first; the Gaussian stream is realigned by drawing it too
        b.uniform();
        ASSERT_EQ(sample_scalar(bimodal, a), sample_scalar(gauss, b));
    }
}

TEST(SampleScalar, BimodalMeanMatchesMixture)
{
    const Bimodal b{0.95, {0.0, 0.0}, 0.05, {-1.0, -1.0}, 0.05};
    RngStream rng(1, 2);
    const int n = 1'000'000;
    std::vector<double> xs(n);
    for (auto& x : xs)
        x = sample_scalar(b, rng);
    const auto e = moments(xs);
    const double var = 0.95 * 0.0025 + 0.05 * 0.0025 + 0.95 * 0.05 * 1.0; // 0.05
    EXPECT_NEAR(e.mean, -0.05, 3.0 * std::sqrt(var / n));
    const double mu4 = mixture_mu4({{0.95, 0.0, 0.05}, {0.05, -1.0, 0.05}}, -0.05);
    EXPECT_NEAR(e.variance, var, 3.0 * std::sqrt((mu4 - var * var) / n));
}

TEST(SampleScalar, GaussianStdWithinOnePercent)
{
    RngStream rng(5, 5);
    const int n = 1'000'000;
    std::vector<double> xs(n);
    for (auto& x : xs)
        x = sample_scalar(Gaussian{0.7}, rng);
    const auto e = moments(xs);
    EXPECT_NEAR(std::sqrt(e.variance), 0.7, 0.007);
    EXPECT_NEAR(e.mean, 0.0, 3.0 * 0.7 / 1000.0);
}

TEST(SampleScalar, ConditionalIsUsageError)
{
    RngStream rng(0, 0);
    EXPECT_THROW(sample_scalar(ConditionalTwoSigma{}, rng), UsageError);
    EXPECT_THROW(sample_vector2(ConditionalContinuous{}, rng), UsageError);
    EXPECT_THROW(sample_conditional(Gaussian{1.0}, Genotype{{0.0, 0.0}}, rng), UsageError);
    EXPECT_EQ(sample_scalar(NoNoise{}, rng), 0.0);
}

TEST(SampleVector2, GaussianComponentsUncorrelated)
{
    RngStream rng(8, 8);
    const int n = 1'000'000;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const auto v = sample_vector2(Gaussian{0.2}, rng);
        sx += v[0];
        sy += v[1];
        sxx += v[0] * v[0];
        syy += v[1] * v[1];
        sxy += v[0] * v[1];
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double corr = cov / std::sqrt((sxx / n - (sx / n) * (sx / n)) * (syy / n - (sy / n) * (sy / n)));
    EXPECT_LT(std::abs(corr), 0.01);
}

TEST(SampleVector2, BimodalSecondModeFrequency)
{
    const Bimodal b{0.95, {0.0, 0.0}, 0.01, {1.0, 1.0}, 0.01};
    RngStream rng(2, 3);
    const int n = 1'000'000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        const auto v = sample_vector2(b, rng);
        hits += v[0] > 0.5 && v[1] > 0.5;
    }
    EXPECT_NEAR(hits / double(n), 0.05, 3.0 * std::sqrt(0.05 * 0.95 / n));
}

TEST(SampleVector2, ZeroSigmaModeGivesExactMean)
{
    const Bimodal b{1.0, {0.0, 0.0}, 0.0, {1.0, 1.0}, 0.01};
    RngStream rng(4, 4);
    for (int i = 0; i < 1000; ++i)
        ASSERT_EQ(sample_vector2(b, rng), (Vec2{0.0, 0.0}));
}

TEST(SampleConditional, TwoSigmaBranchOnSignOfProduct)
{
    const ConditionalTwoSigma t{0.001, 0.05};
    EXPECT_EQ(conditional_sigma(t, std::vector<double>{0.5, 1.0, 2.0}), 0.001);
    EXPECT_EQ(conditional_sigma(t, std::vector<double>{-0.5, -1.0, 2.0}), 0.001);
    EXPECT_EQ(conditional_sigma(t, std::vector<double>{-0.5, 1.0, 2.0}), 0.05);
    EXPECT_EQ(conditional_sigma(t, std::vector<double>{-0.5, 0.0, 2.0}), 0.001); // sign(0) >= 0

    RngStream rng(6, 6);
    const int n = 100'000;
    std::vector<double> xs;
    const Genotype positive{{0.1, 0.2, 0.3, 0.4}};
    for (int i = 0; i < n; ++i) {
        const auto v = sample_conditional(t, positive, rng);
        xs.push_back(v[0]);
        xs.push_back(v[1]);
    }
    const double sd = std::sqrt(moments(xs).variance);
    EXPECT_NEAR(sd, 0.001, 3.0 * 0.001 / std::sqrt(2.0 * xs.size()));
}

TEST(SampleConditional, ContinuousZeroVarianceGenotypeIsExactZero)
{
    RngStream rng(7, 7);
    const Genotype flat{{0.8, 0.8, 0.8, 0.8}};
    for (int i = 0; i < 1000; ++i)
        ASSERT_EQ(sample_conditional(ConditionalContinuous{0.02}, flat, rng), (Vec2{0.0, 0.0}));
}

TEST(SampleConditional, ContinuousStdIsEtaTimesAngleVariance)
{
    RngStream rng(7, 8);
    const Genotype g{{1.0, 1.0, -1.0, -1.0}}; // Var = 1
    const int n = 100'000;
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) {
        const auto v = sample_conditional(ConditionalContinuous{0.02}, g, rng);
        xs.push_back(v[0]);
        xs.push_back(v[1]);
    }
    EXPECT_NEAR(std::sqrt(moments(xs).variance), 0.02, 3.0 * 0.02 / std::sqrt(2.0 * xs.size()));
}

TEST(AnalyticExpectation, Examples)
{
    const auto g = analytic_expectation(Gaussian{0.5});
    ASSERT_TRUE(g);
    EXPECT_EQ(g->mean[0], 0.0);
    EXPECT_DOUBLE_EQ(g->variance[0], 0.25);

    const auto b = analytic_expectation(Bimodal{0.95, {0.0, 0.0}, 0.05, {-1.0, -1.0}, 0.05});
    ASSERT_TRUE(b);
    EXPECT_NEAR(b->mean[0], -0.05, 1e-15);
    EXPECT_NEAR(b->variance[0], 0.05, 1e-15);

    EXPECT_FALSE(analytic_expectation(ConditionalContinuous{0.02}));
    EXPECT_FALSE(analytic_expectation(ConditionalTwoSigma{}));
    EXPECT_EQ(analytic_expectation(NoNoise{})->variance, (Vec2{0.0, 0.0}));
}

TEST(Validation, Constraints)
{
    EXPECT_THROW(validate(Gaussian{0.0}), ConfigError);
    EXPECT_THROW(validate(Bimodal{1.0}), ConfigError);
    EXPECT_THROW(validate(Bimodal{0.5, {}, -1.0}), ConfigError);
    EXPECT_THROW(validate(ConditionalTwoSigma{0.01, 0.05}), ConfigError); // 0.05 < 10 * 0.01
    EXPECT_NO_THROW(validate(ConditionalTwoSigma{0.001, 0.05}));
    EXPECT_THROW(validate(ConditionalContinuous{0.0}), ConfigError);
}

TEST(Determinism, SameStreamSameDraws)
{
    const NoiseDistribution d = Bimodal{};
    RngStream a(100, 3), b(100, 3);
    for (int i = 0; i < 1000; ++i)
        ASSERT_EQ(sample_vector2(d, a), sample_vector2(d, b));
}

// Property: bimodal mode-selection frequency matches alpha for several alphas.
TEST(Property, BimodalModeFrequency)
{
    for (double alpha : {0.1, 0.5, 0.9, 0.99}) {
        const Bimodal b{alpha, {0.0, 0.0}, 0.01, {5.0, 5.0}, 0.01};
        RngStream rng(static_cast<std::uint64_t>(alpha * 1000), 1);
        const int n = 200'000;
        int first = 0;
        for (int i = 0; i < n; ++i)
            first += sample_scalar(b, rng) < 2.5;
        EXPECT_NEAR(first / double(n), alpha, 3.0 * std::sqrt(alpha * (1 - alpha) / n)) << "alpha=" << alpha;
    }
}
