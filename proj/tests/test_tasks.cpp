#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <uqd/tasks.hpp>

using namespace uqd;

namespace {

const double pi = std::numbers::pi;

Genotype mixed8() { return Genotype{{0.3, -1.2, 2.0, 0.1, -0.4, 1.5, -2.5, 0.7}}; }

// Genotype whose links after joint 6 close an equilateral triangle, so the end effector
// sits on joint 6's axis point whatever theta_6 is.
Genotype folded_after_joint6() { return Genotype{{0.4, -0.3, 0.9, 0.2, -0.5, 0.0, 2 * pi / 3, 2 * pi / 3}}; }

} // namespace

TEST(Catalog, NamesRoundTripAndUnknownRejected)
{
    EXPECT_EQ(task_catalog().size(), 9u);
    for (const auto& t : task_catalog())
        EXPECT_EQ(parse_task_id(t.name), t.id);
    EXPECT_THROW(parse_task_id("gauss"), ConfigError);
}

TEST(MakeTask, Defaults)
{
    const auto small = make_task(TaskId::SmallGaussDesc);
    EXPECT_EQ(std::get<Gaussian>(small.dist).sigma, 0.01);
    EXPECT_TRUE(std::holds_alternative<DescriptorLocation>(small.location));
    EXPECT_EQ(std::get<Gaussian>(make_task(TaskId::LargeGaussDesc).dist).sigma, 0.15);
    EXPECT_EQ(std::get<Gaussian>(make_task(TaskId::GaussFit).dist).sigma, 0.5);
    const auto bd = std::get<Bimodal>(make_task(TaskId::BimodalDesc).dist);
    EXPECT_EQ(bd.mean2, (Vec2{1.0, 1.0}));
    EXPECT_EQ(bd.sigma1, 0.01);
    const auto bf = std::get<Bimodal>(make_task(TaskId::BimodalFit).dist);
    EXPECT_EQ(bf.mean2[0], -1.0);
    EXPECT_EQ(bf.alpha, 0.95);
    EXPECT_EQ(std::get<PhenotypeDim>(make_task(TaskId::PhenoJ).location).joint, 6u);
    EXPECT_EQ(make_task(TaskId::TwoSigmaDesc).arm.fitness_mode, FitnessMode::Zero);
    EXPECT_EQ(make_task(TaskId::TwoSigmaDesc).qd_offset(), 1.0);
    EXPECT_DOUBLE_EQ(make_task(TaskId::NoiseFree).qd_offset(), pi * pi);
}

TEST(MakeTask, ConstraintErrors)
{
    EXPECT_THROW(make_task(TaskId::GaussFit, {{"sigma", -1.0}}), ConfigError);
    try {
        make_task(TaskId::SmallGaussDesc, {{"sigma", 0.05}});
        FAIL() << "expected ConfigError";
    }
    catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("sigma in (0, 0.02)"), std::string::npos) << e.what();
    }
    EXPECT_THROW(make_task(TaskId::LargeGaussDesc, {{"sigma", 0.05}}), ConfigError);
    EXPECT_THROW(make_task(TaskId::BimodalFit, {{"alpha", 1.0}}), ConfigError);
    EXPECT_THROW(make_task(TaskId::TwoSigmaDesc, {{"sigma2", 0.005}}), ConfigError);
    EXPECT_THROW(make_task(TaskId::PhenoJ, {{"j", 9.0}}), ConfigError);
    EXPECT_THROW(make_task(TaskId::PhenoJ, {{"j", 2.5}}), ConfigError);
    EXPECT_THROW(make_task(TaskId::NoiseFree, {{"sigma", 1.0}}), ConfigError);
}

TEST(Evaluate, NoiseFreeMatchesDeterministicArm)
{
    const auto t = make_task(TaskId::NoiseFree);
    RngStream rng(1, 1);
    const Genotype g = mixed8();
    const Evaluation e = evaluate(t, g, rng);
    EXPECT_EQ(e.fitness, fitness(t.arm, g));
    EXPECT_EQ(e.descriptor, descriptor(t.arm, g));

    const auto samples = evaluate_samples(t, g, 30, 7, 11);
    for (const auto& s : samples)
        EXPECT_EQ(s, e);
}

TEST(Evaluate, FitnessNoiseLeavesDescriptorAlone)
{
    const auto t = make_task(TaskId::GaussFit);
    const Genotype g = mixed8();
    const auto samples = evaluate_samples(t, g, 10'000, 3, 5);
    double mean = 0.0;
    for (const auto& s : samples) {
        EXPECT_EQ(s.descriptor, descriptor(t.arm, g));
        mean += s.fitness;
    }
    mean /= samples.size();
    EXPECT_NEAR(mean, fitness(t.arm, g), 3 * 0.5 / 100.0);
}

TEST(Evaluate, DescriptorNoiseIsClampedAndFitnessExact)
{
    const auto t = make_task(TaskId::LargeGaussDesc);
    // Fully stretched arm lands on the disc boundary, so noise often leaves [0,1].
    const Genotype g{std::vector<double>(8, 0.0)};
    RngStream rng(2, 2);
    bool hit_edge = false;
    for (int i = 0; i < 1000; ++i) {
        const auto e = evaluate(t, g, rng);
        EXPECT_EQ(e.fitness, 0.0);
        EXPECT_GE(e.descriptor[0], 0.0);
        EXPECT_LE(e.descriptor[0], 1.0);
        hit_edge |= e.descriptor[0] == 1.0;
    }
    EXPECT_TRUE(hit_edge);
}

TEST(Evaluate, SingleSampleEqualsFirstOfMany)
{
    const auto t = make_task(TaskId::BimodalDesc);
    const auto one = evaluate_samples(t, mixed8(), 1, 42, 9);
    const auto many = evaluate_samples(t, mixed8(), 30, 42, 9);
    EXPECT_EQ(one[0], many[0]);
    EXPECT_THROW(evaluate_samples(t, mixed8(), 0, 42, 9), UsageError);
}

TEST(Evaluate, DimensionMismatch)
{
    RngStream rng(0, 0);
    EXPECT_THROW(evaluate(make_task(TaskId::GaussFit), Genotype{{0.0, 1.0}}, rng), ConfigError);
}

TEST(ExpectedEvaluation, AnalyticFamilies)
{
    const Genotype g = mixed8();
    const auto bf = make_task(TaskId::BimodalFit);
    const auto e = expected_evaluation(bf, g, 0);
    EXPECT_NEAR(e.fitness, fitness(bf.arm, g) - 0.05, 1e-15);
    EXPECT_EQ(e.descriptor, descriptor(bf.arm, g));

    const auto sd = make_task(TaskId::SmallGaussDesc);
    const auto d = expected_evaluation(sd, g, 0);
    EXPECT_DOUBLE_EQ(d.descriptor_variance[0], 1e-4);
    EXPECT_EQ(d.fitness, fitness(sd.arm, g));
}

TEST(ExpectedEvaluation, FoldedPhenoJHasZeroDescriptorVariance)
{
    const auto t = make_task(TaskId::PhenoJ);
    const auto e = expected_evaluation(t, folded_after_joint6(), 10'000, 1);
    EXPECT_LT(e.descriptor_variance[0], 1e-6);
    EXPECT_LT(e.descriptor_variance[1], 1e-6);
    // a generic genotype is not invariant
    const auto generic = expected_evaluation(t, mixed8(), 10'000, 1);
    EXPECT_GT(generic.descriptor_variance[0] + generic.descriptor_variance[1], 1e-4);
}

TEST(ExpectedEvaluation, MonteCarloConvergesAndIsDeterministic)
{
    const auto t = make_task(TaskId::ContinuousSigmaDesc);
    const Genotype g{{1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0}}; // Var = 1, std = 0.02
    const auto a = expected_evaluation(t, g, 100'000, 5);
    const auto b = expected_evaluation(t, g, 100'000, 5);
    EXPECT_EQ(a.descriptor, b.descriptor);
    const Vec2 d = descriptor(t.arm, g);
    const double var = 0.02 * 0.02;
    EXPECT_NEAR(a.descriptor[0], d[0], 3 * std::sqrt(var / 100'000));
    // sample variance of a normal: se = var * sqrt(2 / n)
    EXPECT_NEAR(a.descriptor_variance[0], var, 3 * var * std::sqrt(2.0 / 100'000));
    EXPECT_EQ(a.fitness, 0.0);
}
