#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>

#include "lightcone/graph_analysis.hpp"
#include "oracles/powerlaw_lattice.hpp"
#include "oracles/reference_bfs.hpp"

using namespace lightcone;
using namespace lightcone::graph;

namespace {

double rel(double a, double b) { return std::abs(a / b - 1.0); }

SampledGraph path_graph(std::size_t n) {
    std::vector<SampledGraph::Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return SampledGraph(n, e, 0);
}

SampledGraph complete_graph(std::size_t n) {
    std::vector<SampledGraph::Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return SampledGraph(n, e, 0);
}

}  // namespace

// ---------------------------------------------------------------------------
// Random networks

TEST(AvgDegreeRandom, HundredThousandNodesAtPathLengthTwo) {
    // mpmath: exp((ln 1e5 - gamma)/2 + 1/2) = 390.666752052931...
    EXPECT_NEAR(avg_degree_random(1e5, 2), 390.666752052931, 1e-9);
    EXPECT_GT(avg_degree_random(1e5, 2), 370);
    EXPECT_LT(avg_degree_random(1e5, 2), 410);
}

TEST(AvgDegreeRandom, MillionNodesNeedOverAThousand) {
    EXPECT_NEAR(avg_degree_random(1e6, 2), 1235.39674258752, 1e-8);
    EXPECT_GT(avg_degree_random(1e6, 2), 1000);
}

TEST(AvgDegreeRandom, RejectsOutOfDomain) {
    EXPECT_THROW(avg_degree_random(1, 2), DomainError);
    EXPECT_THROW(avg_degree_random(1e4, 0.99), DomainError);
    EXPECT_THROW(avg_degree_random(std::nan(""), 2), DomainError);
}

TEST(AvgDegreeRandom, InverseOfPathLength) {
    EXPECT_LT(rel(avg_degree_random(1e4, path_length_random(1e4, 50)), 50), 1e-9);
    for (double n = 1e2; n <= 1e8; n *= 10)
        for (double L = 1.5; L <= 5.0; L += 0.25) {
            const double k = avg_degree_random(n, L);
            EXPECT_LT(rel(path_length_random(n, k), L), 1e-9) << "n=" << n << " L=" << L;
        }
}

TEST(AvgDegreeRandom, MonotoneInSizeAndPathLength) {
    for (double n = 1e2; n < 1e8; n *= 3.7)
        for (double L = 1.5; L < 5; L += 0.3) {
            EXPECT_GT(avg_degree_random(n * 2, L), avg_degree_random(n, L));
            EXPECT_LT(avg_degree_random(n, L + 0.1), avg_degree_random(n, L));
            EXPECT_GT(avg_degree_random(n, L), 1.0);
        }
}

TEST(PathLengthRandom, RecoversTwoAtRoundedDegree) {
    EXPECT_NEAR(path_length_random(1e5, 390.7), 2.0, 1e-3);
}

TEST(PathLengthRandom, DenseGraphIsShort) { EXPECT_LT(path_length_random(100, 99), 2.0); }

TEST(PathLengthRandom, FrozenValue) {
    // mpmath: (ln 1e4 - gamma)/(ln 100 - 1/2)
    EXPECT_NEAR(path_length_random(1e4, 100), 2.10298826015582, 1e-12);
}

TEST(PathLengthRandom, RejectsDegreeBelowSqrtE) {
    EXPECT_THROW(path_length_random(1e4, std::exp(0.5)), DomainError);
    EXPECT_THROW(path_length_random(1e4, 1.2), DomainError);
    EXPECT_NO_THROW(path_length_random(1e4, 1.7));
}

// ---------------------------------------------------------------------------
// Power-law networks

TEST(PowerLawMaxDegree, NaturalCutoff) {
    EXPECT_DOUBLE_EQ(powerlaw_max_degree({2.0, 1, NaturalCutoff{}}, 1e6), 1e6);
    EXPECT_NEAR(powerlaw_max_degree({3.0, 1, NaturalCutoff{}}, 1e6), 1e3, 1e-9);
    EXPECT_NEAR(powerlaw_max_degree({1.5, 1, NaturalCutoff{}}, 1e4), 1e8, 1e-4);
    EXPECT_DOUBLE_EQ(powerlaw_max_degree({2.5, 3, ExplicitCutoff{70}}, 1e6), 70);
}

TEST(PowerLawMaxDegree, MonotoneInSizeAndExponent) {
    for (double a = 1.2; a <= 4; a += 0.2)
        for (double n = 10; n < 1e8; n *= 10) {
            const PowerLaw p{a, 1, NaturalCutoff{}};
            const PowerLaw q{a + 0.1, 1, NaturalCutoff{}};
            EXPECT_GT(powerlaw_max_degree(p, n * 10), powerlaw_max_degree(p, n));
            EXPECT_LT(powerlaw_max_degree(q, n), powerlaw_max_degree(p, n));
            EXPECT_GE(powerlaw_max_degree(p, n), p.k_min);
        }
}

TEST(PowerLawMaxDegree, RejectsNonNormalizable) {
    EXPECT_THROW(powerlaw_max_degree({1.0, 1, NaturalCutoff{}}, 1e4), DomainError);
    EXPECT_THROW(powerlaw_max_degree({0.5, 1, NaturalCutoff{}}, 1e4), DomainError);
}

TEST(PowerLawMaxDegree, SampledMaximumWithinOrderOfMagnitude) {
    // Geometric mean of the largest of 1e4 untruncated draws, over 100 seeds.
    const PowerLaw p{1.5, 1, NaturalCutoff{}};
    const double predicted = powerlaw_max_degree(p, 1e4);
    double log_sum = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto eng = rng::make_engine(seed);
        double mx = 0;
        for (int i = 0; i < 10000; ++i)
            mx = std::max(mx, std::pow(rng::uniform01_open_low(eng), -1.0 / (p.alpha - 1)));
        log_sum += std::log10(mx);
    }
    EXPECT_LE(std::abs(log_sum / 100 - std::log10(predicted)), 1.0);
}

TEST(PowerLawMeanDegree, AlphaTwoLogBranch) {
    // mpmath: ln(1e4) / (1 - 1e-4)
    const PowerLaw p{2.0, 1, NaturalCutoff{}};
    EXPECT_NEAR(powerlaw_mean_degree(p, 1e4), 9.21126149812600, 1e-12);
    // Continuity across the special case.
    const double below = powerlaw_mean_degree({2.0 - 1e-9, 1, NaturalCutoff{}}, 1e4);
    const double above = powerlaw_mean_degree({2.0 + 1e-9, 1, NaturalCutoff{}}, 1e4);
    EXPECT_NEAR(below, 9.21126149812600, 1e-6);
    EXPECT_NEAR(above, 9.21126149812600, 1e-6);
}

TEST(PowerLawMeanDegree, AlphaThreeSecondMomentLogBranch) {
    // E[k^2] = ln(k_max/k_min) / ((1 - (k_min/k_max)^2) / 2) with k_min = 1, k_max = 1e3.
    const PowerLaw p{3.0, 1, NaturalCutoff{}};
    const double expected = std::log(1e3) / (0.5 * (1 - 1e-6));
    EXPECT_NEAR(powerlaw_moment(p, 1e6, 2), expected, 1e-10 * expected);
}

TEST(PowerLawMeanDegree, MatchesRoundedDegreeLattice) {
    for (const double alpha : {1.5, 2.0, 2.5, 3.0})
        for (const double n : {1e3, 1e4, 1e6}) {
            const PowerLaw p{alpha, 1, NaturalCutoff{}};
            const double k_max = powerlaw_max_degree(p, n);
            if (k_max < 100) continue;
            const auto lattice = oracle::rounded_degree_moments(alpha, 1, k_max);
            EXPECT_LT(rel(powerlaw_mean_degree(p, n), lattice.mean()), 0.02) << "alpha=" << alpha << " n=" << n;
        }
}

TEST(PowerLawMeanDegree, ContinuumDiffersFromUnroundedLattice) {
    // A bare integer lattice with p(k) ~ k^-alpha is a different law; at
    // k_min = 1 its mean sits far below the continuum value.
    const PowerLaw p{2.0, 1, NaturalCutoff{}};
    const double bare = oracle::pure_lattice_mean(2.0, 1, 10000);
    EXPECT_GT(rel(powerlaw_mean_degree(p, 1e4), bare), 0.2);
}

TEST(PowerLawMeanDegree, OrderingFollowsExponent) {
    const double n = 1e6;
    const double m15 = powerlaw_mean_degree({1.5, 1, NaturalCutoff{}}, n);
    const double m20 = powerlaw_mean_degree({2.0, 1, NaturalCutoff{}}, n);
    const double m25 = powerlaw_mean_degree({2.5, 1, NaturalCutoff{}}, n);
    EXPECT_GT(m15, m20);
    EXPECT_GT(m20, m25);
}

TEST(PowerLawMeanDegree, GrowsBelowThreeSaturatesAbove) {
    for (const double alpha : {1.5, 2.0, 2.5}) {
        const PowerLaw p{alpha, 1, NaturalCutoff{}};
        EXPECT_GT(powerlaw_mean_degree(p, 1e8), powerlaw_mean_degree(p, 1e4) * 1.01);
    }
    const PowerLaw p{3.5, 1, NaturalCutoff{}};
    const double limit = (3.5 - 1) / (3.5 - 2);  // infinite-cutoff mean
    EXPECT_LT(rel(powerlaw_mean_degree(p, 1e8), limit), 1e-3);
    EXPECT_LT(powerlaw_mean_degree(p, 1e8), limit);
}

TEST(PowerLawMeanDegree, SteepLawCollapsesOntoKmin) {
    // Continuum mean is k_min (alpha-1)/(alpha-2) for a far cutoff: within
    // 5% of k_min needs alpha >= 22. At alpha = 10 it is 12.5% above.
    EXPECT_LT(rel(powerlaw_mean_degree({30, 1, NaturalCutoff{}}, 1e4), 1.0), 0.05);
    EXPECT_NEAR(powerlaw_mean_degree({10, 1, NaturalCutoff{}}, 1e4), 9.0 / 8.0, 1e-3);
    EXPECT_GE(powerlaw_mean_degree({30, 4, NaturalCutoff{}}, 1e4), 4.0);
}

TEST(PowerLawMeanDegree, RejectsNonNormalizable) {
    EXPECT_THROW(powerlaw_mean_degree({1.0, 1, NaturalCutoff{}}, 1e4), DomainError);
    EXPECT_THROW(powerlaw_mean_degree({2.0, 1, NaturalCutoff{}}, 1), DomainError);
}

TEST(PowerLawValidation, ExponentRangeForNetworks) {
    EXPECT_NO_THROW(validate(PowerLaw{4.0, 1, NaturalCutoff{}}));
    EXPECT_NO_THROW(validate(PowerLaw{1.01, 1, NaturalCutoff{}}));
    EXPECT_THROW(validate(PowerLaw{1.0, 1, NaturalCutoff{}}), DomainError);
    EXPECT_THROW(validate(PowerLaw{4.5, 1, NaturalCutoff{}}), DomainError);
    EXPECT_THROW(validate(PowerLaw{2.5, 10, ExplicitCutoff{5}}), DomainError);
    EXPECT_THROW(validate(RandomGaussian{1, 2}), DomainError);
    EXPECT_THROW(validate(RandomGaussian{100, 0.5}), DomainError);
}

TEST(PowerLawWithMean, HitsTarget) {
    for (const double alpha : {2.0, 2.5, 3.0}) {
        const auto p = powerlaw_with_mean(alpha, 200, 1e6);
        EXPECT_LT(rel(powerlaw_mean_degree(p, 1e6), 200), 1e-12);
    }
}

TEST(StochasticRound, Unbiased) {
    auto eng = rng::make_engine(7);
    double sum = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(stochastic_round(eng, 3.3));
    EXPECT_NEAR(sum / n, 3.3, 0.005);
}

// ---------------------------------------------------------------------------
// Sampling

TEST(SampleGraph, RandomGaussianMeanDegree) {
    const RandomGaussian d{1e4, path_length_random(1e4, 50)};
    const auto g = sample_graph(d, 10000, 1);
    EXPECT_NEAR(g.mean_degree(), 50, 2.5);
}

TEST(SampleGraph, Deterministic) {
    const RandomGaussian d{2000, 3};
    EXPECT_EQ(sample_graph(d, 2000, 9).edges(), sample_graph(d, 2000, 9).edges());
    EXPECT_NE(sample_graph(d, 2000, 9).edges(), sample_graph(d, 2000, 10).edges());
    const PowerLaw p{2.5, 2, NaturalCutoff{}};
    EXPECT_EQ(sample_graph(p, 1000, 4).edges(), sample_graph(p, 1000, 4).edges());
}

TEST(SampleGraph, PowerLawDegreesRespectKmin) {
    const auto g = sample_graph(PowerLaw{2.5, 2, NaturalCutoff{}}, 1000, 3);
    ASSERT_EQ(g.target_degrees().size(), 1000u);
    EXPECT_GE(*std::min_element(g.target_degrees().begin(), g.target_degrees().end()), 2u);
    std::uint64_t total = 0;
    for (auto d : g.target_degrees()) total += d;
    EXPECT_EQ(total % 2, 0u);
}

TEST(SampleGraph, SimpleGraphAfterCleanup) {
    const auto g = sample_graph(PowerLaw{2.2, 2, NaturalCutoff{}}, 3000, 5);
    for (const auto& [u, v] : g.edges()) EXPECT_LT(u, v);
    EXPECT_TRUE(std::adjacent_find(g.edges().begin(), g.edges().end()) == g.edges().end());
    std::size_t deg_sum = 0;
    for (std::size_t v = 0; v < g.n_nodes(); ++v) deg_sum += g.degree(v);
    EXPECT_EQ(deg_sum, 2 * g.n_edges());
}

TEST(SampleGraph, PowerLawMeanDegreeLargeN) {
    const PowerLaw p{3.0, 5, NaturalCutoff{}};
    const auto g = sample_graph(p, 20000, 11);
    double target = 0;
    for (auto d : g.target_degrees()) target += d;
    target /= 20000;
    EXPECT_LT(rel(target, powerlaw_mean_degree(p, 2e4)), 0.05);
    EXPECT_LT(rel(g.mean_degree(), powerlaw_mean_degree(p, 2e4)), 0.05);
}

TEST(SampleGraph, InfeasibleDegreeSequence) {
    // Natural cutoff N^2 at alpha = 1.5 lets degrees exceed the node count.
    EXPECT_THROW(sample_graph(PowerLaw{1.5, 1, NaturalCutoff{}}, 100, 1), DomainError);
    EXPECT_THROW(sample_graph(PowerLaw{2.5, 150, ExplicitCutoff{200}}, 100, 1), DomainError);
    EXPECT_THROW(sample_graph(RandomGaussian{1e4, 1}, 100, 1), DomainError);
}

TEST(SampleGraph, ConfigurationModelFitsPowerLaw) {
    // Chi-square on the interior degree range [k_min, k_max/10], with
    // expected counts from the rounded-degree pmf.
    const PowerLaw p{2.5, 2, NaturalCutoff{}};
    const std::size_t n = 100000;
    const auto g = sample_graph(p, n, 21);
    const double k_max = powerlaw_max_degree(p, static_cast<double>(n));
    const auto hi = static_cast<long>(std::floor(k_max / 10));
    const auto pmf = oracle::rounded_degree_pmf(p.alpha, p.k_min, k_max);
    double total_mass = 0;
    for (double x : pmf) total_mass += x;

    std::map<long, double> observed;
    for (std::size_t v = 0; v < n; ++v) observed[static_cast<long>(g.degree(v))] += 1;

    // Merge consecutive degrees until each bin expects >= 20 nodes.
    double chi2 = 0;
    int bins = 0;
    double exp_acc = 0;
    double obs_acc = 0;
    for (long k = 2; k <= hi; ++k) {
        exp_acc += static_cast<double>(n) * pmf[static_cast<std::size_t>(k - 2)] / total_mass;
        obs_acc += observed[k];
        if (exp_acc >= 20 || k == hi) {
            chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
            ++bins;
            exp_acc = obs_acc = 0;
        }
    }
    ASSERT_GT(bins, 10);
    const boost::math::chi_squared dist(bins);
    EXPECT_LT(chi2, boost::math::quantile(dist, 0.999)) << "bins=" << bins;
}

// ---------------------------------------------------------------------------
// Path length

TEST(MeasurePathLength, PathGraph) {
    const auto r = measure_avg_path_length(path_graph(3));
    EXPECT_DOUBLE_EQ(r.mean, 4.0 / 3.0);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.std_error, 0.0);
}

TEST(MeasurePathLength, CompleteGraph) { EXPECT_DOUBLE_EQ(measure_avg_path_length(complete_graph(5)).mean, 1.0); }

TEST(MeasurePathLength, LongPathCrossesWordBoundary) {
    // 130 sources span three 64-bit batches. Mean over pairs of a path: (n+1)/3.
    EXPECT_NEAR(measure_avg_path_length(path_graph(130)).mean, 131.0 / 3.0, 1e-12);
}

TEST(MeasurePathLength, MatchesReferenceBfs) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const auto g = sample_graph(PowerLaw{2.3, 2, NaturalCutoff{}}, 700, seed);
        const auto r = measure_avg_path_length(g);
        EXPECT_NEAR(r.mean, oracle::reference_avg_path_length(g), 1e-12) << "seed " << seed;
    }
}

TEST(MeasurePathLength, GiantComponentOnly) {
    // 95-node path plus five isolated nodes: coverage 0.95, measured on the path.
    std::vector<SampledGraph::Edge> e;
    for (std::uint32_t i = 0; i + 1 < 95; ++i) e.emplace_back(i, i + 1);
    const SampledGraph g(100, e, 0);
    const auto r = measure_avg_path_length(g);
    EXPECT_EQ(r.giant_size, 95u);
    EXPECT_EQ(r.n_components, 6u);
    EXPECT_DOUBLE_EQ(r.coverage, 0.95);
    EXPECT_NEAR(r.mean, 96.0 / 3.0, 1e-12);
}

TEST(MeasurePathLength, FragmentedGraphReportsComponents) {
    std::vector<SampledGraph::Edge> e;
    for (std::uint32_t i = 0; i < 50; i += 2) e.emplace_back(i, i + 1);
    const SampledGraph g(50, e, 0);
    try {
        measure_avg_path_length(g);
        FAIL() << "expected GraphError";
    } catch (const GraphError& err) {
        EXPECT_EQ(err.n_nodes(), 50u);
        EXPECT_EQ(err.n_components(), 25u);
        EXPECT_EQ(err.giant_size(), 2u);
    }
    EXPECT_THROW(measure_avg_path_length(SampledGraph(1, {}, 0)), GraphError);
}

TEST(MeasurePathLength, SampledSourcesEstimateExact) {
    const auto g = sample_graph(RandomGaussian{5000, 3}, 5000, 2);
    const auto exact = measure_avg_path_length(g, {SourceSample::all, 0});
    const auto est = measure_avg_path_length(g, {256, 17});
    EXPECT_FALSE(est.exact);
    EXPECT_EQ(est.n_sources, 256u);
    EXPECT_GT(est.std_error, 0);
    EXPECT_LT(std::abs(est.mean - exact.mean), 4 * est.std_error);
    EXPECT_EQ(measure_avg_path_length(g, {256, 17}).mean, est.mean);
}

TEST(MeasurePathLength, DefaultPolicySamplesLargeGraphs) {
    EXPECT_EQ(default_source_sample(path_graph(10)).count, SourceSample::all);
    const SampledGraph big(kExactPathLengthLimit + 1, {}, 3);
    EXPECT_EQ(default_source_sample(big).count, kDefaultSampledSources);
}
