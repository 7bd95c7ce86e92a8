#include "bvsr/errors.hpp"
#include "bvsr/evaluate.hpp"
#include "bvsr/likelihood.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bvsr;

TEST_CASE("single-SNP BF averages over three prior scales")
{
    const GenotypeMatrix g = fixtures::make_genotypes(fixtures::random_dosages(50, 3, 2));
    const Eigen::VectorXd y = fixtures::random_normal(50, 3) + 0.5 * g.values.col(1);
    double mean = 0.0;
    for (double s : {0.4, 0.2, 0.1}) mean += std::exp(log_bf_single(g.values.col(1), y, s * s)) / 3.0;
    CHECK(single_snp_log_bf(g, y, 1) == doctest::Approx(std::log(mean)).epsilon(1e-12));

    Eigen::MatrixXd raw = fixtures::random_dosages(20, 2, 4);
    raw.col(0).setOnes();
    const GenotypeMatrix d = fixtures::make_genotypes(raw);
    CHECK(single_snp_log_bf(d, fixtures::random_normal(20, 5), 0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("MSPE and relative prediction gain")
{
    const Eigen::Vector3d s(0.5, 0.2, 0.4);
    const Eigen::Vector3d beta(1.0, 0.0, -2.0);
    const double tau = 4.0;
    CHECK(mspe(beta, beta, tau, s) == doctest::Approx(0.25));
    CHECK(rpv(beta, beta, tau, s) == doctest::Approx(1.0));
    CHECK(rpv(Eigen::Vector3d::Zero(), beta, tau, s) == doctest::Approx(0.0));
    const Eigen::Vector3d half = beta / 2.0;
    // Error 0.5*0.25 + 0.4*1 = 0.525 out of a signal of 0.5 + 1.6 = 2.1.
    CHECK(rpv(half, beta, tau, s) == doctest::Approx(1.0 - 0.525 / 2.1));
    CHECK(rpv(-beta, beta, tau, s) < 0.0);
    CHECK_THROWS_AS(rpv(beta, Eigen::Vector3d::Zero(), tau, s), ValidationError);
    CHECK_THROWS_AS(mspe(Eigen::Vector2d::Zero(), beta, tau, s), DimensionError);

    // The exact form agrees with the diagonal one when columns are orthogonal.
    Eigen::MatrixXd X(4, 2);
    X << 1, 1, -1, 1, 1, -1, -1, -1;
    const Eigen::Vector2d b(0.3, -0.7);
    const Eigen::Vector2d bh(0.1, 0.2);
    const Eigen::Vector2d sv(1.0, 1.0);
    CHECK(mspe_exact(bh, b, 2.0, X) == doctest::Approx(mspe(bh, b, 2.0, sv)));
}

TEST_CASE("calibration bins")
{
    Eigen::VectorXd pips(6);
    pips << 0.01, 0.02, 0.96, 1.0, 0.5, 0.52;
    const std::vector<bool> causal{false, false, true, true, true, false};
    const auto bins = calibration_bins(pips, causal, 20);
    REQUIRE(bins.size() == 20);
    CHECK(bins[0].count == 2);
    CHECK(bins[0].causal_fraction == 0.0);
    CHECK(bins[0].mean_pip == doctest::Approx(0.015));
    CHECK(bins[19].count == 2);
    CHECK(bins[19].causal_fraction == 1.0);
    CHECK(bins[10].count == 2);
    CHECK(bins[10].causal_fraction == 0.5);
    CHECK(bins[10].se_observed == doctest::Approx(2.0 * std::sqrt(0.25 / 2.0)));
    CHECK(bins[10].se_expected == doctest::Approx(2.0 * std::sqrt(0.51 * 0.49 / 2.0)));
    CHECK(bins[5].count == 0);
    Eigen::VectorXd bad = pips;
    bad(0) = 1.2;
    CHECK_THROWS_AS(calibration_bins(bad, causal), ValidationError);
}

TEST_CASE("power curve agrees with direct counting")
{
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> score(0, 30);
    Eigen::VectorXd scores(200);
    std::vector<bool> causal(200);
    for (int j = 0; j < 200; ++j) {
        scores(j) = score(rng);
        causal[static_cast<std::size_t>(j)] = j % 7 == 0;
    }
    const auto curve = power_curve(scores, causal);
    for (std::size_t k = 1; k < curve.size(); ++k) CHECK(curve[k].threshold < curve[k - 1].threshold);
    for (const auto& pt : curve) {
        std::int64_t tp = 0;
        std::int64_t fp = 0;
        for (int j = 0; j < 200; ++j) {
            if (scores(j) >= pt.threshold) (causal[static_cast<std::size_t>(j)] ? tp : fp)++;
        }
        CHECK(pt.true_pos == tp);
        CHECK(pt.false_pos == fp);
    }
    for (std::int64_t f : {0, 5, 20, 500}) {
        std::int64_t best = 0;
        for (int t = 0; t <= 31; ++t) {
            std::int64_t tp = 0;
            std::int64_t fp = 0;
            for (int j = 0; j < 200; ++j) {
                if (scores(j) >= t) (causal[static_cast<std::size_t>(j)] ? tp : fp)++;
            }
            if (fp <= f) best = std::max(best, tp);
        }
        CHECK(true_positives_at(curve, f) == best);
    }
}

TEST_CASE("region summaries")
{
    std::vector<SnpInfo> snps;
    const std::int64_t pos[] = {100, 600'000, 1'200'000, 1'400'000, 50};
    const char* chrom[] = {"1", "1", "1", "1", "2"};
    for (int j = 0; j < 5; ++j) snps.push_back(SnpInfo{"s" + std::to_string(j), "A", "G", chrom[j], pos[j]});
    snps.push_back(SnpInfo{"nopos", "A", "G", "", -1});
    Eigen::VectorXd pips(6);
    pips << 0.9, 0.6, 0.1, 0.2, 0.3, 0.5;
    Eigen::VectorXd scores(6);
    scores << 1, 7, 2, 3, 4, 100;
    const std::vector<std::vector<int>> draws{{0, 1}, {0}, {2, 3, 1}, {}};
    const auto regions = region_summaries(snps, pips, draws, scores);
    // Chromosome 1 windows start at 0, 0.5M, 1M; chromosome 2 has one window.
    REQUIRE(regions.size() == 4);
    const RegionSummary& w0 = regions[0];
    CHECK(w0.start == 0);
    CHECK(w0.end == 1'000'000);
    CHECK(w0.snp_count == 2);
    CHECK(w0.e_count == doctest::Approx(1.5));
    CHECK(w0.e_count_truncated == 1.0);
    CHECK(w0.prob_1 == doctest::Approx(0.5));
    CHECK(w0.prob_2 == doctest::Approx(0.25));
    CHECK(w0.max_single_log_bf == 7.0);
    const RegionSummary& w1 = regions[1];
    CHECK(w1.start == 500'000);
    CHECK(w1.snp_count == 3);
    CHECK(w1.prob_gt2 == doctest::Approx(0.25));
    CHECK(w1.prob_1 == doctest::Approx(0.25));
    const RegionSummary& w2 = regions[2];
    CHECK(w2.start == 1'000'000);
    CHECK(w2.snp_count == 2);
    CHECK(w2.prob_2 == doctest::Approx(0.25));
    CHECK(regions[3].chromosome == "2");
    CHECK(regions[3].snp_count == 1);

    const auto plain = region_summaries(snps, pips, draws);
    CHECK(plain[0].max_single_log_bf == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(region_summaries(snps, Eigen::VectorXd::Zero(3), draws), DimensionError);
}
