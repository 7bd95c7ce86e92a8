#include "bvsr/errors.hpp"
#include "bvsr/evaluate.hpp"
#include "bvsr/model.hpp"
#include "bvsr/simulate.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace bvsr;

TEST_CASE("genotypes are dosages with synthetic metadata")
{
    SimulationSpec spec;
    spec.n = 50;
    spec.p = 20;
    spec.n_causal = 3;
    const GenotypeMatrix g = sim_genotypes(spec);
    for (Eigen::Index i = 0; i < g.n(); ++i) {
        for (Eigen::Index j = 0; j < g.p(); ++j) {
            const double v = g.values(i, j);
            CHECK((v == 0.0 || v == 1.0 || v == 2.0));
        }
    }
    CHECK(g.snps[3].position == 4000);
    CHECK(g.snps[3].chromosome == "1");
    CHECK(g.snps[3].id == "snp3");
}

TEST_CASE("column means match Binomial(2, f)")
{
    // A degenerate frequency range pins f so the mean can be checked against 2f.
    SimulationSpec spec;
    spec.n = 10000;
    spec.p = 30;
    spec.maf_min = 0.3;
    spec.maf_max = 0.3;
    const GenotypeMatrix g = sim_genotypes(spec);
    const double se = std::sqrt(2.0 * 0.3 * 0.7 / static_cast<double>(spec.n));
    for (Eigen::Index j = 0; j < g.p(); ++j) CHECK(std::abs(g.values.col(j).mean() - 0.6) < 5.0 * se);

    spec.maf_min = 0.05;
    spec.maf_max = 0.5;
    const GenotypeMatrix h = sim_genotypes(spec);
    for (Eigen::Index j = 0; j < h.p(); ++j) {
        const double f_hat = h.values.col(j).mean() / 2.0;
        CHECK(f_hat > 0.05 - 5.0 * se);
        CHECK(f_hat < 0.5 + 5.0 * se);
    }
}

TEST_CASE("simulation is deterministic in the seed")
{
    SimulationSpec spec;
    spec.n = 30;
    spec.p = 40;
    spec.seed = 77;
    const GenotypeMatrix a = sim_genotypes(spec);
    const GenotypeMatrix b = sim_genotypes(spec);
    CHECK(a.values == b.values);
    spec.seed = 78;
    CHECK(sim_genotypes(spec).values != a.values);
    spec.seed = 77;
    CHECK(sim_phenotypes(a, spec).y == sim_phenotypes(b, spec).y);
}

TEST_CASE("realized PVE equals the target")
{
    for (double target : {0.1, 0.3, 0.6}) {
        SimulationSpec spec;
        spec.n = 200;
        spec.p = 100;
        spec.n_causal = 10;
        spec.target_pve = target;
        spec.effects = EffectDistribution::DoubleExponential;
        const GenotypeMatrix raw = sim_genotypes(spec);
        const SimulatedPhenotype ph = sim_phenotypes(raw, spec);
        const GenotypeMatrix g = impute_and_center(raw);
        CHECK(ph.truth.causal.size() == 10);
        for (std::size_t c = 1; c < ph.truth.causal.size(); ++c) CHECK(ph.truth.causal[c - 1] < ph.truth.causal[c]);
        Eigen::VectorXd beta(10);
        for (int c = 0; c < 10; ++c) beta(c) = ph.truth.beta(ph.truth.causal[static_cast<std::size_t>(c)]);
        CHECK(std::abs(pve(ph.truth.causal, beta, ph.truth.tau, g.values) - target) < 1e-12);
        CHECK(std::abs(ph.truth.pve - target) < 1e-12);
        int nonzero = 0;
        for (Eigen::Index j = 0; j < 100; ++j) nonzero += ph.truth.beta(j) != 0.0 ? 1 : 0;
        CHECK(nonzero == 10);
    }
}

TEST_CASE("double-exponential effects have variance 2")
{
    std::mt19937_64 rng(1);
    const int draws = 100000;
    double sum = 0.0;
    double sq = 0.0;
    double quad = 0.0;
    for (int d = 0; d < draws; ++d) {
        const double b = draw_effect(EffectDistribution::DoubleExponential, rng);
        sum += b;
        sq += b * b;
        quad += b * b * b * b;
    }
    const double mean = sum / draws;
    const double var = sq / draws - mean * mean;
    // Var of b^2 is E b^4 - (E b^2)^2 = 24 - 4 for the unit-rate Laplace.
    const double se = std::sqrt((quad / draws - (sq / draws) * (sq / draws)) / draws);
    CHECK(std::abs(var - 2.0) < 5.0 * se);
    CHECK(std::abs(mean) < 5.0 * std::sqrt(2.0 / draws));
}

TEST_CASE("binary mode marks the top half as cases")
{
    SimulationSpec spec;
    spec.n = 101;
    spec.p = 20;
    spec.n_causal = 3;
    spec.binary = true;
    const SimulatedPhenotype ph = sim_phenotypes(sim_genotypes(spec), spec);
    CHECK(ph.y.sum() == 50.0);
    double lowest_case = 1e300;
    double highest_control = -1e300;
    for (Eigen::Index i = 0; i < spec.n; ++i) {
        if (ph.y(i) == 1.0) {
            lowest_case = std::min(lowest_case, ph.truth.latent(i));
        } else {
            CHECK(ph.y(i) == 0.0);
            highest_control = std::max(highest_control, ph.truth.latent(i));
        }
    }
    CHECK(lowest_case > highest_control);
}

TEST_CASE("null simulation carries no signal")
{
    SimulationSpec spec;
    spec.n = 300;
    spec.p = 200;
    spec.n_causal = 0;
    spec.target_pve = 0.0;
    const GenotypeMatrix raw = sim_genotypes(spec);
    const SimulatedPhenotype ph = sim_phenotypes(raw, spec);
    CHECK(ph.truth.causal.empty());
    CHECK(ph.truth.beta.isZero());
    const GenotypeMatrix g = impute_and_center(raw);
    // Paired permutation check: real and permuted responses give similar mean single-SNP BFs.
    Eigen::VectorXd permuted = ph.y;
    std::mt19937_64 rng(3);
    std::shuffle(permuted.data(), permuted.data() + permuted.size(), rng);
    const double real = single_snp_log_bfs(g, ph.y).mean();
    const double perm = single_snp_log_bfs(g, permuted).mean();
    CHECK(std::abs(real - perm) < 0.25);
}

TEST_CASE("spec validation")
{
    SimulationSpec spec;
    spec.n_causal = 2000;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = SimulationSpec{};
    spec.target_pve = 1.0;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
}

TEST_CASE("truth file round-trips")
{
    SimulationSpec spec;
    spec.n = 40;
    spec.p = 15;
    spec.n_causal = 4;
    const GenotypeMatrix raw = sim_genotypes(spec);
    const SimulationTruth truth = sim_phenotypes(raw, spec).truth;
    std::stringstream io;
    write_truth(io, raw, truth);
    const SimulationTruth back = read_truth(io, raw);
    CHECK(back.causal == truth.causal);
    CHECK(back.beta == truth.beta);
    CHECK(back.tau == truth.tau);
    CHECK(back.pve == truth.pve);

    std::istringstream bad("field,index,id,value\nbeta,99,x,1\ntau,,,1\n");
    CHECK_THROWS_AS(read_truth(bad, raw), ParseError);
}
