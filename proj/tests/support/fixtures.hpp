#pragma once
// Small data builders shared by the test binaries.

#include "bvsr/genotype.hpp"
#include "bvsr/simulate.hpp"

#include <Eigen/Dense>

#include <random>
#include <string>

namespace fixtures {

// Centered GenotypeMatrix from raw dosages, ids snp0..snp{p-1} at 1 kb spacing.
inline bvsr::GenotypeMatrix make_genotypes(const Eigen::MatrixXd& raw)
{
    bvsr::GenotypeMatrix g;
    g.values = raw;
    g.missing.setConstant(raw.rows(), raw.cols(), false);
    for (Eigen::Index j = 0; j < raw.cols(); ++j) {
        g.snps.push_back(bvsr::SnpInfo{"snp" + std::to_string(j), "A", "G", "1", (j + 1) * 1000});
    }
    return bvsr::impute_and_center(std::move(g));
}

inline Eigen::MatrixXd random_dosages(Eigen::Index n, Eigen::Index p, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> maf(0.05, 0.5);
    Eigen::MatrixXd X(n, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        std::binomial_distribution<int> d(2, maf(rng));
        for (Eigen::Index i = 0; i < n; ++i) X(i, j) = d(rng);
    }
    return X;
}

inline Eigen::VectorXd random_normal(Eigen::Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = z(rng);
    return v;
}

struct Dataset {
    bvsr::GenotypeMatrix g;
    Eigen::VectorXd y;  // centered
    bvsr::SimulationTruth truth;
};

inline Dataset simulated(const bvsr::SimulationSpec& spec)
{
    Dataset d;
    const bvsr::GenotypeMatrix raw = bvsr::sim_genotypes(spec);
    const bvsr::SimulatedPhenotype ph = bvsr::sim_phenotypes(raw, spec);
    d.g = bvsr::impute_and_center(raw);
    d.y = ph.y.array() - ph.y.mean();
    d.truth = ph.truth;
    return d;
}

// The fixed p = 8, n = 40 dataset used by the enumeration comparisons.
inline Dataset enumeration_toy()
{
    bvsr::SimulationSpec spec;
    spec.n = 40;
    spec.p = 8;
    spec.n_causal = 2;
    spec.target_pve = 0.4;
    spec.seed = 20;
    return simulated(spec);
}

constexpr int kToyMaxModelSize = 4;

}  // namespace fixtures
