#pragma once
// Synthetic data: independent Binomial(2, f) genotypes with f ~ U[0.05, 0.5],
// a random causal set with normal or double-exponential effects, and a
// residual precision solved so the realized PVE equals the target exactly.

#include "bvsr/genotype.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace bvsr {

enum class EffectDistribution { Normal, DoubleExponential };

struct SimulationSpec {
    Eigen::Index n = 500;
    Eigen::Index p = 1000;
    double maf_min = 0.05;
    double maf_max = 0.5;
    int n_causal = 30;
    EffectDistribution effects = EffectDistribution::Normal;
    double target_pve = 0.3;
    bool binary = false;
    std::uint64_t seed = 1;

    void validate() const;
};

struct SimulationTruth {
    std::vector<int> causal;  // sorted
    Eigen::VectorXd beta;     // dense, length p
    double tau = 1.0;
    double pve = 0.0;         // realized on the centered genotypes
    Eigen::VectorXd latent;   // continuous outcome before binarization
};

// Raw dosages (uncentered) with synthetic ids and positions (j + 1) * 1000 on chromosome 1.
GenotypeMatrix sim_genotypes(const SimulationSpec& spec);

struct SimulatedPhenotype {
    Eigen::VectorXd y;
    SimulationTruth truth;
};

// g may be raw or centered; effects act on centered dosages.
SimulatedPhenotype sim_phenotypes(const GenotypeMatrix& g, const SimulationSpec& spec);

double draw_effect(EffectDistribution dist, std::mt19937_64& rng);

// CSV with header field,index,id,value: a tau row, a pve row, then one beta row
// per causal covariate.
void write_truth(std::ostream& out, const GenotypeMatrix& g, const SimulationTruth& truth);
SimulationTruth read_truth(std::istream& in, const GenotypeMatrix& g);

}  // namespace bvsr
