#pragma once
// Independent reference implementations used only by tests. None of these
// share code with the library beyond plain data containers.

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace oracle {

// log BF of columns `gamma` of centered X against the null, from explicit
// inverses and determinants.
double dense_log_bf(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const std::vector<int>& gamma,
                    double sigma_a_sq);

// log BF of a single raw covariate x with an intercept, by numerical
// integration of proper priors mu | tau ~ N(0, sigma_mu^2 / tau), tau ~ Gamma(kappa/2,
// rate lambda/2), beta | tau ~ N(0, sigma_a^2 / tau).
struct QuadraturePriors {
    double sigma_mu = 1e6;
    double kappa = 1e-6;
    double lambda = 1e-6;
};
double quadrature_log_bf(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double sigma_a_sq,
                         const QuadraturePriors& priors = {});

// Exact posterior by enumerating all 2^p models on a Gauss-Legendre grid in
// h over (0,1) and log pi over (log(1/p), log(M/p)).
struct EnumerationResult {
    Eigen::VectorXd pip;
    double pve_mean = 0.0;
    std::vector<double> model_prob;  // indexed by bitmask
};
EnumerationResult enumerate_posterior(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int max_model_size,
                                      int grid = 21, int pve_draws = 4000, std::uint64_t seed = 7);

// Per-covariate conditional inclusion terms using the two-column design
// (1, x_j) with a flat intercept prior, written directly from the
// definitions. Returns log lambda_j and E(beta_j | gamma_j = 1, ...).
struct RbTerms {
    Eigen::VectorXd log_odds;
    Eigen::VectorXd cond_mean;
};
RbTerms dense_rb_terms(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const std::vector<int>& gamma,
                       const Eigen::VectorXd& beta, double tau, double h, double pi);

// Local gamma-move probabilities written out from the kernel definition:
// add picks the excluded covariate at rank r among excluded eligible ones
// with probability u / m + (1 - u) q (1 - q)^r / (1 - (1 - q)^m), remove is
// uniform over gamma and swap uniform over (member, excluded) pairs. Move
// types that are impossible at the current size are dropped and the rest
// renormalized.
struct KernelOracle {
    std::vector<int> rank_of;  // -1 marks an ineligible covariate
    double p_add = 0.45;
    double p_remove = 0.45;
    double p_swap = 0.10;
    double uniform_weight = 0.3;
    double geometric_mean = 2000.0;

    // kind: 0 add, 1 remove, 2 swap.
    [[nodiscard]] double prob(const std::vector<bool>& gamma, int kind, int out, int in) const;
};

// Log Beta(a, b) density.
double log_beta_density(double x, double a, double b);

// Gauss-Legendre nodes and weights on (a, b).
void gauss_legendre(int m, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace oracle
