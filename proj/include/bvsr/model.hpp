#pragma once
// Hierarchical model: hyperpriors, the (h, gamma) -> sigma_a^2 map and PVE.
//
// The limits sigma_mu -> inf and lambda, kappa -> 0 on the intercept and
// residual-precision priors are taken analytically inside the likelihood and
// never appear as numbers here.

#include "bvsr/genotype.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

namespace bvsr {

struct Hyperparameters {
    int max_model_size = 400;  // M: upper bound on the prior expected model size
    Eigen::Index p = 0;        // number of eligible covariates
    double log_pi_min = 0.0;   // log(1/p)
    double log_pi_max = 0.0;   // log(M/p)

    // Throws ValidationError unless 1 <= M < p.
    static Hyperparameters for_covariates(Eigen::Index p, int max_model_size = 400);

    [[nodiscard]] double pi_min() const;
    [[nodiscard]] double pi_max() const;
    [[nodiscard]] bool in_support(double pi) const;
};

struct ModelState {
    std::vector<int> gamma;  // sorted indices of included covariates
    double h = 0.5;
    double pi = 0.0;
    double sigma_a_sq = 0.0;  // 0 for an empty model

    [[nodiscard]] int size() const { return static_cast<int>(gamma.size()); }
};

// One conditional draw of (beta, tau). beta is stored on gamma only; every
// other coordinate is exactly zero.
struct EffectDraw {
    std::vector<int> gamma;
    Eigen::VectorXd beta;  // aligned with gamma
    double tau = 1.0;
    double pve = 0.0;

    [[nodiscard]] Eigen::VectorXd dense(Eigen::Index p) const;
};

double sum_variance(std::span<const int> gamma, const Eigen::VectorXd& s);

// (h / (1 - h)) / sum_{j in gamma} s_j; nullopt for an empty gamma.
std::optional<double> sigma_a_sq(double h, std::span<const int> gamma, const Eigen::VectorXd& s);
double sigma_a_sq_from_sum(double h, double sum_s);

// Inverse map: v / (1 + v) with v = sigma_a^2 * sum s_j.
double h_from_sigma_a(double sigma_a, std::span<const int> gamma, const Eigen::VectorXd& s);

// V = (tau / n) ||X beta||^2 on centered X; returns V / (1 + V).
double pve(std::span<const int> gamma, const Eigen::VectorXd& beta, double tau,
           const Eigen::MatrixXd& X);
double pve(const EffectDraw& draw, const GenotypeMatrix& g);

// Density of the log-uniform prior on pi, expressed in pi: -log(b - a) - log(pi).
double log_prior_pi(double pi, const Hyperparameters& hp);

double log_prior_gamma_given_pi(int k, Eigen::Index p, double pi);

}  // namespace bvsr
