#pragma once
// Rao-Blackwellized inclusion probabilities and posterior-mean effects.
//
// For each covariate j and a posterior draw theta = (gamma, beta, tau, h, pi),
// Pr(gamma_j = 1 | y, theta_-j) = lambda_j / (1 + lambda_j) with
//
//   lambda_j = [likelihood ratio of adding j on the residual R]
//            * [prior density ratio of beta_-j under sigma_a(gamma_-j + j) vs sigma_a(gamma_-j)]
//            * pi / (1 - pi),
//
// R = y - X_{gamma-j} beta_{gamma-j}. Every covariate outside gamma shares
// the same residual; for j in gamma the residual differs by x_j beta_j, so a
// single X'R pass serves all p covariates.

#include "bvsr/genotype.hpp"
#include "bvsr/model.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace bvsr {

struct RbAccumulator {
    Eigen::VectorXd pip_sum;
    Eigen::VectorXd beta_sum;
    std::int64_t draw_count = 0;
    std::uint64_t ops = 0;  // multiply-adds spent in residual inner products

    RbAccumulator() = default;
    explicit RbAccumulator(Eigen::Index p)
        : pip_sum(Eigen::VectorXd::Zero(p)), beta_sum(Eigen::VectorXd::Zero(p))
    {
    }

    RbAccumulator& operator+=(const RbAccumulator& other);
};

// Per-covariate conditional quantities for one draw.
struct RbConditionals {
    Eigen::VectorXd log_odds;   // log lambda_j; -inf for degenerate columns
    Eigen::VectorXd cond_mean;  // E(beta_j | gamma_j = 1, y, theta_-j)
    Eigen::VectorXd prob;       // lambda_j / (1 + lambda_j)
};

RbConditionals rb_conditionals(const EffectDraw& draw, double h, double pi,
                               const GenotypeMatrix& g, const Eigen::VectorXd& y,
                               std::uint64_t* ops = nullptr);

void rb_update(RbAccumulator& acc, const EffectDraw& draw, double h, double pi,
               const GenotypeMatrix& g, const Eigen::VectorXd& y);

Eigen::VectorXd pip_estimate(const RbAccumulator& acc);
Eigen::VectorXd posterior_mean_beta(const RbAccumulator& acc);

// E(y_new | y) for raw dosages x_new, using training column means and the
// response mean removed at load time.
double predict(const Eigen::VectorXd& x_new, const Eigen::VectorXd& beta_bar,
               const Eigen::VectorXd& col_mean, double y_mean);

// Keeps the `count` largest-PIP coordinates of beta_bar and zeroes the rest.
Eigen::VectorXd sparsify_top(const Eigen::VectorXd& beta_bar, const Eigen::VectorXd& pip, int count);

}  // namespace bvsr
