#pragma once
// Closed-form Bayes factor of a model gamma against the null model, in the
// limit of a flat intercept prior and an improper 1/tau residual prior, and
// the cached factorization that keeps each add/remove/swap move at O(k^2).
//
// With centered covariates and Omega = (sigma_a^-2 I + X_g' X_g)^-1:
//
//   log BF = 1/2 log|Omega| - k log sigma_a
//            - n/2 log( (S_yy - y'X_g Omega X_g'y) / S_yy ),   S_yy = y'y - n ybar^2

#include "bvsr/model.hpp"
#include "bvsr/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace bvsr {

class ModelFactorization {
public:
    ModelFactorization() = default;

    // Dense construction for the given column order.
    static ModelFactorization build(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                    std::span<const int> columns, double sigma_a_sq);

    // Incremental moves at the current sigma_a. New columns are appended.
    void add(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int j);
    void remove(int j);
    void swap(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int out, int in);

    // Recomputes chol, log|Omega| and the quadratic form for a new ridge.
    void refresh_sigma(double sigma_a_sq);

    // Recomputes X_g'y and the response sums for a new response vector of the
    // same length (used when latent outcomes move).
    void reset_response(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

    [[nodiscard]] const std::vector<int>& columns() const { return columns_; }
    [[nodiscard]] int size() const { return static_cast<int>(columns_.size()); }
    [[nodiscard]] Eigen::Index n() const { return n_; }
    [[nodiscard]] const Eigen::MatrixXd& gram() const { return gram_; }
    [[nodiscard]] const Eigen::VectorXd& xty() const { return xty_; }
    [[nodiscard]] const Eigen::MatrixXd& chol() const { return chol_; }
    [[nodiscard]] double yty() const { return yty_; }
    [[nodiscard]] double ybar() const { return ybar_; }
    [[nodiscard]] double centered_yty() const;
    [[nodiscard]] double logdet_omega() const { return logdet_omega_; }
    [[nodiscard]] double quad() const { return quad_; }
    [[nodiscard]] double sigma_a_sq() const { return sigma_a_sq_; }
    // False when the ridged Gram matrix could not be factorized numerically.
    [[nodiscard]] bool valid() const { return valid_; }

    // Posterior mean of beta on the columns, Omega X_g'y, in column order.
    [[nodiscard]] Eigen::VectorXd posterior_mean() const;

    // Number of times an incremental add lost its pivot and fell back to a rebuild.
    static std::uint64_t fallback_rebuilds();

private:
    void factorize();
    void finish();
    [[nodiscard]] bool has_ridge() const { return sigma_a_sq_ > 0.0; }

    std::vector<int> columns_;
    Eigen::MatrixXd gram_;
    Eigen::VectorXd xty_;
    Eigen::MatrixXd chol_;
    Eigen::VectorXd solved_;  // L^-1 X_g'y
    Eigen::Index n_ = 0;
    double yty_ = 0.0;
    double ybar_ = 0.0;
    double logdet_omega_ = 0.0;
    double quad_ = 0.0;
    double sigma_a_sq_ = 0.0;
    bool valid_ = true;
};

// Throws ValidationError for a constant response. Returns 0 for the empty model.
double log_bf(const ModelFactorization& fact);

// Single-covariate Bayes factor at a fixed prior variance sigma_a^2.
double log_bf_single(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double sigma_a_sq);

// tau ~ Gamma(n/2, scale 2/(S_yy - quad)); beta_g | tau ~ N(Omega X_g'y, Omega / tau).
EffectDraw sample_beta_tau(const ModelFactorization& fact, const Eigen::MatrixXd& X, Rng& rng);

}  // namespace bvsr
