#include "bvsr/model.hpp"

#include "bvsr/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bvsr {

Hyperparameters Hyperparameters::for_covariates(Eigen::Index p, int max_model_size)
{
    if (max_model_size < 1) throw ValidationError("M must be at least 1");
    if (static_cast<Eigen::Index>(max_model_size) >= p) {
        throw ValidationError("M (" + std::to_string(max_model_size) +
                              ") must be smaller than the number of covariates (" +
                              std::to_string(p) + ")");
    }
    Hyperparameters hp;
    hp.max_model_size = max_model_size;
    hp.p = p;
    hp.log_pi_min = -std::log(static_cast<double>(p));
    hp.log_pi_max = std::log(static_cast<double>(max_model_size) / static_cast<double>(p));
    return hp;
}

double Hyperparameters::pi_min() const { return std::exp(log_pi_min); }
double Hyperparameters::pi_max() const { return std::exp(log_pi_max); }

bool Hyperparameters::in_support(double pi) const
{
    if (!(pi > 0.0)) return false;
    const double lp = std::log(pi);
    return lp >= log_pi_min && lp <= log_pi_max;
}

Eigen::VectorXd EffectDraw::dense(Eigen::Index p) const
{
    Eigen::VectorXd out = Eigen::VectorXd::Zero(p);
    for (std::size_t i = 0; i < gamma.size(); ++i) out(gamma[i]) = beta(static_cast<Eigen::Index>(i));
    return out;
}

double sum_variance(std::span<const int> gamma, const Eigen::VectorXd& s)
{
    double total = 0.0;
    for (int j : gamma) total += s(j);
    return total;
}

double sigma_a_sq_from_sum(double h, double sum_s)
{
    if (!(h >= 0.0) || h >= 1.0) throw std::domain_error("h must lie in [0, 1)");
    if (!(sum_s > 0.0)) throw std::domain_error("sum of covariate variances must be positive");
    return (h / (1.0 - h)) / sum_s;
}

std::optional<double> sigma_a_sq(double h, std::span<const int> gamma, const Eigen::VectorXd& s)
{
    if (!(h >= 0.0) || h >= 1.0) throw std::domain_error("h must lie in [0, 1)");
    if (gamma.empty()) return std::nullopt;
    return sigma_a_sq_from_sum(h, sum_variance(gamma, s));
}

double h_from_sigma_a(double sigma_a, std::span<const int> gamma, const Eigen::VectorXd& s)
{
    const double v = sigma_a * sigma_a * sum_variance(gamma, s);
    return v / (1.0 + v);
}

double pve(std::span<const int> gamma, const Eigen::VectorXd& beta, double tau,
           const Eigen::MatrixXd& X)
{
    if (!(tau > 0.0)) throw std::domain_error("tau must be positive");
    if (gamma.empty()) return 0.0;
    Eigen::VectorXd fitted = Eigen::VectorXd::Zero(X.rows());
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        fitted.noalias() += X.col(gamma[i]) * beta(static_cast<Eigen::Index>(i));
    }
    const double v = fitted.squaredNorm() / static_cast<double>(X.rows()) * tau;
    return v / (1.0 + v);
}

double pve(const EffectDraw& draw, const GenotypeMatrix& g)
{
    return pve(draw.gamma, draw.beta, draw.tau, g.values);
}

double log_prior_pi(double pi, const Hyperparameters& hp)
{
    if (!hp.in_support(pi)) return -std::numeric_limits<double>::infinity();
    return -std::log(hp.log_pi_max - hp.log_pi_min) - std::log(pi);
}

double log_prior_gamma_given_pi(int k, Eigen::Index p, double pi)
{
    const double kk = static_cast<double>(k);
    const double rest = static_cast<double>(p) - kk;
    double out = 0.0;
    if (kk > 0) out += kk * std::log(pi);
    if (rest > 0) out += rest * std::log1p(-pi);
    return out;
}

}  // namespace bvsr
