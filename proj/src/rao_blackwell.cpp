#include "bvsr/rao_blackwell.hpp"

#include "bvsr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bvsr {

RbAccumulator& RbAccumulator::operator+=(const RbAccumulator& other)
{
    if (pip_sum.size() == 0) {
        *this = other;
        return *this;
    }
    pip_sum += other.pip_sum;
    beta_sum += other.beta_sum;
    draw_count += other.draw_count;
    ops += other.ops;
    return *this;
}

RbConditionals rb_conditionals(const EffectDraw& draw, double h, double pi,
                               const GenotypeMatrix& g, const Eigen::VectorXd& y,
                               std::uint64_t* ops)
{
    const Eigen::MatrixXd& X = g.values;
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    const double nd = static_cast<double>(n);
    const Eigen::VectorXd& s = g.col_variance;

    // Residual of the full draw; X'R for covariates in gamma is corrected below.
    Eigen::VectorXd resid = y;
    for (std::size_t c = 0; c < draw.gamma.size(); ++c) {
        resid.noalias() -= X.col(draw.gamma[c]) * draw.beta(static_cast<Eigen::Index>(c));
    }
    Eigen::VectorXd xtr = X.transpose() * resid;
    if (ops != nullptr) *ops += static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(p);

    Eigen::VectorXd beta_full = Eigen::VectorXd::Zero(p);
    std::vector<bool> included(static_cast<std::size_t>(p), false);
    for (std::size_t c = 0; c < draw.gamma.size(); ++c) {
        beta_full(draw.gamma[c]) = draw.beta(static_cast<Eigen::Index>(c));
        included[static_cast<std::size_t>(draw.gamma[c])] = true;
    }
    const double sum_s = sum_variance(draw.gamma, s);
    const double beta_sq = draw.beta.squaredNorm();
    const double k = static_cast<double>(draw.gamma.size());
    const double odds = std::log(pi) - std::log1p(-pi);
    const double ratio = h / (1.0 - h);

    RbConditionals out;
    out.log_odds.resize(p);
    out.cond_mean.resize(p);
    out.prob.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        if (!g.degenerate.empty() && g.degenerate[static_cast<std::size_t>(j)]) {
            out.log_odds(j) = -std::numeric_limits<double>::infinity();
            out.cond_mean(j) = 0.0;
            out.prob(j) = 0.0;
            continue;
        }
        const bool in = included[static_cast<std::size_t>(j)];
        const double bj = beta_full(j);
        const double xx = nd * s(j);
        // x_j'R with beta_j removed from the residual when j is in gamma
        const double xr = xtr(j) + (in ? bj * xx : 0.0);
        const double k_rest = in ? k - 1.0 : k;
        const double sum_rest = in ? sum_s - s(j) : sum_s;
        const double beta_sq_rest = in ? beta_sq - bj * bj : beta_sq;

        double log_lambda = odds;
        double mean = 0.0;
        if (ratio > 0.0) {
            const double sig1 = ratio / (sum_rest + s(j));
            const double omega = 1.0 / (xx + 1.0 / sig1);
            mean = omega * xr;
            log_lambda += 0.5 * std::log(omega) - 0.5 * std::log(sig1) +
                          0.5 * draw.tau * omega * xr * xr;
            if (k_rest > 0.0) {
                const double sig0 = ratio / sum_rest;
                log_lambda += 0.5 * k_rest * (std::log(sig0) - std::log(sig1)) -
                              0.5 * draw.tau * beta_sq_rest * (1.0 / sig1 - 1.0 / sig0);
            }
        }
        out.log_odds(j) = log_lambda;
        out.cond_mean(j) = mean;
        out.prob(j) = log_lambda >= 0.0 ? 1.0 / (1.0 + std::exp(-log_lambda))
                                        : std::exp(log_lambda) / (1.0 + std::exp(log_lambda));
    }
    return out;
}

void rb_update(RbAccumulator& acc, const EffectDraw& draw, double h, double pi,
               const GenotypeMatrix& g, const Eigen::VectorXd& y)
{
    if (acc.pip_sum.size() == 0) acc = RbAccumulator(g.p());
    const auto terms = rb_conditionals(draw, h, pi, g, y, &acc.ops);
    acc.pip_sum += terms.prob;
    acc.beta_sum += terms.cond_mean.cwiseProduct(terms.prob);
    ++acc.draw_count;
}

Eigen::VectorXd pip_estimate(const RbAccumulator& acc)
{
    if (acc.draw_count <= 0) throw std::logic_error("no draws accumulated");
    return acc.pip_sum / static_cast<double>(acc.draw_count);
}

Eigen::VectorXd posterior_mean_beta(const RbAccumulator& acc)
{
    if (acc.draw_count <= 0) throw std::logic_error("no draws accumulated");
    return acc.beta_sum / static_cast<double>(acc.draw_count);
}

double predict(const Eigen::VectorXd& x_new, const Eigen::VectorXd& beta_bar,
               const Eigen::VectorXd& col_mean, double y_mean)
{
    if (x_new.size() != beta_bar.size() || col_mean.size() != beta_bar.size()) {
        throw DimensionError("prediction input has " + std::to_string(x_new.size()) +
                             " covariates but the fitted model has " +
                             std::to_string(beta_bar.size()));
    }
    return (x_new - col_mean).dot(beta_bar) + y_mean;
}

Eigen::VectorXd sparsify_top(const Eigen::VectorXd& beta_bar, const Eigen::VectorXd& pip, int count)
{
    const auto p = static_cast<int>(pip.size());
    std::vector<int> idx(static_cast<std::size_t>(p));
    std::iota(idx.begin(), idx.end(), 0);
    const int keep = std::clamp(count, 0, p);
    std::partial_sort(idx.begin(), idx.begin() + keep, idx.end(), [&](int a, int b) {
        return pip(a) > pip(b) || (pip(a) == pip(b) && a < b);
    });
    Eigen::VectorXd out = Eigen::VectorXd::Zero(beta_bar.size());
    for (int c = 0; c < keep; ++c) out(idx[static_cast<std::size_t>(c)]) = beta_bar(idx[static_cast<std::size_t>(c)]);
    return out;
}

}  // namespace bvsr
