#include "bvsr/likelihood.hpp"

#include "bvsr/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>

namespace bvsr {

namespace {

constexpr double kPivotTolerance = 1e-10;

std::atomic<std::uint64_t> g_fallback_rebuilds{0};

// In-place rank-one update L L' + x x' of a lower-triangular factor.
void chol_rank_one_update(Eigen::Ref<Eigen::MatrixXd> L, Eigen::VectorXd x)
{
    const Eigen::Index m = L.rows();
    for (Eigen::Index k = 0; k < m; ++k) {
        const double lkk = L(k, k);
        const double r = std::hypot(lkk, x(k));
        const double c = r / lkk;
        const double s = x(k) / lkk;
        L(k, k) = r;
        for (Eigen::Index i = k + 1; i < m; ++i) {
            L(i, k) = (L(i, k) + s * x(i)) / c;
            x(i) = c * x(i) - s * L(i, k);
        }
    }
}

void erase_row_col(Eigen::MatrixXd& A, Eigen::Index m)
{
    const Eigen::Index k = A.rows();
    const Eigen::Index tail = k - m - 1;
    if (tail > 0) {
        A.block(m, 0, tail, k) = A.block(m + 1, 0, tail, k).eval();
        A.block(0, m, k, tail) = A.block(0, m + 1, k, tail).eval();
    }
    A.conservativeResize(k - 1, k - 1);
}

void erase_entry(Eigen::VectorXd& v, Eigen::Index m)
{
    const Eigen::Index k = v.size();
    if (m + 1 < k) v.segment(m, k - m - 1) = v.segment(m + 1, k - m - 1).eval();
    v.conservativeResize(k - 1);
}

}  // namespace

std::uint64_t ModelFactorization::fallback_rebuilds() { return g_fallback_rebuilds.load(); }

ModelFactorization ModelFactorization::build(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                             std::span<const int> columns, double sigma_a_sq)
{
    ModelFactorization f;
    f.columns_.assign(columns.begin(), columns.end());
    f.n_ = X.rows();
    f.sigma_a_sq_ = sigma_a_sq;
    const auto k = static_cast<Eigen::Index>(columns.size());
    Eigen::MatrixXd Xg(X.rows(), k);
    for (Eigen::Index c = 0; c < k; ++c) Xg.col(c) = X.col(columns[static_cast<std::size_t>(c)]);
    f.gram_ = Xg.transpose() * Xg;
    f.xty_ = Xg.transpose() * y;
    f.yty_ = y.squaredNorm();
    f.ybar_ = y.mean();
    f.factorize();
    return f;
}

double ModelFactorization::centered_yty() const
{
    return yty_ - static_cast<double>(n_) * ybar_ * ybar_;
}

void ModelFactorization::factorize()
{
    const Eigen::Index k = size();
    valid_ = true;
    if (k == 0 || !has_ridge()) {
        chol_.resize(0, 0);
        solved_.resize(0);
        logdet_omega_ = 0.0;
        quad_ = 0.0;
        return;
    }
    Eigen::MatrixXd A = gram_;
    A.diagonal().array() += 1.0 / sigma_a_sq_;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success) {
        valid_ = false;
        chol_ = Eigen::MatrixXd::Identity(k, k);
        solved_ = Eigen::VectorXd::Zero(k);
        logdet_omega_ = 0.0;
        quad_ = 0.0;
        return;
    }
    chol_ = llt.matrixL();
    finish();
}

void ModelFactorization::finish()
{
    const Eigen::Index k = size();
    if (k == 0 || !has_ridge()) {
        logdet_omega_ = 0.0;
        quad_ = 0.0;
        solved_.resize(0);
        return;
    }
    logdet_omega_ = -2.0 * chol_.diagonal().array().log().sum();
    solved_ = chol_.triangularView<Eigen::Lower>().solve(xty_);
    quad_ = solved_.squaredNorm();
    if (!std::isfinite(logdet_omega_) || (chol_.diagonal().array() <= 0.0).any()) valid_ = false;
}

void ModelFactorization::add(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int j)
{
    const Eigen::Index k = size();
    const auto xj = X.col(j);
    Eigen::VectorXd cross(k);
    for (Eigen::Index c = 0; c < k; ++c) cross(c) = X.col(columns_[static_cast<std::size_t>(c)]).dot(xj);
    const double diag = xj.squaredNorm();
    const double xjy = xj.dot(y);

    gram_.conservativeResize(k + 1, k + 1);
    gram_.block(0, k, k, 1) = cross;
    gram_.block(k, 0, 1, k) = cross.transpose();
    gram_(k, k) = diag;
    xty_.conservativeResize(k + 1);
    xty_(k) = xjy;
    columns_.push_back(j);

    if (!has_ridge()) {
        factorize();
        return;
    }
    if (!valid_) {
        factorize();
        return;
    }
    const double ridged = diag + 1.0 / sigma_a_sq_;
    Eigen::VectorXd l = k > 0 ? Eigen::VectorXd(chol_.triangularView<Eigen::Lower>().solve(cross))
                              : Eigen::VectorXd(0);
    const double pivot_sq = ridged - l.squaredNorm();
    if (!(pivot_sq > kPivotTolerance * ridged)) {
        ++g_fallback_rebuilds;
        factorize();
        return;
    }
    const double pivot = std::sqrt(pivot_sq);
    chol_.conservativeResize(k + 1, k + 1);
    chol_.block(0, k, k, 1).setZero();
    chol_.block(k, 0, 1, k) = l.transpose();
    chol_(k, k) = pivot;

    const double s_new = (xjy - l.dot(solved_)) / pivot;
    solved_.conservativeResize(k + 1);
    solved_(k) = s_new;
    quad_ += s_new * s_new;
    logdet_omega_ -= 2.0 * std::log(pivot);
}

void ModelFactorization::remove(int j)
{
    const auto it = std::find(columns_.begin(), columns_.end(), j);
    if (it == columns_.end()) return;
    const auto m = static_cast<Eigen::Index>(it - columns_.begin());
    const Eigen::Index k = size();
    columns_.erase(it);
    erase_row_col(gram_, m);
    erase_entry(xty_, m);

    if (!has_ridge() || !valid_) {
        factorize();
        return;
    }
    const Eigen::Index tail = k - m - 1;
    if (tail > 0) {
        Eigen::VectorXd v = chol_.block(m + 1, m, tail, 1);
        chol_rank_one_update(chol_.block(m + 1, m + 1, tail, tail), std::move(v));
    }
    erase_row_col(chol_, m);
    finish();
}

void ModelFactorization::swap(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, int out, int in)
{
    remove(out);
    add(X, y, in);
}

void ModelFactorization::refresh_sigma(double sigma_a_sq)
{
    if (sigma_a_sq == sigma_a_sq_ && valid_) return;
    sigma_a_sq_ = sigma_a_sq;
    factorize();
}

void ModelFactorization::reset_response(const Eigen::MatrixXd& X, const Eigen::VectorXd& y)
{
    const Eigen::Index k = size();
    for (Eigen::Index c = 0; c < k; ++c) xty_(c) = X.col(columns_[static_cast<std::size_t>(c)]).dot(y);
    yty_ = y.squaredNorm();
    ybar_ = y.mean();
    if (valid_ && has_ridge() && k > 0) {
        finish();
    } else {
        factorize();
    }
}

Eigen::VectorXd ModelFactorization::posterior_mean() const
{
    if (size() == 0 || !has_ridge()) return Eigen::VectorXd::Zero(size());
    return chol_.transpose().triangularView<Eigen::Upper>().solve(solved_);
}

double log_bf(const ModelFactorization& fact)
{
    const double syy = fact.centered_yty();
    if (!(syy > 1e-12 * std::max(fact.yty(), std::numeric_limits<double>::min()))) {
        throw ValidationError("phenotype has zero variance");
    }
    const int k = fact.size();
    if (k == 0 || !(fact.sigma_a_sq() > 0.0)) return 0.0;
    if (!fact.valid()) return -std::numeric_limits<double>::infinity();
    const double resid = syy - fact.quad();
    if (!(resid > 0.0)) return -std::numeric_limits<double>::infinity();
    const double n = static_cast<double>(fact.n());
    return 0.5 * fact.logdet_omega() - 0.5 * k * std::log(fact.sigma_a_sq()) -
           0.5 * n * std::log(resid / syy);
}

double log_bf_single(const Eigen::VectorXd& x, const Eigen::VectorXd& y, double sigma_a_sq)
{
    const double n = static_cast<double>(y.size());
    const double ybar = y.mean();
    const double syy = (y.array() - ybar).square().sum();
    if (!(syy > 0.0)) throw ValidationError("phenotype has zero variance");
    const double xx = x.squaredNorm();
    if (!(xx > 0.0) || !(sigma_a_sq > 0.0)) return 0.0;
    const double xy = x.dot(y) - ybar * x.sum();
    const double omega = 1.0 / (xx + 1.0 / sigma_a_sq);
    const double resid = syy - omega * xy * xy;
    return 0.5 * std::log(omega) - 0.5 * std::log(sigma_a_sq) - 0.5 * n * std::log(resid / syy);
}

EffectDraw sample_beta_tau(const ModelFactorization& fact, const Eigen::MatrixXd& X, Rng& rng)
{
    EffectDraw draw;
    const double n = static_cast<double>(fact.n());
    const int k = fact.size();
    const bool active = k > 0 && fact.sigma_a_sq() > 0.0 && fact.valid();
    const double resid = fact.centered_yty() - (active ? fact.quad() : 0.0);
    draw.tau = gamma_draw(rng, 0.5 * n, 2.0 / resid);

    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fact.columns()[static_cast<std::size_t>(a)] <
                                         fact.columns()[static_cast<std::size_t>(b)]; });

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    if (active) {
        Eigen::VectorXd z(k);
        for (int c = 0; c < k; ++c) z(c) = standard_normal(rng);
        const Eigen::VectorXd mean = fact.posterior_mean();
        // Omega = L^-T L^-1, so L^-T z has covariance Omega.
        beta = mean + fact.chol().transpose().triangularView<Eigen::Upper>().solve(z) /
                          std::sqrt(draw.tau);
    }
    draw.gamma.resize(static_cast<std::size_t>(k));
    draw.beta.resize(k);
    for (int c = 0; c < k; ++c) {
        draw.gamma[static_cast<std::size_t>(c)] = fact.columns()[static_cast<std::size_t>(order[static_cast<std::size_t>(c)])];
        draw.beta(c) = beta(order[static_cast<std::size_t>(c)]);
    }
    draw.pve = active ? pve(draw.gamma, draw.beta, draw.tau, X) : 0.0;
    return draw;
}

}  // namespace bvsr
