#pragma once
// Single-SNP baseline and evaluation metrics: prediction error, relative
// prediction gain, PIP calibration, power curves and region summaries.

#include "bvsr/genotype.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace bvsr {

// log of the mean single-covariate BF over sigma_a in {0.4, 0.2, 0.1};
// -inf for a degenerate column.
double single_snp_log_bf(const GenotypeMatrix& g, const Eigen::VectorXd& y, Eigen::Index j);
Eigen::VectorXd single_snp_log_bfs(const GenotypeMatrix& g, const Eigen::VectorXd& y);

// sum_j s_j (beta_hat_j - beta_j)^2 + 1/tau; exact for independent covariates.
double mspe(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta, double tau,
            const Eigen::VectorXd& s);
// (1/n) ||X (beta_hat - beta)||^2 + 1/tau on centered X, for correlated covariates.
double mspe_exact(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta, double tau,
                  const Eigen::MatrixXd& X);

// (MSPE_0 - MSPE(beta_hat)) / (MSPE_0 - 1/tau). Throws ValidationError when beta is zero.
double rpv(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta, double tau,
           const Eigen::VectorXd& s);

struct CalibrationBin {
    double lower = 0.0;
    double upper = 0.0;
    std::int64_t count = 0;
    double mean_pip = 0.0;
    double causal_fraction = 0.0;
    double se_observed = 0.0;  // 2 sqrt(q (1 - q) / m), q the causal fraction
    double se_expected = 0.0;  // 2 sqrt(pbar (1 - pbar) / m), pbar the mean PIP
};

std::vector<CalibrationBin> calibration_bins(const Eigen::VectorXd& pips,
                                             const std::vector<bool>& causal, int bins = 20);

struct PowerPoint {
    double threshold = 0.0;
    std::int64_t true_pos = 0;   // causal with score >= threshold
    std::int64_t false_pos = 0;  // non-causal with score >= threshold
};

// One point per distinct score, thresholds descending.
std::vector<PowerPoint> power_curve(const Eigen::VectorXd& scores, const std::vector<bool>& causal);
// Largest true-positive count reachable with at most max_false false positives.
std::int64_t true_positives_at(const std::vector<PowerPoint>& curve, std::int64_t max_false);

struct RegionSummary {
    std::string chromosome;
    std::int64_t start = 0;  // inclusive, bp
    std::int64_t end = 0;    // exclusive, bp
    int snp_count = 0;
    double e_count = 0.0;            // sum of PIPs
    double e_count_truncated = 0.0;  // min(e_count, 1)
    double prob_1 = 0.0;
    double prob_2 = 0.0;
    double prob_gt2 = 0.0;
    double max_single_log_bf = 0.0;  // -inf when no scores were given or the window is empty
};

struct RegionOptions {
    std::int64_t window = 1'000'000;
    std::int64_t step = 500'000;
};

// Windows [start, start + window) with start = 0, step, 2 step, ... per
// chromosome, covering every positioned SNP. SNPs with unknown positions are
// skipped. prob_* are frequencies over the gamma draws; single_scores may be
// empty.
std::vector<RegionSummary> region_summaries(const std::vector<SnpInfo>& snps, const Eigen::VectorXd& pips,
                                            const std::vector<std::vector<int>>& gamma_draws,
                                            const Eigen::VectorXd& single_scores = {},
                                            const RegionOptions& options = {});

}  // namespace bvsr
