#include "bvsr/evaluate.hpp"

#include "bvsr/errors.hpp"
#include "bvsr/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace bvsr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kSingleSigmas[] = {0.4, 0.2, 0.1};

void check_lengths(Eigen::Index a, Eigen::Index b, const char* what)
{
    if (a != b) {
        throw DimensionError(std::string(what) + ": lengths " + std::to_string(a) + " and " +
                             std::to_string(b) + " differ");
    }
}

}  // namespace

double single_snp_log_bf(const GenotypeMatrix& g, const Eigen::VectorXd& y, Eigen::Index j)
{
    if (!g.degenerate.empty() && g.degenerate[static_cast<std::size_t>(j)]) return kNegInf;
    double terms[3];
    for (int c = 0; c < 3; ++c) {
        terms[c] = log_bf_single(g.values.col(j), y, kSingleSigmas[c] * kSingleSigmas[c]);
    }
    const double top = *std::max_element(std::begin(terms), std::end(terms));
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - top);
    return top + std::log(sum / 3.0);
}

Eigen::VectorXd single_snp_log_bfs(const GenotypeMatrix& g, const Eigen::VectorXd& y)
{
    Eigen::VectorXd out(g.p());
    for (Eigen::Index j = 0; j < g.p(); ++j) out(j) = single_snp_log_bf(g, y, j);
    return out;
}

double mspe(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta, double tau, const Eigen::VectorXd& s)
{
    check_lengths(beta_hat.size(), beta.size(), "mspe");
    check_lengths(s.size(), beta.size(), "mspe");
    return (s.array() * (beta_hat - beta).array().square()).sum() + 1.0 / tau;
}

double mspe_exact(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta, double tau,
                  const Eigen::MatrixXd& X)
{
    check_lengths(beta_hat.size(), beta.size(), "mspe");
    check_lengths(X.cols(), beta.size(), "mspe");
    return (X * (beta_hat - beta)).squaredNorm() / static_cast<double>(X.rows()) + 1.0 / tau;
}

double rpv(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta, double tau, const Eigen::VectorXd& s)
{
    const double signal = (s.array() * beta.array().square()).sum();
    if (!(signal > 0.0)) throw ValidationError("relative prediction gain is undefined for a zero true effect");
    const double base = signal + 1.0 / tau;
    return (base - mspe(beta_hat, beta, tau, s)) / signal;
}

std::vector<CalibrationBin> calibration_bins(const Eigen::VectorXd& pips, const std::vector<bool>& causal, int bins)
{
    check_lengths(pips.size(), static_cast<Eigen::Index>(causal.size()), "calibration");
    if (bins < 1) throw ValidationError("calibration needs at least one bin");
    std::vector<CalibrationBin> out(static_cast<std::size_t>(bins));
    std::vector<double> pip_sum(out.size(), 0.0);
    std::vector<std::int64_t> hits(out.size(), 0);
    const double width = 1.0 / bins;
    for (int b = 0; b < bins; ++b) {
        out[static_cast<std::size_t>(b)].lower = b * width;
        out[static_cast<std::size_t>(b)].upper = (b + 1) * width;
    }
    for (Eigen::Index j = 0; j < pips.size(); ++j) {
        const double v = pips(j);
        if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("PIP outside [0,1] at covariate " + std::to_string(j));
        const auto b = static_cast<std::size_t>(std::min(bins - 1, static_cast<int>(std::floor(v / width))));
        ++out[b].count;
        pip_sum[b] += v;
        if (causal[static_cast<std::size_t>(j)]) ++hits[b];
    }
    for (std::size_t b = 0; b < out.size(); ++b) {
        CalibrationBin& bin = out[b];
        if (bin.count == 0) continue;
        const double m = static_cast<double>(bin.count);
        bin.mean_pip = pip_sum[b] / m;
        bin.causal_fraction = static_cast<double>(hits[b]) / m;
        bin.se_observed = 2.0 * std::sqrt(bin.causal_fraction * (1.0 - bin.causal_fraction) / m);
        bin.se_expected = 2.0 * std::sqrt(bin.mean_pip * (1.0 - bin.mean_pip) / m);
    }
    return out;
}

std::vector<PowerPoint> power_curve(const Eigen::VectorXd& scores, const std::vector<bool>& causal)
{
    check_lengths(scores.size(), static_cast<Eigen::Index>(causal.size()), "power curve");
    std::vector<Eigen::Index> order(static_cast<std::size_t>(scores.size()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return scores(a) > scores(b); });
    std::vector<PowerPoint> out;
    PowerPoint cur;
    for (std::size_t r = 0; r < order.size(); ++r) {
        const Eigen::Index j = order[r];
        if (causal[static_cast<std::size_t>(j)]) {
            ++cur.true_pos;
        } else {
            ++cur.false_pos;
        }
        const bool last_of_value = r + 1 == order.size() || scores(order[r + 1]) != scores(j);
        if (last_of_value) {
            cur.threshold = scores(j);
            out.push_back(cur);
        }
    }
    return out;
}

std::int64_t true_positives_at(const std::vector<PowerPoint>& curve, std::int64_t max_false)
{
    std::int64_t best = 0;
    for (const auto& pt : curve) {
        if (pt.false_pos <= max_false) best = std::max(best, pt.true_pos);
    }
    return best;
}

std::vector<RegionSummary> region_summaries(const std::vector<SnpInfo>& snps, const Eigen::VectorXd& pips,
                                            const std::vector<std::vector<int>>& gamma_draws,
                                            const Eigen::VectorXd& single_scores, const RegionOptions& options)
{
    check_lengths(pips.size(), static_cast<Eigen::Index>(snps.size()), "region summaries");
    if (single_scores.size() != 0) {
        check_lengths(single_scores.size(), static_cast<Eigen::Index>(snps.size()), "region summaries");
    }
    if (options.window <= 0 || options.step <= 0) throw ValidationError("region window and step must be positive");

    // Chromosomes in order of first appearance.
    std::vector<std::string> chroms;
    std::map<std::string, std::vector<int>> by_chrom;
    for (std::size_t j = 0; j < snps.size(); ++j) {
        if (snps[j].position < 0) continue;
        auto [it, inserted] = by_chrom.try_emplace(snps[j].chromosome);
        if (inserted) chroms.push_back(snps[j].chromosome);
        it->second.push_back(static_cast<int>(j));
    }

    std::vector<RegionSummary> out;
    std::vector<std::vector<int>> windows_of(snps.size());
    for (const std::string& chrom : chroms) {
        const std::vector<int>& members = by_chrom[chrom];
        std::int64_t last = 0;
        for (int j : members) last = std::max(last, snps[static_cast<std::size_t>(j)].position);
        const std::size_t first_window = out.size();
        for (std::int64_t start = 0; start <= last; start += options.step) {
            RegionSummary r;
            r.chromosome = chrom;
            r.start = start;
            r.end = start + options.window;
            r.max_single_log_bf = kNegInf;
            out.push_back(std::move(r));
        }
        for (int j : members) {
            const std::int64_t pos = snps[static_cast<std::size_t>(j)].position;
            // Windows with start <= pos < start + window.
            const std::int64_t hi = pos / options.step;
            for (std::int64_t w = hi; w >= 0 && w * options.step + options.window > pos; --w) {
                const std::size_t idx = first_window + static_cast<std::size_t>(w);
                RegionSummary& r = out[idx];
                ++r.snp_count;
                r.e_count += pips(j);
                if (single_scores.size() != 0) r.max_single_log_bf = std::max(r.max_single_log_bf, single_scores(j));
                windows_of[static_cast<std::size_t>(j)].push_back(static_cast<int>(idx));
            }
        }
    }

    std::vector<int> hits(out.size(), 0);
    std::vector<std::int64_t> c1(out.size(), 0);
    std::vector<std::int64_t> c2(out.size(), 0);
    std::vector<std::int64_t> cmore(out.size(), 0);
    std::vector<int> touched;
    for (const auto& gamma : gamma_draws) {
        touched.clear();
        for (int j : gamma) {
            for (int w : windows_of[static_cast<std::size_t>(j)]) {
                if (hits[static_cast<std::size_t>(w)]++ == 0) touched.push_back(w);
            }
        }
        for (int w : touched) {
            const int h = hits[static_cast<std::size_t>(w)];
            if (h == 1) ++c1[static_cast<std::size_t>(w)];
            if (h == 2) ++c2[static_cast<std::size_t>(w)];
            if (h > 2) ++cmore[static_cast<std::size_t>(w)];
            hits[static_cast<std::size_t>(w)] = 0;
        }
    }
    const double m = static_cast<double>(gamma_draws.size());
    std::vector<RegionSummary> kept;
    for (std::size_t w = 0; w < out.size(); ++w) {
        RegionSummary& r = out[w];
        if (r.snp_count == 0) continue;
        r.e_count_truncated = std::min(r.e_count, 1.0);
        if (m > 0.0) {
            r.prob_1 = static_cast<double>(c1[w]) / m;
            r.prob_2 = static_cast<double>(c2[w]) / m;
            r.prob_gt2 = static_cast<double>(cmore[w]) / m;
        }
        kept.push_back(std::move(r));
    }
    return kept;
}

}  // namespace bvsr
