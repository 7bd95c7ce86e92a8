#include "bvsr/simulate.hpp"

#include "bvsr/errors.hpp"
#include "bvsr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace bvsr {

namespace {

constexpr std::uint64_t kGenotypeStream = 0;
constexpr std::uint64_t kPhenotypeStream = 1;
constexpr int kMaxEffectRedraws = 100;

}  // namespace

void SimulationSpec::validate() const
{
    if (n < 2 || p < 1) throw ValidationError("simulation needs n >= 2 and p >= 1");
    if (!(maf_min > 0.0) || !(maf_max <= 0.5) || maf_min > maf_max) {
        throw ValidationError("allele frequency range must satisfy 0 < min <= max <= 0.5");
    }
    if (n_causal < 0 || n_causal > p) throw ValidationError("causal count must lie in [0, p]");
    if (!(target_pve >= 0.0) || !(target_pve < 1.0)) throw ValidationError("target PVE must lie in [0, 1)");
    if (target_pve > 0.0 && n_causal == 0) throw ValidationError("a positive PVE needs causal covariates");
}

GenotypeMatrix sim_genotypes(const SimulationSpec& spec)
{
    spec.validate();
    Rng rng = make_rng(spec.seed, kGenotypeStream);
    GenotypeMatrix g;
    g.values.resize(spec.n, spec.p);
    g.missing.setConstant(spec.n, spec.p, false);
    g.snps.resize(static_cast<std::size_t>(spec.p));
    std::uniform_real_distribution<double> maf(spec.maf_min, spec.maf_max);
    for (Eigen::Index j = 0; j < spec.p; ++j) {
        std::binomial_distribution<int> dosage(2, maf(rng));
        for (Eigen::Index i = 0; i < spec.n; ++i) g.values(i, j) = dosage(rng);
        SnpInfo& info = g.snps[static_cast<std::size_t>(j)];
        info.id = "snp" + std::to_string(j);
        info.allele1 = "A";
        info.allele0 = "G";
        info.chromosome = "1";
        info.position = (j + 1) * 1000;
    }
    return g;
}

double draw_effect(EffectDistribution dist, std::mt19937_64& rng)
{
    if (dist == EffectDistribution::Normal) return standard_normal(rng);
    const double magnitude = std::exponential_distribution<double>(1.0)(rng);
    return uniform_open(rng) < 0.5 ? -magnitude : magnitude;
}

SimulatedPhenotype sim_phenotypes(const GenotypeMatrix& g, const SimulationSpec& spec)
{
    spec.validate();
    if (g.n() != spec.n || g.p() != spec.p) {
        throw DimensionError("genotypes are " + std::to_string(g.n()) + " x " + std::to_string(g.p()) +
                             " but the specification asks for " + std::to_string(spec.n) + " x " +
                             std::to_string(spec.p));
    }
    Rng rng = make_rng(spec.seed, kPhenotypeStream);
    const Eigen::Index n = g.n();
    const Eigen::Index p = g.p();
    Eigen::MatrixXd Xc = g.values.rowwise() - g.values.colwise().mean();

    SimulatedPhenotype out;
    SimulationTruth& truth = out.truth;
    truth.beta = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd signal = Eigen::VectorXd::Zero(n);
    if (spec.target_pve > 0.0) {
        std::vector<int> all(static_cast<std::size_t>(p));
        std::iota(all.begin(), all.end(), 0);
        std::sample(all.begin(), all.end(), std::back_inserter(truth.causal), spec.n_causal, rng);
        std::sort(truth.causal.begin(), truth.causal.end());
        int attempt = 0;
        for (;; ++attempt) {
            if (attempt == kMaxEffectRedraws) throw ValidationError("causal covariates have no variance");
            for (int j : truth.causal) truth.beta(j) = draw_effect(spec.effects, rng);
            signal = Xc * truth.beta;
            if (signal.squaredNorm() > 0.0) break;
        }
        const double v = signal.squaredNorm() / static_cast<double>(n);
        truth.tau = (spec.target_pve / (1.0 - spec.target_pve)) / v;
        const double realized = truth.tau * v;
        truth.pve = realized / (1.0 + realized);
    } else {
        truth.tau = 1.0;
        truth.pve = 0.0;
    }
    const double sd = 1.0 / std::sqrt(truth.tau);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = signal(i) + sd * standard_normal(rng);
    truth.latent = y;
    if (spec.binary) {
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return y(a) < y(b); });
        const Eigen::Index cases = n / 2;
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        for (Eigen::Index r = n - cases; r < n; ++r) b(order[static_cast<std::size_t>(r)]) = 1.0;
        y = b;
    }
    out.y = y;
    return out;
}

void write_truth(std::ostream& out, const GenotypeMatrix& g, const SimulationTruth& truth)
{
    out << std::setprecision(17);
    out << "field,index,id,value\n";
    out << "tau,,," << truth.tau << '\n';
    out << "pve,,," << truth.pve << '\n';
    for (int j : truth.causal) {
        out << "beta," << j << ',' << g.snps[static_cast<std::size_t>(j)].id << ',' << truth.beta(j) << '\n';
    }
}

SimulationTruth read_truth(std::istream& in, const GenotypeMatrix& g)
{
    SimulationTruth truth;
    truth.beta = Eigen::VectorXd::Zero(g.p());
    std::string line;
    int line_no = 0;
    bool have_tau = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 4) throw ParseError("truth file line " + std::to_string(line_no) + " needs 4 fields");
        try {
            if (fields[0] == "tau") {
                truth.tau = std::stod(fields[3]);
                have_tau = true;
            } else if (fields[0] == "pve") {
                truth.pve = std::stod(fields[3]);
            } else if (fields[0] == "beta") {
                const int j = std::stoi(fields[1]);
                if (j < 0 || j >= g.p()) {
                    throw ParseError("truth file line " + std::to_string(line_no) + " names covariate " +
                                     std::to_string(j) + " outside 0.." + std::to_string(g.p() - 1));
                }
                truth.beta(j) = std::stod(fields[3]);
                truth.causal.push_back(j);
            } else {
                throw ParseError("truth file line " + std::to_string(line_no) + " has unknown field '" +
                                 fields[0] + "'");
            }
        } catch (const std::logic_error&) {
            throw ParseError("truth file line " + std::to_string(line_no) + " has a malformed number");
        }
    }
    if (!have_tau) throw ParseError("truth file has no tau line");
    std::sort(truth.causal.begin(), truth.causal.end());
    return truth;
}

}  // namespace bvsr
