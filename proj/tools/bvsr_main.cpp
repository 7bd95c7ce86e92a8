// Command-line front end: simulate, run, run-binary, evaluate, predict, regions.

#include "bvsr/errors.hpp"
#include "bvsr/evaluate.hpp"
#include "bvsr/genotype.hpp"
#include "bvsr/model.hpp"
#include "bvsr/probit.hpp"
#include "bvsr/rao_blackwell.hpp"
#include "bvsr/sampler.hpp"
#include "bvsr/simulate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace bvsr;

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SamplerOptions {
    std::string geno;
    std::string pheno;
    std::string pos;
    std::string out = ".";
    std::optional<std::int64_t> iterations;
    std::optional<std::int64_t> burnin;
    std::optional<std::int64_t> sampling;
    std::optional<std::int64_t> thin;
    int chains = 4;
    std::uint64_t seed = 1;
    int smax = 400;
    bool binary = false;
    bool no_latent_swaps = false;
    bool quantile_normalize = false;
    std::optional<int> swap_window;
    ProposalConfig proposal;
};

struct SimulateOptions {
    SimulationSpec spec;
    std::string effects = "normal";
    std::string out = ".";
};

struct EvaluateOptions {
    std::string snps;
    std::string truth;
    std::string geno;
    std::string out = ".";
    int sparse_top = 30;
    int max_false = 20;
};

struct PredictOptions {
    std::string geno;
    std::string snps;
    std::string centering;
    std::string out = "predictions.csv";
};

struct RegionOptionsCli {
    std::string snps;
    std::string draws;
    std::string out = "regions.csv";
    std::int64_t window = 1'000'000;
    std::int64_t step = 500'000;
};

int thread_count()
{
    if (const char* env = std::getenv("BVSR_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("BVSR_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

template <class Fn>
void parallel_for(int count, int threads, Fn fn)
{
    const int workers = std::clamp(threads, 1, std::max(count, 1));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::mutex mu;
    int next = 0;
    std::exception_ptr error;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                int i = 0;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= count || error) return;
                    i = next++;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::ofstream open_out(const fs::path& path)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(12);
    return out;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

// Reads a headered CSV into rows of named fields.
std::vector<std::map<std::string, std::string>> read_csv(const std::string& path)
{
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + " is empty");
    const auto header = split_csv(line);
    std::vector<std::map<std::string, std::string>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size()) {
            throw ParseError(path + " line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                             " fields, expected " + std::to_string(header.size()));
        }
        std::map<std::string, std::string> row;
        for (std::size_t c = 0; c < header.size(); ++c) row[header[c]] = fields[c];
        rows.push_back(std::move(row));
    }
    return rows;
}

double field_double(const std::map<std::string, std::string>& row, const std::string& key, const std::string& path)
{
    const auto it = row.find(key);
    if (it == row.end()) throw ParseError(path + " has no column '" + key + "'");
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw ParseError(path + " column '" + key + "' holds non-numeric value '" + it->second + "'");
    }
}

struct SnpTable {
    std::vector<SnpInfo> snps;
    Eigen::VectorXd pip;
    Eigen::VectorXd beta_bar;
    Eigen::VectorXd single_log10bf;
};

SnpTable read_snp_table(const std::string& path)
{
    const auto rows = read_csv(path);
    SnpTable t;
    const auto p = static_cast<Eigen::Index>(rows.size());
    t.pip.resize(p);
    t.beta_bar.resize(p);
    t.single_log10bf.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const auto& row = rows[static_cast<std::size_t>(j)];
        SnpInfo info;
        info.id = row.count("id") ? row.at("id") : "";
        info.chromosome = row.count("chr") ? row.at("chr") : "";
        info.position = static_cast<std::int64_t>(field_double(row, "pos", path));
        t.snps.push_back(info);
        t.pip(j) = field_double(row, "pip", path);
        t.beta_bar(j) = field_double(row, "beta_bar", path);
        t.single_log10bf(j) = field_double(row, "single_snp_log10bf", path);
    }
    return t;
}

ChainConfig resolve_chain(const SamplerOptions& o)
{
    ChainConfig c;
    std::int64_t burn = 0;
    std::int64_t sampling = 0;
    if (o.sampling) {
        sampling = *o.sampling;
        burn = o.burnin ? *o.burnin : sampling / 9;
        if (o.iterations && *o.iterations != burn + sampling) {
            throw UsageError("--iterations must equal --burnin + --sampling when all three are given");
        }
    } else {
        const std::int64_t total = o.iterations ? *o.iterations : 110'000;
        burn = o.burnin ? *o.burnin : total / 10;
        if (burn >= total) {
            throw UsageError("burn-in (" + std::to_string(burn) + ") must be smaller than the total iterations (" +
                             std::to_string(total) + ")");
        }
        sampling = total - burn;
    }
    if (burn < 0 || sampling < 1) throw UsageError("iteration counts must be positive");
    c.burn_in = burn;
    c.sampling = sampling;
    c.thin = o.thin ? *o.thin : std::max<std::int64_t>(1, sampling / 10'000);
    if (c.thin < 1 || c.thin > sampling) throw UsageError("--thin must lie in [1, sampling iterations]");
    c.seed = o.seed;
    c.chains = o.chains;
    if (c.chains < 1) throw UsageError("--chains must be positive");
    return c;
}

struct LoadedData {
    GenotypeMatrix g;
    Phenotype y;
};

LoadedData load_data(const SamplerOptions& o, bool center_y)
{
    LoadedData d;
    d.g = load_genotypes(o.geno);
    if (!o.pos.empty()) load_positions(o.pos, d.g);
    d.y = load_phenotype(o.pheno);
    drop_missing_individuals(d.g, d.y);
    d.g = impute_and_center(std::move(d.g));
    if (center_y && o.quantile_normalize) d.y = quantile_normalize(d.y);
    if (center_y) d.y = center_phenotype(std::move(d.y));
    return d;
}

void write_run_outputs(const fs::path& dir, const GenotypeMatrix& g, const Eigen::VectorXd& y, double y_mean,
                       const std::vector<PosteriorSamples>& chains)
{
    const PosteriorSummary summary = summarize(chains);
    const Eigen::VectorXd single = single_snp_log_bfs(g, y) / std::log(10.0);
    {
        auto out = open_out(dir / "snps.csv");
        out << "id,chr,pos,pip,beta_bar,single_snp_log10bf,frequency_pip\n";
        for (Eigen::Index j = 0; j < g.p(); ++j) {
            const SnpInfo& s = g.snps[static_cast<std::size_t>(j)];
            out << s.id << ',' << s.chromosome << ',' << s.position << ',' << summary.pip(j) << ','
                << summary.beta_bar(j) << ',' << single(j) << ',' << summary.frequency_pip(j) << '\n';
        }
    }
    std::vector<std::vector<int>> gammas;
    {
        auto trace = open_out(dir / "trace.csv");
        auto draws = open_out(dir / "draws.csv");
        trace << "chain,draw,h,pi,model_size,pve,log_bf\n";
        draws << "chain,draw,gamma\n";
        for (std::size_t c = 0; c < chains.size(); ++c) {
            for (std::size_t d = 0; d < chains[c].draws.size(); ++d) {
                const RecordedDraw& r = chains[c].draws[d];
                trace << c << ',' << d << ',' << r.h << ',' << r.pi << ',' << r.gamma.size() << ',' << r.pve << ','
                      << r.log_bf << '\n';
                draws << c << ',' << d << ',';
                for (std::size_t k = 0; k < r.gamma.size(); ++k) draws << (k ? " " : "") << r.gamma[k];
                draws << '\n';
                gammas.push_back(r.gamma);
            }
        }
    }
    double max_disagreement = 0.0;
    {
        auto out = open_out(dir / "chain_pips.csv");
        out << "id";
        std::vector<Eigen::VectorXd> pips;
        for (std::size_t c = 0; c < chains.size(); ++c) {
            out << ",chain" << c;
            pips.push_back(pip_estimate(chains[c].rb));
        }
        out << '\n';
        for (Eigen::Index j = 0; j < g.p(); ++j) {
            out << g.snps[static_cast<std::size_t>(j)].id;
            for (const auto& v : pips) out << ',' << v(j);
            out << '\n';
        }
        for (std::size_t a = 0; a < pips.size(); ++a) {
            for (std::size_t b = a + 1; b < pips.size(); ++b) {
                max_disagreement = std::max(max_disagreement, (pips[a] - pips[b]).cwiseAbs().maxCoeff());
            }
        }
    }
    {
        auto out = open_out(dir / "centering.csv");
        out << std::setprecision(17) << "kind,id,mean\n";
        out << "phenotype,," << y_mean << '\n';
        for (Eigen::Index j = 0; j < g.p(); ++j) {
            out << "snp," << g.snps[static_cast<std::size_t>(j)].id << ',' << g.col_mean(j) << '\n';
        }
    }
    {
        std::int64_t proposals = 0;
        std::int64_t accepted = 0;
        for (const auto& c : chains) {
            proposals += c.proposals;
            accepted += c.accepted;
        }
        auto out = open_out(dir / "summary.csv");
        out << "key,value\n";
        out << "draws," << summary.draws << '\n';
        out << "pve_mean," << summary.pve_mean << '\n';
        out << "pve_median," << summary.pve_median << '\n';
        out << "pve_q05," << summary.pve_lower << '\n';
        out << "pve_q95," << summary.pve_upper << '\n';
        out << "model_size_mean," << summary.model_size_mean << '\n';
        out << "acceptance_rate," << static_cast<double>(accepted) / static_cast<double>(std::max<std::int64_t>(proposals, 1))
            << '\n';
        out << "max_chain_pip_disagreement," << max_disagreement << '\n';
    }
    const bool positioned = std::any_of(g.snps.begin(), g.snps.end(), [](const SnpInfo& s) { return s.position >= 0; });
    if (positioned) {
        const auto regions = region_summaries(g.snps, summary.pip, gammas, single);
        auto out = open_out(dir / "regions.csv");
        out << "chr,start,end,snp_count,e_count,e_count_truncated,prob_1,prob_2,prob_gt2,max_single_log10bf\n";
        for (const auto& r : regions) {
            out << r.chromosome << ',' << r.start << ',' << r.end << ',' << r.snp_count << ',' << r.e_count << ','
                << r.e_count_truncated << ',' << r.prob_1 << ',' << r.prob_2 << ',' << r.prob_gt2 << ','
                << r.max_single_log_bf << '\n';
        }
    }
    std::cout << "draws " << summary.draws << ", PVE median " << summary.pve_median << " (90% interval "
              << summary.pve_lower << " to " << summary.pve_upper << "), mean model size "
              << summary.model_size_mean << '\n';
}

void write_manifest(const CLI::App& app, const fs::path& dir)
{
    auto out = open_out(dir / "manifest.toml");
    out << "# bvsr " << kVersion << "; re-run with: bvsr --config manifest.toml\n";
    out << app.config_to_str(true, false);
}

int cmd_run(const CLI::App& app, SamplerOptions o, bool binary)
{
    o.proposal.swap_window = o.swap_window;
    try {
        o.proposal.validate();
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    const ChainConfig chain_cfg = resolve_chain(o);
    const int threads = thread_count();
    const fs::path dir(o.out);
    fs::create_directories(dir);

    LoadedData d = load_data(o, !binary);
    const Hyperparameters hp = Hyperparameters::for_covariates(d.g.eligible_count(), o.smax);
    std::vector<PosteriorSamples> chains(static_cast<std::size_t>(chain_cfg.chains));
    Eigen::VectorXd response;
    double y_mean = d.y.mean;
    if (binary) {
        const std::vector<int> yb = to_binary(d.y.values);
        const LatentAssignment init = init_latent(yb);
        response = init.z();
        y_mean = 0.0;
        LatentConfig latent;
        latent.swaps = !o.no_latent_swaps;
        parallel_for(chain_cfg.chains, threads, [&](int c) {
            chains[static_cast<std::size_t>(c)] =
                run_chain_binary(d.g, yb, hp, o.proposal, chain_cfg, latent, c).samples;
        });
    } else {
        response = d.y.values;
        const SnpRanking ranking = rank_snps(d.g, response);
        parallel_for(chain_cfg.chains, threads, [&](int c) {
            chains[static_cast<std::size_t>(c)] = run_chain(d.g, response, ranking, hp, o.proposal, chain_cfg, c);
        });
    }
    write_run_outputs(dir, d.g, response, y_mean, chains);
    write_manifest(app, dir);
    return 0;
}

int cmd_simulate(const CLI::App& app, SimulateOptions o)
{
    if (o.effects == "normal") {
        o.spec.effects = EffectDistribution::Normal;
    } else if (o.effects == "dexp") {
        o.spec.effects = EffectDistribution::DoubleExponential;
    } else {
        throw UsageError("--effects must be 'normal' or 'dexp'");
    }
    try {
        o.spec.validate();
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    const fs::path dir(o.out);
    fs::create_directories(dir);
    const GenotypeMatrix g = sim_genotypes(o.spec);
    const SimulatedPhenotype ph = sim_phenotypes(g, o.spec);
    {
        auto out = open_out(dir / "geno.txt");
        write_mean_genotypes(out, g);
    }
    {
        auto out = open_out(dir / "pos.txt");
        write_positions(out, g);
    }
    {
        auto out = open_out(dir / "pheno.txt");
        write_phenotype(out, ph.y);
    }
    {
        auto out = open_out(dir / "truth.csv");
        write_truth(out, g, ph.truth);
    }
    write_manifest(app, dir);
    return 0;
}

int cmd_evaluate(const EvaluateOptions& o)
{
    const SnpTable table = read_snp_table(o.snps);
    GenotypeMatrix g = impute_and_center(load_genotypes(o.geno));
    if (g.p() != static_cast<Eigen::Index>(table.snps.size())) {
        throw DimensionError("genotype file has " + std::to_string(g.p()) + " SNPs but " + o.snps + " has " +
                             std::to_string(table.snps.size()));
    }
    auto truth_in = open_in(o.truth);
    const SimulationTruth truth = read_truth(truth_in, g);
    std::vector<bool> causal(static_cast<std::size_t>(g.p()), false);
    for (int j : truth.causal) causal[static_cast<std::size_t>(j)] = true;

    const fs::path dir(o.out);
    fs::create_directories(dir);
    const Eigen::VectorXd sparse = sparsify_top(table.beta_bar, table.pip, o.sparse_top);
    const auto pip_curve = power_curve(table.pip, causal);
    const auto single_curve = power_curve(table.single_log10bf, causal);
    {
        auto out = open_out(dir / "evaluation.csv");
        out << "key,value\n";
        out << "mspe," << mspe(table.beta_bar, truth.beta, truth.tau, g.col_variance) << '\n';
        out << "mspe_exact," << mspe_exact(table.beta_bar, truth.beta, truth.tau, g.values) << '\n';
        if (!truth.causal.empty()) {
            out << "rpv," << rpv(table.beta_bar, truth.beta, truth.tau, g.col_variance) << '\n';
            out << "rpv_sparse," << rpv(sparse, truth.beta, truth.tau, g.col_variance) << '\n';
        }
        out << "true_positives_pip," << true_positives_at(pip_curve, o.max_false) << '\n';
        out << "true_positives_single," << true_positives_at(single_curve, o.max_false) << '\n';
    }
    {
        auto out = open_out(dir / "calibration.csv");
        out << "lower,upper,count,mean_pip,causal_fraction,se_observed,se_expected\n";
        for (const auto& b : calibration_bins(table.pip, causal)) {
            out << b.lower << ',' << b.upper << ',' << b.count << ',' << b.mean_pip << ',' << b.causal_fraction << ','
                << b.se_observed << ',' << b.se_expected << '\n';
        }
    }
    for (const auto& [name, curve] : {std::pair{"power_pip.csv", &pip_curve}, std::pair{"power_single.csv", &single_curve}}) {
        auto out = open_out(dir / name);
        out << "threshold,true_pos,false_pos\n";
        for (const auto& pt : *curve) out << pt.threshold << ',' << pt.true_pos << ',' << pt.false_pos << '\n';
    }
    return 0;
}

int cmd_predict(const PredictOptions& o)
{
    const SnpTable table = read_snp_table(o.snps);
    const auto rows = read_csv(o.centering);
    double y_mean = 0.0;
    std::vector<double> means;
    for (const auto& row : rows) {
        if (row.at("kind") == "phenotype") {
            y_mean = field_double(row, "mean", o.centering);
        } else {
            means.push_back(field_double(row, "mean", o.centering));
        }
    }
    const Eigen::VectorXd col_mean = Eigen::Map<const Eigen::VectorXd>(means.data(), static_cast<Eigen::Index>(means.size()));
    GenotypeMatrix g = load_genotypes(o.geno);
    if (g.p() != table.beta_bar.size()) {
        throw DimensionError("genotype file has " + std::to_string(g.p()) + " SNPs but the fitted model has " +
                             std::to_string(table.beta_bar.size()));
    }
    auto out = open_out(o.out);
    out << "individual,prediction\n";
    for (Eigen::Index i = 0; i < g.n(); ++i) {
        Eigen::VectorXd x = g.values.row(i).transpose();
        // Missing dosages contribute nothing: impute them at the training mean.
        for (Eigen::Index j = 0; j < g.p(); ++j) {
            if (g.missing(i, j)) x(j) = j < col_mean.size() ? col_mean(j) : 0.0;
        }
        out << i << ',' << predict(x, table.beta_bar, col_mean, y_mean) << '\n';
    }
    return 0;
}

int cmd_regions(const RegionOptionsCli& o)
{
    const SnpTable table = read_snp_table(o.snps);
    std::vector<std::vector<int>> gammas;
    for (const auto& row : read_csv(o.draws)) {
        std::vector<int> gamma;
        std::stringstream ss(row.at("gamma"));
        int j = 0;
        while (ss >> j) {
            if (j < 0 || j >= static_cast<int>(table.snps.size())) {
                throw ParseError(o.draws + " names SNP index " + std::to_string(j) + " outside the SNP table");
            }
            gamma.push_back(j);
        }
        gammas.push_back(std::move(gamma));
    }
    RegionOptions opts;
    opts.window = o.window;
    opts.step = o.step;
    const auto regions = region_summaries(table.snps, table.pip, gammas, table.single_log10bf, opts);
    auto out = open_out(o.out);
    out << "chr,start,end,snp_count,e_count,e_count_truncated,prob_1,prob_2,prob_gt2,max_single_log10bf\n";
    for (const auto& r : regions) {
        out << r.chromosome << ',' << r.start << ',' << r.end << ',' << r.snp_count << ',' << r.e_count << ','
            << r.e_count_truncated << ',' << r.prob_1 << ',' << r.prob_2 << ',' << r.prob_gt2 << ','
            << r.max_single_log_bf << '\n';
    }
    return 0;
}

void add_sampler_options(CLI::App* sub, SamplerOptions& o, bool allow_binary_flag)
{
    sub->add_option("--geno", o.geno, "mean-genotype file")->required()->check(CLI::ExistingFile);
    sub->add_option("--pheno", o.pheno, "phenotype file, one value per line")->required()->check(CLI::ExistingFile);
    sub->add_option("--pos", o.pos, "SNP position file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--iterations", o.iterations, "total iterations including burn-in (default 110000)");
    sub->add_option("--burnin", o.burnin, "burn-in iterations (default 10% of the total)");
    sub->add_option("--sampling", o.sampling, "post-burn-in iterations");
    sub->add_option("--thin", o.thin, "record every n-th iteration (default: about 10^4 draws)");
    sub->add_option("--chains", o.chains, "independent chains")->capture_default_str();
    sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
    sub->add_option("--smax", o.smax, "upper bound M on the prior expected model size")->capture_default_str();
    sub->add_option("--swap-window", o.swap_window, "restrict swaps to SNPs within this index distance");
    if (allow_binary_flag) sub->add_flag("--binary", o.binary, "treat the phenotype as 0/1 case-control");
    sub->add_flag("--no-latent-swaps", o.no_latent_swaps, "binary mode: keep the latent scores fixed");
    sub->add_flag("--quantile-normalize", o.quantile_normalize, "replace the phenotype by normal scores of its ranks");
    ProposalConfig& p = o.proposal;
    sub->add_option("--p-add", p.p_add, "probability of an add move")->capture_default_str();
    sub->add_option("--p-remove", p.p_remove, "probability of a remove move")->capture_default_str();
    sub->add_option("--p-swap", p.p_swap, "probability of a swap move")->capture_default_str();
    sub->add_option("--small-world-prob", p.small_world_prob, "probability of a compound proposal")->capture_default_str();
    sub->add_option("--compound-min", p.compound_min, "fewest moves in a compound proposal")->capture_default_str();
    sub->add_option("--compound-max", p.compound_max, "most moves in a compound proposal")->capture_default_str();
    sub->add_option("--rank-mix-uniform", p.rank_mix_uniform, "uniform weight in the rank proposal")->capture_default_str();
    sub->add_option("--rank-geometric-mean", p.rank_geometric_mean, "mean of the geometric rank proposal")
        ->capture_default_str();
    sub->add_option("--h-step", p.h_step_halfwidth, "half-width of the h random walk")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bayesian variable selection regression"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "read options from a TOML manifest");
    app.require_subcommand(1);

    SamplerOptions run_opts;
    SamplerOptions binary_opts;
    SimulateOptions sim_opts;
    EvaluateOptions eval_opts;
    PredictOptions predict_opts;
    RegionOptionsCli region_opts;

    auto* run = app.add_subcommand("run", "sample the posterior for a quantitative phenotype")->configurable();
    add_sampler_options(run, run_opts, true);
    auto* run_binary = app.add_subcommand("run-binary", "sample the posterior for a 0/1 phenotype")->configurable();
    add_sampler_options(run_binary, binary_opts, false);

    auto* sim = app.add_subcommand("simulate", "generate genotypes, phenotypes and the truth")->configurable();
    sim->add_option("--n", sim_opts.spec.n, "individuals")->capture_default_str();
    sim->add_option("--p", sim_opts.spec.p, "SNPs")->capture_default_str();
    sim->add_option("--causal", sim_opts.spec.n_causal, "causal SNPs")->capture_default_str();
    sim->add_option("--pve", sim_opts.spec.target_pve, "target PVE in [0,1)")->capture_default_str();
    sim->add_option("--effects", sim_opts.effects, "effect distribution: normal or dexp")->capture_default_str();
    sim->add_option("--maf-min", sim_opts.spec.maf_min, "smallest allele frequency")->capture_default_str();
    sim->add_option("--maf-max", sim_opts.spec.maf_max, "largest allele frequency")->capture_default_str();
    sim->add_flag("--binary", sim_opts.spec.binary, "threshold the phenotype at its median");
    sim->add_option("--seed", sim_opts.spec.seed, "random seed")->capture_default_str();
    sim->add_option("--out", sim_opts.out, "output directory")->capture_default_str();

    auto* eval = app.add_subcommand("evaluate", "score a run against simulation truth");
    eval->add_option("--snps", eval_opts.snps, "snps.csv from run")->required()->check(CLI::ExistingFile);
    eval->add_option("--truth", eval_opts.truth, "truth.csv from simulate")->required()->check(CLI::ExistingFile);
    eval->add_option("--geno", eval_opts.geno, "genotypes the run used")->required()->check(CLI::ExistingFile);
    eval->add_option("--out", eval_opts.out, "output directory")->capture_default_str();
    eval->add_option("--sparse-top", eval_opts.sparse_top, "SNPs kept by the sparse predictor")->capture_default_str();
    eval->add_option("--max-false", eval_opts.max_false, "false-positive budget for power")->capture_default_str();

    auto* pred = app.add_subcommand("predict", "predict phenotypes for new genotypes");
    pred->add_option("--geno", predict_opts.geno, "mean-genotype file of new individuals")->required()->check(CLI::ExistingFile);
    pred->add_option("--snps", predict_opts.snps, "snps.csv from run")->required()->check(CLI::ExistingFile);
    pred->add_option("--centering", predict_opts.centering, "centering.csv from run")->required()->check(CLI::ExistingFile);
    pred->add_option("--out", predict_opts.out, "output CSV")->capture_default_str();

    auto* reg = app.add_subcommand("regions", "summarize windows from saved draws");
    reg->add_option("--snps", region_opts.snps, "snps.csv from run")->required()->check(CLI::ExistingFile);
    reg->add_option("--draws", region_opts.draws, "draws.csv from run")->required()->check(CLI::ExistingFile);
    reg->add_option("--out", region_opts.out, "output CSV")->capture_default_str();
    reg->add_option("--window", region_opts.window, "window length in bp")->capture_default_str();
    reg->add_option("--step", region_opts.step, "distance between window starts in bp")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(app, run_opts, run_opts.binary);
        if (run_binary->parsed()) return cmd_run(app, binary_opts, true);
        if (sim->parsed()) return cmd_simulate(app, sim_opts);
        if (eval->parsed()) return cmd_evaluate(eval_opts);
        if (pred->parsed()) return cmd_predict(predict_opts);
        if (reg->parsed()) return cmd_regions(region_opts);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
