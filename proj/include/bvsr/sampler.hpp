#pragma once
// Metropolis-Hastings over (h, pi, gamma).
//
// Each iteration proposes either one local gamma move or, with probability
// small_world_prob, a compound of m ~ U{2..20} local moves. A local move is
// add (rank-based), remove (uniform) or swap (uniform pair). pi' is then
// drawn from Beta(|gamma'|, p - |gamma'| + 1) and h' from a reflected
// uniform random walk. The Hastings ratio carries the exact forward and
// reverse densities of every step.

#include "bvsr/genotype.hpp"
#include "bvsr/likelihood.hpp"
#include "bvsr/model.hpp"
#include "bvsr/rao_blackwell.hpp"
#include "bvsr/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace bvsr {

struct ProposalConfig {
    double p_add = 0.45;
    double p_remove = 0.45;
    double p_swap = 0.10;
    double small_world_prob = 0.3;
    int compound_min = 2;
    int compound_max = 20;
    double rank_mix_uniform = 0.3;
    double rank_geometric_mean = 2000.0;
    double h_step_halfwidth = 0.1;
    std::optional<int> swap_window;  // SNP-index distance; unlimited when empty

    void validate() const;
    // Success probability of the untruncated geometric with the configured mean.
    [[nodiscard]] double geometric_success() const { return 1.0 / (rank_geometric_mean + 1.0); }
};

struct ChainConfig {
    std::int64_t burn_in = 1000;
    std::int64_t sampling = 10000;
    std::int64_t thin = 1;
    std::uint64_t seed = 1;
    int chains = 1;

    void validate() const;
    [[nodiscard]] std::int64_t recorded_draws() const { return sampling / thin; }
};

// Eligible covariates ordered by decreasing single-covariate log BF at sigma_a = 1.
struct SnpRanking {
    std::vector<int> order;    // order[r] = covariate with rank r
    std::vector<int> rank_of;  // rank_of[j] = r, or -1 for degenerate columns

    [[nodiscard]] int eligible() const { return static_cast<int>(order.size()); }
};

SnpRanking rank_snps(const GenotypeMatrix& g, const Eigen::VectorXd& y);

// Q_t(r) = u / t + (1 - u) G_t(r), G_t the geometric truncated to {0..t-1}.
double rank_proposal_prob(int r, int t, const ProposalConfig& cfg);
int draw_rank(int t, Rng& rng, const ProposalConfig& cfg);

// Sorted index set with O(1) membership.
class InclusionSet {
public:
    InclusionSet() = default;
    InclusionSet(Eigen::Index p, std::vector<int> members);

    [[nodiscard]] bool contains(int j) const { return mask_[static_cast<std::size_t>(j)] != 0; }
    [[nodiscard]] int size() const { return static_cast<int>(members_.size()); }
    [[nodiscard]] const std::vector<int>& members() const { return members_; }
    void insert(int j);
    void erase(int j);

private:
    std::vector<int> members_;
    std::vector<char> mask_;
};

enum class MoveType { Add, Remove, Swap, Null };

struct GammaMove {
    MoveType type = MoveType::Null;
    int out = -1;  // covariate leaving gamma (remove, swap)
    int in = -1;   // covariate entering gamma (add, swap)

    friend bool operator==(const GammaMove&, const GammaMove&) = default;
};

GammaMove reverse(const GammaMove& move);
void apply(InclusionSet& gamma, const GammaMove& move);
void undo(InclusionSet& gamma, const GammaMove& move);

class MoveKernel {
public:
    MoveKernel(const SnpRanking& ranking, const ProposalConfig& cfg);

    // Probability of choosing each move type at model size k. Types that are
    // impossible at k get zero and the rest are renormalized.
    [[nodiscard]] double type_prob(int k, MoveType type) const;

    // Probability of proposing exactly this move from gamma.
    [[nodiscard]] double prob(const InclusionSet& gamma, const GammaMove& move) const;
    [[nodiscard]] double log_prob(const InclusionSet& gamma, const GammaMove& move) const;

    GammaMove draw(const InclusionSet& gamma, Rng& rng) const;

    // Rank of excluded covariate j among excluded covariates.
    [[nodiscard]] int rank_among_excluded(const InclusionSet& gamma, int j) const;
    [[nodiscard]] int excluded_at_rank(const InclusionSet& gamma, int r) const;
    // Number of excluded eligible covariates that may swap in for member i.
    [[nodiscard]] int swap_candidate_count(const InclusionSet& gamma, int i) const;
    [[nodiscard]] int draw_swap_partner(const InclusionSet& gamma, int i, Rng& rng) const;

    [[nodiscard]] int eligible() const { return ranking_->eligible(); }

private:
    const SnpRanking* ranking_;
    ProposalConfig cfg_;
};

// Log proposal density of pi given model size k: Beta(k, p - k + 1) for k >= 1.
// Beta(0, .) is improper, so an empty model proposes pi from its log-uniform prior.
double log_pi_proposal_density(double pi, int k, const Hyperparameters& hp);
double draw_pi_proposal(int k, const Hyperparameters& hp, Rng& rng);

// h + U(-w, w) reflected into [0, 1).
double reflect_unit(double h);

struct Proposal {
    std::vector<GammaMove> moves;
    std::vector<int> gamma;  // sorted proposed model
    double h = 0.0;
    double pi = 0.0;
    double log_hastings = 0.0;  // log q(x' -> x) - log q(x -> x')
};

class Chain {
public:
    Chain(const GenotypeMatrix& g, const Eigen::VectorXd& y, const SnpRanking& ranking,
          const Hyperparameters& hp, const ProposalConfig& cfg, Rng rng);

    // gamma = top-q ranked covariates with q ~ U{1..min(20, M, p)}, h ~ U(0,1),
    // pi = q / p clamped to the prior support.
    void initialize();
    void set_state(std::vector<int> gamma, double h, double pi);

    Proposal propose_local();
    Proposal propose_small_world(int steps);
    Proposal propose();

    // Log acceptance ratio for moving to the proposal; -inf outside the prior support.
    double log_acceptance(const Proposal& proposal, ModelFactorization* candidate = nullptr);
    bool mh_step();

    // Replaces the response (latent outcomes) together with a matching factorization.
    void adopt_response(const Eigen::VectorXd* y, ModelFactorization fact, double log_bf);

    [[nodiscard]] const ModelState& state() const { return state_; }
    [[nodiscard]] const ModelFactorization& factorization() const { return fact_; }
    [[nodiscard]] double current_log_bf() const { return log_bf_; }
    [[nodiscard]] const Eigen::VectorXd& response() const { return *y_; }
    [[nodiscard]] const GenotypeMatrix& genotypes() const { return *g_; }
    [[nodiscard]] const MoveKernel& kernel() const { return kernel_; }
    [[nodiscard]] const Hyperparameters& hyper() const { return hp_; }
    [[nodiscard]] const ProposalConfig& config() const { return cfg_; }
    [[nodiscard]] Rng& rng() { return rng_; }
    [[nodiscard]] std::int64_t proposals() const { return proposals_; }
    [[nodiscard]] std::int64_t accepted() const { return accepted_; }

    [[nodiscard]] double log_target(const std::vector<int>& gamma, double h, double pi,
                                    double log_bf) const;

private:
    Proposal finish_proposal(Proposal proposal, double forward, double reverse_density);
    ModelFactorization build_candidate(const Proposal& proposal) const;
    void sync_state();

    const GenotypeMatrix* g_;
    const Eigen::VectorXd* y_;
    const SnpRanking* ranking_;
    Hyperparameters hp_;
    ProposalConfig cfg_;
    MoveKernel kernel_;
    Rng rng_;

    InclusionSet gamma_;
    ModelState state_;
    ModelFactorization fact_;
    double log_bf_ = 0.0;
    std::int64_t proposals_ = 0;
    std::int64_t accepted_ = 0;
};

struct RecordedDraw {
    std::vector<int> gamma;
    Eigen::VectorXd beta;  // aligned with gamma
    double h = 0.0;
    double pi = 0.0;
    double tau = 0.0;
    double pve = 0.0;
    double log_bf = 0.0;
};

struct PosteriorSamples {
    std::vector<RecordedDraw> draws;
    RbAccumulator rb;
    std::vector<std::int64_t> inclusion_counts;  // per covariate, over recorded draws
    std::int64_t proposals = 0;
    std::int64_t accepted = 0;

    [[nodiscard]] Eigen::VectorXd frequency_pip() const;
    [[nodiscard]] std::vector<double> pve_draws() const;
};

// Records (beta, tau, PVE) and the Rao-Blackwell terms at the chain's current state.
void record_draw(Chain& chain, PosteriorSamples& samples);

// Runs burn_in + sampling iterations; extra_step, when set, is invoked after
// every model update (used by the binary-outcome sampler).
PosteriorSamples run_chain(const GenotypeMatrix& g, const Eigen::VectorXd& y,
                           const SnpRanking& ranking, const Hyperparameters& hp,
                           const ProposalConfig& cfg, const ChainConfig& chain_cfg,
                           int chain_index = 0);

PosteriorSamples run_chain_with(Chain& chain, const ChainConfig& chain_cfg,
                                const std::function<void(Chain&)>& extra_step);

// Runs chain_cfg.chains independent chains, chain c seeded with stream c.
std::vector<PosteriorSamples> run_chains(const GenotypeMatrix& g, const Eigen::VectorXd& y,
                                         const SnpRanking& ranking, const Hyperparameters& hp,
                                         const ProposalConfig& cfg, const ChainConfig& chain_cfg,
                                         int threads = 1);

struct PosteriorSummary {
    Eigen::VectorXd pip;            // Rao-Blackwellized
    Eigen::VectorXd beta_bar;       // Rao-Blackwellized posterior mean
    Eigen::VectorXd frequency_pip;  // fraction of recorded draws with gamma_j = 1
    double pve_mean = 0.0;
    double pve_median = 0.0;
    double pve_lower = 0.0;  // 5% quantile
    double pve_upper = 0.0;  // 95% quantile
    double model_size_mean = 0.0;
    std::int64_t draws = 0;
};

PosteriorSummary summarize(const std::vector<PosteriorSamples>& chains);
PosteriorSummary summarize(const PosteriorSamples& chain);

// Linear-interpolated empirical quantile.
double quantile(std::vector<double> values, double q);

}  // namespace bvsr
