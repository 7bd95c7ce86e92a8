#include "bvsr/sampler.hpp"

#include "bvsr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace bvsr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_probability(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void ProposalConfig::validate() const
{
    if (!is_probability(p_add) || !is_probability(p_remove) || !is_probability(p_swap) ||
        std::abs(p_add + p_remove + p_swap - 1.0) > 1e-12) {
        throw ValidationError("move probabilities must lie in [0,1] and sum to 1");
    }
    if (p_add <= 0.0 || p_remove <= 0.0) {
        throw ValidationError("add and remove probabilities must be positive");
    }
    if (!is_probability(small_world_prob)) throw ValidationError("small-world probability must lie in [0,1]");
    if (compound_min < 1 || compound_max < compound_min) {
        throw ValidationError("compound range must satisfy 1 <= min <= max");
    }
    if (!is_probability(rank_mix_uniform)) throw ValidationError("rank mixture weight must lie in [0,1]");
    if (!(rank_geometric_mean > 0.0)) throw ValidationError("rank geometric mean must be positive");
    if (!(h_step_halfwidth > 0.0) || h_step_halfwidth > 1.0) {
        throw ValidationError("h step half-width must lie in (0,1]");
    }
    if (swap_window && *swap_window < 1) throw ValidationError("swap window must be at least 1");
}

void ChainConfig::validate() const
{
    if (burn_in < 0) throw ValidationError("burn-in must be non-negative");
    if (sampling < 1) throw ValidationError("sampling iterations must be positive");
    if (thin < 1) throw ValidationError("thin must be positive");
    if (thin > sampling) throw ValidationError("thin exceeds the number of sampling iterations");
    if (chains < 1) throw ValidationError("chain count must be positive");
}

SnpRanking rank_snps(const GenotypeMatrix& g, const Eigen::VectorXd& y)
{
    const auto p = static_cast<int>(g.p());
    std::vector<double> score(static_cast<std::size_t>(p), kNegInf);
    SnpRanking ranking;
    ranking.rank_of.assign(static_cast<std::size_t>(p), -1);
    for (int j = 0; j < p; ++j) {
        if (!g.degenerate.empty() && g.degenerate[static_cast<std::size_t>(j)]) continue;
        score[static_cast<std::size_t>(j)] = log_bf_single(g.values.col(j), y, 1.0);
        ranking.order.push_back(j);
    }
    std::stable_sort(ranking.order.begin(), ranking.order.end(), [&](int a, int b) {
        return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
    });
    for (std::size_t r = 0; r < ranking.order.size(); ++r) {
        ranking.rank_of[static_cast<std::size_t>(ranking.order[r])] = static_cast<int>(r);
    }
    return ranking;
}

double rank_proposal_prob(int r, int t, const ProposalConfig& cfg)
{
    if (t <= 0 || r < 0 || r >= t) return 0.0;
    const double q = cfg.geometric_success();
    const double log_fail = std::log1p(-q);
    const double mass = -std::expm1(static_cast<double>(t) * log_fail);
    const double geom = q * std::exp(static_cast<double>(r) * log_fail) / mass;
    return cfg.rank_mix_uniform / static_cast<double>(t) + (1.0 - cfg.rank_mix_uniform) * geom;
}

int draw_rank(int t, Rng& rng, const ProposalConfig& cfg)
{
    if (t <= 1) return 0;
    if (uniform_open(rng) < cfg.rank_mix_uniform) return uniform_int(rng, 0, t - 1);
    const double log_fail = std::log1p(-cfg.geometric_success());
    const double mass = -std::expm1(static_cast<double>(t) * log_fail);
    const double u = uniform_open(rng);
    const double r = std::floor(std::log1p(-u * mass) / log_fail);
    return std::clamp(static_cast<int>(r), 0, t - 1);
}

InclusionSet::InclusionSet(Eigen::Index p, std::vector<int> members)
    : members_(std::move(members)), mask_(static_cast<std::size_t>(p), 0)
{
    std::sort(members_.begin(), members_.end());
    for (int j : members_) {
        if (j < 0 || j >= p) throw std::out_of_range("covariate index out of range");
        if (mask_[static_cast<std::size_t>(j)] != 0) throw std::invalid_argument("duplicate covariate index");
        mask_[static_cast<std::size_t>(j)] = 1;
    }
}

void InclusionSet::insert(int j)
{
    if (contains(j)) return;
    members_.insert(std::lower_bound(members_.begin(), members_.end(), j), j);
    mask_[static_cast<std::size_t>(j)] = 1;
}

void InclusionSet::erase(int j)
{
    if (!contains(j)) return;
    members_.erase(std::lower_bound(members_.begin(), members_.end(), j));
    mask_[static_cast<std::size_t>(j)] = 0;
}

GammaMove reverse(const GammaMove& move)
{
    switch (move.type) {
    case MoveType::Add: return {MoveType::Remove, move.in, -1};
    case MoveType::Remove: return {MoveType::Add, -1, move.out};
    case MoveType::Swap: return {MoveType::Swap, move.in, move.out};
    case MoveType::Null: break;
    }
    return {};
}

void apply(InclusionSet& gamma, const GammaMove& move)
{
    if (move.out >= 0) gamma.erase(move.out);
    if (move.in >= 0) gamma.insert(move.in);
}

void undo(InclusionSet& gamma, const GammaMove& move) { apply(gamma, reverse(move)); }

MoveKernel::MoveKernel(const SnpRanking& ranking, const ProposalConfig& cfg)
    : ranking_(&ranking), cfg_(cfg)
{
}

double MoveKernel::type_prob(int k, MoveType type) const
{
    const int t = eligible();
    const bool can_add = k < t;
    const bool can_remove = k > 0;
    const bool can_swap = k > 0 && k < t;
    const double add = can_add ? cfg_.p_add : 0.0;
    const double remove = can_remove ? cfg_.p_remove : 0.0;
    const double swap = can_swap ? cfg_.p_swap : 0.0;
    const double total = add + remove + swap;
    if (!(total > 0.0)) return 0.0;
    switch (type) {
    case MoveType::Add: return add / total;
    case MoveType::Remove: return remove / total;
    case MoveType::Swap: return swap / total;
    case MoveType::Null: break;
    }
    return 0.0;
}

int MoveKernel::rank_among_excluded(const InclusionSet& gamma, int j) const
{
    const int rj = ranking_->rank_of[static_cast<std::size_t>(j)];
    int below = 0;
    for (int m : gamma.members()) {
        if (ranking_->rank_of[static_cast<std::size_t>(m)] < rj) ++below;
    }
    return rj - below;
}

int MoveKernel::excluded_at_rank(const InclusionSet& gamma, int r) const
{
    std::vector<int> taken;
    taken.reserve(gamma.members().size());
    for (int m : gamma.members()) taken.push_back(ranking_->rank_of[static_cast<std::size_t>(m)]);
    std::sort(taken.begin(), taken.end());
    int pos = r;
    for (int rank : taken) {
        if (rank <= pos) {
            ++pos;
        } else {
            break;
        }
    }
    return ranking_->order[static_cast<std::size_t>(pos)];
}

int MoveKernel::swap_candidate_count(const InclusionSet& gamma, int i) const
{
    if (!cfg_.swap_window) return eligible() - gamma.size();
    const int w = *cfg_.swap_window;
    const auto p = static_cast<int>(ranking_->rank_of.size());
    int count = 0;
    for (int j = std::max(0, i - w); j <= std::min(p - 1, i + w); ++j) {
        if (ranking_->rank_of[static_cast<std::size_t>(j)] >= 0 && !gamma.contains(j)) ++count;
    }
    return count;
}

int MoveKernel::draw_swap_partner(const InclusionSet& gamma, int i, Rng& rng) const
{
    if (!cfg_.swap_window) {
        return excluded_at_rank(gamma, uniform_int(rng, 0, eligible() - gamma.size() - 1));
    }
    const int w = *cfg_.swap_window;
    const auto p = static_cast<int>(ranking_->rank_of.size());
    std::vector<int> pool;
    for (int j = std::max(0, i - w); j <= std::min(p - 1, i + w); ++j) {
        if (ranking_->rank_of[static_cast<std::size_t>(j)] >= 0 && !gamma.contains(j)) pool.push_back(j);
    }
    if (pool.empty()) return -1;
    return pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(pool.size()) - 1))];
}

double MoveKernel::prob(const InclusionSet& gamma, const GammaMove& move) const
{
    const int k = gamma.size();
    const int t = eligible();
    switch (move.type) {
    case MoveType::Add: {
        if (move.in < 0 || gamma.contains(move.in) ||
            ranking_->rank_of[static_cast<std::size_t>(move.in)] < 0) {
            return 0.0;
        }
        return type_prob(k, MoveType::Add) *
               rank_proposal_prob(rank_among_excluded(gamma, move.in), t - k, cfg_);
    }
    case MoveType::Remove:
        if (move.out < 0 || !gamma.contains(move.out)) return 0.0;
        return type_prob(k, MoveType::Remove) / static_cast<double>(k);
    case MoveType::Swap: {
        if (move.out < 0 || move.in < 0 || !gamma.contains(move.out) || gamma.contains(move.in) ||
            ranking_->rank_of[static_cast<std::size_t>(move.in)] < 0) {
            return 0.0;
        }
        if (cfg_.swap_window && std::abs(move.in - move.out) > *cfg_.swap_window) return 0.0;
        const int c = swap_candidate_count(gamma, move.out);
        return type_prob(k, MoveType::Swap) / static_cast<double>(k) / static_cast<double>(c);
    }
    case MoveType::Null: {
        // Only a windowed swap with no partner yields a null move.
        if (k == 0) return 0.0;
        int stuck = 0;
        for (int i : gamma.members()) {
            if (swap_candidate_count(gamma, i) == 0) ++stuck;
        }
        return type_prob(k, MoveType::Swap) * static_cast<double>(stuck) / static_cast<double>(k);
    }
    }
    return 0.0;
}

double MoveKernel::log_prob(const InclusionSet& gamma, const GammaMove& move) const
{
    return std::log(prob(gamma, move));
}

GammaMove MoveKernel::draw(const InclusionSet& gamma, Rng& rng) const
{
    const int k = gamma.size();
    const int t = eligible();
    const double u = uniform_open(rng);
    const double add = type_prob(k, MoveType::Add);
    const double remove = type_prob(k, MoveType::Remove);
    const double swap = type_prob(k, MoveType::Swap);
    MoveType type = MoveType::Add;
    if (u < add) {
        type = MoveType::Add;
    } else if (u < add + remove || swap <= 0.0) {
        type = remove > 0.0 ? MoveType::Remove : MoveType::Add;
    } else {
        type = MoveType::Swap;
    }

    GammaMove move;
    move.type = type;
    switch (type) {
    case MoveType::Add:
        move.in = excluded_at_rank(gamma, draw_rank(t - k, rng, cfg_));
        break;
    case MoveType::Remove:
        move.out = gamma.members()[static_cast<std::size_t>(uniform_int(rng, 0, k - 1))];
        break;
    case MoveType::Swap:
        move.out = gamma.members()[static_cast<std::size_t>(uniform_int(rng, 0, k - 1))];
        move.in = draw_swap_partner(gamma, move.out, rng);
        if (move.in < 0) move = GammaMove{};
        break;
    case MoveType::Null: break;
    }
    return move;
}

double log_pi_proposal_density(double pi, int k, const Hyperparameters& hp)
{
    if (!(pi > 0.0) || !(pi < 1.0)) return kNegInf;
    if (k <= 0) return log_prior_pi(pi, hp);
    const double a = static_cast<double>(k);
    const double b = static_cast<double>(hp.p - k + 1);
    return (a - 1.0) * std::log(pi) + (b - 1.0) * std::log1p(-pi) - std::lgamma(a) - std::lgamma(b) +
           std::lgamma(a + b);
}

double draw_pi_proposal(int k, const Hyperparameters& hp, Rng& rng)
{
    if (k <= 0) {
        const double u = uniform_open(rng);
        return std::exp(hp.log_pi_min + u * (hp.log_pi_max - hp.log_pi_min));
    }
    return beta_draw(rng, static_cast<double>(k), static_cast<double>(hp.p - k + 1));
}

double reflect_unit(double h)
{
    if (h < 0.0) h = -h;
    if (h >= 1.0) h = 2.0 - h;
    if (h >= 1.0) h = std::nextafter(1.0, 0.0);
    return std::max(h, 0.0);
}

Chain::Chain(const GenotypeMatrix& g, const Eigen::VectorXd& y, const SnpRanking& ranking,
             const Hyperparameters& hp, const ProposalConfig& cfg, Rng rng)
    : g_(&g), y_(&y), ranking_(&ranking), hp_(hp), cfg_(cfg), kernel_(ranking, cfg_),
      rng_(std::move(rng)), gamma_(g.p(), {})
{
    cfg_.validate();
    if (y.size() != g.n()) {
        throw DimensionError("phenotype has " + std::to_string(y.size()) + " values but genotypes have " +
                             std::to_string(g.n()) + " individuals");
    }
}

void Chain::initialize()
{
    const int t = ranking_->eligible();
    const int upper = std::min({20, hp_.max_model_size, t});
    const int q = upper >= 1 ? uniform_int(rng_, 1, upper) : 0;
    std::vector<int> gamma(ranking_->order.begin(), ranking_->order.begin() + q);
    const double h = uniform_open(rng_);
    const double pi = std::clamp(static_cast<double>(q) / static_cast<double>(hp_.p), hp_.pi_min(),
                                 hp_.pi_max());
    set_state(std::move(gamma), h, pi);
}

void Chain::set_state(std::vector<int> gamma, double h, double pi)
{
    for (int j : gamma) {
        if (j < 0 || j >= g_->p() || ranking_->rank_of[static_cast<std::size_t>(j)] < 0) {
            throw ValidationError("model contains an ineligible covariate " + std::to_string(j));
        }
    }
    gamma_ = InclusionSet(g_->p(), std::move(gamma));
    state_.gamma = gamma_.members();
    state_.h = h;
    state_.pi = pi;
    state_.sigma_a_sq = sigma_a_sq(h, state_.gamma, g_->col_variance).value_or(0.0);
    fact_ = ModelFactorization::build(g_->values, *y_, state_.gamma, state_.sigma_a_sq);
    log_bf_ = log_bf(fact_);
}

void Chain::sync_state()
{
    state_.gamma = gamma_.members();
    state_.sigma_a_sq = sigma_a_sq(state_.h, state_.gamma, g_->col_variance).value_or(0.0);
}

Proposal Chain::finish_proposal(Proposal proposal, double forward, double reverse_density)
{
    const int k_old = static_cast<int>(state_.gamma.size());
    const int k_new = gamma_.size();
    proposal.gamma = gamma_.members();
    // Return gamma_ to the current state.
    for (auto it = proposal.moves.rbegin(); it != proposal.moves.rend(); ++it) undo(gamma_, *it);

    proposal.pi = draw_pi_proposal(k_new, hp_, rng_);
    const double step = (2.0 * uniform_open(rng_) - 1.0) * cfg_.h_step_halfwidth;
    proposal.h = reflect_unit(state_.h + step);
    proposal.log_hastings = reverse_density - forward + log_pi_proposal_density(state_.pi, k_old, hp_) -
                            log_pi_proposal_density(proposal.pi, k_new, hp_);
    return proposal;
}

Proposal Chain::propose_local() { return propose_small_world(1); }

Proposal Chain::propose_small_world(int steps)
{
    Proposal proposal;
    double forward = 0.0;
    double reverse_density = 0.0;
    for (int s = 0; s < steps; ++s) {
        const GammaMove move = kernel_.draw(gamma_, rng_);
        if (move.type != MoveType::Null) {
            forward += kernel_.log_prob(gamma_, move);
            apply(gamma_, move);
            reverse_density += kernel_.log_prob(gamma_, reverse(move));
        }
        proposal.moves.push_back(move);
    }
    return finish_proposal(std::move(proposal), forward, reverse_density);
}

Proposal Chain::propose()
{
    if (cfg_.small_world_prob > 0.0 && uniform_open(rng_) < cfg_.small_world_prob) {
        return propose_small_world(uniform_int(rng_, cfg_.compound_min, cfg_.compound_max));
    }
    return propose_local();
}

double Chain::log_target(const std::vector<int>& gamma, double h, double pi, double log_bf_value) const
{
    if (!hp_.in_support(pi) || !(h >= 0.0 && h < 1.0)) return kNegInf;
    return log_bf_value + log_prior_gamma_given_pi(static_cast<int>(gamma.size()), hp_.p, pi) +
           log_prior_pi(pi, hp_);
}

ModelFactorization Chain::build_candidate(const Proposal& proposal) const
{
    ModelFactorization cand = fact_;
    for (const GammaMove& move : proposal.moves) {
        switch (move.type) {
        case MoveType::Add: cand.add(g_->values, *y_, move.in); break;
        case MoveType::Remove: cand.remove(move.out); break;
        case MoveType::Swap: cand.swap(g_->values, *y_, move.out, move.in); break;
        case MoveType::Null: break;
        }
    }
    cand.refresh_sigma(sigma_a_sq(proposal.h, proposal.gamma, g_->col_variance).value_or(0.0));
    return cand;
}

double Chain::log_acceptance(const Proposal& proposal, ModelFactorization* candidate)
{
    if (!hp_.in_support(proposal.pi)) return kNegInf;
    ModelFactorization cand = build_candidate(proposal);
    const double bf = log_bf(cand);
    const double ratio = log_target(proposal.gamma, proposal.h, proposal.pi, bf) -
                         log_target(state_.gamma, state_.h, state_.pi, log_bf_) + proposal.log_hastings;
    if (candidate != nullptr) *candidate = std::move(cand);
    return ratio;
}

bool Chain::mh_step()
{
    Proposal proposal = propose();
    ++proposals_;
    if (!hp_.in_support(proposal.pi)) return false;
    ModelFactorization cand;
    const double ratio = log_acceptance(proposal, &cand);
    // Always consume the uniform so the stream does not depend on the sign of the ratio.
    if (!(std::log(uniform_open(rng_)) < ratio)) return false;
    for (const GammaMove& move : proposal.moves) apply(gamma_, move);
    state_.h = proposal.h;
    state_.pi = proposal.pi;
    sync_state();
    fact_ = std::move(cand);
    log_bf_ = log_bf(fact_);
    ++accepted_;
    return true;
}

void Chain::adopt_response(const Eigen::VectorXd* y, ModelFactorization fact, double log_bf_value)
{
    y_ = y;
    fact_ = std::move(fact);
    log_bf_ = log_bf_value;
}

Eigen::VectorXd PosteriorSamples::frequency_pip() const
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(inclusion_counts.size()));
    const double m = static_cast<double>(draws.size());
    for (std::size_t j = 0; j < inclusion_counts.size(); ++j) {
        out(static_cast<Eigen::Index>(j)) = m > 0.0 ? static_cast<double>(inclusion_counts[j]) / m : 0.0;
    }
    return out;
}

std::vector<double> PosteriorSamples::pve_draws() const
{
    std::vector<double> out;
    out.reserve(draws.size());
    for (const auto& d : draws) out.push_back(d.pve);
    return out;
}

void record_draw(Chain& chain, PosteriorSamples& samples)
{
    const GenotypeMatrix& g = chain.genotypes();
    if (samples.inclusion_counts.empty()) samples.inclusion_counts.assign(static_cast<std::size_t>(g.p()), 0);
    const EffectDraw effect = sample_beta_tau(chain.factorization(), g.values, chain.rng());
    const ModelState& st = chain.state();
    rb_update(samples.rb, effect, st.h, st.pi, g, chain.response());
    for (int j : effect.gamma) ++samples.inclusion_counts[static_cast<std::size_t>(j)];

    RecordedDraw rec;
    rec.gamma = effect.gamma;
    rec.beta = effect.beta;
    rec.h = st.h;
    rec.pi = st.pi;
    rec.tau = effect.tau;
    rec.pve = effect.pve;
    rec.log_bf = chain.current_log_bf();
    samples.draws.push_back(std::move(rec));
}

PosteriorSamples run_chain_with(Chain& chain, const ChainConfig& chain_cfg,
                                const std::function<void(Chain&)>& extra_step)
{
    chain_cfg.validate();
    PosteriorSamples samples;
    samples.rb = RbAccumulator(chain.genotypes().p());
    samples.inclusion_counts.assign(static_cast<std::size_t>(chain.genotypes().p()), 0);
    samples.draws.reserve(static_cast<std::size_t>(chain_cfg.recorded_draws()));
    const std::int64_t total = chain_cfg.burn_in + chain_cfg.sampling;
    for (std::int64_t it = 0; it < total; ++it) {
        chain.mh_step();
        if (extra_step) extra_step(chain);
        const std::int64_t s = it - chain_cfg.burn_in;
        if (s >= 0 && (s + 1) % chain_cfg.thin == 0) record_draw(chain, samples);
    }
    samples.proposals = chain.proposals();
    samples.accepted = chain.accepted();
    return samples;
}

PosteriorSamples run_chain(const GenotypeMatrix& g, const Eigen::VectorXd& y, const SnpRanking& ranking,
                           const Hyperparameters& hp, const ProposalConfig& cfg,
                           const ChainConfig& chain_cfg, int chain_index)
{
    Chain chain(g, y, ranking, hp, cfg, make_rng(chain_cfg.seed, static_cast<std::uint64_t>(chain_index)));
    chain.initialize();
    return run_chain_with(chain, chain_cfg, {});
}

std::vector<PosteriorSamples> run_chains(const GenotypeMatrix& g, const Eigen::VectorXd& y,
                                         const SnpRanking& ranking, const Hyperparameters& hp,
                                         const ProposalConfig& cfg, const ChainConfig& chain_cfg,
                                         int threads)
{
    chain_cfg.validate();
    const int count = chain_cfg.chains;
    std::vector<PosteriorSamples> out(static_cast<std::size_t>(count));
    const int workers = std::clamp(threads, 1, count);
    if (workers == 1) {
        for (int c = 0; c < count; ++c) out[static_cast<std::size_t>(c)] = run_chain(g, y, ranking, hp, cfg, chain_cfg, c);
        return out;
    }
    std::mutex mu;
    int next = 0;
    std::exception_ptr error;
    auto worker = [&] {
        for (;;) {
            int c = 0;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= count || error) return;
                c = next++;
            }
            try {
                out[static_cast<std::size_t>(c)] = run_chain(g, y, ranking, hp, cfg, chain_cfg, c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return out;
}

double quantile(std::vector<double> values, double q)
{
    if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

PosteriorSummary summarize(const std::vector<PosteriorSamples>& chains)
{
    if (chains.empty()) throw std::invalid_argument("no chains to summarize");
    RbAccumulator rb;
    std::vector<double> pve;
    Eigen::VectorXd counts;
    double size_sum = 0.0;
    std::int64_t draws = 0;
    for (const auto& c : chains) {
        rb += c.rb;
        const Eigen::Index p = static_cast<Eigen::Index>(c.inclusion_counts.size());
        if (counts.size() == 0) counts = Eigen::VectorXd::Zero(p);
        for (Eigen::Index j = 0; j < p; ++j) counts(j) += static_cast<double>(c.inclusion_counts[static_cast<std::size_t>(j)]);
        for (const auto& d : c.draws) {
            pve.push_back(d.pve);
            size_sum += static_cast<double>(d.gamma.size());
        }
        draws += static_cast<std::int64_t>(c.draws.size());
    }
    PosteriorSummary s;
    s.pip = pip_estimate(rb);
    s.beta_bar = posterior_mean_beta(rb);
    s.frequency_pip = counts / static_cast<double>(draws);
    s.pve_mean = std::accumulate(pve.begin(), pve.end(), 0.0) / static_cast<double>(pve.size());
    s.pve_median = quantile(pve, 0.5);
    s.pve_lower = quantile(pve, 0.05);
    s.pve_upper = quantile(pve, 0.95);
    s.model_size_mean = size_sum / static_cast<double>(draws);
    s.draws = draws;
    return s;
}

PosteriorSummary summarize(const PosteriorSamples& chain)
{
    return summarize(std::vector<PosteriorSamples>{chain});
}

}  // namespace bvsr
