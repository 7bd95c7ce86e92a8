#include "bvsr/probit.hpp"

#include "bvsr/errors.hpp"
#include "bvsr/likelihood.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace bvsr {

Eigen::VectorXd LatentAssignment::z() const
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(slot.size()));
    for (std::size_t i = 0; i < slot.size(); ++i) out(static_cast<Eigen::Index>(i)) = quantiles(slot[i]);
    return out;
}

void LatentAssignment::check() const
{
    std::vector<char> seen(slot.size(), 0);
    for (std::size_t i = 0; i < slot.size(); ++i) {
        const int s = slot[i];
        if (s < 0 || s >= static_cast<int>(slot.size()) || seen[static_cast<std::size_t>(s)] != 0) {
            throw std::logic_error("latent slots are not a permutation");
        }
        seen[static_cast<std::size_t>(s)] = 1;
        if ((label[i] == 0) != (s < n0)) throw std::logic_error("latent slot outside its class block");
    }
}

Eigen::VectorXd latent_quantiles(Eigen::Index n)
{
    const boost::math::normal_distribution<double> normal;
    Eigen::VectorXd q(n);
    const double denom = static_cast<double>(n) + 1.0;
    for (Eigen::Index i = 0; i < n / 2; ++i) {
        const double v = boost::math::quantile(normal, static_cast<double>(i + 1) / denom);
        q(i) = v;
        q(n - 1 - i) = -v;
    }
    if (n % 2 == 1) q(n / 2) = 0.0;
    const double var = q.squaredNorm() / static_cast<double>(n);
    if (var > 0.0) q /= std::sqrt(var);
    return q;
}

std::vector<int> to_binary(const Eigen::VectorXd& y)
{
    std::vector<int> out(static_cast<std::size_t>(y.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y(i) == 0.0) {
            out[static_cast<std::size_t>(i)] = 0;
        } else if (y(i) == 1.0) {
            out[static_cast<std::size_t>(i)] = 1;
        } else {
            throw ValidationError("binary phenotype value " + std::to_string(y(i)) + " on line " +
                                  std::to_string(i + 1) + " is not 0 or 1");
        }
    }
    return out;
}

namespace {

LatentAssignment classes(const std::vector<int>& y)
{
    LatentAssignment a;
    a.label = y;
    a.members.assign(2, {});
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != 0 && y[i] != 1) throw ValidationError("binary phenotype must contain only 0 and 1");
        a.members[static_cast<std::size_t>(y[i])].push_back(static_cast<int>(i));
    }
    if (a.members[0].empty() || a.members[1].empty()) {
        throw ValidationError("binary phenotype needs both cases and controls");
    }
    a.n0 = static_cast<int>(a.members[0].size());
    a.quantiles = latent_quantiles(static_cast<Eigen::Index>(y.size()));
    return a;
}

}  // namespace

LatentAssignment init_latent(const std::vector<int>& y)
{
    LatentAssignment a = classes(y);
    a.slot.assign(y.size(), -1);
    int next0 = 0;
    int next1 = a.n0;
    for (std::size_t i = 0; i < y.size(); ++i) a.slot[i] = y[i] == 0 ? next0++ : next1++;
    return a;
}

LatentAssignment init_latent(const std::vector<int>& y, std::vector<int> slots)
{
    LatentAssignment a = classes(y);
    if (slots.size() != y.size()) {
        throw DimensionError("latent assignment has " + std::to_string(slots.size()) + " slots for " +
                             std::to_string(y.size()) + " individuals");
    }
    a.slot = std::move(slots);
    try {
        a.check();
    } catch (const std::logic_error& e) {
        throw ValidationError(e.what());
    }
    return a;
}

std::vector<std::pair<int, int>> draw_latent_swaps(const LatentAssignment& assign, Rng& rng,
                                                   bool compound, const ProposalConfig& cfg)
{
    const int count = compound ? uniform_int(rng, cfg.compound_min, cfg.compound_max) : 1;
    const auto n = static_cast<int>(assign.slot.size());
    std::vector<std::pair<int, int>> out;
    if (assign.members[0].size() < 2 && assign.members[1].size() < 2) return out;
    for (int c = 0; c < count; ++c) {
        int i = 0;
        const std::vector<int>* cls = nullptr;
        do {
            i = uniform_int(rng, 0, n - 1);
            cls = &assign.members[static_cast<std::size_t>(assign.label[static_cast<std::size_t>(i)])];
        } while (cls->size() < 2);
        int j = i;
        while (j == i) j = (*cls)[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(cls->size()) - 1))];
        out.emplace_back(i, j);
    }
    return out;
}

void apply_latent_swaps(LatentAssignment& assign, const std::vector<std::pair<int, int>>& swaps)
{
    for (const auto& [i, j] : swaps) std::swap(assign.slot[static_cast<std::size_t>(i)], assign.slot[static_cast<std::size_t>(j)]);
}

double propose_latent_swap(LatentAssignment& assign, Rng& rng, bool compound, const ProposalConfig& cfg)
{
    apply_latent_swaps(assign, draw_latent_swaps(assign, rng, compound, cfg));
    return 0.0;
}

bool latent_mh_step(Chain& chain, LatentAssignment& assign, Eigen::VectorXd& z, const ProposalConfig& cfg)
{
    Rng& rng = chain.rng();
    const bool compound = cfg.small_world_prob > 0.0 && uniform_open(rng) < cfg.small_world_prob;
    const auto swaps = draw_latent_swaps(assign, rng, compound, cfg);
    const double log_u = std::log(uniform_open(rng));
    if (swaps.empty()) return false;

    Eigen::VectorXd z_new = z;
    for (const auto& [i, j] : swaps) std::swap(z_new(i), z_new(j));
    ModelFactorization cand = chain.factorization();
    cand.reset_response(chain.genotypes().values, z_new);
    const double bf = log_bf(cand);
    if (!(log_u < bf - chain.current_log_bf())) return false;

    apply_latent_swaps(assign, swaps);
    z = std::move(z_new);
    chain.adopt_response(&z, std::move(cand), bf);
    return true;
}

BinaryRun run_chain_binary(const GenotypeMatrix& g, const std::vector<int>& y, const Hyperparameters& hp,
                           const ProposalConfig& cfg, const ChainConfig& chain_cfg,
                           const LatentConfig& latent_cfg, int chain_index,
                           std::optional<LatentAssignment> initial)
{
    if (static_cast<Eigen::Index>(y.size()) != g.n()) {
        throw DimensionError("binary phenotype has " + std::to_string(y.size()) +
                             " values but genotypes have " + std::to_string(g.n()) + " individuals");
    }
    if (latent_cfg.updates_per_iteration < 0) throw ValidationError("latent updates per iteration must be >= 0");
    BinaryRun run;
    run.final_assignment = initial ? std::move(*initial) : init_latent(y);
    if (run.final_assignment.label != y) throw ValidationError("initial latent assignment does not match phenotype");
    Eigen::VectorXd z = run.final_assignment.z();
    const SnpRanking ranking = rank_snps(g, z);

    Chain chain(g, z, ranking, hp, cfg, make_rng(chain_cfg.seed, static_cast<std::uint64_t>(chain_index)));
    chain.initialize();

    std::function<void(Chain&)> extra;
    if (latent_cfg.swaps && latent_cfg.updates_per_iteration > 0) {
        extra = [&](Chain& c) {
            for (int u = 0; u < latent_cfg.updates_per_iteration; ++u) {
                ++run.latent_proposals;
                if (latent_mh_step(c, run.final_assignment, z, cfg)) ++run.latent_accepted;
            }
        };
    }
    run.samples = run_chain_with(chain, chain_cfg, extra);
    return run;
}

}  // namespace bvsr
