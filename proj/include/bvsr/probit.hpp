#pragma once
// Binary outcomes through latent Gaussian scores.
//
// The latent vector z takes a fixed multiset of values, the standard-normal
// quantiles Phi^-1(i / (n + 1)) rescaled to empirical variance 1. Controls
// always hold the n0 smallest values and cases the rest; only the matching
// of individuals to values within a class is sampled. A latent move swaps
// the values of two individuals of the same class, so the Hastings ratio is
// 1 and the acceptance ratio is the Bayes-factor ratio at the current gamma.

#include "bvsr/genotype.hpp"
#include "bvsr/model.hpp"
#include "bvsr/rng.hpp"
#include "bvsr/sampler.hpp"

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

namespace bvsr {

struct LatentAssignment {
    Eigen::VectorXd quantiles;      // ascending, mean 0, variance 1
    std::vector<int> slot;          // slot[i] = quantile index held by individual i
    std::vector<int> label;         // 0 or 1 per individual
    std::vector<std::vector<int>> members;  // individuals of each class, input order
    int n0 = 0;

    [[nodiscard]] Eigen::Index n() const { return quantiles.size(); }
    [[nodiscard]] Eigen::VectorXd z() const;
    // Throws std::logic_error when a class holds a slot outside its block.
    void check() const;
};

// Mirrored Phi^-1(i / (n + 1)) grid scaled to (1/n) sum z^2 = 1.
Eigen::VectorXd latent_quantiles(Eigen::Index n);

// Controls take slots 0..n0-1 in input order, cases the rest. Throws
// ValidationError for values other than 0/1 or a single class.
LatentAssignment init_latent(const std::vector<int>& y);
// Same classes with an explicit slot per individual.
LatentAssignment init_latent(const std::vector<int>& y, std::vector<int> slots);

std::vector<int> to_binary(const Eigen::VectorXd& y);

// Pairs (i, j) of same-class individuals; m ~ U{min..max} pairs in compound
// mode, one otherwise. Applying the pairs in order yields the proposal.
std::vector<std::pair<int, int>> draw_latent_swaps(const LatentAssignment& assign, Rng& rng,
                                                   bool compound, const ProposalConfig& cfg);
void apply_latent_swaps(LatentAssignment& assign, const std::vector<std::pair<int, int>>& swaps);
// Applies drawn swaps in place; the Hastings contribution is always 0.
double propose_latent_swap(LatentAssignment& assign, Rng& rng, bool compound,
                           const ProposalConfig& cfg);

struct LatentConfig {
    bool swaps = true;
    int updates_per_iteration = 1;
};

struct BinaryRun {
    PosteriorSamples samples;
    LatentAssignment final_assignment;
    std::int64_t latent_proposals = 0;
    std::int64_t latent_accepted = 0;
};

// One latent MH update at the chain's current model.
bool latent_mh_step(Chain& chain, LatentAssignment& assign, Eigen::VectorXd& z,
                    const ProposalConfig& cfg);

BinaryRun run_chain_binary(const GenotypeMatrix& g, const std::vector<int>& y,
                           const Hyperparameters& hp, const ProposalConfig& cfg,
                           const ChainConfig& chain_cfg, const LatentConfig& latent_cfg = {},
                           int chain_index = 0,
                           std::optional<LatentAssignment> initial = std::nullopt);

}  // namespace bvsr
