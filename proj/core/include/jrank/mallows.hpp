#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jrank/core.hpp"
#include "jrank/rng.hpp"

namespace jrank {

/// ranking[r] is the item placed at rank r (rank 0 is the top).
using Ranking = std::vector<ItemId>;

Ranking identity_ranking(std::size_t m);
Ranking reversed_ranking(std::size_t m);

/// Number of item pairs ordered differently by the two rankings, O(m log m).
/// Throws NotPermutation unless both are permutations of the same [m].
std::uint64_t kendall_tau(std::span<const ItemId> pi, std::span<const ItemId> sigma);

/// Z(phi) = 1 · (1 + phi) · (1 + phi + phi^2) ··· (1 + ... + phi^(m-1)).
double mallows_normalizer(double phi, std::size_t m);

struct MallowsConfig {
  double phi = 1.0;
  Ranking sigma;

  /// Throws BadParams / NotPermutation.
  void validate() const;
};

/// Pr(pi) = phi^d(pi, sigma) / Z(phi).
double mallows_pmf(std::span<const ItemId> pi, const MallowsConfig& config);

struct MallowsMixtureConfig {
  std::vector<MallowsConfig> components;
  std::vector<double> lambdas;
  /// Users approve their top-tau items.
  std::size_t tau = 1;

  std::size_t num_items() const;
  /// Throws BadParams: weights must be non-negative and sum to 1 (1e-12);
  /// components must share m; 1 <= tau <= m.
  void validate() const;
};

/// Bottom-up repeated insertion: for i = m..1 insert sigma_i at position j in
/// [1, m-i+1] with probability phi^(j-1) / (1 + phi + ... + phi^(m-i)).
Ranking sample_mallows_bottom_up(const MallowsConfig& config, Rng& rng);

struct MixtureSample {
  Instance instance;
  std::vector<Ranking> rankings;
  /// Mixture component each user was drawn from.
  std::vector<std::uint32_t> components;
};

/// Draws n users from the mixture; each approves its top-tau items. The
/// instance's groups are the drawn components, renumbered densely in
/// component order with empty components dropped.
MixtureSample sample_mixture_instance(const MallowsMixtureConfig& config, std::size_t n,
                                      std::size_t k, Rng& rng);

/// Upper bound on Pr(none of the top-s reference items lands in the sampled
/// top tau): phi^(tau s) (1 - phi^(m-tau))^s / (1 - phi^m)^s for phi < 1 and
/// (1 - tau/m)^s for phi = 1; 0 when s > m - tau. Throws BadParams.
double lemma_c1_bound(double phi, std::size_t m, std::size_t tau, std::size_t s);

struct MixtureBound {
  /// Size of the justifying set that exists with probability >= 1 - delta.
  std::uint64_t q = 0;
  /// k / (k - q), or empty (unbounded) when q >= k.
  std::optional<double> value;
};

/// High-probability price bound for Mallows-mixture profiles:
/// q = gamma · ceil(log(k/delta) / D) with D = log((1 - phi^m) / (phi^tau
/// (1 - phi^(m-tau)))) for phi < 1 and log m - log(m - tau) for phi = 1.
/// D = +inf (phi = 0 or tau = m) gives q = gamma. Throws BadParams.
MixtureBound thm53_bound(std::size_t k, std::size_t gamma, double phi_max, std::size_t m,
                         std::size_t tau, double delta);

}  // namespace jrank
