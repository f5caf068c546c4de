#include "jrank/mallows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "jrank/error.hpp"

namespace jrank {

namespace {

void require_permutation(std::span<const ItemId> ranking, std::size_t m, const char* what) {
  if (ranking.size() != m) fail(ErrorCode::NotPermutation, std::string(what) + " has the wrong length");
  std::vector<bool> seen(m, false);
  for (const auto item : ranking) {
    if (item >= m || seen[item]) {
      fail(ErrorCode::NotPermutation, std::string(what) + " is not a permutation of [0, m)");
    }
    seen[item] = true;
  }
}

std::uint64_t count_inversions(std::vector<std::uint32_t>& values, std::vector<std::uint32_t>& scratch,
                               std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t total = count_inversions(values, scratch, lo, mid) +
                        count_inversions(values, scratch, mid, hi);
  std::size_t a = lo;
  std::size_t b = mid;
  std::size_t out = lo;
  while (a < mid && b < hi) {
    if (values[b] < values[a]) {
      total += mid - a;
      scratch[out++] = values[b++];
    } else {
      scratch[out++] = values[a++];
    }
  }
  while (a < mid) scratch[out++] = values[a++];
  while (b < hi) scratch[out++] = values[b++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            values.begin() + static_cast<std::ptrdiff_t>(lo));
  return total;
}

void require_phi(double phi) {
  if (!(phi >= 0.0 && phi <= 1.0)) fail(ErrorCode::BadParams, "dispersion must lie in [0, 1]");
}

// Draws j - 1 where Pr(j) is proportional to phi^(j-1), j in [1, positions].
std::size_t truncated_geometric(double phi, std::size_t positions, Rng& rng) {
  if (positions == 1 || phi == 0.0) return 0;
  if (phi == 1.0) return static_cast<std::size_t>(rng.below(positions));
  double total = 0.0;
  double weight = 1.0;
  for (std::size_t j = 0; j < positions; ++j) {
    total += weight;
    weight *= phi;
  }
  const double target = rng.uniform() * total;
  double cumulative = 0.0;
  weight = 1.0;
  for (std::size_t j = 0; j + 1 < positions; ++j) {
    cumulative += weight;
    if (target < cumulative) return j;
    weight *= phi;
  }
  return positions - 1;
}

}  // namespace

Ranking identity_ranking(std::size_t m) {
  Ranking r(m);
  std::iota(r.begin(), r.end(), ItemId{0});
  return r;
}

Ranking reversed_ranking(std::size_t m) {
  Ranking r = identity_ranking(m);
  std::reverse(r.begin(), r.end());
  return r;
}

std::uint64_t kendall_tau(std::span<const ItemId> pi, std::span<const ItemId> sigma) {
  const std::size_t m = sigma.size();
  require_permutation(sigma, m, "sigma");
  require_permutation(pi, m, "pi");
  std::vector<std::uint32_t> rank_in_sigma(m);
  for (std::size_t r = 0; r < m; ++r) rank_in_sigma[sigma[r]] = static_cast<std::uint32_t>(r);
  std::vector<std::uint32_t> sequence(m);
  for (std::size_t r = 0; r < m; ++r) sequence[r] = rank_in_sigma[pi[r]];
  std::vector<std::uint32_t> scratch(m);
  return count_inversions(sequence, scratch, 0, m);
}

double mallows_normalizer(double phi, std::size_t m) {
  require_phi(phi);
  double z = 1.0;
  double partial = 1.0;  // 1 + phi + ... + phi^(j-1)
  double power = 1.0;
  for (std::size_t j = 2; j <= m; ++j) {
    power *= phi;
    partial += power;
    z *= partial;
  }
  return z;
}

void MallowsConfig::validate() const {
  require_phi(phi);
  if (sigma.empty()) fail(ErrorCode::BadParams, "reference ranking is empty");
  require_permutation(sigma, sigma.size(), "sigma");
}

double mallows_pmf(std::span<const ItemId> pi, const MallowsConfig& config) {
  config.validate();
  const auto d = kendall_tau(pi, config.sigma);
  const double numerator = d == 0 ? 1.0 : std::pow(config.phi, static_cast<double>(d));
  return numerator / mallows_normalizer(config.phi, config.sigma.size());
}

std::size_t MallowsMixtureConfig::num_items() const {
  return components.empty() ? 0 : components.front().sigma.size();
}

void MallowsMixtureConfig::validate() const {
  if (components.empty()) fail(ErrorCode::BadParams, "mixture has no components");
  if (lambdas.size() != components.size()) {
    fail(ErrorCode::BadParams, "need one mixing weight per component");
  }
  double sum = 0.0;
  for (const double w : lambdas) {
    if (!(w >= 0.0)) fail(ErrorCode::BadParams, "mixing weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) fail(ErrorCode::BadParams, "mixing weights must sum to 1");
  const std::size_t m = num_items();
  for (const auto& c : components) {
    c.validate();
    if (c.sigma.size() != m) fail(ErrorCode::BadParams, "components disagree on m");
  }
  if (tau < 1 || tau > m) fail(ErrorCode::BadParams, "need 1 <= tau <= m");
}

Ranking sample_mallows_bottom_up(const MallowsConfig& config, Rng& rng) {
  const std::size_t m = config.sigma.size();
  Ranking pi;
  pi.reserve(m);
  // Loop index i = m..1 (1-based) inserts sigma_i into m - i + 1 positions.
  for (std::size_t i = m; i >= 1; --i) {
    const std::size_t positions = m - i + 1;
    const std::size_t j = truncated_geometric(config.phi, positions, rng);
    pi.insert(pi.begin() + static_cast<std::ptrdiff_t>(j), config.sigma[i - 1]);
  }
  return pi;
}

MixtureSample sample_mixture_instance(const MallowsMixtureConfig& config, std::size_t n,
                                      std::size_t k, Rng& rng) {
  config.validate();
  if (n < 1) fail(ErrorCode::BadParams, "need n >= 1");
  const std::size_t m = config.num_items();
  const std::size_t gamma = config.components.size();

  std::vector<Ranking> rankings;
  std::vector<std::uint32_t> components(n);
  std::vector<ItemSet> approvals;
  rankings.reserve(n);
  approvals.reserve(n);
  for (std::size_t u = 0; u < n; ++u) {
    const double x = rng.uniform();
    double cumulative = 0.0;
    std::size_t chosen = gamma;
    for (std::size_t c = 0; c < gamma; ++c) {
      cumulative += config.lambdas[c];
      if (x < cumulative && config.lambdas[c] > 0.0) {
        chosen = c;
        break;
      }
    }
    if (chosen == gamma) {
      // Rounding left x past the last cumulative weight.
      chosen = gamma - 1;
      while (config.lambdas[chosen] == 0.0) --chosen;
    }
    components[u] = static_cast<std::uint32_t>(chosen);
    Ranking pi = sample_mallows_bottom_up(config.components[chosen], rng);
    ItemSet approved(m);
    for (std::size_t r = 0; r < config.tau; ++r) approved.set(pi[r]);
    approvals.push_back(std::move(approved));
    rankings.push_back(std::move(pi));
  }

  std::vector<std::uint32_t> dense(gamma, 0);
  std::vector<bool> used(gamma, false);
  for (const auto c : components) used[c] = true;
  std::uint32_t next = 0;
  for (std::size_t c = 0; c < gamma; ++c) {
    if (used[c]) dense[c] = next++;
  }
  std::vector<std::uint32_t> assignment(n);
  for (std::size_t u = 0; u < n; ++u) assignment[u] = dense[components[u]];

  Instance instance(ApprovalProfile(m, std::move(approvals)), k,
                    GroupPartition(std::move(assignment)));
  return MixtureSample{std::move(instance), std::move(rankings), std::move(components)};
}

double lemma_c1_bound(double phi, std::size_t m, std::size_t tau, std::size_t s) {
  require_phi(phi);
  if (tau < 1 || tau > m) fail(ErrorCode::BadParams, "need 1 <= tau <= m");
  if (s < 1 || s > m) fail(ErrorCode::BadParams, "need 1 <= s <= m");
  // Fewer than tau items remain outside the top s: one of them must land in the top tau.
  if (s > m - tau) return 0.0;
  const auto ds = static_cast<double>(s);
  if (phi == 1.0) {
    return std::pow(1.0 - static_cast<double>(tau) / static_cast<double>(m), ds);
  }
  const double per_item = std::pow(phi, static_cast<double>(tau)) *
                          (1.0 - std::pow(phi, static_cast<double>(m - tau))) /
                          (1.0 - std::pow(phi, static_cast<double>(m)));
  return std::pow(per_item, ds);
}

MixtureBound thm53_bound(std::size_t k, std::size_t gamma, double phi_max, std::size_t m,
                         std::size_t tau, double delta) {
  require_phi(phi_max);
  if (k < 1 || gamma < 1) fail(ErrorCode::BadParams, "need k >= 1 and gamma >= 1");
  if (tau < 1 || tau > m) fail(ErrorCode::BadParams, "need 1 <= tau <= m");
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::BadParams, "need 0 < delta < 1");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto dm = static_cast<double>(m);
  const auto dtau = static_cast<double>(tau);
  double denominator = kInf;
  if (tau < m) {
    if (phi_max == 1.0) {
      denominator = std::log(dm) - std::log(dm - dtau);
    } else if (phi_max > 0.0) {
      denominator = std::log1p(-std::pow(phi_max, dm)) - dtau * std::log(phi_max) -
                    std::log1p(-std::pow(phi_max, dm - dtau));
    }
  }
  const double steps = std::log(static_cast<double>(k) / delta) / denominator;
  MixtureBound bound;
  if (!(steps < 1e15)) {
    bound.q = std::numeric_limits<std::uint64_t>::max();
    return bound;
  }
  const auto s = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(steps)));
  bound.q = gamma * s;
  if (bound.q < k) {
    bound.value = static_cast<double>(k) / static_cast<double>(k - bound.q);
  }
  return bound;
}

}  // namespace jrank
