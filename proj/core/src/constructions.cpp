#include "jrank/constructions.hpp"

#include <string>

#include "jrank/error.hpp"

namespace jrank {

Instance construct_prop41_instance(std::size_t k, double epsilon, double c,
                                   std::size_t group_size) {
  if (k < 1 || group_size < 1 || !(epsilon > 0.0) || !(c > epsilon)) {
    fail(ErrorCode::BadParams, "need k >= 1, group_size >= 1, epsilon > 0 and c > epsilon");
  }
  const std::size_t n = k * group_size;
  const std::size_t m = k + 1;
  std::vector<std::vector<ItemId>> approvals(n);
  std::vector<std::uint32_t> assignment(n);
  for (std::size_t u = 0; u < n; ++u) {
    const auto g = static_cast<std::uint32_t>(u / group_size);
    approvals[u] = {g};
    assignment[u] = g;
  }
  std::vector<double> scores(m, epsilon);
  scores[k] = c;
  return build_instance(n, m, k, approvals, GroupPartition(std::move(assignment)),
                        std::move(scores));
}

Instance construct_thm42_instance(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1) fail(ErrorCode::BadParams, "need n >= 1 and k >= 1");
  if ((n * k) % (n + k) != 0 || n % k != 0) {
    fail(ErrorCode::BadDivisibility, "need (n+k) | nk and k | n, got n = " + std::to_string(n) +
                                         ", k = " + std::to_string(k));
  }
  const std::size_t gamma = n * k / (n + k);
  if (gamma <= 1) {
    fail(ErrorCode::BadDivisibility, "construction needs gamma = nk/(n+k) > 1, got " + std::to_string(gamma));
  }
  const std::size_t group_size = n / k + 1;
  const std::size_t m = gamma + k;

  std::vector<std::vector<ItemId>> approvals(n);
  std::vector<std::uint32_t> assignment(n);
  for (std::size_t g = 0; g < gamma; ++g) {
    for (std::size_t j = 0; j < group_size; ++j) {
      const std::size_t u = g * group_size + j;
      assignment[u] = static_cast<std::uint32_t>(g);
      approvals[u].push_back(static_cast<ItemId>(g));
      if (j == 0) {
        for (std::size_t y = 0; y < k; ++y) approvals[u].push_back(static_cast<ItemId>(gamma + y));
      }
    }
  }
  return build_instance(n, m, k, approvals, GroupPartition(std::move(assignment)));
}

Instance construct_thm51_tight_instance(std::size_t n, std::size_t k, std::size_t gamma, double c) {
  if (gamma < 1 || gamma >= k) fail(ErrorCode::BadParams, "need 1 <= gamma < k");
  if (n < gamma || n % gamma != 0) fail(ErrorCode::BadParams, "gamma must divide n");
  if (!(c > 0.0)) fail(ErrorCode::BadParams, "need c > 0");
  const std::size_t group_size = n / gamma;
  const std::size_t m = gamma + k;

  std::vector<std::vector<ItemId>> approvals(n);
  std::vector<std::uint32_t> assignment(n);
  for (std::size_t u = 0; u < n; ++u) {
    const auto g = static_cast<std::uint32_t>(u / group_size);
    assignment[u] = g;
    approvals[u] = {g};
  }
  std::vector<double> scores(m, c);
  for (std::size_t g = 0; g < gamma; ++g) scores[g] = 0.0;
  return build_instance(n, m, k, approvals, GroupPartition(std::move(assignment)),
                        std::move(scores));
}

}  // namespace jrank
