#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jrank/scoring.hpp"

namespace jrank {

/// Polarized two-component Mallows mixture sweep: equal weights, opposite
/// reference rankings, shared dispersion phi.
struct SweepConfig {
  std::size_t n = 100;
  std::size_t m = 100;
  std::size_t k = 10;
  std::size_t tau = 25;
  /// Simulated instances per grid point.
  std::size_t sims = 100;
  double delta = 0.05;
  std::vector<double> phi_grid;
  std::uint64_t seed = 1;
  /// 0 = hardware concurrency. Results do not depend on the thread count.
  unsigned threads = 0;
};

struct SweepPoint {
  double phi = 0.0;
  /// Mean / max of the defined GreedyCC prices; empty when all are undefined.
  std::optional<double> mean_price;
  std::optional<double> max_price;
  /// Mixture bound at confidence delta; empty when unbounded.
  std::optional<double> bound;
  std::size_t sims = 0;
  std::size_t undefined_count = 0;
  /// Instances whose price exceeds a finite bound.
  std::size_t bound_violations = 0;
  /// Per-instance GreedyCC price in instance order; empty when undefined.
  std::vector<std::optional<double>> prices;
  /// Per-instance size of GreedyCC's justifying prefix.
  std::vector<std::size_t> prefix_sizes;
};

struct SimulationReport {
  std::string rule;
  std::vector<SweepPoint> points;
  std::size_t sims = 0;
  std::uint64_t seed = 0;
};

/// "start:stop:step" inclusive of stop (within half a step), or a single value.
std::vector<double> parse_phi_grid(const std::string& spec);
std::vector<double> make_phi_grid(double start, double stop, double step);

/// Per-instance seeds are derived from (seed, grid index, instance index), so
/// the report is identical for any thread count.
SimulationReport run_price_sweep(const SweepConfig& config, const ScoringRule& rule);

/// Columns: phi,mean_price,max_price,bound,s,undefined_count.
void write_sweep_csv(std::ostream& out, const SimulationReport& report);

/// Line plot: solid mean, dotted max, dash-dot bound; one panel per report.
std::string render_sweep_svg(const std::vector<SimulationReport>& reports);

}  // namespace jrank
