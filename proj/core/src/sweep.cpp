#include "jrank/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "jrank/error.hpp"
#include "jrank/mallows.hpp"
#include "jrank/rng.hpp"
#include "jrank/score.hpp"
#include "jrank/solve.hpp"

namespace jrank {

namespace {

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::BadParams, "bad number '" + text + "' in phi grid");
  }
  if (used != text.size()) fail(ErrorCode::BadParams, "bad number '" + text + "' in phi grid");
  return value;
}

struct InstanceOutcome {
  std::optional<double> price;
  std::size_t prefix = 0;
};

InstanceOutcome simulate_one(const SweepConfig& config, const ScoringRule& rule, double phi,
                             std::uint64_t seed) {
  MallowsMixtureConfig mixture;
  mixture.components = {MallowsConfig{phi, identity_ranking(config.m)},
                        MallowsConfig{phi, reversed_ranking(config.m)}};
  mixture.lambdas = {0.5, 0.5};
  mixture.tau = config.tau;
  Rng rng(seed);
  const auto sample = sample_mixture_instance(mixture, config.n, config.k, rng);
  const auto scores = rule.evaluate_all(sample.instance);
  const auto opt = optimal_set(sample.instance, scores, rule.name());
  const auto greedy = greedy_cc(sample.instance, scores, rule.name());
  InstanceOutcome outcome;
  outcome.prefix = greedy.justifying_prefix_size;
  if (const auto p = ratio(opt.committee.score, greedy.committee.score)) {
    outcome.price = p->to_double();
  }
  return outcome;
}

std::string svg_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::vector<double> make_phi_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) fail(ErrorCode::BadParams, "need step > 0 and stop >= start");
  if (!(start >= 0.0 && stop <= 1.0)) fail(ErrorCode::BadParams, "phi grid must lie in [0, 1]");
  std::vector<double> grid;
  // Index-based so rounding does not accumulate; rounded to 12 places for clean output.
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    double phi = start + static_cast<double>(i) * step;
    phi = std::round(phi * 1e12) / 1e12;
    grid.push_back(std::min(phi, 1.0));
  }
  return grid;
}

std::vector<double> parse_phi_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream in(spec);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.size() == 1) return make_phi_grid(parse_double(parts[0]), parse_double(parts[0]), 1.0);
  if (parts.size() != 3) fail(ErrorCode::BadParams, "phi grid must be 'start:stop:step' or a value");
  return make_phi_grid(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
}

SimulationReport run_price_sweep(const SweepConfig& config, const ScoringRule& rule) {
  if (config.phi_grid.empty()) fail(ErrorCode::BadParams, "empty phi grid");
  if (config.sims < 1) fail(ErrorCode::BadParams, "need at least one simulation per point");
  if (config.k < 1 || config.k > config.m) fail(ErrorCode::BadK, "need 1 <= k <= m");
  if (config.tau < 1 || config.tau > config.m) fail(ErrorCode::BadParams, "need 1 <= tau <= m");
  for (const double phi : config.phi_grid) {
    if (!(phi >= 0.0 && phi <= 1.0)) fail(ErrorCode::BadParams, "phi must lie in [0, 1]");
  }

  const std::size_t points = config.phi_grid.size();
  const std::size_t total = points * config.sims;
  std::vector<InstanceOutcome> outcomes(total);

  unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, total));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t unit = next.fetch_add(1);
      if (unit >= total) return;
      const std::size_t p = unit / config.sims;
      const std::size_t i = unit % config.sims;
      try {
        outcomes[unit] = simulate_one(config, rule, config.phi_grid[p],
                                      derive_seed(config.seed, p, i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(total);
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  SimulationReport report;
  report.rule = rule.name();
  report.sims = config.sims;
  report.seed = config.seed;
  for (std::size_t p = 0; p < points; ++p) {
    SweepPoint point;
    point.phi = config.phi_grid[p];
    point.sims = config.sims;
    point.bound = thm53_bound(config.k, 2, point.phi, config.m, config.tau, config.delta).value;
    double sum = 0.0;
    std::size_t defined = 0;
    for (std::size_t i = 0; i < config.sims; ++i) {
      const auto& outcome = outcomes[p * config.sims + i];
      point.prices.push_back(outcome.price);
      point.prefix_sizes.push_back(outcome.prefix);
      if (!outcome.price) {
        ++point.undefined_count;
        continue;
      }
      ++defined;
      sum += *outcome.price;
      point.max_price = std::max(point.max_price.value_or(*outcome.price), *outcome.price);
      if (point.bound && *outcome.price > *point.bound) ++point.bound_violations;
    }
    if (defined > 0) point.mean_price = sum / static_cast<double>(defined);
    report.points.push_back(std::move(point));
  }
  return report;
}

void write_sweep_csv(std::ostream& out, const SimulationReport& report) {
  auto cell = [](const std::optional<double>& v) {
    return v ? format_sig12(*v) : std::string("nan");
  };
  out << "phi,mean_price,max_price,bound,s,undefined_count\n";
  for (const auto& p : report.points) {
    out << format_sig12(p.phi) << ',' << cell(p.mean_price) << ',' << cell(p.max_price) << ','
        << (p.bound ? format_sig12(*p.bound) : std::string("inf")) << ',' << p.sims << ','
        << p.undefined_count << '\n';
  }
}

std::string render_sweep_svg(const std::vector<SimulationReport>& reports) {
  constexpr double kPanelW = 360, kPanelH = 260, kLeft = 50, kTop = 30, kPlotW = 290, kPlotH = 190;
  double y_max = 1.5;
  for (const auto& r : reports) {
    for (const auto& p : r.points) {
      if (p.max_price) y_max = std::max(y_max, *p.max_price);
      if (p.mean_price) y_max = std::max(y_max, *p.mean_price);
      if (p.bound) y_max = std::max(y_max, *p.bound);
    }
  }
  y_max = std::ceil(y_max * 2.0) / 2.0;
  constexpr double y_min = 1.0;

  std::ostringstream svg;
  const double width = kPanelW * static_cast<double>(std::max<std::size_t>(reports.size(), 1));
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_number(width)
      << "\" height=\"" << svg_number(kPanelH) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t r = 0; r < reports.size(); ++r) {
    const auto& report = reports[r];
    const double ox = kPanelW * static_cast<double>(r) + kLeft;
    auto x_of = [&](double phi) { return ox + phi * kPlotW; };
    auto y_of = [&](double v) {
      const double t = (std::clamp(v, y_min, y_max) - y_min) / (y_max - y_min);
      return kTop + kPlotH * (1.0 - t);
    };
    svg << "<text x=\"" << svg_number(ox + kPlotW / 2) << "\" y=\"18\" text-anchor=\"middle\">"
        << report.rule << "</text>\n";
    svg << "<rect x=\"" << svg_number(ox) << "\" y=\"" << svg_number(kTop) << "\" width=\""
        << svg_number(kPlotW) << "\" height=\"" << svg_number(kPlotH)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const double tick : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      svg << "<text x=\"" << svg_number(x_of(tick)) << "\" y=\"" << svg_number(kTop + kPlotH + 14)
          << "\" text-anchor=\"middle\">" << format_sig12(tick) << "</text>\n";
    }
    svg << "<text x=\"" << svg_number(ox - 6) << "\" y=\"" << svg_number(y_of(y_max) + 4)
        << "\" text-anchor=\"end\">" << format_sig12(y_max) << "</text>\n";
    svg << "<text x=\"" << svg_number(ox - 6) << "\" y=\"" << svg_number(y_of(y_min) + 4)
        << "\" text-anchor=\"end\">1</text>\n";
    svg << "<text x=\"" << svg_number(ox + kPlotW / 2) << "\" y=\"" << svg_number(kPanelH - 8)
        << "\" text-anchor=\"middle\">phi</text>\n";

    // Undefined values break the line into separate segments.
    auto polyline = [&](auto value_of, const char* dash, const char* color) {
      std::vector<std::string> segments;
      std::string current;
      for (const auto& p : report.points) {
        const std::optional<double> v = value_of(p);
        if (!v) {
          if (!current.empty()) segments.push_back(std::move(current));
          current.clear();
          continue;
        }
        current += svg_number(x_of(p.phi)) + "," + svg_number(y_of(*v)) + " ";
      }
      if (!current.empty()) segments.push_back(std::move(current));
      for (const auto& points : segments) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        if (*dash) svg << " stroke-dasharray=\"" << dash << "\"";
        svg << " points=\"" << points << "\"/>\n";
      }
    };
    polyline([](const SweepPoint& p) { return p.mean_price; }, "", "#1f77b4");
    polyline([](const SweepPoint& p) { return p.max_price; }, "2,3", "#1f77b4");
    polyline([](const SweepPoint& p) { return p.bound; }, "8,3,2,3", "#d62728");
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace jrank
