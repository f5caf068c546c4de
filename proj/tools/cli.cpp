#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jrank/constructions.hpp"
#include "jrank/error.hpp"
#include "jrank/fetch.hpp"
#include "jrank/io.hpp"
#include "jrank/jr.hpp"
#include "jrank/report.hpp"
#include "jrank/solve.hpp"
#include "jrank/sweep.hpp"

namespace jrank::cli {

namespace {

using json = nlohmann::ordered_json;

struct GlobalArgs {
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;
  bool offline = false;
  std::string format = "csv";
};

struct InstanceArgs {
  std::string instance;
  std::string approvals;
  std::string groups;
  std::string scores;
  std::string comments;
  std::optional<std::size_t> k;
  std::size_t m = 0;
  bool probabilities = false;
  double cutoff = 0.5;
};

// The instance after optional comment filtering, with each local item id
// mapped back to the id used in the input files.
struct Loaded {
  Instance instance;
  std::vector<ItemId> original;

  ItemId to_original(ItemId local) const { return original.at(local); }

  std::vector<ItemId> to_local(const std::vector<ItemId>& items) const {
    std::vector<ItemId> local;
    for (const auto item : items) {
      const auto it = std::find(original.begin(), original.end(), item);
      if (it == original.end()) {
        fail(ErrorCode::IndexOutOfRange, "item " + std::to_string(item) + " is not in the instance");
      }
      local.push_back(static_cast<ItemId>(it - original.begin()));
    }
    return local;
  }
};

void add_instance_options(CLI::App* app, InstanceArgs& args) {
  app->add_option("--instance", args.instance, "Instance JSON file");
  app->add_option("--approvals", args.approvals, "Approval CSV (user_id,item_id,value)");
  app->add_option("--groups", args.groups, "Group CSV (user_id,group_id)");
  app->add_option("--scores", args.scores, "Score CSV (item_id,score)");
  app->add_option("--comments", args.comments, "Comment CSV (item_id,text); drops empty and duplicate items");
  app->add_option("--k", args.k, "Committee size (overrides the JSON value)");
  app->add_option("--m", args.m, "Minimum item count for CSV input");
  app->add_flag("--probabilities", args.probabilities, "Approval values are probabilities");
  app->add_option("--cutoff", args.cutoff, "Approve iff probability > cutoff")->capture_default_str();
}

Loaded load(const InstanceArgs& args) {
  std::optional<Instance> instance;
  if (!args.instance.empty()) {
    if (!args.approvals.empty()) fail(ErrorCode::BadParams, "give either --instance or --approvals");
    instance = load_instance_json(args.instance);
    if (args.k) instance = instance->with_k(*args.k);
  } else {
    if (args.approvals.empty()) fail(ErrorCode::BadParams, "an instance needs --instance or --approvals");
    if (!args.k) fail(ErrorCode::BadParams, "--k is required with --approvals");
    ApprovalCsvOptions options;
    options.mode = args.probabilities ? ApprovalMode::probability : ApprovalMode::binary;
    options.cutoff = args.cutoff;
    options.min_items = args.m;
    auto opt_path = [](const std::string& p) {
      return p.empty() ? std::nullopt : std::optional<std::filesystem::path>(p);
    };
    instance = load_instance_csv(args.approvals, *args.k, opt_path(args.groups), opt_path(args.scores),
                                 options);
  }
  std::vector<ItemId> original(instance->m());
  std::iota(original.begin(), original.end(), ItemId{0});
  if (!args.comments.empty()) {
    auto texts = parse_comments_csv(args.comments);
    texts.resize(instance->m());
    original = dedup_comments(texts);
    instance = restrict_items(*instance, original);
  }
  return Loaded{std::move(*instance), std::move(original)};
}

std::vector<ItemId> parse_items(const std::string& text) {
  std::vector<ItemId> items;
  std::string token;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  while (in >> token) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.front() == '-') {
      fail(ErrorCode::ParseError, "bad item id '" + token + "'");
    }
    items.push_back(static_cast<ItemId>(value));
  }
  return items;
}

std::string join(const std::vector<std::uint32_t>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? " " : "") + std::to_string(ids[i]);
  return out;
}

json score_json(const Score& s) {
  if (s.is_exact()) return s.to_string();
  return s.to_double();
}

std::vector<ItemId> originals(const Loaded& loaded, const std::vector<ItemId>& local) {
  std::vector<ItemId> out;
  for (const auto i : local) out.push_back(loaded.to_original(i));
  return out;
}

std::string_view jr_text(JrStatus s) {
  switch (s) {
    case JrStatus::satisfied: return "true";
    case JrStatus::violated: return "false";
    case JrStatus::unchecked: break;
  }
  return "unchecked";
}

int run_select(const GlobalArgs& g, const InstanceArgs& ia, const std::string& rule_name,
               const std::string& method, std::ostream& out) {
  const auto loaded = load(ia);
  const auto rule = rule_by_name(rule_name);
  SelectionResult r;
  if (method == "opt") {
    r = optimal_set(loaded.instance, rule);
  } else if (method == "exact") {
    r = optimal_jr_set_exact(loaded.instance, rule, g.budget);
  } else {
    r = greedy_cc(loaded.instance, rule);
  }
  const auto items = originals(loaded, r.committee.items);
  if (g.format == "json") {
    json doc;
    doc["method"] = to_string(r.method);
    doc["rule"] = r.rule;
    doc["k"] = loaded.instance.k();
    doc["items"] = items;
    doc["pick_order"] = originals(loaded, r.pick_order);
    doc["score"] = score_json(r.committee.score);
    doc["satisfies_jr"] = r.committee.satisfies_jr == JrStatus::satisfied;
    doc["justifying_prefix_size"] = r.justifying_prefix_size;
    out << doc.dump(2) << '\n';
  } else {
    out << "method,rule,k,items,score,satisfies_jr,justifying_prefix_size\n"
        << to_string(r.method) << ',' << r.rule << ',' << loaded.instance.k() << ',' << join(items)
        << ',' << r.committee.score.to_csv() << ',' << jr_text(r.committee.satisfies_jr) << ','
        << r.justifying_prefix_size << '\n';
  }
  return 0;
}

int run_verify(const GlobalArgs& g, const InstanceArgs& ia, const std::string& items_text,
               bool bruteforce, std::ostream& out) {
  const auto loaded = load(ia);
  const auto items = loaded.to_local(parse_items(items_text));
  const auto witness = bruteforce ? verify_jr_bruteforce(items, loaded.instance)
                                  : verify_jr(items, loaded.instance);
  if (g.format == "json") {
    json doc;
    doc["jr"] = !witness.has_value();
    if (witness) {
      doc["witness"] = {{"item", loaded.to_original(witness->item)}, {"group", witness->group}};
    } else {
      doc["witness"] = nullptr;
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "jr,witness_item,witness_group\n";
    if (witness) {
      out << "false," << loaded.to_original(witness->item) << ',' << join(witness->group) << '\n';
    } else {
      out << "true,,\n";
    }
  }
  return 0;
}

int run_price(const GlobalArgs& g, const InstanceArgs& ia, const std::string& rule_name,
              const std::string& method, std::ostream& out) {
  const auto loaded = load(ia);
  const auto report = price_of_jr(loaded.instance, rule_by_name(rule_name),
                                  method == "exact" ? PriceMethod::exact : PriceMethod::greedy,
                                  g.budget);
  const auto prefix = report.constrained.justifying_prefix_size;
  if (g.format == "json") {
    json doc;
    doc["rule"] = report.unconstrained.rule;
    doc["method"] = method;
    doc["score_opt"] = score_json(report.score_opt);
    doc["score_constrained"] = score_json(report.score_constrained);
    doc["price"] = report.price ? score_json(*report.price) : json(nullptr);
    doc["exact"] = report.exact;
    doc["undefined"] = report.undefined();
    doc["justifying_prefix_size"] = prefix;
    doc["opt_items"] = originals(loaded, report.unconstrained.committee.items);
    doc["constrained_items"] = originals(loaded, report.constrained.committee.items);
    out << doc.dump(2) << '\n';
  } else {
    out << "rule,method,score_opt,score_constrained,price,exact,undefined,justifying_prefix_size\n"
        << report.unconstrained.rule << ',' << method << ',' << report.score_opt.to_csv() << ','
        << report.score_constrained.to_csv() << ','
        << (report.price ? report.price->to_csv() : std::string("nan")) << ','
        << (report.exact ? "true" : "false") << ',' << (report.undefined() ? "true" : "false") << ','
        << prefix << '\n';
  }
  return 0;
}

int run_report(const GlobalArgs& g, const InstanceArgs& ia, const std::string& items_text,
               const std::string& rule, std::ostream& out) {
  const auto loaded = load(ia);
  const auto items = loaded.to_local(parse_items(items_text));
  const auto r = representation_report(items, loaded.instance, rule);
  if (g.format == "json") {
    json doc;
    doc["rule"] = r.rule;
    doc["committee"] = originals(loaded, r.committee);
    doc["total_users"] = r.total_users;
    doc["unrepresented_count"] = r.unrepresented_count;
    doc["unrepresented_fraction"] = r.unrepresented_fraction;
    json groups = json::array();
    for (const auto& row : r.per_group) {
      groups.push_back({{"group", row.group},
                        {"size", row.size},
                        {"unrepresented", row.unrepresented},
                        {"fraction", row.fraction}});
    }
    doc["per_group"] = std::move(groups);
    out << doc.dump(2) << '\n';
  } else {
    out << "scope,size,unrepresented,fraction\n"
        << "all," << r.total_users << ',' << r.unrepresented_count << ','
        << format_sig12(r.unrepresented_fraction) << '\n';
    for (const auto& row : r.per_group) {
      out << "group:" << row.group << ',' << row.size << ',' << row.unrepresented << ','
          << format_sig12(row.fraction) << '\n';
    }
  }
  return 0;
}

struct SimulateArgs {
  std::string phi = "0.1:1.0:0.05";
  std::string rule = "engagement";
  std::string out;
  std::string svg;
  bool full = false;
  SweepConfig config;
};

int run_simulate(const GlobalArgs& g, SimulateArgs& a, std::ostream& out) {
  a.config.seed = g.seed;
  if (a.full) {
    a.config.sims = 1000;
    a.phi = "0.1:1.0:0.01";
  }
  a.config.phi_grid = parse_phi_grid(a.phi);
  const auto report = run_price_sweep(a.config, rule_by_name(a.rule));

  std::ostringstream body;
  if (g.format == "json") {
    json doc;
    doc["rule"] = report.rule;
    doc["seed"] = report.seed;
    doc["s"] = report.sims;
    json points = json::array();
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    for (const auto& p : report.points) {
      points.push_back({{"phi", p.phi},
                        {"mean_price", opt(p.mean_price)},
                        {"max_price", opt(p.max_price)},
                        {"bound", opt(p.bound)},
                        {"undefined_count", p.undefined_count},
                        {"bound_violations", p.bound_violations}});
    }
    doc["points"] = std::move(points);
    body << doc.dump(2) << '\n';
  } else {
    write_sweep_csv(body, report);
  }
  if (a.out.empty()) {
    out << body.str();
  } else {
    std::ofstream file(a.out, std::ios::binary);
    if (!(file << body.str())) fail(ErrorCode::IoError, "cannot write " + a.out);
  }
  if (!a.svg.empty()) {
    std::ofstream file(a.svg, std::ios::binary);
    if (!(file << render_sweep_svg({report}))) fail(ErrorCode::IoError, "cannot write " + a.svg);
  }
  return 0;
}

struct ConstructArgs {
  std::string kind;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t gamma = 0;
  std::size_t group_size = 2;
  double epsilon = 0.1;
  double c = 1.0;
  std::string out_dir;
};

int run_construct(const ConstructArgs& a, std::ostream& out) {
  std::optional<Instance> instance;
  if (a.kind == "prop41") {
    instance = construct_prop41_instance(a.k, a.epsilon, a.c, a.group_size);
  } else if (a.kind == "thm42") {
    instance = construct_thm42_instance(a.n, a.k);
  } else {
    instance = construct_thm51_tight_instance(a.n, a.k, a.gamma, a.c);
  }
  if (a.out_dir.empty()) {
    out << instance_to_json(*instance);
    return 0;
  }
  const auto files = write_instance_files(*instance, a.out_dir);
  out << files.approvals.string() << '\n';
  if (files.groups) out << files.groups->string() << '\n';
  if (files.scores) out << files.scores->string() << '\n';
  out << files.json.string() << '\n';
  return 0;
}

struct FetchArgs {
  std::string manifest;
  std::vector<std::string> urls;
  std::string cache_dir;
  long timeout = 60;
};

int run_fetch(const GlobalArgs& g, const FetchArgs& a, std::ostream& out) {
  std::vector<DatasetFile> files;
  if (!a.manifest.empty()) files = parse_manifest(a.manifest);
  for (const auto& url : a.urls) {
    const auto slash = url.find_last_of('/');
    const std::string name = slash == std::string::npos ? url : url.substr(slash + 1);
    if (name.empty()) fail(ErrorCode::BadParams, "cannot derive a file name from " + url);
    files.push_back(DatasetFile{name, url, std::nullopt});
  }
  if (files.empty()) fail(ErrorCode::BadParams, "nothing to fetch: give --manifest or --url");
  FetchOptions options;
  options.cache_dir = a.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(a.cache_dir);
  options.offline = g.offline;
  options.timeout_seconds = a.timeout;
  const auto result = fetch_dataset(files, options);
  for (const auto& p : result.paths) out << p.string() << '\n';
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Committee selection under justified representation"};
  app.name("jrank");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs global;
  app.add_option("--seed", global.seed, "Random seed")->capture_default_str();
  app.add_option("--budget", global.budget, "Subset budget for exact JR search")->capture_default_str();
  app.add_flag("--offline", global.offline, "Use the dataset cache only");
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  const std::vector<std::string> rules = {"engagement", "mda", "product", "external"};

  InstanceArgs select_inst;
  std::string select_rule = "engagement";
  std::string select_method = "greedy";
  auto* select = app.add_subcommand("select", "Select a committee");
  add_instance_options(select, select_inst);
  select->add_option("--rule", select_rule)->check(CLI::IsMember(rules))->capture_default_str();
  select->add_option("--method", select_method)
      ->check(CLI::IsMember({"opt", "exact", "greedy"}))
      ->capture_default_str();

  InstanceArgs verify_inst;
  std::string verify_items;
  bool verify_brute = false;
  auto* verify = app.add_subcommand("verify-jr", "Check justified representation of an item set");
  add_instance_options(verify, verify_inst);
  verify->add_option("--items", verify_items, "Item ids, comma or space separated")->required();
  verify->add_flag("--bruteforce", verify_brute, "Use the exhaustive group search (n <= 20)");

  InstanceArgs price_inst;
  std::string price_rule = "engagement";
  std::string price_method = "greedy";
  auto* price = app.add_subcommand("price", "Price of justified representation");
  add_instance_options(price, price_inst);
  price->add_option("--rule", price_rule)->check(CLI::IsMember(rules))->capture_default_str();
  price->add_option("--method", price_method)
      ->check(CLI::IsMember({"exact", "greedy"}))
      ->capture_default_str();

  InstanceArgs report_inst;
  std::string report_items;
  std::string report_rule;
  auto* report = app.add_subcommand("report", "Users left unrepresented by a committee");
  add_instance_options(report, report_inst);
  report->add_option("--items", report_items, "Committee item ids")->required();
  report->add_option("--rule", report_rule, "Label recorded in the report");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Price sweep over polarized Mallows mixtures");
  simulate->add_option("--phi", sim.phi, "Dispersion grid start:stop:step")->capture_default_str();
  simulate->add_option("--rule", sim.rule)->check(CLI::IsMember({"engagement", "mda", "product"}))
      ->capture_default_str();
  simulate->add_option("--n", sim.config.n)->capture_default_str();
  simulate->add_option("--m", sim.config.m)->capture_default_str();
  simulate->add_option("--k", sim.config.k)->capture_default_str();
  simulate->add_option("--tau", sim.config.tau)->capture_default_str();
  simulate->add_option("--sims", sim.config.sims, "Instances per grid point")->capture_default_str();
  simulate->add_option("--delta", sim.config.delta)->capture_default_str();
  simulate->add_option("--threads", sim.config.threads, "0 = all cores")->capture_default_str();
  simulate->add_flag("--full", sim.full, "1000 instances per point on a 0.01 grid");
  simulate->add_option("--out", sim.out, "CSV path (default stdout)");
  simulate->add_option("--svg", sim.svg, "Also write an SVG plot");

  ConstructArgs con;
  auto* construct = app.add_subcommand("construct", "Generate a worst-case instance");
  construct->add_option("kind", con.kind)->required()->check(CLI::IsMember({"prop41", "thm42", "thm51"}));
  construct->add_option("--n", con.n);
  construct->add_option("--k", con.k)->required();
  construct->add_option("--gamma", con.gamma);
  construct->add_option("--group-size", con.group_size)->capture_default_str();
  construct->add_option("--epsilon", con.epsilon)->capture_default_str();
  construct->add_option("--c", con.c)->capture_default_str();
  construct->add_option("--out", con.out_dir, "Directory for CSV and JSON files (default: JSON to stdout)");

  FetchArgs fet;
  auto* fetch = app.add_subcommand("fetch", "Download dataset files into the cache");
  fetch->add_option("--manifest", fet.manifest, "Lines of: name url [sha256]");
  fetch->add_option("--url", fet.urls, "Extra file URL (repeatable)");
  fetch->add_option("--cache-dir", fet.cache_dir, "Defaults to $JRANK_CACHE_DIR or ~/.cache/jrank");
  fetch->add_option("--timeout", fet.timeout, "Seconds per file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "jrank: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*select) return run_select(global, select_inst, select_rule, select_method, out);
    if (*verify) return run_verify(global, verify_inst, verify_items, verify_brute, out);
    if (*price) return run_price(global, price_inst, price_rule, price_method, out);
    if (*report) return run_report(global, report_inst, report_items, report_rule, out);
    if (*simulate) return run_simulate(global, sim, out);
    if (*construct) return run_construct(con, out);
    if (*fetch) return run_fetch(global, fet, out);
  } catch (const Error& e) {
    err << "jrank: " << e.what() << '\n';
    return is_validation_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "jrank: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace jrank::cli
