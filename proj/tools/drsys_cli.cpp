#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "drsys/description.hpp"
#include "drsys/entropy.hpp"
#include "drsys/gallery.hpp"
#include "drsys/report.hpp"
#include "drsys/suites.hpp"
#include "drsys/wandering.hpp"

namespace {

using namespace drs;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kInvalid = 2;
constexpr int kBudget = 3;
constexpr int kUnknown = 4;

struct Options {
  std::string system;
  std::string gallery;
  int depth = -1;
  std::optional<std::size_t> n_min, n_max;
  std::vector<double> eps;
  std::vector<double> radii;
  std::optional<std::size_t> horizon_n, horizon_k;
  std::size_t exact_budget = kDefaultBudget;
  bool exact = false;
  std::string out;
  std::uint64_t seed = 7;
  std::string format = "report";
  std::string suite;
  std::size_t random_systems = 200;
  std::size_t draws = 50;
  std::size_t random_maps = 500;
  std::size_t points = 100;
  double tol = 0.05;
};

struct Invalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string source_name(const Options& o) { return o.gallery.empty() ? o.system : "gallery:" + o.gallery; }

GallerySystem load_system(const Options& o) {
  std::string id = o.gallery;
  if (id.empty() && o.system.rfind("gallery:", 0) == 0) id = o.system.substr(8);
  if (!id.empty()) return build_gallery(id, o.depth);
  if (o.system.empty()) throw Invalid("a system is required (--system FILE|gallery:ID or --gallery ID)");
  return materialize(load_description(o.system));
}

json config_echo(const Options& o) {
  json c{{"system", source_name(o)},
         {"depth", o.depth},
         {"eps", o.eps},
         {"radii", o.radii},
         {"exact_budget", o.exact_budget},
         {"exact", o.exact},
         {"format", o.format}};
  if (o.n_min) c["n_min"] = *o.n_min;
  if (o.n_max) c["n_max"] = *o.n_max;
  if (o.horizon_n) c["horizon_n"] = *o.horizon_n;
  if (o.horizon_k) c["horizon_k"] = *o.horizon_k;
  if (!o.suite.empty()) c["suite"] = o.suite;
  return c;
}

RunInfo run_info(const std::string& cmd, const Options& o) { return {cmd, source_name(o), config_echo(o), o.seed}; }

void emit(const Options& o, const json& doc, const std::string& table) {
  const std::string main = o.format == "table" ? table : doc.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << main;
    return;
  }
  write_atomic(o.out, main);
  if (o.format == "report") write_atomic(o.out + ".csv", table);
}

Schedule schedule_for(const Options& o, const GallerySystem& g) {
  if (!o.n_min && !o.n_max && o.eps.empty()) {
    if (g.schedule.empty()) throw Invalid("described systems need --eps and an n range");
    return g.schedule;
  }
  std::vector<double> eps = o.eps;
  if (eps.empty())
    for (auto [n, e] : g.schedule)
      if (std::find(eps.begin(), eps.end(), e) == eps.end()) eps.push_back(e);
  if (eps.empty()) throw Invalid("--eps is required");
  return make_schedule(o.n_min.value_or(2), o.n_max.value_or(8), eps);
}

WanderingPolicy policy_for(const Options& o, const GallerySystem& g) {
  WanderingPolicy p = g.policy;
  if (!o.radii.empty()) p.radii = o.radii;
  if (o.horizon_n) p.n_max = *o.horizon_n;
  if (o.horizon_k) p.k_max = *o.horizon_k;
  return p;
}

int cmd_list(const Options& o) {
  json doc = json::array();
  std::string table = "id,default_depth,min_depth,max_depth,summary\n";
  for (const auto& e : gallery_catalog()) {
    doc.push_back({{"id", e.id},
                   {"summary", e.summary},
                   {"default_depth", e.default_depth},
                   {"min_depth", e.min_depth},
                   {"max_depth", e.max_depth}});
    table += e.id + "," + std::to_string(e.default_depth) + "," + std::to_string(e.min_depth) + "," +
             std::to_string(e.max_depth) + ",\"" + e.summary + "\"\n";
  }
  if (o.format == "table")
    std::cout << table;
  else
    std::cout << doc.dump(2) << "\n";
  return kOk;
}

int cmd_export(const Options& o) {
  auto g = load_system(o);
  auto doc = to_json(describe_gallery(g));
  if (o.out.empty())
    std::cout << doc.dump(2) << "\n";
  else
    write_atomic(o.out, doc.dump(2) + "\n");
  return kOk;
}

int cmd_estimate(const Options& o) {
  auto g = load_system(o);
  auto sched = schedule_for(o, g);
  EstimateOptions opt;
  opt.budget = o.exact_budget;
  opt.require_exact = o.exact;
  auto rep = estimate_entropy(g.system, g.K, sched, opt);
  emit(o, entropy_report_json(rep, run_info("estimate", o)), entropy_table_csv(rep));
  std::cerr << g.id << ": h_estimate = " << rep.h_estimate << "\n";
  return kOk;
}

int cmd_classify(const Options& o) {
  auto g = load_system(o);
  auto policy = policy_for(o, g);
  auto part = partition_omega(g.system, policy);
  emit(o, partition_json(g.system, part, policy, run_info("classify", o)), partition_table_csv(g.system, part));
  std::cerr << g.id << ": omega " << part.omega.size() << ", wandering " << part.wandering.size() << ", unknown "
            << part.unknown.size() << "\n";
  return part.unknown.empty() ? kOk : kUnknown;
}

int cmd_verify(const Options& o) {
  std::vector<CheckRow> rows;
  auto each_system = [&](auto&& run) {
    if (!o.system.empty() || !o.gallery.empty()) {
      run(load_system(o));
      return;
    }
    for (const auto& e : gallery_catalog()) run(build_gallery(e.id));
  };
  auto append = [&](std::vector<CheckRow> more) { rows.insert(rows.end(), more.begin(), more.end()); };
  if (o.suite == "sandwich") {
    append(suite_sandwich(o.random_systems, o.draws, o.seed));
  } else if (o.suite == "preimage-identities") {
    append(suite_preimage_identities(o.random_maps, 10, 5, o.seed));
  } else if (o.suite == "invariance") {
    each_system([&](const GallerySystem& g) { append(suite_invariance(g)); });
  } else if (o.suite == "balls") {
    each_system([&](const GallerySystem& g) { append(suite_balls(g, o.points, o.seed)); });
  } else if (o.suite == "max-decomposition" || o.suite == "concentration") {
    if (o.system.empty() && o.gallery.empty()) throw Invalid(o.suite + " needs --system or --gallery");
    auto g = load_system(o);
    if (o.n_min || o.n_max || !o.eps.empty()) g.schedule = schedule_for(o, g);
    g.policy = policy_for(o, g);
    append(o.suite == "concentration" ? suite_concentration(g, o.tol) : suite_max_decomposition(g, o.tol));
  } else {
    throw Invalid("unknown suite '" + o.suite + "'");
  }
  emit(o, verify_json(rows, run_info("verify", o)), verify_table_csv(rows));
  bool all = true;
  for (const auto& r : rows) {
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.suite << ": " << r.name << " (" << r.detail << ")\n";
    all = all && r.pass;
  }
  for (const auto& r : rows)
    if (r.detail.rfind("refused", 0) == 0) return kUnknown;
  return all ? kOk : kFail;
}

void add_source(CLI::App* c, Options& o) {
  c->add_option("--system", o.system, "System description file, or gallery:ID");
  c->add_option("--gallery", o.gallery, "Gallery system id");
  c->add_option("--depth", o.depth, "Gallery resolution parameter (default per system)");
}

void add_output(CLI::App* c, Options& o) {
  c->add_option("--out", o.out, "Output path (written atomically; report format also writes PATH.csv)");
  c->add_option("--format", o.format, "report | table")->check(CLI::IsMember({"report", "table"}));
  c->add_option("--seed", o.seed, "Seed recorded in the output and used by randomized suites");
}

void add_schedule(CLI::App* c, Options& o) {
  c->add_option("--n-min", o.n_min, "Smallest horizon n");
  c->add_option("--n-max", o.n_max, "Largest horizon n");
  c->add_option("--eps", o.eps, "Radius (repeatable)");
  c->add_option("--exact-budget", o.exact_budget, "Largest component searched exactly");
}

void add_policy(CLI::App* c, Options& o) {
  c->add_option("--radii", o.radii, "Neighbourhood radii, largest first")->delimiter(',');
  c->add_option("--horizon-n", o.horizon_n, "Sweep bound on n");
  c->add_option("--horizon-k", o.horizon_k, "Sweep bound on |k|");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy and nonwandering analysis of partially defined local homeomorphisms"};
  app.require_subcommand(1);
  Options o;

  auto* list = app.add_subcommand("list", "List gallery systems");
  list->add_option("--format", o.format, "report | table")->check(CLI::IsMember({"report", "table"}));

  auto* exp = app.add_subcommand("export", "Write a system-description document");
  add_source(exp, o);
  exp->add_option("--out", o.out, "Output path");

  auto* est = app.add_subcommand("estimate", "Estimate metric entropy over a schedule");
  add_source(est, o);
  add_schedule(est, o);
  est->add_flag("--exact", o.exact, "Refuse (exit 3) instead of falling back to greedy bounds");
  add_output(est, o);

  auto* cls = app.add_subcommand("classify", "Partition the sample into Omega and the wandering set");
  add_source(cls, o);
  add_policy(cls, o);
  add_output(cls, o);

  auto* ver = app.add_subcommand("verify", "Run a property suite");
  ver->add_option("suite", o.suite, "sandwich | preimage-identities | invariance | max-decomposition | concentration | balls")
      ->required();
  add_source(ver, o);
  add_schedule(ver, o);
  add_policy(ver, o);
  add_output(ver, o);
  ver->add_option("--random-systems", o.random_systems, "Random tables for the sandwich suite");
  ver->add_option("--draws", o.draws, "(n, eps) draws per random table");
  ver->add_option("--random-maps", o.random_maps, "Random maps for the preimage-identities suite");
  ver->add_option("--points", o.points, "Sampled centers per system for the balls suite");
  ver->add_option("--tol", o.tol, "Entropy tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (list->parsed()) return cmd_list(o);
    if (exp->parsed()) return cmd_export(o);
    if (est->parsed()) return cmd_estimate(o);
    if (cls->parsed()) return cmd_classify(o);
    return cmd_verify(o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return kBudget;
  } catch (const Invalid& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalid;
  } catch (const SystemError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
