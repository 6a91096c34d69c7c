// Command-line front end for the bellcore library.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bell/catalog.hpp"
#include "bell/equivalence.hpp"
#include "bell/local_polytope.hpp"
#include "bell/qubit.hpp"
#include "bell/robustness.hpp"
#include "bell/search.hpp"
#include "bell/table.hpp"
#include "bell/text_format.hpp"

namespace {

using namespace bell;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNone = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::vector<std::string> names;
  std::vector<std::string> files;
  std::uint64_t seed = 0;
  int restarts = 50;
  std::optional<double> theta; // units of pi
  bool degenerate = false;
  int jobs = 0;
  double tol = 1e-10;
  std::string format = "text";
};

struct SearchArgs {
  int ma = 4, mb = 4;
  int corr_min = -2, corr_max = 2;
  int marg_min = -3;
  std::string mode = "random";
  std::uint64_t samples = 100000;
  bool non_strict = false;
  std::uint64_t cap = 100000000;
  std::string out;
};

std::vector<std::pair<std::string, BellFunctional>> inputs(const Common& c) {
  std::vector<std::pair<std::string, BellFunctional>> out;
  for (const auto& n : c.names) {
    try {
      out.emplace_back(n, catalog_get(n).functional);
    } catch (const LookupError& e) {
      throw UsageError(e.what());
    }
  }
  for (const auto& p : c.files) {
    try {
      out.emplace_back(p, read_functional_file(p));
    } catch (const std::exception& e) {
      throw UsageError(p + ": " + e.what());
    }
  }
  return out;
}

BellFunctional single_input(const Common& c) {
  auto in = inputs(c);
  if (in.size() != 1) throw UsageError("expected exactly one of --name / --file");
  return in.front().second;
}

SeesawOptions seesaw_options(const Common& c) {
  SeesawOptions o;
  o.restarts = c.restarts;
  o.seed = c.seed;
  o.allow_degenerate = c.degenerate;
  o.tol = c.tol;
  return o;
}

double theta_or_quarter(const Common& c) {
  const double t = c.theta.value_or(0.25);
  if (!(t > 0.0) || t > 0.25) throw UsageError("--theta must lie in (0, 0.25] (units of pi)");
  return t * M_PI;
}

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (c.format == a) return;
  throw UsageError("--format " + c.format + " is not supported by this command");
}

std::string fmt(double v, int digits = 7) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json measurement_json(const Measurement& m) {
  switch (m.kind) {
  case Measurement::Kind::always_zero: return "identity";
  case Measurement::Kind::always_one: return "zero";
  case Measurement::Kind::projector: break;
  }
  return json{m.bloch[0], m.bloch[1], m.bloch[2]};
}

json model_json(const QubitModel& m) {
  json a = json::array(), b = json::array();
  for (const auto& x : m.alice) a.push_back(measurement_json(x));
  for (const auto& y : m.bob) b.push_back(measurement_json(y));
  return {{"theta_over_pi", m.theta / M_PI}, {"alice", a}, {"bob", b}};
}

void print_model(const QubitModel& m) {
  auto line = [](const char* who, int i, const Measurement& e) {
    const json j = measurement_json(e);
    if (j.is_string()) {
      std::cout << who << i << "  " << j.get<std::string>() << '\n';
    } else {
      std::cout << who << i << "  " << fmt(e.bloch[0], 6) << ' ' << fmt(e.bloch[1], 6) << ' ' << fmt(e.bloch[2], 6)
                << '\n';
    }
  };
  for (std::size_t x = 0; x < m.alice.size(); ++x) line("A", static_cast<int>(x), m.alice[x]);
  for (std::size_t y = 0; y < m.bob.size(); ++y) line("B", static_cast<int>(y), m.bob[y]);
}

std::string noclick_string(const DeterministicStrategy& s, const Scenario& sc) {
  std::string out;
  for (int x = 0; x < sc.ma; ++x) out += s.alice_zero(x) ? '0' : '1';
  out += ' ';
  for (int y = 0; y < sc.mb; ++y) out += s.bob_zero(y) ? '0' : '1';
  return out;
}

// ---- subcommands ----------------------------------------------------------

int cmd_catalog(const Common& c) {
  require_format(c, {"text", "json", "csv"});
  if (!c.names.empty() || !c.files.empty()) {
    require_format(c, {"text", "json"});
    for (const auto& [label, f] : inputs(c)) {
      if (c.format == "json") std::cout << functional_to_json(f, label).dump() << '\n';
      else std::cout << "# " << label << '\n' << serialize_functional(f);
    }
    return kOk;
  }
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& e : catalog_list()) arr.push_back(functional_to_json(e.functional, e.name));
    std::cout << arr.dump() << '\n';
  } else if (c.format == "csv") {
    std::cout << "name,scenario,bound,primary\n";
    for (const auto& e : catalog_list())
      std::cout << e.name << ',' << to_string(e.native_scenario) << ',' << rational_to_string(e.functional.bound)
                << ',' << (e.primary ? "yes" : "no") << '\n';
  } else {
    for (const auto& e : catalog_list())
      std::cout << e.name << "  " << to_string(e.native_scenario) << "  bound " << rational_to_string(e.functional.bound)
                << (e.primary ? "" : "  (supplementary)") << '\n';
  }
  return kOk;
}

int cmd_bound(const Common& c) {
  require_format(c, {"text", "json"});
  const BellFunctional f = single_input(c);
  const Rational b = local_bound(f);
  if (c.format == "json") std::cout << json{{"local_bound", rational_to_string(b)}}.dump() << '\n';
  else std::cout << rational_to_string(b) << '\n';
  return kOk;
}

int cmd_facet(const Common& c) {
  require_format(c, {"text", "json"});
  const BellFunctional f = single_input(c);
  const FacetReport r = facet_check(f);
  if (c.format == "json") {
    std::cout << json{{"is_tight", r.is_tight},
                      {"local_bound", rational_to_string(r.local_bound)},
                      {"saturating_count", r.saturating_count},
                      {"affine_dim", r.affine_dim},
                      {"ns_dim", r.ns_dim}}
                     .dump()
              << '\n';
  } else {
    std::cout << (r.is_tight ? "facet" : "not a facet") << '\n'
              << "local bound       " << rational_to_string(r.local_bound) << '\n'
              << "saturating points " << r.saturating_count << '\n'
              << "affine dimension  " << r.affine_dim << " of " << r.ns_dim << '\n';
  }
  return r.is_tight ? kOk : kNone;
}

int cmd_canon(const Common& c) {
  require_format(c, {"text", "json"});
  const BellFunctional g = canonical_form(single_input(c));
  if (c.format == "json") std::cout << functional_to_json(g).dump() << '\n';
  else std::cout << serialize_functional(g);
  return kOk;
}

int cmd_equiv(const Common& c) {
  require_format(c, {"text", "json"});
  const auto in = inputs(c);
  if (in.size() != 2) throw UsageError("equiv needs exactly two functionals");
  if (!(in[0].second.scenario == in[1].second.scenario)) throw UsageError("functionals live in different scenarios");
  const bool eq = equivalent(in[0].second, in[1].second);
  if (c.format == "json") std::cout << json{{"equivalent", eq}}.dump() << '\n';
  else std::cout << (eq ? "equivalent" : "not equivalent") << '\n';
  return eq ? kOk : kNone;
}

int cmd_symmetric(const Common& c) {
  require_format(c, {"text", "json"});
  const BellFunctional f = single_input(c);
  if (f.scenario.ma != f.scenario.mb) throw UsageError("symmetric needs equal setting counts");
  const auto s = symmetric_representative(f);
  if (c.format == "json") std::cout << (s ? functional_to_json(*s) : json(nullptr)).dump() << '\n';
  else std::cout << (s ? serialize_functional(*s) : std::string("none\n"));
  return s ? kOk : kNone;
}

int cmd_qmax(const Common& c) {
  require_format(c, {"text", "json"});
  const BellFunctional f = single_input(c);
  SeesawOptions o = seesaw_options(c);
  if (c.theta) o.theta = theta_or_quarter(c);
  const QuantumResult q = seesaw_maximize(f, o);
  if (c.format == "json") {
    std::cout << json{{"value", q.value},
                      {"violation", q.violation},
                      {"theta_max_over_pi", q.theta_max / M_PI},
                      {"model", model_json(q.model)}}
                     .dump()
              << '\n';
  } else {
    std::cout << "value      " << fmt(q.value) << '\n'
              << "violation  " << fmt(q.violation) << '\n'
              << "theta/pi   " << fmt(q.theta_max / M_PI) << '\n';
    print_model(q.model);
  }
  return q.violation > 1e-9 ? kOk : kNone;
}

int cmd_noise(const Common& c) {
  require_format(c, {"text", "json"});
  const BellFunctional f = single_input(c);
  const auto r = noise_threshold(f, theta_or_quarter(c), seesaw_options(c));
  if (c.format == "json") {
    std::cout << (r ? json{{"w", r->w_threshold}, {"theta_over_pi", r->theta / M_PI}, {"model", model_json(r->model)}}
                    : json(nullptr))
                     .dump()
              << '\n';
  } else if (r) {
    std::cout << "w          " << fmt(r->w_threshold) << '\n' << "theta/pi   " << fmt(r->theta / M_PI) << '\n';
  } else {
    std::cout << "none\n";
  }
  return r ? kOk : kNone;
}

EtaOptions eta_options(const Common& c) {
  EtaOptions eo;
  eo.seesaw = seesaw_options(c);
  return eo;
}

int cmd_eta(const Common& c) {
  require_format(c, {"text", "json"});
  const BellFunctional f = single_input(c);
  const auto r = eta_threshold_symmetric(f, theta_or_quarter(c), eta_options(c));
  if (c.format == "json") {
    std::cout << (r ? json{{"eta", r->eta},
                           {"noclick", noclick_string(r->noclick, f.scenario)},
                           {"model", model_json(r->model)}}
                    : json(nullptr))
                     .dump()
              << '\n';
  } else if (r) {
    std::cout << "eta        " << fmt(r->eta, 6) << '\n'
              << "no-click   " << noclick_string(r->noclick, f.scenario) << '\n';
  } else {
    std::cout << "none\n";
  }
  return r ? kOk : kNone;
}

int cmd_eta_asym(const Common& c) {
  const BellFunctional f = single_input(c);
  std::vector<double> grid = default_sweep_grid();
  if (c.theta) {
    theta_or_quarter(c);
    grid = {*c.theta};
  }
  const auto sweep = eta_asymmetric_sweep(f, grid, eta_options(c));
  bool any = false;
  for (const auto& p : sweep) any = any || p.eta_b.has_value();
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& p : sweep)
      arr.push_back({{"theta_over_pi", p.theta_over_pi}, {"eta_b", p.eta_b ? json(*p.eta_b) : json(nullptr)}});
    std::cout << arr.dump() << '\n';
  } else {
    const char* sep = c.format == "csv" ? "," : "  ";
    std::cout << "theta_over_pi" << sep << "eta_b\n";
    for (const auto& p : sweep)
      std::cout << fmt(p.theta_over_pi, 6) << sep << (p.eta_b ? fmt(*p.eta_b, 6) : "none") << '\n';
  }
  return any ? kOk : kNone;
}

int cmd_search(const Common& c, const SearchArgs& a) {
  require_format(c, {"text", "json"});
  SearchConfig cfg;
  try {
    cfg.scenario = Scenario(a.ma, a.mb);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  cfg.corr_min = a.corr_min;
  cfg.corr_max = a.corr_max;
  cfg.marg_min = a.marg_min;
  cfg.mode = a.mode == "exhaustive" ? SearchMode::exhaustive : SearchMode::random;
  cfg.sample_count = a.samples;
  cfg.seed = c.seed;
  cfg.strict_first = !a.non_strict;
  cfg.exhaustive_cap = a.cap;
  SearchReport r;
  try {
    r = run_search(cfg);
  } catch (const StructuralError& e) {
    throw UsageError(e.what());
  } catch (const CapacityError& e) {
    throw UsageError(e.what());
  }
  if (!a.out.empty()) write_search_outputs(r, a.out);
  if (c.format == "json") {
    std::cout << search_report_to_json(r).dump() << '\n';
  } else {
    std::cout << "candidates tested " << r.candidates_tested << '\n'
              << "tight candidates  " << r.tight_count << " (" << r.trivial_count << " trivial)\n"
              << "facet classes     " << r.facets_found.size() << " (" << r.new_count << " new)\n";
    for (const auto& ff : r.facets_found)
      std::cout << "  " << (ff.known_as ? *ff.known_as : std::string("new")) << "  hits " << ff.hits
                << "  first candidate " << ff.first_index << '\n';
  }
  return r.facets_found.empty() ? kNone : kOk;
}

int cmd_table1(const Common& c) {
  require_format(c, {"text", "json", "csv"});
  TableOptions t;
  t.seed = c.seed;
  t.restarts = c.restarts;
  t.tol = c.tol;
  const auto rows = compute_table(t);
  if (c.format == "csv") std::cout << table_csv(rows);
  else if (c.format == "json") std::cout << table_json(rows).dump() << '\n';
  else std::cout << table_text(rows);
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool needs_input) {
  if (needs_input) {
    sub->add_option("--name", c.names, "Catalog entry (repeatable)");
    sub->add_option("--file", c.files, "Functional in text or JSON format (repeatable)");
  }
  sub->add_option("--seed", c.seed, "Random seed");
  sub->add_option("--restarts", c.restarts, "See-saw restarts")->check(CLI::PositiveNumber);
  sub->add_option("--theta", c.theta, "Schmidt angle in units of pi");
  sub->add_flag("--degenerate", c.degenerate, "Allow identity and zero effects");
  sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::NonNegativeNumber);
  sub->add_option("--tol", c.tol, "See-saw convergence tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-outcome Bell inequality toolkit"};
  app.require_subcommand(1);
  Common c;
  SearchArgs sa;

  struct Cmd {
    const char* name;
    const char* help;
    bool input;
  };
  const Cmd cmds[] = {
      {"catalog", "List catalog entries or print one", true},
      {"bound", "Local bound", true},
      {"facet", "Exact facet test", true},
      {"canon", "Canonical form under relabelings", true},
      {"equiv", "Test two functionals for equivalence", true},
      {"symmetric", "Party-symmetric representative", true},
      {"qmax", "Maximal qubit violation (see-saw)", true},
      {"noise", "Critical Werner visibility", true},
      {"eta", "Symmetric detection-efficiency threshold", true},
      {"eta-asym", "Bob's threshold efficiency with perfect Alice detection", true},
      {"search", "Search for new facets", false},
      {"table1", "Summary table for the whole catalog", false},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& cmd : cmds) {
    CLI::App* s = app.add_subcommand(cmd.name, cmd.help);
    add_common(s, c, cmd.input);
    subs[cmd.name] = s;
  }
  CLI::App* search = subs["search"];
  search->add_option("--ma", sa.ma, "Alice settings");
  search->add_option("--mb", sa.mb, "Bob settings");
  search->add_option("--corr-min", sa.corr_min, "Smallest correlation coefficient");
  search->add_option("--corr-max", sa.corr_max, "Largest correlation coefficient");
  search->add_option("--marg-min", sa.marg_min, "Smallest marginal coefficient");
  search->add_option("--mode", sa.mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
  search->add_option("--samples", sa.samples, "Candidates in random mode")->check(CLI::PositiveNumber);
  search->add_flag("--non-strict", sa.non_strict, "Allow M(0) == M(1)");
  search->add_option("--cap", sa.cap, "Largest exhaustive candidate space");
  search->add_option("--out", sa.out, "Directory for report.json and per-class .bell files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (c.jobs > 0) set_worker_count(c.jobs);
  try {
    if (subs["catalog"]->parsed()) return cmd_catalog(c);
    if (subs["bound"]->parsed()) return cmd_bound(c);
    if (subs["facet"]->parsed()) return cmd_facet(c);
    if (subs["canon"]->parsed()) return cmd_canon(c);
    if (subs["equiv"]->parsed()) return cmd_equiv(c);
    if (subs["symmetric"]->parsed()) return cmd_symmetric(c);
    if (subs["qmax"]->parsed()) return cmd_qmax(c);
    if (subs["noise"]->parsed()) return cmd_noise(c);
    if (subs["eta"]->parsed()) return cmd_eta(c);
    if (subs["eta-asym"]->parsed()) return cmd_eta_asym(c);
    if (subs["search"]->parsed()) return cmd_search(c, sa);
    if (subs["table1"]->parsed()) return cmd_table1(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
