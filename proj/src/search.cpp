#include "bell/search.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "bell/catalog.hpp"
#include "bell/equivalence.hpp"
#include "bell/local_polytope.hpp"
#include "bell/text_format.hpp"

namespace bell {

void SearchConfig::validate() const {
  if (corr_min > corr_max) throw StructuralError("empty correlation range");
  if (marg_min > 0) throw StructuralError("marg_min must be <= 0");
  if (mode == SearchMode::random && sample_count < 1) throw StructuralError("random mode needs sample_count >= 1");
}

std::vector<std::vector<Coeff>> marginal_sequences(int m, int marg_min, bool strict_first) {
  std::vector<std::vector<Coeff>> out;
  std::vector<Coeff> cur(static_cast<std::size_t>(m), 0);
  // Fill positions 0..m-2 with a non-decreasing sequence in [marg_min, 0].
  auto rec = [&](auto&& self, int pos, Coeff lo) -> void {
    if (pos == m - 1) {
      out.push_back(cur);
      return;
    }
    for (Coeff v = lo; v <= 0; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      Coeff next = v;
      if (pos == 0 && strict_first) next = v + 1;
      if (pos == m - 2 && next > 0) continue;
      self(self, pos + 1, next);
    }
  };
  if (m == 1) return {{0}};
  rec(rec, 0, marg_min);
  return out;
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

struct Space {
  std::vector<std::vector<Coeff>> alice, bob;
  std::uint64_t width = 0; // corr_max - corr_min + 1
  std::uint64_t corr_count = 0;
  std::uint64_t total = 0;
};

Space make_space(const SearchConfig& cfg) {
  Space sp;
  sp.alice = marginal_sequences(cfg.scenario.ma, cfg.marg_min, cfg.strict_first);
  sp.bob = marginal_sequences(cfg.scenario.mb, cfg.marg_min, cfg.strict_first);
  sp.width = static_cast<std::uint64_t>(cfg.corr_max - cfg.corr_min + 1);
  sp.corr_count = 1;
  for (int i = 0; i < cfg.scenario.ma * cfg.scenario.mb; ++i) sp.corr_count = sat_mul(sp.corr_count, sp.width);
  sp.total = sat_mul(sat_mul(sp.alice.size(), sp.bob.size()), sp.corr_count);
  return sp;
}

BellFunctional build(const SearchConfig& cfg, const Space& sp, std::uint64_t index) {
  BellFunctional f(cfg.scenario);
  const auto n = static_cast<std::size_t>(cfg.scenario.ma * cfg.scenario.mb);
  if (cfg.mode == SearchMode::exhaustive) {
    for (std::size_t k = 0; k < n; ++k) {
      f.corr[k] = cfg.corr_min + static_cast<Coeff>(index % sp.width);
      index /= sp.width;
    }
    f.bob_marg = sp.bob[index % sp.bob.size()];
    index /= sp.bob.size();
    f.alice_marg = sp.alice[index];
  } else {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick_a(0, sp.alice.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_b(0, sp.bob.size() - 1);
    std::uniform_int_distribution<Coeff> pick_c(cfg.corr_min, cfg.corr_max);
    f.alice_marg = sp.alice[pick_a(rng)];
    f.bob_marg = sp.bob[pick_b(rng)];
    for (std::size_t k = 0; k < n; ++k) f.corr[k] = pick_c(rng);
  }
  f.bound = local_bound(f);
  return f;
}

struct LexLess {
  bool operator()(const BellFunctional& a, const BellFunctional& b) const { return lex_less(a, b); }
};

} // namespace

std::uint64_t candidate_count(const SearchConfig& cfg) {
  cfg.validate();
  return make_space(cfg).total;
}

std::uint64_t candidates_to_test(const SearchConfig& cfg) {
  return cfg.mode == SearchMode::random ? cfg.sample_count : candidate_count(cfg);
}

BellFunctional candidate_at(const SearchConfig& cfg, std::uint64_t index) {
  cfg.validate();
  const Space sp = make_space(cfg);
  if (cfg.mode == SearchMode::exhaustive && index >= sp.total) throw std::out_of_range("candidate index out of range");
  return build(cfg, sp, index);
}

BellFunctional primitive_form(const BellFunctional& f) {
  BigInt g = 0;
  auto fold = [&](Coeff v) { g = boost::multiprecision::gcd(g, BigInt(v < 0 ? -v : v)); };
  for (Coeff v : f.alice_marg) fold(v);
  for (Coeff v : f.bob_marg) fold(v);
  for (Coeff v : f.corr) fold(v);
  // The bound may be fractional; only divide when it stays a multiple.
  g = boost::multiprecision::gcd(g, BigInt(abs(numerator(f.bound))));
  if (denominator(f.bound) != 1 || g <= 1) return f;
  const auto d = static_cast<Coeff>(g);
  BellFunctional out = f;
  for (Coeff& v : out.alice_marg) v /= d;
  for (Coeff& v : out.bob_marg) v /= d;
  for (Coeff& v : out.corr) v /= d;
  out.bound = f.bound / d;
  return out;
}

BellFunctional positivity_functional(const Scenario& s) {
  BellFunctional f(s);
  f.c(0, 0) = -1;
  f.bound = 0;
  return f;
}

std::optional<BellFunctional> lift_to(const BellFunctional& f, const Scenario& s) {
  BellFunctional src = f;
  if (f.scenario.ma > s.ma || f.scenario.mb > s.mb) {
    if (f.scenario.mb > s.ma || f.scenario.ma > s.mb) return std::nullopt;
    src = BellFunctional(Scenario(f.scenario.mb, f.scenario.ma));
    src.alice_marg = f.bob_marg;
    src.bob_marg = f.alice_marg;
    src.bound = f.bound;
    for (int x = 0; x < f.scenario.ma; ++x)
      for (int y = 0; y < f.scenario.mb; ++y) src.c(y, x) = f.c(x, y);
  }
  BellFunctional out(s);
  out.bound = src.bound;
  for (int x = 0; x < src.scenario.ma; ++x) out.alice_marg[static_cast<std::size_t>(x)] = src.alice_marg[static_cast<std::size_t>(x)];
  for (int y = 0; y < src.scenario.mb; ++y) out.bob_marg[static_cast<std::size_t>(y)] = src.bob_marg[static_cast<std::size_t>(y)];
  for (int x = 0; x < src.scenario.ma; ++x)
    for (int y = 0; y < src.scenario.mb; ++y) out.c(x, y) = src.c(x, y);
  return out;
}

SearchReport run_search(const SearchConfig& cfg) {
  cfg.validate();
  const Space sp = make_space(cfg);
  if (cfg.mode == SearchMode::exhaustive && sp.total > cfg.exhaustive_cap)
    throw CapacityError("exhaustive search over " + std::to_string(sp.total) + " candidates exceeds the cap of " +
                        std::to_string(cfg.exhaustive_cap) + "; use random mode");
  const std::uint64_t total = cfg.mode == SearchMode::exhaustive ? sp.total : cfg.sample_count;

  const BellFunctional trivial = canonical_form(positivity_functional(cfg.scenario), Exec::serial);
  std::map<BellFunctional, std::string, LexLess> known;
  for (const auto& e : catalog_list()) {
    if (auto lifted = lift_to(e.functional, cfg.scenario))
      known.emplace(canonical_form(primitive_form(*lifted), Exec::serial), e.name);
  }

  struct Outcome {
    bool tight = false;
    BellFunctional primitive;
    BellFunctional canonical;
  };

  SearchReport rep;
  rep.scenario = cfg.scenario;
  std::map<BellFunctional, std::size_t, LexLess> seen;

  constexpr std::uint64_t chunk = 4096;
  std::vector<Outcome> out;
  for (std::uint64_t start = 0; start < total; start += chunk) {
    const std::uint64_t end = std::min(total, start + chunk);
    out.assign(end - start, Outcome{});
    auto one = [&](std::uint64_t i) {
      const BellFunctional f = build(cfg, sp, start + i);
      if (!facet_check(f).is_tight) return;
      Outcome& o = out[i];
      o.tight = true;
      o.primitive = primitive_form(f);
      o.canonical = canonical_form(o.primitive, Exec::serial);
    };
    const auto n = static_cast<std::int64_t>(end - start);
    if (cfg.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
      for (std::int64_t i = 0; i < n; ++i) one(static_cast<std::uint64_t>(i));
    } else {
      for (std::int64_t i = 0; i < n; ++i) one(static_cast<std::uint64_t>(i));
    }

    for (std::uint64_t i = 0; i < end - start; ++i) {
      Outcome& o = out[i];
      if (!o.tight) continue;
      ++rep.tight_count;
      if (o.canonical == trivial) {
        ++rep.trivial_count;
        continue;
      }
      auto [it, inserted] = seen.emplace(o.canonical, rep.facets_found.size());
      if (!inserted) {
        ++rep.facets_found[it->second].hits;
        continue;
      }
      FoundFacet ff;
      ff.functional = std::move(o.primitive);
      ff.canonical = std::move(o.canonical);
      ff.first_index = start + i;
      ff.hits = 1;
      if (auto k = known.find(ff.canonical); k != known.end()) ff.known_as = k->second;
      else ++rep.new_count;
      rep.facets_found.push_back(std::move(ff));
    }
  }
  rep.candidates_tested = total;
  return rep;
}

nlohmann::json search_report_to_json(const SearchReport& r) {
  nlohmann::json facets = nlohmann::json::array();
  for (const auto& f : r.facets_found) {
    facets.push_back({{"functional", functional_to_json(f.functional)},
                      {"canonical", functional_to_json(f.canonical)},
                      {"known_as", f.known_as ? nlohmann::json(*f.known_as) : nlohmann::json(nullptr)},
                      {"first_index", f.first_index},
                      {"hits", f.hits}});
  }
  return {{"scenario", to_string(r.scenario)},
          {"candidates_tested", r.candidates_tested},
          {"tight_count", r.tight_count},
          {"trivial_count", r.trivial_count},
          {"new_count", r.new_count},
          {"facets_found", facets}};
}

void write_search_outputs(const SearchReport& r, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream(fs::path(dir) / "report.json") << search_report_to_json(r).dump(2) << '\n';
  int fresh = 0;
  for (std::size_t i = 0; i < r.facets_found.size(); ++i) {
    const auto& f = r.facets_found[i];
    const std::string stem = f.known_as ? *f.known_as : "new_" + std::to_string(++fresh);
    std::ofstream(fs::path(dir) / ("class_" + std::to_string(i) + "_" + stem + ".bell"))
        << serialize_functional(f.canonical);
  }
}

} // namespace bell
