#include "bell/local_polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <omp.h>

namespace bell {

void set_worker_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int worker_count() { return omp_get_max_threads(); }

int ns_dimension(const Scenario& s) { return s.ma + s.mb + s.ma * s.mb; }

Coeff local_bound_int(const BellFunctional& f) {
  const int ma = f.scenario.ma;
  const int mb = f.scenario.mb;
  Coeff best = std::numeric_limits<Coeff>::min();
  std::vector<Coeff> col(static_cast<std::size_t>(mb));
  const std::uint64_t n = std::uint64_t{1} << ma;
  for (std::uint64_t mask = 0; mask < n; ++mask) {
    Coeff v = 0;
    for (int y = 0; y < mb; ++y) col[static_cast<std::size_t>(y)] = f.bob_marg[static_cast<std::size_t>(y)];
    for (int x = 0; x < ma; ++x) {
      if (!((mask >> x) & 1u)) continue;
      v += f.alice_marg[static_cast<std::size_t>(x)];
      const Coeff* row = f.corr.data() + x * mb;
      for (int y = 0; y < mb; ++y) col[static_cast<std::size_t>(y)] += row[y];
    }
    for (Coeff cy : col) v += std::max<Coeff>(0, cy);
    best = std::max(best, v);
  }
  return best;
}

Rational local_bound(const BellFunctional& f) {
  f.validate();
  return Rational(local_bound_int(f));
}

Rational local_bound_bruteforce(const BellFunctional& f) {
  f.validate();
  if (f.scenario.ma + f.scenario.mb > 24) {
    throw CapacityError("brute-force enumeration limited to ma + mb <= 24, scenario is " + to_string(f.scenario));
  }
  Coeff best = std::numeric_limits<Coeff>::min();
  for (std::uint32_t a = 0; a < (1u << f.scenario.ma); ++a)
    for (std::uint32_t b = 0; b < (1u << f.scenario.mb); ++b)
      best = std::max(best, evaluate_strategy(f, DeterministicStrategy{a, b}));
  return Rational(best);
}

std::vector<DeterministicStrategy> saturating_strategies(const BellFunctional& f) {
  f.validate();
  std::vector<DeterministicStrategy> out;
  if (boost::multiprecision::denominator(f.bound) != 1) return out;
  const BigInt target_big = boost::multiprecision::numerator(f.bound);
  if (target_big > std::numeric_limits<Coeff>::max() || target_big < std::numeric_limits<Coeff>::min()) return out;
  const auto target = target_big.convert_to<Coeff>();

  const int ma = f.scenario.ma;
  const int mb = f.scenario.mb;
  std::vector<Coeff> col(static_cast<std::size_t>(mb));
  for (std::uint32_t mask = 0; mask < (1u << ma); ++mask) {
    Coeff v = 0;
    for (int y = 0; y < mb; ++y) col[static_cast<std::size_t>(y)] = f.bob_marg[static_cast<std::size_t>(y)];
    for (int x = 0; x < ma; ++x) {
      if (!((mask >> x) & 1u)) continue;
      v += f.alice_marg[static_cast<std::size_t>(x)];
      for (int y = 0; y < mb; ++y) col[static_cast<std::size_t>(y)] += f.c(x, y);
    }
    // Bob's best response per setting; zero-valued columns are free bits.
    Coeff best = v;
    std::uint32_t forced = 0;
    std::uint32_t free = 0;
    for (int y = 0; y < mb; ++y) {
      const Coeff cy = col[static_cast<std::size_t>(y)];
      if (cy > 0) {
        best += cy;
        forced |= 1u << y;
      } else if (cy == 0) {
        free |= 1u << y;
      }
    }
    if (best < target) continue;
    if (best > target) {
      // Bound below this row's maximum: Bob's settings no longer decouple.
      if (mb > 24) throw CapacityError("saturating_strategies: bound below the local maximum needs mb <= 24");
      for (std::uint32_t b = 0; b < (1u << mb); ++b) {
        Coeff t = v;
        for (int y = 0; y < mb; ++y)
          if ((b >> y) & 1u) t += col[static_cast<std::size_t>(y)];
        if (t == target) out.push_back(DeterministicStrategy{mask, b});
      }
      continue;
    }
    // enumerate all subsets of the free bits
    std::uint32_t sub = 0;
    do {
      out.push_back(DeterministicStrategy{mask, forced | sub});
      sub = (sub - free) & free;
    } while (sub != 0);
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    return l.alice != r.alice ? l.alice < r.alice : l.bob < r.bob;
  });
  return out;
}

namespace {

template <class Int, class Wide>
int bareiss_rank(std::vector<std::vector<Int>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Wide piv = static_cast<Wide>(m[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Wide lead = static_cast<Wide>(m[i][c]);
      for (std::size_t j = c + 1; j < cols; ++j) {
        const Wide num = piv * static_cast<Wide>(m[i][j]) - lead * static_cast<Wide>(m[r][j]);
        m[i][j] = static_cast<Int>(num / static_cast<Wide>(prev));
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

} // namespace

int exact_rank(std::vector<std::vector<Coeff>> rows) {
  if (rows.empty()) return 0;
  // Every intermediate Bareiss entry is a minor, bounded by the product of
  // row norms (Hadamard). Below 2^62 the int64/int128 path is exact.
  double log2_bound = 0.0;
  std::vector<double> norms;
  for (const auto& r : rows) {
    double s = 0.0;
    for (Coeff v : r) s += static_cast<double>(v) * static_cast<double>(v);
    if (s > 0) norms.push_back(0.5 * std::log2(s));
  }
  std::sort(norms.rbegin(), norms.rend());
  const std::size_t k = std::min(norms.size(), rows[0].size());
  for (std::size_t i = 0; i < k; ++i) log2_bound += std::max(0.0, norms[i]);
  if (log2_bound < 61.0) return bareiss_rank<Coeff, __int128>(std::move(rows));

  std::vector<std::vector<BigInt>> big(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) big[i].assign(rows[i].begin(), rows[i].end());
  return bareiss_rank<BigInt, BigInt>(std::move(big));
}

namespace {

std::vector<Coeff> vertex_vector(const Scenario& sc, const DeterministicStrategy& s) {
  std::vector<Coeff> v;
  v.reserve(static_cast<std::size_t>(ns_dimension(sc)));
  for (int x = 0; x < sc.ma; ++x) v.push_back(s.alice_zero(x) ? 1 : 0);
  for (int y = 0; y < sc.mb; ++y) v.push_back(s.bob_zero(y) ? 1 : 0);
  for (int x = 0; x < sc.ma; ++x)
    for (int y = 0; y < sc.mb; ++y) v.push_back(s.alice_zero(x) && s.bob_zero(y) ? 1 : 0);
  return v;
}

} // namespace

FacetReport facet_check(const BellFunctional& f) {
  FacetReport rep;
  rep.local_bound = local_bound(f);
  rep.ns_dim = ns_dimension(f.scenario);
  const auto sat = saturating_strategies(f);
  rep.saturating_count = sat.size();
  if (sat.empty()) {
    rep.affine_dim = -1;
    rep.is_tight = false;
    return rep;
  }
  const auto ref = vertex_vector(f.scenario, sat[0]);
  std::vector<std::vector<Coeff>> diffs;
  diffs.reserve(sat.size() - 1);
  for (std::size_t i = 1; i < sat.size(); ++i) {
    auto v = vertex_vector(f.scenario, sat[i]);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= ref[k];
    diffs.push_back(std::move(v));
  }
  rep.affine_dim = exact_rank(std::move(diffs));
  rep.is_tight = rep.local_bound == f.bound && rep.affine_dim == rep.ns_dim - 1;
  return rep;
}

std::vector<Coeff> local_bounds(const std::vector<BellFunctional>& fs, Exec exec) {
  std::vector<Coeff> out(fs.size());
  const auto n = static_cast<std::int64_t>(fs.size());
  if (exec == Exec::serial) {
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = local_bound_int(fs[static_cast<std::size_t>(i)]);
    return out;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = local_bound_int(fs[static_cast<std::size_t>(i)]);
  return out;
}

} // namespace bell
