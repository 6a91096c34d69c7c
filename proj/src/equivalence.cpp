#include "bell/equivalence.hpp"

#include <algorithm>
#include <numeric>

namespace bell {

namespace {

struct Dest {
  int party; // 0 = Alice, 1 = Bob
  int index;
  bool flip;
};

std::vector<Dest> label_map(const Transformation& t, const Scenario& s) {
  std::vector<Dest> out;
  const int pa = t.swap_parties ? 1 : 0;
  for (int x = 0; x < s.ma; ++x) out.push_back({pa, t.alice_perm[static_cast<std::size_t>(x)], ((t.alice_flips >> x) & 1u) != 0});
  for (int y = 0; y < s.mb; ++y) out.push_back({1 - pa, t.bob_perm[static_cast<std::size_t>(y)], ((t.bob_flips >> y) & 1u) != 0});
  return out;
}

Transformation from_label_map(const std::vector<Dest>& m, const Scenario& s) {
  Transformation t;
  t.swap_parties = m[0].party == 1;
  for (int x = 0; x < s.ma; ++x) {
    const Dest& d = m[static_cast<std::size_t>(x)];
    t.alice_perm.push_back(d.index);
    if (d.flip) t.alice_flips |= 1u << x;
  }
  for (int y = 0; y < s.mb; ++y) {
    const Dest& d = m[static_cast<std::size_t>(s.ma + y)];
    t.bob_perm.push_back(d.index);
    if (d.flip) t.bob_flips |= 1u << y;
  }
  return t;
}

bool is_permutation_of_range(const std::vector<int>& p, int n) {
  if (p.size() != static_cast<std::size_t>(n)) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : p) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::vector<int> nth_permutation(int n, std::uint64_t k) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  for (int i = n; i >= 1; --i) {
    const std::uint64_t f = factorial(i - 1);
    const auto pick = static_cast<std::size_t>(k / f);
    k %= f;
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

} // namespace

Transformation Transformation::identity(const Scenario& s) {
  Transformation t;
  t.alice_perm.resize(static_cast<std::size_t>(s.ma));
  t.bob_perm.resize(static_cast<std::size_t>(s.mb));
  std::iota(t.alice_perm.begin(), t.alice_perm.end(), 0);
  std::iota(t.bob_perm.begin(), t.bob_perm.end(), 0);
  return t;
}

void validate_transformation(const Transformation& t, const Scenario& s) {
  if (!is_permutation_of_range(t.alice_perm, s.ma) || !is_permutation_of_range(t.bob_perm, s.mb)) {
    throw StructuralError("transformation permutations do not match scenario " + to_string(s));
  }
  if ((s.ma < 32 && (t.alice_flips >> s.ma) != 0) || (s.mb < 32 && (t.bob_flips >> s.mb) != 0)) {
    throw StructuralError("transformation flips name settings outside scenario " + to_string(s));
  }
  if (t.swap_parties && s.ma != s.mb) {
    throw StructuralError("party swap needs equal setting counts, scenario is " + to_string(s));
  }
}

BellFunctional apply_transformation(const BellFunctional& f, const Transformation& t) {
  f.validate();
  validate_transformation(t, f.scenario);
  const int ma = f.scenario.ma;
  const int mb = f.scenario.mb;
  BellFunctional g = f;
  for (int x = 0; x < ma; ++x) {
    if (!((t.alice_flips >> x) & 1u)) continue;
    auto& mx = g.alice_marg[static_cast<std::size_t>(x)];
    g.bound -= mx;
    for (int y = 0; y < mb; ++y) {
      g.bob_marg[static_cast<std::size_t>(y)] += g.c(x, y);
      g.c(x, y) = -g.c(x, y);
    }
    mx = -mx;
  }
  for (int y = 0; y < mb; ++y) {
    if (!((t.bob_flips >> y) & 1u)) continue;
    auto& my = g.bob_marg[static_cast<std::size_t>(y)];
    g.bound -= my;
    for (int x = 0; x < ma; ++x) {
      g.alice_marg[static_cast<std::size_t>(x)] += g.c(x, y);
      g.c(x, y) = -g.c(x, y);
    }
    my = -my;
  }
  BellFunctional h(f.scenario);
  h.bound = g.bound;
  for (int x = 0; x < ma; ++x) h.alice_marg[static_cast<std::size_t>(t.alice_perm[static_cast<std::size_t>(x)])] = g.alice_marg[static_cast<std::size_t>(x)];
  for (int y = 0; y < mb; ++y) h.bob_marg[static_cast<std::size_t>(t.bob_perm[static_cast<std::size_t>(y)])] = g.bob_marg[static_cast<std::size_t>(y)];
  for (int x = 0; x < ma; ++x)
    for (int y = 0; y < mb; ++y) h.c(t.alice_perm[static_cast<std::size_t>(x)], t.bob_perm[static_cast<std::size_t>(y)]) = g.c(x, y);
  if (!t.swap_parties) return h;

  BellFunctional s(Scenario(mb, ma));
  s.bound = h.bound;
  s.alice_marg = h.bob_marg;
  s.bob_marg = h.alice_marg;
  for (int x = 0; x < ma; ++x)
    for (int y = 0; y < mb; ++y) s.c(y, x) = h.c(x, y);
  return s;
}

template <class T>
BasicBehavior<T> relabel_behavior(const BasicBehavior<T>& p, const Transformation& t) {
  validate_transformation(t, p.scenario);
  const int ma = p.scenario.ma;
  const int mb = p.scenario.mb;
  BasicBehavior<T> q = p;
  for (int x = 0; x < ma; ++x) {
    if (!((t.alice_flips >> x) & 1u)) continue;
    q.p_a[static_cast<std::size_t>(x)] = T(1) - q.p_a[static_cast<std::size_t>(x)];
    for (int y = 0; y < mb; ++y) q.joint(x, y) = q.p_b[static_cast<std::size_t>(y)] - q.joint(x, y);
  }
  for (int y = 0; y < mb; ++y) {
    if (!((t.bob_flips >> y) & 1u)) continue;
    q.p_b[static_cast<std::size_t>(y)] = T(1) - q.p_b[static_cast<std::size_t>(y)];
    for (int x = 0; x < ma; ++x) q.joint(x, y) = q.p_a[static_cast<std::size_t>(x)] - q.joint(x, y);
  }
  BasicBehavior<T> r(p.scenario);
  for (int x = 0; x < ma; ++x) r.p_a[static_cast<std::size_t>(t.alice_perm[static_cast<std::size_t>(x)])] = q.p_a[static_cast<std::size_t>(x)];
  for (int y = 0; y < mb; ++y) r.p_b[static_cast<std::size_t>(t.bob_perm[static_cast<std::size_t>(y)])] = q.p_b[static_cast<std::size_t>(y)];
  for (int x = 0; x < ma; ++x)
    for (int y = 0; y < mb; ++y) r.joint(t.alice_perm[static_cast<std::size_t>(x)], t.bob_perm[static_cast<std::size_t>(y)]) = q.joint(x, y);
  if (!t.swap_parties) return r;

  BasicBehavior<T> s(Scenario(mb, ma));
  s.p_a = r.p_b;
  s.p_b = r.p_a;
  for (int x = 0; x < ma; ++x)
    for (int y = 0; y < mb; ++y) s.joint(y, x) = r.joint(x, y);
  return s;
}

template BasicBehavior<double> relabel_behavior(const BasicBehavior<double>&, const Transformation&);
template BasicBehavior<Rational> relabel_behavior(const BasicBehavior<Rational>&, const Transformation&);

Transformation compose(const Transformation& second, const Transformation& first) {
  const Scenario s(static_cast<int>(first.alice_perm.size()), static_cast<int>(first.bob_perm.size()));
  validate_transformation(first, s);
  validate_transformation(second, s);
  const auto m1 = label_map(first, s);
  const auto m2 = label_map(second, s);
  std::vector<Dest> out;
  for (const Dest& d1 : m1) {
    const Dest& d2 = m2[static_cast<std::size_t>(d1.party == 0 ? d1.index : s.ma + d1.index)];
    out.push_back({d2.party, d2.index, d1.flip != d2.flip});
  }
  return from_label_map(out, s);
}

Transformation inverse(const Transformation& t) {
  const Scenario s(static_cast<int>(t.alice_perm.size()), static_cast<int>(t.bob_perm.size()));
  validate_transformation(t, s);
  const auto m = label_map(t, s);
  std::vector<Dest> out(m.size());
  for (std::size_t l = 0; l < m.size(); ++l) {
    const int party = l < static_cast<std::size_t>(s.ma) ? 0 : 1;
    const int index = party == 0 ? static_cast<int>(l) : static_cast<int>(l) - s.ma;
    const Dest& d = m[l];
    out[static_cast<std::size_t>(d.party == 0 ? d.index : s.ma + d.index)] = {party, index, d.flip};
  }
  return from_label_map(out, s);
}

std::uint64_t group_order(const Scenario& s) {
  std::uint64_t n = factorial(s.ma) * factorial(s.mb) << (s.ma + s.mb);
  return s.ma == s.mb ? 2 * n : n;
}

Transformation transformation_at(const Scenario& s, std::uint64_t index) {
  if (index >= group_order(s)) throw StructuralError("group element index out of range");
  Transformation t;
  if (s.ma == s.mb) {
    t.swap_parties = (index & 1u) != 0;
    index >>= 1;
  }
  t.alice_flips = static_cast<std::uint32_t>(index & ((std::uint64_t{1} << s.ma) - 1));
  index >>= s.ma;
  t.bob_flips = static_cast<std::uint32_t>(index & ((std::uint64_t{1} << s.mb) - 1));
  index >>= s.mb;
  const std::uint64_t fa = factorial(s.ma);
  t.alice_perm = nth_permutation(s.ma, index % fa);
  t.bob_perm = nth_permutation(s.mb, index / fa);
  return t;
}

bool lex_less(const BellFunctional& a, const BellFunctional& b) {
  if (a.bound != b.bound) return a.bound < b.bound;
  if (a.alice_marg != b.alice_marg) return a.alice_marg < b.alice_marg;
  if (a.bob_marg != b.bob_marg) return a.bob_marg < b.bob_marg;
  return a.corr < b.corr;
}

BellFunctional canonical_form_reference(const BellFunctional& f) {
  f.validate();
  BellFunctional best = f;
  const std::uint64_t n = group_order(f.scenario);
  for (std::uint64_t i = 0; i < n; ++i) {
    BellFunctional g = apply_transformation(f, transformation_at(f.scenario, i));
    if (lex_less(g, best)) best = std::move(g);
  }
  return best;
}

namespace {

// Flat integer table used inside the orbit scan; bound is kept as an
// integer shift relative to the input bound.
struct Table {
  int ma = 0;
  int mb = 0;
  std::vector<Coeff> a, b, c;
  Coeff shift = 0; // bound' = bound - shift
};

Table to_table(const BellFunctional& f, bool transpose) {
  Table t;
  if (!transpose) {
    t.ma = f.scenario.ma;
    t.mb = f.scenario.mb;
    t.a = f.alice_marg;
    t.b = f.bob_marg;
    t.c = f.corr;
    return t;
  }
  t.ma = f.scenario.mb;
  t.mb = f.scenario.ma;
  t.a = f.bob_marg;
  t.b = f.alice_marg;
  t.c.resize(f.corr.size());
  for (int x = 0; x < f.scenario.ma; ++x)
    for (int y = 0; y < f.scenario.mb; ++y) t.c[static_cast<std::size_t>(y * f.scenario.ma + x)] = f.c(x, y);
  return t;
}

void flip_into(const Table& src, std::uint32_t fa, std::uint32_t fb, Table& g) {
  g = src;
  const int ma = g.ma;
  const int mb = g.mb;
  for (int x = 0; x < ma; ++x) {
    if (!((fa >> x) & 1u)) continue;
    g.shift += g.a[static_cast<std::size_t>(x)];
    Coeff* row = g.c.data() + x * mb;
    for (int y = 0; y < mb; ++y) {
      g.b[static_cast<std::size_t>(y)] += row[y];
      row[y] = -row[y];
    }
    g.a[static_cast<std::size_t>(x)] = -g.a[static_cast<std::size_t>(x)];
  }
  for (int y = 0; y < mb; ++y) {
    if (!((fb >> y) & 1u)) continue;
    g.shift += g.b[static_cast<std::size_t>(y)];
    for (int x = 0; x < ma; ++x) {
      Coeff& v = g.c[static_cast<std::size_t>(x * mb + y)];
      g.a[static_cast<std::size_t>(x)] += v;
      v = -v;
    }
    g.b[static_cast<std::size_t>(y)] = -g.b[static_cast<std::size_t>(y)];
  }
}

Coeff flip_shift(const Table& src, std::uint32_t fa, std::uint32_t fb) {
  // shift = sum_{x in fa} M_A(x) + sum_{y in fb} (M_B(y) + sum_{x in fa} C(x,y))
  Coeff s = 0;
  for (int x = 0; x < src.ma; ++x)
    if ((fa >> x) & 1u) s += src.a[static_cast<std::size_t>(x)];
  for (int y = 0; y < src.mb; ++y) {
    if (!((fb >> y) & 1u)) continue;
    s += src.b[static_cast<std::size_t>(y)];
    for (int x = 0; x < src.ma; ++x)
      if ((fa >> x) & 1u) s += src.c[static_cast<std::size_t>(x * src.mb + y)];
  }
  return s;
}

// All orderings that sort `v` ascending; each is a list old-index-by-new-position.
std::vector<std::vector<int>> sorting_orders(const std::vector<Coeff>& v) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int l, int r) { return v[static_cast<std::size_t>(l)] < v[static_cast<std::size_t>(r)]; });
  std::vector<std::vector<int>> out{idx};
  // expand permutations inside each run of equal values
  std::size_t start = 0;
  while (start < idx.size()) {
    std::size_t end = start + 1;
    while (end < idx.size() && v[static_cast<std::size_t>(idx[end])] == v[static_cast<std::size_t>(idx[start])]) ++end;
    if (end - start > 1) {
      std::vector<std::vector<int>> next;
      for (const auto& base : out) {
        std::vector<int> run(base.begin() + static_cast<std::ptrdiff_t>(start), base.begin() + static_cast<std::ptrdiff_t>(end));
        std::sort(run.begin(), run.end());
        do {
          auto o = base;
          std::copy(run.begin(), run.end(), o.begin() + static_cast<std::ptrdiff_t>(start));
          next.push_back(std::move(o));
        } while (std::next_permutation(run.begin(), run.end()));
      }
      out = std::move(next);
    }
    start = end;
  }
  return out;
}

// Key layout: alice_marg, bob_marg, corr (row-major).
using Key = std::vector<Coeff>;

void best_permuted(const Table& g, Key& best, bool& have) {
  const auto ra = sorting_orders(g.a);
  const auto rb = sorting_orders(g.b);
  const auto ma = static_cast<std::size_t>(g.ma);
  const auto mb = static_cast<std::size_t>(g.mb);
  Key key(ma + mb + ma * mb);
  for (const auto& oa : ra) {
    for (const auto& ob : rb) {
      for (std::size_t i = 0; i < ma; ++i) key[i] = g.a[static_cast<std::size_t>(oa[i])];
      for (std::size_t j = 0; j < mb; ++j) key[ma + j] = g.b[static_cast<std::size_t>(ob[j])];
      for (std::size_t i = 0; i < ma; ++i)
        for (std::size_t j = 0; j < mb; ++j)
          key[ma + mb + i * mb + j] = g.c[static_cast<std::size_t>(oa[i]) * mb + static_cast<std::size_t>(ob[j])];
      if (!have || key < best) {
        best = key;
        have = true;
      }
    }
  }
}

} // namespace

BellFunctional canonical_form(const BellFunctional& f, Exec exec) {
  f.validate();
  const int ma = f.scenario.ma;
  const int mb = f.scenario.mb;
  std::vector<Table> bases{to_table(f, false)};
  if (ma == mb) bases.push_back(to_table(f, true));

  const std::uint64_t masks = std::uint64_t{1} << (ma + mb);
  // pass 1: the bound component only depends on the flips
  Coeff best_shift = std::numeric_limits<Coeff>::min();
  struct Job {
    std::size_t base;
    std::uint32_t fa, fb;
  };
  std::vector<Job> jobs;
  for (std::size_t bi = 0; bi < bases.size(); ++bi) {
    for (std::uint64_t m = 0; m < masks; ++m) {
      const auto fa = static_cast<std::uint32_t>(m & ((1u << ma) - 1));
      const auto fb = static_cast<std::uint32_t>(m >> ma);
      const Coeff s = flip_shift(bases[bi], fa, fb);
      if (s > best_shift) {
        best_shift = s;
        jobs.clear();
      }
      if (s == best_shift) jobs.push_back({bi, fa, fb});
    }
  }

  // pass 2: permutations restricted to orderings that sort both marginal vectors
  const auto njobs = static_cast<std::int64_t>(jobs.size());
  std::vector<Key> job_best(jobs.size());
  auto run = [&](std::int64_t i) {
    Table g;
    const Job& j = jobs[static_cast<std::size_t>(i)];
    flip_into(bases[j.base], j.fa, j.fb, g);
    bool have = false;
    best_permuted(g, job_best[static_cast<std::size_t>(i)], have);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < njobs; ++i) run(i);
  } else {
    for (std::int64_t i = 0; i < njobs; ++i) run(i);
  }
  const Key& best = *std::min_element(job_best.begin(), job_best.end());

  BellFunctional out(f.scenario);
  out.bound = f.bound - best_shift;
  std::copy(best.begin(), best.begin() + ma, out.alice_marg.begin());
  std::copy(best.begin() + ma, best.begin() + ma + mb, out.bob_marg.begin());
  std::copy(best.begin() + ma + mb, best.end(), out.corr.begin());
  return out;
}

bool equivalent(const BellFunctional& f, const BellFunctional& g) {
  if (!(f.scenario == g.scenario)) {
    throw StructuralError("equivalence test needs equal scenarios, got " + to_string(f.scenario) + " and " +
                          to_string(g.scenario));
  }
  return canonical_form(f) == canonical_form(g);
}

std::optional<BellFunctional> symmetric_representative(const BellFunctional& f) {
  f.validate();
  const int m = f.scenario.ma;
  if (m != f.scenario.mb) {
    throw StructuralError("symmetric representative needs ma == mb, scenario is " + to_string(f.scenario));
  }
  // A symmetric element stays symmetric under a common relabeling of both
  // parties, so Alice's order can stay fixed.
  const Table src = to_table(f, false);
  Table g;
  const std::uint64_t masks = std::uint64_t{1} << (2 * m);
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    const auto fa = static_cast<std::uint32_t>(mask & ((1u << m) - 1));
    const auto fb = static_cast<std::uint32_t>(mask >> m);
    flip_into(src, fa, fb, g);
    std::vector<int> sigma(static_cast<std::size_t>(m)); // new Bob index -> old Bob index
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      bool ok = true;
      for (int i = 0; i < m && ok; ++i) ok = g.a[static_cast<std::size_t>(i)] == g.b[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])];
      for (int i = 0; i < m && ok; ++i)
        for (int j = i + 1; j < m && ok; ++j)
          ok = g.c[static_cast<std::size_t>(i * m + sigma[static_cast<std::size_t>(j)])] ==
               g.c[static_cast<std::size_t>(j * m + sigma[static_cast<std::size_t>(i)])];
      if (!ok) continue;
      Transformation t = Transformation::identity(f.scenario);
      t.alice_flips = fa;
      t.bob_flips = fb;
      for (int j = 0; j < m; ++j) t.bob_perm[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])] = j;
      return apply_transformation(f, t);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  return std::nullopt;
}

} // namespace bell
