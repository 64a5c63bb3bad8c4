#include "fiblab/straighten.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "fiblab/error.hpp"

namespace fiblab::straighten {

using poset::MonotoneMap;
using sset::Key;
using sset::Simplex;
using sset::SSetMap;
using sset::SSetPtr;

namespace {

std::uint32_t full_ties(int d) { return d == 0 ? 0u : (1u << d) - 1u; }

int arrow(const cat::FinCategory& c, int i, int j) {
  const auto& h = c.hom(i, j);
  if (h.size() != 1) throw PreconditionError("functor base is not a linear order");
  return h[0];
}

Key encode(const std::vector<Simplex>& assign) {
  Key k;
  for (const auto& s : assign) {
    k.push_back(s.cell);
    k.push_back(static_cast<int>(s.ties));
  }
  return k;
}

/// Map with the same data but a structurally equal target.
SSpaceMap rebase(const SSpaceMap& w, const SSpacePtr& target) {
  if (w.target.get() == target.get()) return w;
  if (w.target->level_bound() != target->level_bound()) throw ShapeError("rebase: level bounds differ");
  SSpaceMap out{w.source, target, w.components};
  for (int m = 0; m <= target->level_bound(); ++m) {
    if (w.target->level(m).cell_count() != target->level(m).cell_count()) throw ShapeError("rebase: different bases");
    out.components[m].target = target->level_ptr(m);
  }
  return out;
}

}  // namespace

cat::SetFunctor random_chain_functor(int n, cat::Variance variance, std::mt19937_64& rng, int max_size) {
  if (n < 0 || max_size < 1) throw DomainError("random_chain_functor needs n >= 0 and max_size >= 1");
  auto c = cat::ordinal(n);
  cat::SetFunctor p;
  p.base = c;
  p.variance = variance;
  for (int i = 0; i <= n; ++i) p.sizes.push_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_size)));
  for (int i = 0; i <= n; ++i) {
    std::vector<std::string> l;
    for (int a = 0; a < p.sizes[i]; ++a) l.push_back(std::string(1, static_cast<char>('a' + a)));
    p.labels.push_back(std::move(l));
  }
  // adjacent structure maps, then composites
  std::vector<std::vector<int>> step(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int from = variance == cat::Variance::contravariant ? i + 1 : i;
    const int to = variance == cat::Variance::contravariant ? i : i + 1;
    for (int a = 0; a < p.sizes[from]; ++a) step[i].push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(p.sizes[to])));
  }
  p.maps.resize(static_cast<std::size_t>(c->morphism_count()));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      std::vector<int> f;
      if (variance == cat::Variance::contravariant) {
        for (int a = 0; a < p.sizes[j]; ++a) {
          int x = a;
          for (int k = j - 1; k >= i; --k) x = step[k][x];
          f.push_back(x);
        }
      } else {
        for (int a = 0; a < p.sizes[i]; ++a) {
          int x = a;
          for (int k = i; k < j; ++k) x = step[k][x];
          f.push_back(x);
        }
      }
      p.maps[arrow(*c, i, j)] = std::move(f);
    }
  return p;
}

SSpaceMap grothendieck_fibration(const cat::SetFunctor& p, int M) {
  if (auto e = p.validate(); !e.empty()) throw PreconditionError("grothendieck_fibration: " + e);
  const auto& C = *p.base;
  const int n = C.object_count() - 1;
  const bool contra = p.variance == cat::Variance::contravariant;
  auto fn = sspace::F(n, M);
  std::vector<std::vector<int>> offset(static_cast<std::size_t>(M + 1));
  std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(M + 1));
  std::vector<std::vector<int>> proj(static_cast<std::size_t>(M + 1));
  auto key_object = [&](const MonotoneMap& f) { return contra ? f(f.m) : f(0); };
  for (int m = 0; m <= M; ++m) {
    int total = 0;
    for (int v = 0; v < fn->level(m).vertex_count(); ++v) {
      auto f = sspace::F_map(n, m, v);
      offset[m].push_back(total);
      const int c = key_object(f);
      for (int a = 0; a < p.size(c); ++a) {
        labels[m].push_back(f.digits() + ":" + p.labels[c][a]);
        proj[m].push_back(v);
      }
      total += p.size(c);
    }
  }
  auto act = [&](const MonotoneMap& theta, int m, int x) {
    const int v = proj[m][x];
    const int a = x - offset[m][v];
    auto f = sspace::F_map(n, m, v);
    auto g = poset::compose(f, theta);
    const int from = key_object(f), to = key_object(g);
    const int b = contra ? p.apply(arrow(C, to, from), a) : p.apply(arrow(C, from, to), a);
    return offset[theta.m][sspace::F_vertex(*fn, n, g)] + b;
  };
  std::vector<std::vector<std::vector<int>>> face(static_cast<std::size_t>(M + 1)), degen(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    const int size = static_cast<int>(labels[m].size());
    for (int i = 0; i <= m && m > 0; ++i) {
      std::vector<int> t;
      for (int x = 0; x < size; ++x) t.push_back(act(poset::coface(m, i), m, x));
      face[m].push_back(std::move(t));
    }
    for (int j = 0; j <= m && m < M; ++j) {
      std::vector<int> t;
      for (int x = 0; x < size; ++x) t.push_back(act(poset::codegeneracy(m, j), m, x));
      degen[m].push_back(std::move(t));
    }
  }
  auto total = sspace::discrete_space(labels, face, degen, M >= n);
  return sspace::discrete_map(total, fn, proj);
}

int base_dim(const SSpaceMap& p) { return p.target->level(0).vertex_count() - 1; }

FiberReport fiber_equivalence_report(const SSpaceMap& r, fib::Side side) {
  const int n = base_dim(r);
  const int M = r.source->level_bound();
  FiberReport out;
  out.mode = fib::natural_mode({r.source});
  for (int m = 0; m <= M; ++m)
    for (int v = 0; v < r.target->level(m).vertex_count(); ++v) {
      auto f = sspace::F_map(n, m, v);
      auto end = MonotoneMap(0, m, {side == fib::Side::right ? m : 0});
      auto op = sspace::fiber_operator(r, n, f, end);
      FiberRow row;
      row.simplex = f.digits();
      row.level = m;
      row.fiber = static_cast<std::size_t>(op.source->cell_count());
      row.end_fiber = static_cast<std::size_t>(op.target->cell_count());
      if (out.mode == fib::Mode::exact_discrete) {
        row.pass = op.injective() && row.fiber == row.end_fiber;
        row.tier = oracle::Tier::decisive;
      } else {
        auto verdict = oracle::weak_equivalence_evidence(op);
        row.pass = verdict.value;
        row.tier = verdict.tier;
      }
      out.all_pass = out.all_pass && row.pass;
      out.rows.push_back(std::move(row));
    }
  return out;
}

std::vector<std::size_t> StraightenedFibration::chain_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& c : chain) s.push_back(static_cast<std::size_t>(c.set->cell_count()));
  return s;
}

StraightenedFibration straighten(const SSpaceMap& r, fib::Side side) {
  const int n = base_dim(r);
  const int M = r.source->level_bound();
  if (M < n) throw PreconditionError("straighten: level bound " + std::to_string(M) + " is below n = " + std::to_string(n));
  const bool right = side == fib::Side::right;
  auto check = fib::fibration_check(r, side, fib::Variant::zeroth, fib::natural_mode({r.source, r.target}));
  if (!check.verdict) {
    std::string why = check.counterexample ? check.counterexample->detail : "comparison fails";
    throw PreconditionError(std::string("straighten: not a ") + fib::side_name(side) + " fibration: " + why);
  }
  const auto& R = *r.source;
  const auto& fn = r.target;
  StraightenedFibration s;
  s.side = side;
  s.n = n;
  s.original = r;
  // chain spaces and links
  auto chain_map = [&](int i) {
    return right ? poset::standard_embedding(i, n)
                 : MonotoneMap(n - i, n, [&] {
                     std::vector<int> v;
                     for (int t = 0; t <= n - i; ++t) v.push_back(i + t);
                     return v;
                   }());
  };
  for (int i = 0; i <= n; ++i) s.chain.push_back(sspace::fiber_over(r, n, chain_map(i)));
  for (int i = 0; i < n; ++i)
    s.links.push_back(right ? sspace::fiber_operator(r, n, chain_map(i + 1), poset::coface(i + 1, i + 1))
                            : sspace::fiber_operator(r, n, chain_map(i), poset::coface(n - i, 0)));
  auto index_of = [&](const MonotoneMap& f) { return right ? f(f.m) : f(0); };
  auto transport = [&](int from, int to, Simplex z) {
    if (right)
      for (int k = from - 1; k >= to; --k) z = s.links[k](z);
    else
      for (int k = from; k < to; ++k) z = s.links[k](z);
    return z;
  };

  std::vector<sset::Coproduct> cps;
  s.summand_chain.resize(static_cast<std::size_t>(M + 1));
  s.summand_inclusion.resize(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    std::vector<SSetPtr> parts;
    std::vector<std::string> prefixes;
    for (int v = 0; v < fn->level(m).vertex_count(); ++v) {
      auto f = sspace::F_map(n, m, v);
      s.summand_chain[m].push_back(index_of(f));
      parts.push_back(s.chain[index_of(f)].set);
      prefixes.push_back(f.digits() + ":");
    }
    cps.push_back(sset::coproduct(parts, prefixes));
    s.summand_inclusion[m] = cps.back().injections;
  }
  auto op = [&](int m, const MonotoneMap& theta) {
    const int k = theta.m;
    SSetMap h{cps[m].set, cps[k].set, {}};
    for (int x = 0; x < cps[m].set->cell_count(); ++x) {
      auto [v, c] = cps[m].origin[x];
      auto f = sspace::F_map(n, m, v);
      auto g = poset::compose(f, theta);
      const int w = sspace::F_vertex(*fn, n, g);
      Simplex z = transport(index_of(f), index_of(g), s.chain[index_of(f)].set->cell(c));
      h.assign.push_back(cps[k].injections[w](z));
    }
    return h;
  };
  std::vector<SSetPtr> levels;
  std::vector<std::vector<SSetMap>> Fm(static_cast<std::size_t>(M + 1)), Dm(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    levels.push_back(cps[m].set);
    for (int i = 0; i <= m && m > 0; ++i) Fm[m].push_back(op(m, poset::coface(m, i)));
    for (int j = 0; j <= m && m < M; ++j) Dm[m].push_back(op(m, poset::codegeneracy(m, j)));
  }
  auto st = std::make_shared<sspace::FinSimplicialSpace>(std::move(levels), std::move(Fm), std::move(Dm), R.exact());
  s.straightened = SSpaceMap{st, fn, {}};
  s.comparison = SSpaceMap{st, r.source, {}};
  for (int m = 0; m <= M; ++m) {
    SSetMap pj{st->level_ptr(m), fn->level_ptr(m), {}};
    SSetMap cmp{st->level_ptr(m), R.level_ptr(m), {}};
    for (int x = 0; x < cps[m].set->cell_count(); ++x) {
      auto [v, c] = cps[m].origin[x];
      const int d = cps[m].set->cell_dim(x);
      pj.assign.push_back(fn->level(m).degenerate(Simplex{v, 0, 0}, full_ties(d), d));
      auto f = sspace::F_map(n, m, v);
      const int idx = index_of(f);
      std::vector<int> pv;
      for (int a = 0; a <= m; ++a) pv.push_back(right ? f(a) : f(a) - f(0));
      MonotoneMap pf(m, right ? idx : n - idx, pv);
      cmp.assign.push_back(R.act(pf, s.chain[idx].inclusion.assign[c]));
    }
    s.straightened.components.push_back(std::move(pj));
    s.comparison.components.push_back(std::move(cmp));
  }
  return s;
}

std::string check_straightening_condition(const StraightenedFibration& s) {
  const auto& st = *s.straightened.source;
  const int M = st.level_bound();
  const int n = s.n;
  const bool right = s.side == fib::Side::right;
  for (int m2 = 0; m2 <= M; ++m2)
    for (int m1 = 0; m1 <= M; ++m1)
      for (const auto& delta : poset::all_maps(m1, m2))
        for (int v = 0; v < static_cast<int>(s.summand_chain[m2].size()); ++v) {
          auto f = sspace::F_map(n, m2, v);
          auto g = poset::compose(f, delta);
          if (right ? g(m1) != f(m2) : g(0) != f(0)) continue;
          const int w = sspace::F_vertex(*s.straightened.target, n, g);
          if (s.summand_chain[m1][w] != s.summand_chain[m2][v]) return "summands of " + f.digits() + " and " + g.digits() + " differ";
          const auto& inc_f = s.summand_inclusion[m2][v];
          const auto& inc_g = s.summand_inclusion[m1][w];
          if (inc_f.source.get() != inc_g.source.get()) return "summands of " + f.digits() + " and " + g.digits() + " are not the same space";
          for (int c = 0; c < inc_f.source->cell_count(); ++c)
            if (st.act(delta, inc_f.assign[c]) != inc_g.assign[c])
              return delta.str() + " on the fiber over " + f.digits() + " is not the identity";
        }
  return {};
}

std::string check_comparison(const StraightenedFibration& s) {
  if (auto e = s.comparison.validate(); !e.empty()) return "comparison: " + e;
  if (auto e = s.straightened.validate(); !e.empty()) return "projection: " + e;
  for (int m = 0; m <= s.comparison.source->level_bound(); ++m) {
    const auto& c = s.comparison.components[m];
    if (!c.injective() || c.source->cell_count() != c.target->cell_count())
      return "comparison is not a bijection at level " + std::to_string(m);
  }
  if (!sspace::same_map(sspace::compose(s.original, s.comparison), s.straightened))
    return "comparison does not commute with the projections";
  return {};
}

SSpaceMap reversal_map(const SSpacePtr& fn_op, const SSpacePtr& fn, int n) {
  std::vector<std::vector<int>> comps;
  for (int m = 0; m <= fn->level_bound(); ++m) {
    std::vector<int> t;
    for (int v = 0; v < fn_op->level(m).vertex_count(); ++v)
      t.push_back(sspace::F_vertex(*fn, n, poset::reversed(sspace::F_map(n, m, v))));
    comps.push_back(std::move(t));
  }
  return sspace::discrete_map(fn_op, fn, comps);
}

std::string mirror_agreement(const SSpaceMap& l) {
  const int n = base_dim(l);
  const int M = l.source->level_bound();
  auto direct = straighten(l, fib::Side::left);
  auto lop = sspace::opposite(*l.source);
  auto fop = sspace::opposite(*l.target);
  auto lmap = sspace::opposite_map(l, lop, fop);
  auto fn = sspace::F(n, M);
  auto rmap = sspace::compose(reversal_map(fop, fn, n), lmap);
  auto mirror = straighten(rmap, fib::Side::right);
  for (int i = 0; i <= n; ++i)
    if (direct.chain[i].inclusion.assign != mirror.chain[n - i].inclusion.assign)
      return "chain space " + std::to_string(i) + " differs";
  const auto& A = *direct.straightened.source;
  const auto& B = *mirror.straightened.source;
  // phi: (f, z) -> (reversed f, z)
  std::vector<std::vector<int>> phi(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    phi[m].assign(static_cast<std::size_t>(A.level(m).cell_count()), -1);
    for (int v = 0; v < static_cast<int>(direct.summand_inclusion[m].size()); ++v) {
      const int w = sspace::F_vertex(*fn, n, poset::reversed(sspace::F_map(n, m, v)));
      const auto& a = direct.summand_inclusion[m][v];
      const auto& b = mirror.summand_inclusion[m][w];
      if (a.assign.size() != b.assign.size()) return "summand sizes differ at level " + std::to_string(m);
      for (std::size_t c = 0; c < a.assign.size(); ++c) phi[m][a.assign[c].cell] = b.assign[c].cell;
    }
    if (A.level(m).cell_count() != B.level(m).cell_count()) return "level sizes differ at " + std::to_string(m);
  }
  auto map = [&](int m, Simplex s) {
    s.cell = phi[m][s.cell];
    return s;
  };
  for (int m = 0; m <= M; ++m)
    for (int x = 0; x < A.level(m).cell_count(); ++x) {
      Simplex sx = A.level(m).cell(x);
      for (int i = 0; i <= m && m > 0; ++i)
        if (map(m - 1, A.face(m, i)(sx)) != B.face(m, m - i)(map(m, sx))) return "faces differ at level " + std::to_string(m);
      for (int j = 0; j <= m && m < M; ++j)
        if (map(m + 1, A.degeneracy(m, j)(sx)) != B.degeneracy(m, m - j)(map(m, sx)))
          return "degeneracies differ at level " + std::to_string(m);
      if (direct.comparison(m, sx) != mirror.comparison(m, map(m, sx))) return "comparison maps differ at level " + std::to_string(m);
    }
  return {};
}

DecompositionReport mapping_decomposition_check(const SSpaceMap& r, const SSpaceMap& w_in, int l_max) {
  const int n = base_dim(r);
  const int M = r.source->level_bound();
  if (n < 1) throw PreconditionError("mapping_decomposition_check needs n >= 1");
  if (M < n) throw PreconditionError("mapping_decomposition_check needs level bound >= n");
  auto w = rebase(w_in, r.target);
  DecompositionReport out;
  auto ms = sspace::map_space(r.source, w.source, l_max, &r, &w);
  if (ms.bounded) {
    out.bounded = true;
    out.warnings.push_back(ms.warning);
  }
  auto top = MonotoneMap::identity(n);
  auto below = poset::standard_embedding(n - 1, n);
  auto dn = poset::coface(n, n);
  auto Rn = sspace::fiber_over(r, n, top);
  auto Wn = sspace::fiber_over(w, n, top);
  auto Rb = sspace::fiber_over(r, n, below);
  auto Wb = sspace::fiber_over(w, n, below);
  auto dR = sspace::fiber_operator(r, n, top, dn);
  auto dW = sspace::fiber_operator(w, n, top, dn);
  std::unordered_map<int, int> wb_back;
  for (int c = 0; c < Wb.set->cell_count(); ++c) wb_back.emplace(Wb.inclusion.assign[c].cell, c);

  // restriction to F(n-1)
  auto fsub = sspace::F(n - 1, M);
  auto inc = sspace::embed_discrete_map(sset::delta_functor(below), fsub, r.target);
  auto Rp = sspace::pullback(inc, r);
  auto Wp = sspace::pullback(inc, w);
  const int top_sub = sspace::F_vertex(*fsub, n - 1, MonotoneMap::identity(n - 1));

  for (int l = 0; l <= l_max; ++l) {
    DecompositionRow row;
    row.l = l;
    row.lhs = static_cast<std::size_t>(ms.space->count(l));
    auto dl = sset::delta(l);
    auto Q = sset::product(Rn.set, dl);
    // beta side: maps R_{/0..n} x Delta[l] -> W_{/0..n}, pushed down by d_n
    std::unordered_map<Key, std::size_t, VectorHash> beta_images;
    for (const auto& b : sset::hom_set(Q.set, Wn.set).maps) {
      std::vector<Simplex> a;
      for (const auto& s : b.assign) a.push_back(dW(s));
      ++beta_images[encode(a)];
    }
    // alpha side: maps over F(n-1), restricted along d_n
    auto Dl = sspace::embed_constant(dl, M);
    auto PA = sspace::product({Rp.space, Dl});
    sspace::SpaceHomOptions opts;
    opts.target_over = &Wp.p1;
    for (int m = 0; m <= M; ++m) {
      std::vector<Simplex> vals;
      for (const auto& t : PA.levels[m].cell_tuple) vals.push_back(Rp.p1(m, t[0]));
      opts.over_values.push_back(std::move(vals));
    }
    auto alphas = sspace::hom(PA.space, Wp.space, opts);
    if (alphas.bounded) {
      out.bounded = true;
      out.warnings.push_back(alphas.warning);
    }
    std::size_t pairs = 0;
    for (const auto& al : alphas.maps) {
      std::vector<Simplex> a;
      for (const auto& t : Q.cell_tuple) {
        Simplex r1 = Rb.inclusion(dR(t[0]));
        Simplex fs = fsub->level(n - 1).degenerate(Simplex{top_sub, 0, 0}, full_ties(r1.dim), r1.dim);
        Simplex rp = Rp.levels[n - 1].pair(fs, r1);
        Simplex img = Wp.p2(n - 1, al(n - 1, PA.tuple(n - 1, {rp, t[1]})));
        a.push_back(Simplex{wb_back.at(img.cell), img.dim, img.ties});
      }
      auto it = beta_images.find(encode(a));
      if (it != beta_images.end()) pairs += it->second;
    }
    row.rhs = pairs;
    row.pass = row.lhs == row.rhs;
    out.pass = out.pass && row.pass;
    out.rows.push_back(row);
  }

  // chain form on vertices: families phi_i : R_{/0..i} -> W_{/0..i} commuting with d_i
  if (r.source->is_discrete() && w.source->is_discrete()) {
    std::vector<sset::Sub> rc, wc;
    std::vector<SSetMap> rd, wd;
    for (int i = 0; i <= n; ++i) {
      rc.push_back(sspace::fiber_over(r, n, poset::standard_embedding(i, n)));
      wc.push_back(sspace::fiber_over(w, n, poset::standard_embedding(i, n)));
    }
    for (int i = 1; i <= n; ++i) {
      rd.push_back(sspace::fiber_operator(r, n, poset::standard_embedding(i, n), poset::coface(i, i)));
      wd.push_back(sspace::fiber_operator(w, n, poset::standard_embedding(i, n), poset::coface(i, i)));
    }
    // phi[i][x] for x in R_{/0..i}
    std::vector<std::vector<int>> phi(static_cast<std::size_t>(n + 1));
    std::function<std::size_t(int)> count = [&](int i) -> std::size_t {
      if (i > n) return 1;
      const int rs = rc[i].set->vertex_count(), ws = wc[i].set->vertex_count();
      std::size_t total = 0;
      std::vector<int> cur(static_cast<std::size_t>(rs), 0);
      std::function<void(int)> rec = [&](int x) {
        if (x == rs) {
          phi[i] = cur;
          total += count(i + 1);
          return;
        }
        for (int y = 0; y < ws; ++y) {
          if (i > 0 && wd[i - 1].assign[y].cell != phi[i - 1][rd[i - 1].assign[x].cell]) continue;
          cur[x] = y;
          rec(x + 1);
        }
      };
      rec(0);
      return total;
    };
    out.chain_maps = count(0);
    out.chain_pass = out.chain_maps == out.rows[0].lhs;
    out.pass = out.pass && out.chain_pass;
  } else {
    out.warnings.push_back("chain form checked only for discrete instances");
    out.chain_pass = true;
  }
  return out;
}

}  // namespace fiblab::straighten
