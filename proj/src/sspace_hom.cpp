#include <unordered_map>

#include "fiblab/error.hpp"
#include "fiblab/sspace.hpp"
#include "search.hpp"

namespace fiblab::sspace {

using sset::Key;

namespace {

detail::SearchProblem space_problem(const FinSimplicialSpace& a, const FinSimplicialSpace& b) {
  detail::SearchProblem P;
  const int M = a.level_bound();
  P.a_face.resize(static_cast<std::size_t>(M + 1));
  P.b_face.resize(static_cast<std::size_t>(M + 1));
  P.a_deg.resize(static_cast<std::size_t>(M + 1));
  P.b_deg.resize(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    P.a.push_back(&a.level(m));
    P.b.push_back(&b.level(m));
    for (int i = 0; i <= m && m > 0; ++i) {
      P.a_face[m].push_back(&a.face(m, i));
      P.b_face[m].push_back(&b.face(m, i));
    }
    for (int j = 0; j <= m && m < M; ++j) {
      P.a_deg[m].push_back(&a.degeneracy(m, j));
      P.b_deg[m].push_back(&b.degeneracy(m, j));
    }
  }
  return P;
}

std::string untrusted_reason(const FinSimplicialSpace& a, const FinSimplicialSpace& b) {
  if (!a.exact()) return "source is not generated within its level bound; maps are counted on the truncation";
  for (int m = 0; m <= a.level_bound(); ++m) {
    std::string why;
    if (!sset::hom_trusted(a.level(m), b.level(m), &why)) return "level " + std::to_string(m) + ": " + why;
  }
  return {};
}

Key encode(const detail::Assignment& v) {
  Key k;
  for (const auto& level : v)
    for (const auto& s : level) {
      k.push_back(s.cell);
      k.push_back(static_cast<int>(s.ties));
    }
  return k;
}

SSpaceMap decode(const Key& k, const SSpacePtr& a, const SSpacePtr& b) {
  SSpaceMap f{a, b, {}};
  std::size_t p = 0;
  for (int m = 0; m <= a->level_bound(); ++m) {
    SSetMap c{a->level_ptr(m), b->level_ptr(m), {}};
    const auto& A = a->level(m);
    for (int x = 0; x < A.cell_count(); ++x, p += 2)
      c.assign.push_back(Simplex{k[p], A.cell_dim(x), static_cast<std::uint32_t>(k[p + 1])});
    f.components.push_back(std::move(c));
  }
  return f;
}

/// Key of h o psi where h is encoded by k.
Key precompose(const Key& k, const SSpaceMap& psi, const SSpacePtr& b) {
  auto h = decode(k, psi.target, b);
  Key out;
  for (int m = 0; m <= psi.source->level_bound(); ++m)
    for (const auto& s : psi.components[m].assign) {
      Simplex y = h(m, s);
      out.push_back(y.cell);
      out.push_back(static_cast<int>(y.ties));
    }
  return out;
}

std::string key_label(const Key& k, const SSpacePtr& a, const SSpacePtr& b) {
  // images of the level-0 cells of the source
  const auto& A = a->level(0);
  std::string s = "[";
  for (int x = 0; x < A.cell_count(); ++x) {
    if (x) s += ',';
    s += b->level(0).ref(Simplex{k[2 * x], A.cell_dim(x), static_cast<std::uint32_t>(k[2 * x + 1])});
  }
  return s + "]";
}

SSpaceMap constant_map(const SSetMap& f, const SSpacePtr& source, const SSpacePtr& target) {
  SSpaceMap g{source, target, {}};
  for (int m = 0; m <= source->level_bound(); ++m) g.components.push_back(f);
  return g;
}

}  // namespace

SpaceHomResult hom(const SSpacePtr& a, const SSpacePtr& b, const SpaceHomOptions& opts) {
  if (a->level_bound() != b->level_bound()) throw ShapeError("hom of simplicial spaces with different level bounds");
  auto P = space_problem(*a, *b);
  if (opts.target_over) {
    if (opts.target_over->source.get() != b.get()) throw ShapeError("hom: structure map does not start at the target");
    for (int m = 0; m <= a->level_bound(); ++m) P.over_q.push_back(&opts.target_over->components[m]);
    P.over_values = opts.over_values;
  }
  P.pinned = opts.pinned;
  P.limit = opts.limit;
  SpaceHomResult r;
  detail::solve(P, [&](const detail::Assignment& v) {
    SSpaceMap f{a, b, {}};
    for (int m = 0; m <= a->level_bound(); ++m) f.components.push_back(SSetMap{a->level_ptr(m), b->level_ptr(m), v[m]});
    r.maps.push_back(std::move(f));
    return true;
  });
  r.warning = untrusted_reason(*a, *b);
  r.bounded = !r.warning.empty();
  return r;
}

Exponential exponential(const SSpacePtr& y, const SSpacePtr& x, int m_max, int l_max) {
  const int MY = y->level_bound();
  if (x->level_bound() != MY) throw ShapeError("exponential: level bounds differ");
  if (l_max < 0 || m_max < 0) throw DomainError("exponential needs m_max, l_max >= 0");
  int gen = std::max(x->generator_level(), 0);
  int Mp = std::min(m_max, MY - gen);
  if (Mp < 0) throw PreconditionError("exponential: X has generators beyond the level bound of Y");

  std::vector<SSpacePtr> Fm;
  for (int m = 0; m <= Mp; ++m) Fm.push_back(F(m, MY));
  std::vector<SSetPtr> dl;
  std::vector<SSpacePtr> Dl;
  for (int l = 0; l <= l_max; ++l) {
    dl.push_back(sset::delta(l));
    Dl.push_back(embed_constant(dl.back(), MY));
  }
  std::vector<std::vector<SpaceProduct>> P(static_cast<std::size_t>(Mp + 1));
  for (int m = 0; m <= Mp; ++m)
    for (int l = 0; l <= l_max; ++l) P[m].push_back(product({x, Fm[m], Dl[l]}));

  auto idx = identity_map(x);
  std::vector<SSpaceMap> idF, idD;
  for (auto& f : Fm) idF.push_back(identity_map(f));
  for (auto& d : Dl) idD.push_back(identity_map(d));
  auto Fop = [&](const poset::MonotoneMap& theta) {
    return embed_discrete_map(sset::delta_functor(theta), Fm[theta.m], Fm[theta.n]);
  };
  auto Dop = [&](const poset::MonotoneMap& theta) {
    auto f = sset::delta_functor(theta);
    f.source = dl[theta.m];
    f.target = dl[theta.n];
    return constant_map(f, Dl[theta.m], Dl[theta.n]);
  };

  Exponential out;
  std::vector<sset::KeyedSet> levels;
  for (int m = 0; m <= Mp; ++m) {
    std::vector<std::vector<Key>> homs(static_cast<std::size_t>(l_max + 1));
    for (int l = 0; l <= l_max; ++l) {
      auto r = hom(P[m][l].space, y);
      if (r.bounded && !out.bounded) {
        out.bounded = true;
        out.warning = r.warning;
      }
      for (auto& f : r.maps) {
        detail::Assignment v;
        for (auto& c : f.components) v.push_back(c.assign);
        homs[l].push_back(encode(v));
      }
    }
    std::vector<std::vector<SSpaceMap>> vf(static_cast<std::size_t>(l_max + 1)), vd(static_cast<std::size_t>(l_max + 1));
    for (int l = 1; l <= l_max; ++l)
      for (int i = 0; i <= l; ++i) vf[l].push_back(product_map(P[m][l - 1], P[m][l], {idx, idF[m], Dop(poset::coface(l, i))}));
    for (int l = 0; l < l_max; ++l)
      for (int j = 0; j <= l; ++j)
        vd[l].push_back(product_map(P[m][l + 1], P[m][l], {idx, idF[m], Dop(poset::codegeneracy(l, j))}));
    sset::KeyedSpec spec;
    spec.dim_bound = l_max;
    spec.exact = y->is_discrete() && y->exact();
    spec.simplices = [&](int l) { return homs[l]; };
    spec.face = [&](const Key& k, int l, int i) { return precompose(k, vf[l][i], y); };
    spec.degeneracy = [&](const Key& k, int l, int j) { return precompose(k, vd[l][j], y); };
    spec.label = [&](const Key& k, int l) { return key_label(k, P[m][l].space, y); };
    levels.push_back(sset::build_keyed(spec));
  }

  std::vector<SSetPtr> lv;
  for (auto& k : levels) lv.push_back(k.set);
  auto horizontal = [&](int from, int to, const poset::MonotoneMap& theta) {
    // theta: [to] -> [from]; precompose with id x F(theta) x id
    SSetMap h{lv[from], lv[to], {}};
    std::vector<SSpaceMap> psi;
    for (int l = 0; l <= l_max; ++l) psi.push_back(product_map(P[to][l], P[from][l], {idx, Fop(theta), idD[l]}));
    const auto& S = *lv[from];
    for (int c = 0; c < S.cell_count(); ++c) {
      int l = S.cell_dim(c);
      h.assign.push_back(levels[to].find(precompose(levels[from].cell_key[c], psi[l], y), l));
    }
    return h;
  };
  std::vector<std::vector<SSetMap>> Fmaps(static_cast<std::size_t>(Mp + 1)), Dmaps(static_cast<std::size_t>(Mp + 1));
  for (int m = 1; m <= Mp; ++m)
    for (int i = 0; i <= m; ++i) Fmaps[m].push_back(horizontal(m, m - 1, poset::coface(m, i)));
  for (int m = 0; m < Mp; ++m)
    for (int j = 0; j <= m; ++j) Dmaps[m].push_back(horizontal(m, m + 1, poset::codegeneracy(m, j)));
  bool exact = !out.bounded && y->is_discrete() && Mp == MY && x->generator_level() <= 0;
  out.space = std::make_shared<FinSimplicialSpace>(std::move(lv), std::move(Fmaps), std::move(Dmaps), exact);
  out.base = Mp == MY ? y : truncate(*y, Mp);
  out.exponent = x;
  out.y = y;
  out.l_max = l_max;
  out.products = std::move(P);
  out.keyed = std::move(levels);
  return out;
}

SSpaceMap evaluate(const Exponential& e, int vertex) {
  const auto& X = *e.exponent;
  if (vertex < 0 || vertex >= X.level(0).vertex_count()) throw DomainError("evaluate: no such vertex");
  const int Mp = e.space->level_bound();
  SSpaceMap f{e.space, e.base, {}};
  for (int m = 0; m <= Mp; ++m) {
    const auto& S = e.space->level(m);
    SSetMap c{e.space->level_ptr(m), e.base->level_ptr(m), {}};
    Simplex xv = X.act(poset::MonotoneMap(m, 0, std::vector<int>(static_cast<std::size_t>(m + 1), 0)), Simplex{vertex, 0, 0});
    const auto& Fm = *e.products[m][0].factors[1];
    Simplex idv{F_vertex(Fm, m, poset::MonotoneMap::identity(m)), 0, 0};
    for (int cell = 0; cell < S.cell_count(); ++cell) {
      const int l = S.cell_dim(cell);
      const auto& P = e.products[m][l];
      const std::uint32_t full = (1u << l) - 1u;
      Simplex s = P.tuple(m, {X.level(m).degenerate(xv, full, l), Fm.level(m).degenerate(idv, full, l),
                              sset::delta_simplex(l, poset::MonotoneMap::identity(l))});
      auto h = decode(e.keyed[m].cell_key[cell], P.space, e.y);
      c.assign.push_back(h(m, s));
    }
    f.components.push_back(std::move(c));
  }
  return f;
}

SSpaceMap restrict_along(const Exponential& big, const Exponential& small, const SSpaceMap& f) {
  const int Mp = big.space->level_bound();
  if (small.space->level_bound() != Mp || small.l_max != big.l_max || small.y.get() != big.y.get())
    throw ShapeError("restrict_along: exponentials with different bounds or bases");
  if (f.source.get() != small.exponent.get() || f.target.get() != big.exponent.get())
    throw ShapeError("restrict_along: map does not match the exponents");
  SSpaceMap r{big.space, small.space, {}};
  for (int m = 0; m <= Mp; ++m) {
    std::vector<SSpaceMap> psi;
    for (int l = 0; l <= big.l_max; ++l) {
      const auto& Ps = small.products[m][l];
      psi.push_back(product_map(Ps, big.products[m][l], {f, identity_map(Ps.factors[1]), identity_map(Ps.factors[2])}));
    }
    const auto& S = big.space->level(m);
    SSetMap c{big.space->level_ptr(m), small.space->level_ptr(m), {}};
    for (int cell = 0; cell < S.cell_count(); ++cell) {
      const int l = S.cell_dim(cell);
      c.assign.push_back(small.keyed[m].find(precompose(big.keyed[m].cell_key[cell], psi[l], big.y), l));
    }
    r.components.push_back(std::move(c));
  }
  return r;
}

SSpaceMap constant_maps(const Exponential& e) {
  const auto& Y = *e.y;
  const int Mp = e.space->level_bound();
  SSpaceMap f{e.base, e.space, {}};
  for (int m = 0; m <= Mp; ++m) {
    const auto& B = e.base->level(m);
    SSetMap c{e.base->level_ptr(m), e.space->level_ptr(m), {}};
    for (int cell = 0; cell < B.cell_count(); ++cell) {
      const int l = B.cell_dim(cell);
      const auto& P = e.products[m][l];
      Key k;
      for (int lev = 0; lev < static_cast<int>(P.levels.size()); ++lev)
        for (const auto& t : P.levels[lev].cell_tuple) {
          Simplex z = Y.act(F_map(m, lev, t[1].cell), Simplex{cell, l, 0});
          Simplex v = Y.level(lev).apply(z, sset::delta_map(l, t[2]));
          k.push_back(v.cell);
          k.push_back(static_cast<int>(v.ties));
        }
      c.assign.push_back(e.keyed[m].find(k, l));
    }
    f.components.push_back(std::move(c));
  }
  return f;
}

int exponential_vertex(const Exponential& e, const SSpaceMap& p) {
  if (p.source.get() != e.exponent.get() || p.target.get() != e.y.get())
    throw ShapeError("exponential_vertex: map does not go from the exponent to the base");
  const auto& P = e.products[0][0];
  Key k;
  for (int lev = 0; lev < static_cast<int>(P.levels.size()); ++lev)
    for (const auto& t : P.levels[lev].cell_tuple) {
      Simplex v = p(lev, t[0]);
      k.push_back(v.cell);
      k.push_back(static_cast<int>(v.ties));
    }
  return e.keyed[0].find(k, 0).cell;
}

MapSpaceResult map_space(const SSpacePtr& a, const SSpacePtr& b, int l_max, const SSpaceMap* a_over,
                         const SSpaceMap* b_over) {
  const int M = a->level_bound();
  if (b->level_bound() != M) throw ShapeError("map_space: level bounds differ");
  if ((a_over == nullptr) != (b_over == nullptr)) throw ShapeError("map_space: give both structure maps or neither");
  if (a_over && (a_over->source.get() != a.get() || b_over->source.get() != b.get() ||
                 a_over->target.get() != b_over->target.get()))
    throw ShapeError("map_space: structure maps do not match");
  std::vector<SSetPtr> dl;
  std::vector<SSpacePtr> Dl;
  std::vector<SpaceProduct> P;
  for (int l = 0; l <= l_max; ++l) {
    dl.push_back(sset::delta(l));
    Dl.push_back(embed_constant(dl.back(), M));
    P.push_back(product({a, Dl.back()}));
  }
  auto ida = identity_map(a);
  auto Dop = [&](const poset::MonotoneMap& theta) {
    auto f = sset::delta_functor(theta);
    f.source = dl[theta.m];
    f.target = dl[theta.n];
    return constant_map(f, Dl[theta.m], Dl[theta.n]);
  };
  MapSpaceResult out;
  std::vector<std::vector<Key>> homs(static_cast<std::size_t>(l_max + 1));
  for (int l = 0; l <= l_max; ++l) {
    SpaceHomOptions opts;
    if (a_over) {
      opts.target_over = b_over;
      for (int m = 0; m <= M; ++m) {
        std::vector<Simplex> vals;
        for (const auto& t : P[l].levels[m].cell_tuple) vals.push_back((*a_over)(m, t[0]));
        opts.over_values.push_back(std::move(vals));
      }
    }
    auto r = hom(P[l].space, b, opts);
    if (r.bounded && !out.bounded) {
      out.bounded = true;
      out.warning = r.warning;
    }
    for (auto& f : r.maps) {
      detail::Assignment v;
      for (auto& c : f.components) v.push_back(c.assign);
      homs[l].push_back(encode(v));
    }
  }
  std::vector<std::vector<SSpaceMap>> vf(static_cast<std::size_t>(l_max + 1)), vd(static_cast<std::size_t>(l_max + 1));
  for (int l = 1; l <= l_max; ++l)
    for (int i = 0; i <= l; ++i) vf[l].push_back(product_map(P[l - 1], P[l], {ida, Dop(poset::coface(l, i))}));
  for (int l = 0; l < l_max; ++l)
    for (int j = 0; j <= l; ++j) vd[l].push_back(product_map(P[l + 1], P[l], {ida, Dop(poset::codegeneracy(l, j))}));
  sset::KeyedSpec spec;
  spec.dim_bound = l_max;
  spec.exact = !out.bounded && b->is_discrete();
  spec.simplices = [&](int l) { return homs[l]; };
  spec.face = [&](const Key& k, int l, int i) { return precompose(k, vf[l][i], b); };
  spec.degeneracy = [&](const Key& k, int l, int j) { return precompose(k, vd[l][j], b); };
  spec.label = [&](const Key& k, int l) { return key_label(k, P[l].space, b); };
  out.space = sset::build_keyed(spec).set;
  return out;
}

sset::Sub fiber_over(const SSpaceMap& p, int n, const poset::MonotoneMap& f) {
  if (f.m > p.source->level_bound()) throw DomainError("fiber_over: simplex beyond the level bound");
  int v = F_vertex(*p.target, n, f);
  return sset::fiber(p.components[f.m], v);
}

SSetMap fiber_operator(const SSpaceMap& p, int n, const poset::MonotoneMap& f, const poset::MonotoneMap& delta) {
  if (delta.n != f.m) throw CompositionError("fiber_operator: " + delta.str() + " does not end at [" + std::to_string(f.m) + "]");
  auto src = fiber_over(p, n, f);
  auto tgt = fiber_over(p, n, poset::compose(f, delta));
  std::unordered_map<int, int> back;
  for (int c = 0; c < tgt.set->cell_count(); ++c) back.emplace(tgt.inclusion.assign[c].cell, c);
  const auto& X = *p.source;
  SSetMap out{src.set, tgt.set, {}};
  for (int c = 0; c < src.set->cell_count(); ++c) {
    Simplex y = X.act(delta, src.inclusion.assign[c]);
    out.assign.push_back(Simplex{back.at(y.cell), y.dim, y.ties});
  }
  return out;
}

}  // namespace fiblab::sspace
