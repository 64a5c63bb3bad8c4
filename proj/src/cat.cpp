#include "fiblab/cat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "fiblab/error.hpp"
#include "fiblab/util.hpp"

namespace fiblab::cat {

// ---------------------------------------------------------------- FinCategory

FinCategory::FinCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                         const std::vector<std::array<int, 3>>& compose, std::vector<int> identities)
    : objects_(std::move(objects)), morphisms_(std::move(morphisms)), identities_(std::move(identities)) {
  const int no = object_count();
  const int nm = morphism_count();
  if (static_cast<int>(identities_.size()) != no) throw DomainError("category: one identity per object required");
  for (const auto& m : morphisms_)
    if (m.src < 0 || m.src >= no || m.tgt < 0 || m.tgt >= no) throw DomainError("category: morphism " + m.id + " has an unknown endpoint");
  for (int c = 0; c < no; ++c) {
    int i = identities_[c];
    if (i < 0 || i >= nm || src(i) != c || tgt(i) != c) throw DomainError("category: bad identity for object " + objects_[c]);
  }
  comp_.assign(static_cast<std::size_t>(nm) * static_cast<std::size_t>(nm), -1);
  auto slot = [&](int g, int f) -> int& { return comp_[static_cast<std::size_t>(g) * static_cast<std::size_t>(nm) + static_cast<std::size_t>(f)]; };
  for (int f = 0; f < nm; ++f) {
    slot(id(tgt(f)), f) = f;
    slot(f, id(src(f))) = f;
  }
  for (const auto& [f, g, h] : compose) {
    if (f < 0 || f >= nm || g < 0 || g >= nm || h < 0 || h >= nm) throw DomainError("category: composition entry out of range");
    if (tgt(f) != src(g)) throw DomainError("category: " + morphisms_[g].id + " o " + morphisms_[f].id + " is not composable");
    if (src(h) != src(f) || tgt(h) != tgt(g)) throw DomainError("category: composite " + morphisms_[h].id + " has wrong endpoints");
    int& s = slot(g, f);
    if (s >= 0 && s != h) throw DomainError("category: conflicting composites for " + morphisms_[g].id + " o " + morphisms_[f].id);
    s = h;
  }
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (tgt(f) == src(g) && slot(g, f) < 0)
        throw DomainError("category: composite " + morphisms_[g].id + " o " + morphisms_[f].id + " missing");
  hom_.assign(static_cast<std::size_t>(no) * static_cast<std::size_t>(no), {});
  for (int f = 0; f < nm; ++f) hom_[static_cast<std::size_t>(src(f)) * static_cast<std::size_t>(no) + static_cast<std::size_t>(tgt(f))].push_back(f);
  std::set<std::string> seen;
  for (const auto& m : morphisms_)
    if (!seen.insert(m.id).second) throw DomainError("category: duplicate morphism id " + m.id);
  seen.clear();
  for (const auto& o : objects_)
    if (!seen.insert(o).second) throw DomainError("category: duplicate object " + o);

  // generators: indecomposables, then the smallest missing morphisms until the closure is everything
  std::vector<char> decomposable(static_cast<std::size_t>(nm), 0);
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (!is_identity(g) && !is_identity(f) && comp(g, f) >= 0) decomposable[comp(g, f)] = 1;
  for (int f = 0; f < nm; ++f)
    if (!is_identity(f) && !decomposable[f]) generators_.push_back(f);
  for (;;) {
    std::vector<char> reach(static_cast<std::size_t>(nm), 0);
    std::vector<int> stack;
    for (int c = 0; c < no; ++c) {
      reach[id(c)] = 1;
      stack.push_back(id(c));
    }
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (int g : generators_) {
        int h = comp(g, f);
        if (h >= 0 && !reach[h]) {
          reach[h] = 1;
          stack.push_back(h);
        }
      }
    }
    int missing = -1;
    for (int f = 0; f < nm && missing < 0; ++f)
      if (!reach[f]) missing = f;
    if (missing < 0) break;
    generators_.push_back(missing);
  }
  std::sort(generators_.begin(), generators_.end());
}

int FinCategory::find_object(const std::string& name) const {
  for (int c = 0; c < object_count(); ++c)
    if (objects_[c] == name) return c;
  return -1;
}

int FinCategory::find_morphism(const std::string& name) const {
  for (int f = 0; f < morphism_count(); ++f)
    if (morphisms_[f].id == name) return f;
  return -1;
}

std::string FinCategory::validate() const {
  const int nm = morphism_count();
  for (int f = 0; f < nm; ++f) {
    if (comp(id(tgt(f)), f) != f || comp(f, id(src(f))) != f) return "unit law fails at " + morphisms_[f].id;
    for (int g = 0; g < nm; ++g) {
      int gf = comp(g, f);
      if (gf < 0) continue;
      for (int h = 0; h < nm; ++h) {
        int hg = comp(h, g);
        if (hg < 0) continue;
        if (comp(h, gf) != comp(hg, f))
          return "associativity fails at (" + morphisms_[h].id + ", " + morphisms_[g].id + ", " + morphisms_[f].id + ")";
      }
    }
  }
  return {};
}

void FinCategory::set_concrete(std::vector<int> sizes, std::vector<std::vector<int>> maps) {
  concrete_sizes_ = std::move(sizes);
  concrete_maps_ = std::move(maps);
}

// ---------------------------------------------------------------- standard categories

namespace {

std::string pair_name(const std::vector<std::string>& names, int i, int j) {
  bool short_names = true;
  for (const auto& n : names)
    if (n.size() != 1) short_names = false;
  return short_names ? names[i] + names[j] : names[i] + "-" + names[j];
}

/// Thin category on a preorder relation.
CatPtr thin_category(const std::vector<std::vector<bool>>& rel, const std::vector<std::string>& names) {
  const int n = static_cast<int>(rel.size());
  std::vector<Morphism> ms;
  std::vector<std::vector<int>> idx(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i][j]) {
        idx[i][j] = static_cast<int>(ms.size());
        ms.push_back(Morphism{pair_name(names, i, j), i, j});
      }
  for (int i = 0; i < n; ++i) ids[i] = idx[i][i];
  std::vector<std::array<int, 3>> comp;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (rel[i][j] && rel[j][k]) {
          if (!rel[i][k]) throw DomainError("relation is not transitive");
          comp.push_back({idx[i][j], idx[j][k], idx[i][k]});
        }
  return std::make_shared<FinCategory>(names, std::move(ms), comp, std::move(ids));
}

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(n <= 10 ? std::string(1, static_cast<char>('0' + i)) : std::to_string(i));
  return names;
}

int below(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

}  // namespace

CatPtr ordinal(int n) {
  if (n < 0) throw DomainError("ordinal needs n >= 0");
  std::vector<std::vector<bool>> rel(static_cast<std::size_t>(n + 1), std::vector<bool>(static_cast<std::size_t>(n + 1), false));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) rel[i][j] = true;
  return thin_category(rel, default_names(n + 1));
}

CatPtr poset_category(const std::vector<std::vector<bool>>& leq, std::vector<std::string> names) {
  const int n = static_cast<int>(leq.size());
  if (names.empty()) names = default_names(n);
  for (int i = 0; i < n; ++i) {
    if (!leq[i][i]) throw DomainError("partial order must be reflexive");
    for (int j = 0; j < n; ++j)
      if (i != j && leq[i][j] && leq[j][i]) throw DomainError("partial order must be antisymmetric");
  }
  return thin_category(leq, names);
}

CatPtr groupoid(int l) {
  if (l < 0) throw DomainError("groupoid needs l >= 0");
  std::vector<std::vector<bool>> rel(static_cast<std::size_t>(l + 1), std::vector<bool>(static_cast<std::size_t>(l + 1), true));
  return thin_category(rel, default_names(l + 1));
}

CatPtr terminal_category() { return ordinal(0); }

CatPtr opposite(const FinCategory& c) {
  std::vector<std::string> objs;
  for (int i = 0; i < c.object_count(); ++i) objs.push_back(c.object(i));
  std::vector<Morphism> ms;
  for (int f = 0; f < c.morphism_count(); ++f) ms.push_back(Morphism{c.morphism(f).id, c.tgt(f), c.src(f)});
  std::vector<std::array<int, 3>> comp;
  for (int g = 0; g < c.morphism_count(); ++g)
    for (int f = 0; f < c.morphism_count(); ++f)
      if (int h = c.comp(g, f); h >= 0) comp.push_back({g, f, h});
  std::vector<int> ids;
  for (int i = 0; i < c.object_count(); ++i) ids.push_back(c.id(i));
  return std::make_shared<FinCategory>(std::move(objs), std::move(ms), comp, std::move(ids));
}

CatPtr random_category(std::mt19937_64& rng, int max_objects, int max_morphisms) {
  const int no = 1 + below(rng, max_objects);
  std::vector<int> sizes;
  for (int c = 0; c < no; ++c) sizes.push_back(1 + below(rng, 3));
  struct Fn {
    int src, tgt;
    std::vector<int> v;
  };
  std::vector<Fn> fns;
  for (int c = 0; c < no; ++c) {
    Fn f{c, c, {}};
    for (int x = 0; x < sizes[c]; ++x) f.v.push_back(x);
    fns.push_back(std::move(f));
  }
  auto find = [&](const std::vector<Fn>& fs, const Fn& f) {
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (fs[i].src == f.src && fs[i].tgt == f.tgt && fs[i].v == f.v) return static_cast<int>(i);
    return -1;
  };
  auto close = [&](std::vector<Fn> fs) {
    for (std::size_t changed = 1; changed;) {
      changed = 0;
      const std::size_t n = fs.size();
      for (std::size_t a = 0; a < n && fs.size() <= 64; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (fs[a].tgt == fs[b].src) {
            Fn h{fs[a].src, fs[b].tgt, {}};
            for (int x : fs[a].v) h.v.push_back(fs[b].v[x]);
            if (find(fs, h) < 0) {
              fs.push_back(std::move(h));
              changed = 1;
            }
          }
    }
    return fs;
  };
  const int gens = below(rng, 7);
  for (int k = 0; k < gens; ++k) {
    Fn g{below(rng, no), below(rng, no), {}};
    for (int x = 0; x < sizes[g.src]; ++x) g.v.push_back(below(rng, sizes[g.tgt]));
    if (find(fns, g) >= 0) continue;
    auto next = fns;
    next.push_back(g);
    next = close(std::move(next));
    if (static_cast<int>(next.size()) - no <= max_morphisms) fns = std::move(next);
  }
  std::vector<std::string> names;
  for (int c = 0; c < no; ++c) names.push_back(std::string(1, static_cast<char>('a' + c)));
  std::vector<Morphism> ms;
  std::vector<int> ids;
  int counter = 0;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const auto& f = fns[i];
    if (static_cast<int>(i) < no) {
      ms.push_back(Morphism{"1" + names[f.src], f.src, f.tgt});
      ids.push_back(static_cast<int>(i));
    } else {
      ms.push_back(Morphism{"f" + std::to_string(++counter), f.src, f.tgt});
    }
  }
  std::vector<std::array<int, 3>> comp;
  for (std::size_t a = 0; a < fns.size(); ++a)
    for (std::size_t b = 0; b < fns.size(); ++b)
      if (fns[a].tgt == fns[b].src) {
        Fn h{fns[a].src, fns[b].tgt, {}};
        for (int x : fns[a].v) h.v.push_back(fns[b].v[x]);
        comp.push_back({static_cast<int>(a), static_cast<int>(b), find(fns, h)});
      }
  auto cat = std::make_shared<FinCategory>(names, std::move(ms), comp, std::move(ids));
  std::vector<std::vector<int>> maps;
  for (auto& f : fns) maps.push_back(f.v);
  cat->set_concrete(sizes, std::move(maps));
  return cat;
}

CatPtr random_poset(std::mt19937_64& rng, int n, bool with_top) {
  const int total = n + (with_top ? 1 : 0);
  std::vector<std::vector<bool>> rel(static_cast<std::size_t>(total), std::vector<bool>(static_cast<std::size_t>(total), false));
  for (int i = 0; i < total; ++i) rel[i][i] = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (below(rng, 5) < 2) rel[i][j] = true;
  if (with_top)
    for (int i = 0; i < total; ++i) rel[i][n] = true;
  for (int k = 0; k < total; ++k)
    for (int i = 0; i < total; ++i)
      for (int j = 0; j < total; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;
  return poset_category(rel);
}

// ---------------------------------------------------------------- functors

std::string Functor::validate() const {
  const auto& A = *source;
  const auto& B = *target;
  if (static_cast<int>(on_objects.size()) != A.object_count() || static_cast<int>(on_morphisms.size()) != A.morphism_count())
    return "functor tables have the wrong size";
  for (int f = 0; f < A.morphism_count(); ++f) {
    int g = on_morphisms[f];
    if (g < 0 || g >= B.morphism_count()) return "morphism image out of range";
    if (B.src(g) != on_objects[A.src(f)] || B.tgt(g) != on_objects[A.tgt(f)]) return "functor breaks endpoints at " + A.morphism(f).id;
  }
  for (int c = 0; c < A.object_count(); ++c)
    if (on_morphisms[A.id(c)] != B.id(on_objects[c])) return "functor breaks the identity of " + A.object(c);
  for (int g = 0; g < A.morphism_count(); ++g)
    for (int f = 0; f < A.morphism_count(); ++f)
      if (int h = A.comp(g, f); h >= 0 && on_morphisms[h] != B.comp(on_morphisms[g], on_morphisms[f]))
        return "functor breaks composition at " + A.morphism(g).id + " o " + A.morphism(f).id;
  return {};
}

Functor identity_functor(const CatPtr& c) {
  Functor f{c, c, {}, {}};
  for (int i = 0; i < c->object_count(); ++i) f.on_objects.push_back(i);
  for (int i = 0; i < c->morphism_count(); ++i) f.on_morphisms.push_back(i);
  return f;
}

int SetFunctor::from(int f) const { return variance == Variance::covariant ? base->src(f) : base->tgt(f); }
int SetFunctor::to(int f) const { return variance == Variance::covariant ? base->tgt(f) : base->src(f); }

std::string SetFunctor::validate() const {
  const auto& C = *base;
  if (static_cast<int>(sizes.size()) != C.object_count() || static_cast<int>(maps.size()) != C.morphism_count())
    return "functor tables have the wrong size";
  for (int f = 0; f < C.morphism_count(); ++f) {
    if (static_cast<int>(maps[f].size()) != size(from(f))) return "map of " + C.morphism(f).id + " has the wrong domain";
    for (int y : maps[f])
      if (y < 0 || y >= size(to(f))) return "map of " + C.morphism(f).id + " leaves its codomain";
  }
  for (int c = 0; c < C.object_count(); ++c)
    for (int x = 0; x < size(c); ++x)
      if (apply(C.id(c), x) != x) return "identity of " + C.object(c) + " is not sent to an identity";
  for (int g = 0; g < C.morphism_count(); ++g)
    for (int f = 0; f < C.morphism_count(); ++f) {
      int h = C.comp(g, f);
      if (h < 0) continue;
      for (int x = 0; x < size(from(h)); ++x) {
        int via = variance == Variance::covariant ? apply(g, apply(f, x)) : apply(f, apply(g, x));
        if (apply(h, x) != via) return "composition fails at " + C.morphism(g).id + " o " + C.morphism(f).id;
      }
    }
  return {};
}

SetFunctor representable(const CatPtr& c, int object, Variance variance) {
  const auto& C = *c;
  SetFunctor F{c, variance, {}, {}, {}};
  std::vector<std::vector<int>> elems;
  for (int d = 0; d < C.object_count(); ++d) {
    elems.push_back(variance == Variance::covariant ? C.hom(object, d) : C.hom(d, object));
    F.sizes.push_back(static_cast<int>(elems.back().size()));
    std::vector<std::string> ls;
    for (int h : elems.back()) ls.push_back(C.morphism(h).id);
    F.labels.push_back(std::move(ls));
  }
  auto pos = [&](int d, int h) {
    const auto& e = elems[d];
    return static_cast<int>(std::find(e.begin(), e.end(), h) - e.begin());
  };
  for (int f = 0; f < C.morphism_count(); ++f) {
    std::vector<int> m;
    if (variance == Variance::covariant) {
      for (int h : elems[C.src(f)]) m.push_back(pos(C.tgt(f), C.comp(f, h)));
    } else {
      for (int h : elems[C.tgt(f)]) m.push_back(pos(C.src(f), C.comp(h, f)));
    }
    F.maps.push_back(std::move(m));
  }
  return F;
}

SetFunctor constant_functor(const CatPtr& c, int size, Variance variance) {
  SetFunctor F{c, variance, {}, {}, {}};
  std::vector<int> id;
  std::vector<std::string> ls;
  for (int x = 0; x < size; ++x) {
    id.push_back(x);
    ls.push_back("x" + std::to_string(x));
  }
  F.sizes.assign(static_cast<std::size_t>(c->object_count()), size);
  F.labels.assign(static_cast<std::size_t>(c->object_count()), ls);
  F.maps.assign(static_cast<std::size_t>(c->morphism_count()), id);
  return F;
}

namespace {

SetFunctor coproduct_functor(const std::vector<SetFunctor>& parts) {
  SetFunctor F{parts[0].base, parts[0].variance, {}, {}, {}};
  const auto& C = *F.base;
  std::vector<std::vector<int>> off(parts.size());
  for (int c = 0; c < C.object_count(); ++c) {
    int total = 0;
    std::vector<std::string> ls;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      off[k].push_back(total);
      total += parts[k].size(c);
      for (const auto& l : parts[k].labels[c]) ls.push_back(parts.size() > 1 ? std::to_string(k) + "." + l : l);
    }
    F.sizes.push_back(total);
    F.labels.push_back(std::move(ls));
  }
  for (int f = 0; f < C.morphism_count(); ++f) {
    std::vector<int> m;
    for (std::size_t k = 0; k < parts.size(); ++k)
      for (int y : parts[k].maps[f]) m.push_back(off[k][F.to(f)] + y);
    F.maps.push_back(std::move(m));
  }
  return F;
}

/// Underlying-set functor of a concrete category.
SetFunctor underlying(const CatPtr& c) {
  SetFunctor F{c, Variance::covariant, c->concrete_sizes(), {}, c->concrete_maps()};
  for (int s : F.sizes) {
    std::vector<std::string> ls;
    for (int x = 0; x < s; ++x) ls.push_back("u" + std::to_string(x));
    F.labels.push_back(std::move(ls));
  }
  return F;
}

/// Hom(U(-), {0,1}) on a concrete category.
SetFunctor dual_underlying(const CatPtr& c) {
  const auto& sizes = c->concrete_sizes();
  SetFunctor F{c, Variance::contravariant, {}, {}, {}};
  for (int s : sizes) {
    F.sizes.push_back(1 << s);
    std::vector<std::string> ls;
    for (int code = 0; code < (1 << s); ++code) {
      std::string l = "b";
      for (int x = 0; x < s; ++x) l += static_cast<char>('0' + ((code >> x) & 1));
      ls.push_back(l);
    }
    F.labels.push_back(std::move(ls));
  }
  for (int f = 0; f < c->morphism_count(); ++f) {
    const auto& v = c->concrete_maps()[f];
    std::vector<int> m;
    for (int code = 0; code < (1 << sizes[c->tgt(f)]); ++code) {
      int out = 0;
      for (int x = 0; x < sizes[c->src(f)]; ++x) out |= ((code >> v[x]) & 1) << x;
      m.push_back(out);
    }
    F.maps.push_back(std::move(m));
  }
  return F;
}

}  // namespace

SetFunctor random_functor(const CatPtr& c, Variance variance, std::mt19937_64& rng, int max_size) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    int parts = 1 + below(rng, 2);
    std::vector<SetFunctor> ps;
    for (int k = 0; k < parts; ++k) {
      int kind = below(rng, c->concrete() ? 4 : 2);
      if (kind == 0) {
        ps.push_back(representable(c, below(rng, c->object_count()), variance));
      } else if (kind == 1) {
        ps.push_back(constant_functor(c, below(rng, 3), variance));
      } else if (variance == Variance::covariant) {
        ps.push_back(underlying(c));
      } else {
        ps.push_back(dual_underlying(c));
      }
    }
    auto F = coproduct_functor(ps);
    if (*std::max_element(F.sizes.begin(), F.sizes.end()) <= max_size) return F;
  }
  return constant_functor(c, 1, variance);
}

// ---------------------------------------------------------------- natural transformations

std::vector<NatTrans> natural_transformations(const SetFunctor& F, const SetFunctor& G, std::size_t limit) {
  if (F.base.get() != G.base.get() || F.variance != G.variance) throw ShapeError("natural transformations need functors on one base with one variance");
  const auto& C = *F.base;
  struct V {
    int c, x;
  };
  std::vector<V> vars;
  std::vector<std::vector<int>> var_of(static_cast<std::size_t>(C.object_count()));
  for (int c = 0; c < C.object_count(); ++c)
    for (int x = 0; x < F.size(c); ++x) {
      var_of[c].push_back(static_cast<int>(vars.size()));
      vars.push_back(V{c, x});
    }
  const int n = static_cast<int>(vars.size());
  // constraint u -f-> w : alpha(w) = G(f)(alpha(u))
  struct Con {
    int u, w, f;
  };
  std::vector<std::vector<Con>> cons(static_cast<std::size_t>(n));
  for (int f : C.generators())
    for (int x = 0; x < F.size(F.from(f)); ++x) {
      Con k{var_of[F.from(f)][x], var_of[F.to(f)][F.apply(f, x)], f};
      cons[k.u].push_back(k);
      if (k.w != k.u) cons[k.w].push_back(k);
    }
  // greedy order: most constraints into already ordered variables first
  std::vector<int> order;
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  std::vector<int> links(static_cast<std::size_t>(n), 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!placed[v] && (best < 0 || links[v] > links[best])) best = v;
    placed[best] = 1;
    order.push_back(best);
    for (const auto& k : cons[best]) {
      int other = k.u == best ? k.w : k.u;
      if (!placed[other]) ++links[other];
    }
  }
  std::vector<int> val(static_cast<std::size_t>(n), -1);
  std::vector<NatTrans> out;
  auto consistent = [&](int v) {
    for (const auto& k : cons[v])
      if (val[k.u] >= 0 && val[k.w] >= 0 && val[k.w] != G.apply(k.f, val[k.u])) return false;
    return true;
  };
  std::function<bool(int)> rec = [&](int depth) -> bool {
    if (depth == n) {
      NatTrans a(static_cast<std::size_t>(C.object_count()));
      for (int c = 0; c < C.object_count(); ++c)
        for (int v : var_of[c]) a[c].push_back(val[v]);
      out.push_back(std::move(a));
      return !(limit && out.size() >= limit);
    }
    int v = order[depth];
    int forced = -1;
    for (const auto& k : cons[v])
      if (k.w == v && k.u != v && val[k.u] >= 0) {
        forced = G.apply(k.f, val[k.u]);
        break;
      }
    int lo = forced >= 0 ? forced : 0;
    int hi = forced >= 0 ? forced + 1 : G.size(vars[v].c);
    for (int y = lo; y < hi; ++y) {
      val[v] = y;
      if (consistent(v) && !rec(depth + 1)) return false;
    }
    val[v] = -1;
    return true;
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------- slices and fibered categories

FiberedCategory slice_category(const CatPtr& cp, int object, Direction direction) {
  const auto& C = *cp;
  if (object < 0 || object >= C.object_count()) throw DomainError("slice_category: unknown object");
  const bool under = direction == Direction::under;
  std::vector<int> objs;  // morphisms of C from (under) / to (over) the object
  for (int f = 0; f < C.morphism_count(); ++f)
    if ((under ? C.src(f) : C.tgt(f)) == object) objs.push_back(f);
  std::vector<int> obj_of(static_cast<std::size_t>(C.morphism_count()), -1);
  for (std::size_t i = 0; i < objs.size(); ++i) obj_of[objs[i]] = static_cast<int>(i);
  std::vector<std::string> names;
  for (int f : objs) names.push_back(C.morphism(f).id);
  // morphisms: (a, g) with a an object index; under: a -> g o a;  over: g -> target object a, source a o g
  std::vector<Morphism> ms;
  std::vector<std::pair<int, int>> data;  // (object, g)
  std::map<std::pair<int, int>, int> index;
  for (std::size_t a = 0; a < objs.size(); ++a) {
    int f = objs[a];
    for (int g = 0; g < C.morphism_count(); ++g) {
      if (under) {
        if (C.src(g) != C.tgt(f)) continue;
        int t = obj_of[C.comp(g, f)];
        index[{static_cast<int>(a), g}] = static_cast<int>(ms.size());
        ms.push_back(Morphism{C.morphism(g).id + "@" + C.morphism(f).id, static_cast<int>(a), t});
      } else {
        if (C.tgt(g) != C.src(f)) continue;
        int s = obj_of[C.comp(f, g)];
        index[{static_cast<int>(a), g}] = static_cast<int>(ms.size());
        ms.push_back(Morphism{C.morphism(g).id + "@" + C.morphism(f).id, s, static_cast<int>(a)});
      }
      data.push_back({static_cast<int>(a), g});
    }
  }
  std::vector<int> ids;
  for (std::size_t a = 0; a < objs.size(); ++a) {
    int c = under ? C.tgt(objs[a]) : C.src(objs[a]);
    ids.push_back(index.at({static_cast<int>(a), C.id(c)}));
  }
  std::vector<std::array<int, 3>> comp;
  for (std::size_t p = 0; p < ms.size(); ++p)
    for (std::size_t q = 0; q < ms.size(); ++q) {
      if (ms[p].tgt != ms[q].src) continue;
      // q o p
      auto [ap, gp] = data[p];
      auto [aq, gq] = data[q];
      int h = under ? index.at({ap, C.comp(gq, gp)}) : index.at({aq, C.comp(gq, gp)});
      comp.push_back({static_cast<int>(p), static_cast<int>(q), h});
    }
  auto total = std::make_shared<FinCategory>(names, ms, comp, ids);
  Functor proj{total, cp, {}, {}};
  for (int f : objs) proj.on_objects.push_back(under ? C.tgt(f) : C.src(f));
  for (const auto& [a, g] : data) proj.on_morphisms.push_back(g);
  return FiberedCategory{total, cp, std::move(proj)};
}

FiberedReport fibered_check(const FiberedCategory& p) {
  const auto& D = *p.total;
  const auto& C = *p.base;
  FiberedReport r{true, true, {}, {}};
  for (int f = 0; f < C.morphism_count(); ++f)
    for (int d = 0; d < D.object_count(); ++d) {
      int p_d = p.projection.on_objects[d];
      if (r.fibered_in_sets && p_d == C.tgt(f)) {
        int lifts = 0;
        for (int g = 0; g < D.morphism_count(); ++g)
          if (D.tgt(g) == d && p.projection.on_morphisms[g] == f) ++lifts;
        if (lifts != 1) {
          r.fibered_in_sets = false;
          r.fibered_witness = C.morphism(f).id + " has " + std::to_string(lifts) + " lifts with target " + D.object(d);
        }
      }
      if (r.cofibered_in_sets && p_d == C.src(f)) {
        int lifts = 0;
        for (int g = 0; g < D.morphism_count(); ++g)
          if (D.src(g) == d && p.projection.on_morphisms[g] == f) ++lifts;
        if (lifts != 1) {
          r.cofibered_in_sets = false;
          r.cofibered_witness = C.morphism(f).id + " has " + std::to_string(lifts) + " lifts with source " + D.object(d);
        }
      }
    }
  return r;
}

FiberedCategory grothendieck_cat(const SetFunctor& F) {
  const auto& C = *F.base;
  const bool cov = F.variance == Variance::covariant;
  std::vector<int> first(static_cast<std::size_t>(C.object_count()));
  std::vector<std::string> names;
  for (int c = 0; c < C.object_count(); ++c) {
    first[c] = static_cast<int>(names.size());
    for (int x = 0; x < F.size(c); ++x)
      names.push_back(C.object(c) + ":" + (F.labels.empty() ? std::to_string(x) : F.labels[c][x]));
  }
  // morphisms (f, x) with x in F(from f)
  std::vector<Morphism> ms;
  std::vector<std::pair<int, int>> data;
  std::map<std::pair<int, int>, int> index;
  for (int f = 0; f < C.morphism_count(); ++f)
    for (int x = 0; x < F.size(F.from(f)); ++x) {
      int y = F.apply(f, x);
      int a = first[F.from(f)] + x;
      int b = first[F.to(f)] + y;
      index[{f, x}] = static_cast<int>(ms.size());
      data.push_back({f, x});
      std::string lab = C.morphism(f).id + ":" + (F.labels.empty() ? std::to_string(x) : F.labels[F.from(f)][x]);
      ms.push_back(cov ? Morphism{lab, a, b} : Morphism{lab, b, a});
    }
  std::vector<int> ids;
  for (int c = 0; c < C.object_count(); ++c)
    for (int x = 0; x < F.size(c); ++x) ids.push_back(index.at({C.id(c), x}));
  std::vector<std::array<int, 3>> comp;
  for (std::size_t p = 0; p < ms.size(); ++p)
    for (std::size_t q = 0; q < ms.size(); ++q) {
      if (ms[p].tgt != ms[q].src) continue;
      auto [fp, xp] = data[p];
      auto [fq, xq] = data[q];
      int h = cov ? index.at({C.comp(fq, fp), xp}) : index.at({C.comp(fq, fp), xq});
      comp.push_back({static_cast<int>(p), static_cast<int>(q), h});
    }
  auto total = std::make_shared<FinCategory>(names, ms, comp, ids);
  Functor proj{total, F.base, {}, {}};
  for (int c = 0; c < C.object_count(); ++c)
    for (int x = 0; x < F.size(c); ++x) proj.on_objects.push_back(c);
  for (const auto& [f, x] : data) proj.on_morphisms.push_back(f);
  return FiberedCategory{total, F.base, std::move(proj)};
}

// ---------------------------------------------------------------- tensors

Tensor tensor_functors(const SetFunctor& P, const SetFunctor& F) {
  if (P.base.get() != F.base.get()) throw ShapeError("tensor product of functors on different categories");
  if (P.variance != Variance::contravariant || F.variance != Variance::covariant)
    throw ShapeError("tensor product needs a contravariant and a covariant functor");
  const auto& C = *P.base;
  Tensor t;
  int total = 0;
  for (int c = 0; c < C.object_count(); ++c) {
    t.offset.push_back(total);
    t.fsize.push_back(F.size(c));
    total += P.size(c) * F.size(c);
  }
  auto at = [&](int c, int a, int b) { return t.offset[c] + a * t.fsize[c] + b; };
  UnionFind uf(static_cast<std::size_t>(total));
  for (int f = 0; f < C.morphism_count(); ++f) {
    int c = C.src(f), c2 = C.tgt(f);
    for (int a = 0; a < P.size(c2); ++a)
      for (int b = 0; b < F.size(c); ++b) uf.unite(static_cast<std::size_t>(at(c, P.apply(f, a), b)), static_cast<std::size_t>(at(c2, a, F.apply(f, b))));
  }
  t.class_of.assign(static_cast<std::size_t>(total), -1);
  std::vector<int> root_class(static_cast<std::size_t>(total), -1);
  for (int c = 0; c < C.object_count(); ++c)
    for (int a = 0; a < P.size(c); ++a)
      for (int b = 0; b < F.size(c); ++b) {
        auto r = uf.find(static_cast<std::size_t>(at(c, a, b)));
        if (root_class[r] < 0) {
          root_class[r] = static_cast<int>(t.classes.size());
          t.classes.push_back({c, a, b});
        }
        t.class_of[at(c, a, b)] = root_class[r];
      }
  return t;
}

int FiberedTensor::of(int d, int e) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == std::make_pair(d, e)) return component[i];
  return -1;
}

FiberedTensor tensor_fibered(const FiberedCategory& D, const FiberedCategory& E) {
  if (D.base.get() != E.base.get()) throw ShapeError("tensor of fibered categories over different bases");
  FiberedTensor t;
  std::map<std::pair<int, int>, int> idx;
  for (int d = 0; d < D.total->object_count(); ++d)
    for (int e = 0; e < E.total->object_count(); ++e)
      if (D.projection.on_objects[d] == E.projection.on_objects[e]) {
        idx[{d, e}] = static_cast<int>(t.objects.size());
        t.objects.push_back({d, e});
      }
  UnionFind uf(t.objects.size());
  for (int g = 0; g < D.total->morphism_count(); ++g)
    for (int h = 0; h < E.total->morphism_count(); ++h)
      if (D.projection.on_morphisms[g] == E.projection.on_morphisms[h])
        uf.unite(static_cast<std::size_t>(idx.at({D.total->src(g), E.total->src(h)})),
                 static_cast<std::size_t>(idx.at({D.total->tgt(g), E.total->tgt(h)})));
  std::map<std::size_t, int> comp_of_root;
  for (std::size_t i = 0; i < t.objects.size(); ++i) {
    auto r = uf.find(i);
    auto it = comp_of_root.find(r);
    if (it == comp_of_root.end()) it = comp_of_root.emplace(r, t.count++).first;
    t.component.push_back(it->second);
  }
  return t;
}

std::vector<Functor> functors_over(const FiberedCategory& A, const FiberedCategory& D, std::size_t limit) {
  if (A.base.get() != D.base.get()) throw ShapeError("functors over different bases");
  const auto& a = *A.total;
  const auto& d = *D.total;
  const int no = a.object_count();
  const int nm = a.morphism_count();
  std::vector<int> obj(static_cast<std::size_t>(no), -1), mor(static_cast<std::size_t>(nm), -1);
  std::vector<Functor> out;
  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == no + nm) {
      out.push_back(Functor{A.total, D.total, obj, mor});
      return !(limit && out.size() >= limit);
    }
    if (k < no) {
      for (int x = 0; x < d.object_count(); ++x) {
        if (D.projection.on_objects[x] != A.projection.on_objects[k]) continue;
        obj[k] = x;
        if (!rec(k + 1)) return false;
      }
      obj[k] = -1;
      return true;
    }
    int f = k - no;
    for (int g = 0; g < d.morphism_count(); ++g) {
      if (D.projection.on_morphisms[g] != A.projection.on_morphisms[f]) continue;
      if (d.src(g) != obj[a.src(f)] || d.tgt(g) != obj[a.tgt(f)]) continue;
      if (a.is_identity(f) && g != d.id(obj[a.src(f)])) continue;
      mor[f] = g;
      bool ok = true;
      for (int p = 0; p <= f && ok; ++p)
        for (int q = 0; q <= f && ok; ++q) {
          int h = a.comp(q, p);
          if (h < 0 || h > f || (p != f && q != f && h != f)) continue;
          if (mor[h] != d.comp(mor[q], mor[p])) ok = false;
        }
      if (ok && !rec(k + 1)) return false;
    }
    mor[f] = -1;
    return true;
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------- Yoneda checks

const char* mode_name(YonedaMode m) {
  switch (m) {
    case YonedaMode::hom_functor:
      return "hom_functor";
    case YonedaMode::tensor_functor:
      return "tensor_functor";
    case YonedaMode::hom_fibered:
      return "hom_fibered";
    case YonedaMode::tensor_fibered:
      return "tensor_fibered";
  }
  return "?";
}

namespace {

/// Fills bijection/detail from an image vector over a codomain of the given size.
void judge(YonedaReport& r, const std::vector<int>& image, std::size_t codomain) {
  r.lhs = image.size();
  r.rhs = codomain;
  std::vector<int> hits(codomain, 0);
  for (int y : image) {
    if (y < 0) {
      r.bijection = false;
      r.detail = "canonical map is not well defined";
      return;
    }
    ++hits[static_cast<std::size_t>(y)];
  }
  for (std::size_t y = 0; y < codomain; ++y)
    if (hits[y] != 1) {
      r.bijection = false;
      r.detail = "element " + std::to_string(y) + " of the right side has " + std::to_string(hits[y]) + " preimages";
      return;
    }
  r.bijection = true;
}

std::string elem_label(const SetFunctor& F, int c, int x) {
  return F.labels.empty() ? std::to_string(x) : F.labels[c][x];
}

}  // namespace

YonedaReport yoneda_hom_functor(const SetFunctor& F, int c) {
  YonedaReport r;
  r.mode = YonedaMode::hom_functor;
  auto H = representable(F.base, c, F.variance);
  auto nats = natural_transformations(H, F);
  const auto& homcc = F.base->hom(c, c);
  int id_pos = static_cast<int>(std::find(homcc.begin(), homcc.end(), F.base->id(c)) - homcc.begin());
  std::vector<int> image;
  for (std::size_t i = 0; i < nats.size(); ++i) {
    int y = nats[i][c][id_pos];
    image.push_back(y);
    r.table.push_back({"nat" + std::to_string(i), elem_label(F, c, y)});
  }
  judge(r, image, static_cast<std::size_t>(F.size(c)));
  return r;
}

YonedaReport yoneda_tensor_functor(const SetFunctor& F, int c) {
  YonedaReport r;
  r.mode = YonedaMode::tensor_functor;
  const auto& C = *F.base;
  const bool contra = F.variance == Variance::contravariant;
  // contravariant F: Hom(c,-) (x) F, elements (c', a in F(c'), f: c -> c') -> F(f)(a)
  // covariant F:     Hom(-,c) (x) F, elements (c', f: c' -> c, b in F(c')) -> F(f)(b)
  auto H = representable(F.base, c, contra ? Variance::covariant : Variance::contravariant);
  Tensor t = contra ? tensor_functors(F, H) : tensor_functors(H, F);
  std::vector<int> image(t.size(), -2);
  for (int d = 0; d < C.object_count(); ++d) {
    const auto& homs = contra ? C.hom(c, d) : C.hom(d, c);
    for (int x = 0; x < F.size(d); ++x)
      for (std::size_t k = 0; k < homs.size(); ++k) {
        int y = F.apply(homs[k], x);
        int cls = contra ? t.of(d, x, static_cast<int>(k)) : t.of(d, static_cast<int>(k), x);
        if (image[cls] == -2) {
          image[cls] = y;
        } else if (image[cls] != y) {
          image[cls] = -1;
        }
      }
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto [d, a, b] = t.classes[i];
    std::string lhs = contra ? "(" + C.morphism(C.hom(c, d)[b]).id + "," + elem_label(F, d, a) + ")"
                             : "(" + C.morphism(C.hom(d, c)[a]).id + "," + elem_label(F, d, b) + ")";
    r.table.push_back({lhs, image[i] >= 0 ? elem_label(F, c, image[i]) : "?"});
  }
  judge(r, image, static_cast<std::size_t>(F.size(c)));
  return r;
}

YonedaReport yoneda_hom_fibered(const FiberedCategory& D, int c) {
  YonedaReport r;
  r.mode = YonedaMode::hom_fibered;
  auto fr = fibered_check(D);
  if (!fr.fibered_in_sets) throw PreconditionError("hom_fibered needs a category fibered in sets: " + fr.fibered_witness);
  auto over = slice_category(D.base, c, Direction::over);
  auto funs = functors_over(over, D);
  int id_obj = over.total->find_object(D.base->morphism(D.base->id(c)).id);
  std::vector<int> fiber;
  for (int x = 0; x < D.total->object_count(); ++x)
    if (D.projection.on_objects[x] == c) fiber.push_back(x);
  std::vector<int> image;
  for (std::size_t i = 0; i < funs.size(); ++i) {
    int x = funs[i].on_objects[id_obj];
    int pos = static_cast<int>(std::find(fiber.begin(), fiber.end(), x) - fiber.begin());
    image.push_back(pos < static_cast<int>(fiber.size()) ? pos : -1);
    r.table.push_back({"functor" + std::to_string(i), D.total->object(x)});
  }
  judge(r, image, fiber.size());
  return r;
}

YonedaReport yoneda_tensor_fibered(const FiberedCategory& D, int c) {
  YonedaReport r;
  r.mode = YonedaMode::tensor_fibered;
  auto fr = fibered_check(D);
  if (!fr.fibered_in_sets) throw PreconditionError("tensor_fibered needs a category fibered in sets: " + fr.fibered_witness);
  const auto& C = *D.base;
  const auto& T = *D.total;
  auto under = slice_category(D.base, c, Direction::under);
  auto lhs = tensor_fibered(under, D);
  // right side: pi_0 of the fiber over c
  FiberedCategory point_c{terminal_category(), D.base, {}};
  point_c.projection = Functor{point_c.total, D.base, {c}, {C.id(c)}};
  auto rhs = tensor_fibered(point_c, D);
  std::vector<int> image(static_cast<std::size_t>(lhs.count), -2);
  for (std::size_t i = 0; i < lhs.objects.size(); ++i) {
    auto [u, x] = lhs.objects[i];
    int f = C.find_morphism(under.total->object(u));
    // unique lift of f: c -> c' with target x
    int lift = -1;
    for (int g = 0; g < T.morphism_count(); ++g)
      if (T.tgt(g) == x && D.projection.on_morphisms[g] == f) lift = g;
    int y = rhs.of(0, T.src(lift));
    int& slot = image[lhs.component[i]];
    if (slot == -2) {
      slot = y;
    } else if (slot != y) {
      slot = -1;
    }
  }
  for (int k = 0; k < lhs.count; ++k) {
    std::size_t rep = 0;
    while (lhs.component[rep] != k) ++rep;
    auto [u, x] = lhs.objects[rep];
    std::string img = "?";
    if (image[k] >= 0)
      for (std::size_t j = 0; j < rhs.objects.size(); ++j)
        if (rhs.component[j] == image[k]) {
          img = T.object(rhs.objects[j].second);
          break;
        }
    r.table.push_back({"(" + under.total->object(u) + "," + T.object(x) + ")", img});
  }
  judge(r, image, static_cast<std::size_t>(rhs.count));
  return r;
}

HomTensorReport hom_tensor_check(const SetFunctor& P, const SetFunctor& F, int s) {
  if (s < 1) throw DomainError("hom_tensor_check needs a nonempty set S");
  const auto& C = *P.base;
  // H(c) = S^{F(c)}, encoded base s with digit b = phi(b)
  SetFunctor H{P.base, Variance::contravariant, {}, {}, {}};
  std::vector<std::vector<int>> pw(static_cast<std::size_t>(C.object_count()));
  for (int c = 0; c < C.object_count(); ++c) {
    int n = 1;
    pw[c].push_back(1);
    for (int b = 0; b < F.size(c); ++b) {
      n *= s;
      pw[c].push_back(n);
    }
    if (n > 4096) throw PreconditionError("hom_tensor_check: S^F(c) too large to enumerate");
    H.sizes.push_back(n);
  }
  auto digit = [&](int c, int code, int b) { return (code / pw[c][b]) % s; };
  for (int f = 0; f < C.morphism_count(); ++f) {
    int c = C.src(f), c2 = C.tgt(f);
    std::vector<int> m;
    for (int code = 0; code < H.sizes[c2]; ++code) {
      int out = 0;
      for (int b = 0; b < F.size(c); ++b) out += digit(c2, code, F.apply(f, b)) * pw[c][b];
      m.push_back(out);
    }
    H.maps.push_back(std::move(m));
  }
  HomTensorReport r;
  Tensor t = tensor_functors(P, F);
  double rhs = 1;
  for (std::size_t k = 0; k < t.size(); ++k) rhs *= s;
  if (rhs > kHomTensorCap) throw PreconditionError("hom_tensor_check: |S|^|P (x) F| exceeds the enumeration cap");
  r.rhs = static_cast<std::size_t>(rhs);
  auto nats = natural_transformations(P, H, r.rhs + 1);
  r.lhs = nats.size();
  std::set<std::vector<int>> images;
  for (const auto& a : nats) {
    std::vector<int> phi(t.size(), -1);
    for (int c = 0; c < C.object_count(); ++c)
      for (int x = 0; x < P.size(c); ++x)
        for (int b = 0; b < F.size(c); ++b) {
          int v = digit(c, a[c][x], b);
          int& slot = phi[t.of(c, x, b)];
          if (slot >= 0 && slot != v) {
            r.detail = "transpose of a natural transformation is not constant on a class";
            return r;
          }
          slot = v;
        }
    images.insert(phi);
  }
  r.bijection = images.size() == r.lhs && r.lhs == r.rhs;
  if (!r.bijection) r.detail = "|Nat| = " + std::to_string(r.lhs) + ", |Hom(P (x) F, S)| = " + std::to_string(r.rhs);
  return r;
}

// ---------------------------------------------------------------- nerve

sset::KeyedSet nerve_keyed(const FinCategory& C, int T) {
  if (T < 0) throw DomainError("nerve needs T >= 0");
  // exactness: no chain of T+1 non-identity morphisms
  bool longer = false;
  std::function<void(int, int)> dfs = [&](int obj, int len) {
    if (longer) return;
    if (len == T + 1) {
      longer = true;
      return;
    }
    for (int f = 0; f < C.morphism_count(); ++f)
      if (C.src(f) == obj && !C.is_identity(f)) dfs(C.tgt(f), len + 1);
  };
  for (int c = 0; c < C.object_count() && !longer; ++c) dfs(c, 0);

  sset::KeyedSpec spec;
  spec.dim_bound = T;
  spec.exact = !longer;
  spec.simplices = [&](int d) {
    std::vector<sset::Key> out;
    if (d == 0) {
      for (int c = 0; c < C.object_count(); ++c) out.push_back({c});
      return out;
    }
    sset::Key chain;
    std::function<void(int)> grow = [&](int obj) {
      if (static_cast<int>(chain.size()) == d) {
        out.push_back(chain);
        return;
      }
      for (int f = 0; f < C.morphism_count(); ++f)
        if (obj < 0 || C.src(f) == obj) {
          chain.push_back(f);
          grow(C.tgt(f));
          chain.pop_back();
        }
    };
    grow(-1);
    return out;
  };
  spec.face = [&](const sset::Key& k, int d, int i) -> sset::Key {
    if (d == 1) return {i == 0 ? C.tgt(k[0]) : C.src(k[0])};
    sset::Key out;
    for (int j = 0; j < d; ++j) {
      if (i == 0 && j == 0) continue;
      if (i == d && j == d - 1) continue;
      if (i > 0 && i < d && j == i - 1) {
        out.push_back(C.comp(k[i], k[i - 1]));
        ++j;
        continue;
      }
      out.push_back(k[j]);
    }
    return out;
  };
  spec.degeneracy = [&](const sset::Key& k, int d, int j) -> sset::Key {
    if (d == 0) return {C.id(k[0])};
    int obj = j < d ? C.src(k[j]) : C.tgt(k[d - 1]);
    sset::Key out = k;
    out.insert(out.begin() + j, C.id(obj));
    return out;
  };
  spec.label = [&](const sset::Key& k, int d) {
    if (d == 0) return C.object(k[0]);
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) s += ',';
      s += C.morphism(k[i]).id;
    }
    return s;
  };
  return sset::build_keyed(spec);
}

sset::SSetPtr nerve(const FinCategory& c, int T) { return nerve_keyed(c, T).set; }

}  // namespace fiblab::cat
