#include <algorithm>
#include <unordered_map>

#include "fiblab/error.hpp"
#include "fiblab/sset.hpp"
#include "search.hpp"

namespace fiblab::detail {

namespace {

enum class Det { none, pinned, degeneracy, face };

struct Var {
  int m = 0;
  int c = 0;
  int d = 0;
  bool has_incoming = false;
  Det det = Det::none;
  int det_var = -1;  // var whose value forces this one
  int det_index = 0; // degeneracy j or face i
};

/// A binary constraint checked when the later of its two variables is assigned.
struct Link {
  enum Kind { vface, vcoface, hface, hcoface, deg_in, deg_out } kind;
  int other;           // var
  int index;           // face or degeneracy index
  Simplex x;           // the relating simplex (meaning depends on kind)
};

using Bucket = std::unordered_map<std::uint64_t, std::vector<Simplex>>;

}  // namespace

std::size_t solve(const SearchProblem& P, const std::function<bool(const Assignment&)>& emit) {
  const int L = static_cast<int>(P.a.size());
  if (static_cast<int>(P.b.size()) != L) throw ShapeError("search: level count mismatch");
  const bool spaces = L > 1;

  std::vector<Var> vars;
  std::vector<std::vector<int>> var_of(static_cast<std::size_t>(L));
  for (int m = 0; m < L; ++m) {
    var_of[m].assign(static_cast<std::size_t>(P.a[m]->cell_count()), -1);
    for (int c = 0; c < P.a[m]->cell_count(); ++c) {
      Var v;
      v.m = m;
      v.c = c;
      v.d = P.a[m]->cell_dim(c);
      var_of[m][c] = static_cast<int>(vars.size());
      vars.push_back(v);
    }
  }
  const int nv = static_cast<int>(vars.size());
  auto pin_of = [&](int m, int c) -> const std::optional<Simplex>* {
    if (m >= static_cast<int>(P.pinned.size()) || P.pinned[m].empty()) return nullptr;
    const auto& p = P.pinned[m][c];
    return p ? &p : nullptr;
  };

  // all relations, stored on both endpoints
  std::vector<std::vector<Link>> links(static_cast<std::size_t>(nv));
  // forcing relations: (forcing var, forced var, kind, index)
  std::vector<std::vector<std::pair<int, std::pair<Det, int>>>> forces(static_cast<std::size_t>(nv));
  for (int m = 0; m < L; ++m) {
    const auto& A = *P.a[m];
    for (int c = 0; c < A.cell_count(); ++c) {
      const int v = var_of[m][c];
      for (int i = 0; i <= A.cell_dim(c) && A.cell_dim(c) > 0; ++i) {
        const Simplex& x = A.cell_face(c, i);
        const int w = var_of[m][x.cell];
        links[v].push_back(Link{Link::vface, w, i, x});
        links[w].push_back(Link{Link::vcoface, v, i, x});
      }
      if (spaces && m > 0)
        for (int i = 0; i <= m; ++i) {
          const Simplex& x = P.a_face[m][i]->assign[c];
          const int w = var_of[m - 1][x.cell];
          links[v].push_back(Link{Link::hface, w, i, x});
          links[w].push_back(Link{Link::hcoface, v, i, x});
          if (x.ties == 0) forces[v].push_back({w, {Det::face, i}});
        }
      if (spaces && m + 1 < L)
        for (int j = 0; j <= m; ++j) {
          const Simplex& s = P.a_deg[m][j]->assign[c];
          const int w = var_of[m + 1][s.cell];
          vars[w].has_incoming = true;
          links[w].push_back(Link{Link::deg_in, v, j, s});
          links[v].push_back(Link{Link::deg_out, w, j, s});
          if (s.ties == 0) forces[v].push_back({w, {Det::degeneracy, j}});
        }
    }
  }

  // static variable order: forced variables as soon as possible, otherwise free variables
  // from the highest level down, lowest dimension first
  std::vector<int> order;
  std::vector<int> pos(static_cast<std::size_t>(nv), -1);
  std::vector<int> free_list(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) free_list[v] = v;
  std::stable_sort(free_list.begin(), free_list.end(), [&](int a, int b) {
    const auto& x = vars[a];
    const auto& y = vars[b];
    if (x.has_incoming != y.has_incoming) return !x.has_incoming;
    if (x.m != y.m) return x.m > y.m;
    return x.d < y.d;
  });
  std::vector<int> ready;
  for (int v = 0; v < nv; ++v)
    if (pin_of(vars[v].m, vars[v].c)) {
      vars[v].det = Det::pinned;
      ready.push_back(v);
    }
  std::size_t free_pos = 0;
  auto place = [&](int v) {
    pos[v] = static_cast<int>(order.size());
    order.push_back(v);
    for (const auto& [w, how] : forces[v])
      if (pos[w] < 0 && vars[w].det == Det::none) {
        vars[w].det = how.first;
        vars[w].det_var = v;
        vars[w].det_index = how.second;
        ready.push_back(w);
      }
  };
  while (static_cast<int>(order.size()) < nv) {
    int next = -1;
    while (!ready.empty()) {
      int v = ready.back();
      ready.pop_back();
      if (pos[v] < 0) {
        next = v;
        break;
      }
    }
    if (next < 0) {
      while (pos[free_list[free_pos]] >= 0) ++free_pos;
      next = free_list[free_pos];
    }
    place(next);
  }
  // keep only links to earlier variables
  for (int v = 0; v < nv; ++v) {
    auto& lk = links[v];
    lk.erase(std::remove_if(lk.begin(), lk.end(), [&](const Link& l) { return pos[l.other] > pos[v] || l.other == v; }), lk.end());
  }

  Assignment val(static_cast<std::size_t>(L));
  for (int m = 0; m < L; ++m) val[m].resize(static_cast<std::size_t>(P.a[m]->cell_count()));
  auto value = [&](int w) -> const Simplex& { return val[vars[w].m][vars[w].c]; };
  auto degen = [&](int m, const Simplex& y, const Simplex& x) {
    return x.ties == 0 ? y : P.b[m]->degenerate(y, x.ties, x.dim);
  };

  auto has_over = [&](int m) { return m < static_cast<int>(P.over_q.size()) && P.over_q[m] != nullptr; };

  // candidate indexes
  std::vector<std::unordered_map<int, Bucket>> face0_index(static_cast<std::size_t>(L));
  std::vector<std::unordered_map<int, std::vector<Simplex>>> all_index(static_cast<std::size_t>(L));
  std::vector<Bucket> vertex_over(static_cast<std::size_t>(L));
  std::vector<char> vertex_over_built(static_cast<std::size_t>(L), 0);
  std::vector<std::vector<Simplex>> vertices(static_cast<std::size_t>(L));
  std::vector<char> vertices_built(static_cast<std::size_t>(L), 0);
  static const std::vector<Simplex> kNone;

  auto face0_bucket = [&](int m, int d, const Simplex& f0) -> const std::vector<Simplex>& {
    auto& byd = face0_index[m];
    auto it = byd.find(d);
    if (it == byd.end()) {
      Bucket bk;
      for (const auto& s : P.b[m]->simplices(d)) bk[P.b[m]->face(s, 0).key()].push_back(s);
      it = byd.emplace(d, std::move(bk)).first;
    }
    auto jt = it->second.find(f0.key());
    return jt == it->second.end() ? kNone : jt->second;
  };
  auto all_of_dim = [&](int m, int d) -> const std::vector<Simplex>& {
    auto it = all_index[m].find(d);
    if (it == all_index[m].end()) it = all_index[m].emplace(d, P.b[m]->simplices(d)).first;
    return it->second;
  };
  auto vertex_list = [&](int m, int c) -> const std::vector<Simplex>& {
    if (has_over(m)) {
      if (!vertex_over_built[m]) {
        for (int v = 0; v < P.b[m]->vertex_count(); ++v) {
          Simplex s{v, 0, 0};
          vertex_over[m][(*P.over_q[m])(s).key()].push_back(s);
        }
        vertex_over_built[m] = 1;
      }
      auto it = vertex_over[m].find(P.over_values[m][c].key());
      return it == vertex_over[m].end() ? kNone : it->second;
    }
    if (!vertices_built[m]) {
      for (int v = 0; v < P.b[m]->vertex_count(); ++v) vertices[m].push_back(Simplex{v, 0, 0});
      vertices_built[m] = 1;
    }
    return vertices[m];
  };

  auto check = [&](int vi, const Simplex& s) -> bool {
    const Var& v = vars[vi];
    const auto& B = *P.b[v.m];
    if (s.dim != v.d) return false;
    if (const auto* pin = pin_of(v.m, v.c); pin && !(**pin == s)) return false;
    if (has_over(v.m) && !((*P.over_q[v.m])(s) == P.over_values[v.m][v.c])) return false;
    for (const auto& l : links[vi]) {
      const Simplex& o = value(l.other);
      switch (l.kind) {
        case Link::vface:  // x = face i of this cell
          if (!(B.face(s, l.index) == degen(v.m, o, l.x))) return false;
          break;
        case Link::vcoface:  // x = face i of the other cell, x lives on this cell
          if (!(B.face(o, l.index) == degen(v.m, s, l.x))) return false;
          break;
        case Link::hface:
          if (!((*P.b_face[v.m][l.index])(s) == degen(v.m - 1, o, l.x))) return false;
          break;
        case Link::hcoface:
          if (!((*P.b_face[v.m + 1][l.index])(o) == degen(v.m, s, l.x))) return false;
          break;
        case Link::deg_in:
          if (!(degen(v.m, s, l.x) == (*P.b_deg[v.m - 1][l.index])(o))) return false;
          break;
        case Link::deg_out:
          if (!((*P.b_deg[v.m][l.index])(s) == degen(v.m + 1, o, l.x))) return false;
          break;
      }
    }
    return true;
  };

  std::size_t found = 0;
  if (nv == 0) {
    emit(val);
    return 1;
  }
  std::vector<const std::vector<Simplex>*> lists(static_cast<std::size_t>(nv), nullptr);
  std::vector<std::size_t> cursor(static_cast<std::size_t>(nv), 0);
  std::vector<std::vector<Simplex>> single(static_cast<std::size_t>(nv), std::vector<Simplex>(1));

  auto init = [&](int k) {
    const int vi = order[k];
    const Var& v = vars[vi];
    cursor[k] = 0;
    switch (v.det) {
      case Det::pinned:
        single[k][0] = **pin_of(v.m, v.c);
        lists[k] = &single[k];
        return;
      case Det::degeneracy:
        single[k][0] = (*P.b_deg[v.m - 1][v.det_index])(value(v.det_var));
        lists[k] = &single[k];
        return;
      case Det::face:
        single[k][0] = (*P.b_face[v.m + 1][v.det_index])(value(v.det_var));
        lists[k] = &single[k];
        return;
      case Det::none:
        break;
    }
    if (v.d == 0) {
      lists[k] = &vertex_list(v.m, v.c);
      return;
    }
    const Simplex& f0 = P.a[v.m]->cell_face(v.c, 0);
    const int w = var_of[v.m][f0.cell];
    if (pos[w] < k)
      lists[k] = &face0_bucket(v.m, v.d, degen(v.m, value(w), f0));
    else
      lists[k] = &all_of_dim(v.m, v.d);
  };

  int k = 0;
  init(0);
  while (k >= 0) {
    const auto& lst = *lists[k];
    bool advanced = false;
    while (cursor[k] < lst.size()) {
      const Simplex& s = lst[cursor[k]++];
      if (!check(order[k], s)) continue;
      val[vars[order[k]].m][vars[order[k]].c] = s;
      if (k == nv - 1) {
        ++found;
        if (!emit(val)) return found;
        if (P.limit && found >= P.limit) return found;
        continue;
      }
      ++k;
      init(k);
      advanced = true;
      break;
    }
    if (!advanced) --k;
  }
  return found;
}

}  // namespace fiblab::detail

namespace fiblab::sset {

namespace {

Key encode(const std::vector<Simplex>& assign) {
  Key k;
  k.reserve(assign.size() * 2);
  for (const auto& s : assign) {
    k.push_back(s.cell);
    k.push_back(static_cast<int>(s.ties));
  }
  return k;
}

std::vector<Simplex> decode(const Key& k, const FinSimplicialSet& source) {
  std::vector<Simplex> out(static_cast<std::size_t>(source.cell_count()));
  for (int c = 0; c < source.cell_count(); ++c)
    out[c] = Simplex{k[2 * c], source.cell_dim(c), static_cast<std::uint32_t>(k[2 * c + 1])};
  return out;
}

}  // namespace

bool hom_trusted(const FinSimplicialSet& a, const FinSimplicialSet& b, std::string* why) {
  if (!a.exact()) {
    if (why) *why = "source is truncated at dimension " + std::to_string(a.dim_bound()) + "; maps are counted on the truncation";
    return false;
  }
  if (!b.exact() && a.top_dim() > b.dim_bound()) {
    if (why)
      *why = "source has cells of dimension " + std::to_string(a.top_dim()) + " beyond the target truncation " +
             std::to_string(b.dim_bound());
    return false;
  }
  return true;
}

HomResult hom_set(const SSetPtr& a, const SSetPtr& b, const HomOptions& opts) {
  detail::SearchProblem P;
  P.a = {a.get()};
  P.b = {b.get()};
  if (opts.target_over) {
    if (opts.target_over->source.get() != b.get()) throw ShapeError("hom_set: structure map does not start at the target");
    if (static_cast<int>(opts.over_values.size()) != a->cell_count()) throw ShapeError("hom_set: over_values size");
    P.over_q = {opts.target_over};
    P.over_values = {opts.over_values};
  }
  if (!opts.pinned.empty()) {
    if (static_cast<int>(opts.pinned.size()) != a->cell_count()) throw ShapeError("hom_set: pinned size");
    P.pinned = {opts.pinned};
  }
  P.limit = opts.limit;
  HomResult r;
  detail::solve(P, [&](const detail::Assignment& v) {
    r.maps.push_back(SSetMap{a, b, v[0]});
    return true;
  });
  std::string why;
  if (!hom_trusted(*a, *b, &why)) {
    r.bounded = true;
    r.warning = why;
  }
  return r;
}

SSetPtr mapping_space(const SSetPtr& a, const SSetPtr& b, int l_max, std::string* warning) {
  if (l_max < 0) throw DomainError("mapping_space needs l_max >= 0");
  std::vector<Product> prods;
  std::vector<SSetPtr> deltas;
  for (int l = 0; l <= l_max; ++l) {
    deltas.push_back(delta(l));
    prods.push_back(product(a, deltas.back()));
  }
  auto id_a = identity_map(a);
  // face maps a x D[l-1] -> a x D[l] and degeneracy maps a x D[l+1] -> a x D[l]
  std::vector<std::vector<SSetMap>> fmaps(static_cast<std::size_t>(l_max + 1)), dmaps(static_cast<std::size_t>(l_max + 1));
  for (int l = 1; l <= l_max; ++l)
    for (int i = 0; i <= l; ++i) {
      auto df = delta_functor(poset::coface(l, i));
      df.source = deltas[l - 1];
      df.target = deltas[l];
      fmaps[l].push_back(product_map(prods[l - 1], prods[l], {id_a, df}));
    }
  for (int l = 0; l < l_max; ++l)
    for (int j = 0; j <= l; ++j) {
      auto dg = delta_functor(poset::codegeneracy(l, j));
      dg.source = deltas[l + 1];
      dg.target = deltas[l];
      dmaps[l].push_back(product_map(prods[l + 1], prods[l], {id_a, dg}));
    }
  bool trusted = true;
  std::string why;
  std::vector<std::vector<Key>> homs(static_cast<std::size_t>(l_max + 1));
  for (int l = 0; l <= l_max; ++l) {
    auto r = hom_set(prods[l].set, b);
    if (r.bounded) {
      trusted = false;
      why = r.warning;
    }
    for (auto& f : r.maps) homs[l].push_back(encode(f.assign));
  }
  auto precompose = [&](const Key& k, const Product& from, const SSetMap& psi) {
    auto phi = decode(k, *from.set);
    SSetMap f{from.set, b, std::move(phi)};
    std::vector<Simplex> out;
    out.reserve(psi.assign.size());
    for (const auto& s : psi.assign) out.push_back(f(s));
    return encode(out);
  };
  KeyedSpec spec;
  spec.dim_bound = l_max;
  spec.exact = trusted && b->is_discrete() && b->exact();
  spec.simplices = [&](int l) { return homs[l]; };
  spec.face = [&](const Key& k, int l, int i) { return precompose(k, prods[l], fmaps[l][i]); };
  spec.degeneracy = [&](const Key& k, int l, int j) { return precompose(k, prods[l], dmaps[l][j]); };
  spec.label = [&](const Key& k, int l) {
    auto phi = decode(k, *prods[l].set);
    std::string s = "[";
    for (std::size_t i = 0; i < phi.size(); ++i) {
      if (i) s += ',';
      s += b->ref(phi[i]);
    }
    return s + "]";
  };
  auto ks = build_keyed(spec);
  if (warning) *warning = trusted ? std::string() : why;
  return ks.set;
}

LiftResult find_lift(const SSetMap& p, const SSetMap& i, const SSetMap& u, const SSetMap& v) {
  if (u.source.get() != i.source.get() || u.target.get() != p.source.get() || v.source.get() != i.target.get() ||
      v.target.get() != p.target.get())
    throw ShapeError("lifting square has mismatched objects");
  if (!i.injective()) throw PreconditionError("lifting problems need an injective left map");
  for (int c = 0; c < i.source->cell_count(); ++c)
    if (!(p(u.assign[c]) == v(i.assign[c]))) throw ShapeError("lifting square does not commute");
  HomOptions opts;
  opts.target_over = &p;
  opts.over_values = v.assign;
  opts.pinned.assign(static_cast<std::size_t>(i.target->cell_count()), std::nullopt);
  for (int c = 0; c < i.source->cell_count(); ++c) opts.pinned[i.assign[c].cell] = u.assign[c];
  opts.limit = 1;
  auto r = hom_set(i.target, p.source, opts);
  LiftResult out;
  out.squares = 1;
  out.bounded = r.bounded;
  if (!r.maps.empty()) {
    out.found = true;
    out.lift = std::move(r.maps.front());
  } else {
    out.failing_square = std::make_pair(u, v);
  }
  return out;
}

LiftResult has_rlp(const SSetMap& p, const SSetMap& i) {
  if (!i.injective()) throw PreconditionError("lifting problems need an injective left map");
  LiftResult out;
  out.found = true;
  auto vs = hom_set(i.target, p.target);
  out.bounded = vs.bounded;
  for (const auto& v : vs.maps) {
    auto vi = compose(v, i);
    HomOptions opts;
    opts.target_over = &p;
    opts.over_values = vi.assign;
    auto us = hom_set(i.source, p.source, opts);
    out.bounded = out.bounded || us.bounded;
    for (const auto& u : us.maps) {
      ++out.squares;
      auto r = find_lift(p, i, u, v);
      out.bounded = out.bounded || r.bounded;
      if (!r.found) {
        out.found = false;
        out.failing_square = std::make_pair(u, v);
        return out;
      }
      if (!out.lift) out.lift = r.lift;
    }
  }
  return out;
}

KanReport kan_check(const SSetMap& p, int bound) {
  if (bound < 1) throw DomainError("kan_check needs bound >= 1");
  KanReport rep;
  rep.bound = bound;
  auto note = [&](const LiftResult& r) { rep.bounded = rep.bounded || r.bounded; };
  for (int n = 1; n <= bound; ++n) {
    auto full = delta(n);
    for (int i = 0; i <= n; ++i) {
      auto h = horn(n, i);
      auto inc = inclusion_into_delta(h, n);
      inc.target = full;
      auto r = has_rlp(p, inc);
      note(r);
      if (!r.found) {
        rep.fibration_up_to_bound = false;
        rep.trivial_fibration_up_to_bound = false;
        rep.failures.push_back(KanFailure{"horn", n, i});
      }
    }
  }
  for (int n = 0; n <= bound; ++n) {
    auto full = delta(n);
    auto bd = boundary(n);
    auto inc = inclusion_into_delta(bd, n);
    inc.target = full;
    auto r = has_rlp(p, inc);
    note(r);
    if (!r.found) {
      rep.trivial_fibration_up_to_bound = false;
      rep.failures.push_back(KanFailure{"boundary", n, -1});
    }
  }
  return rep;
}

}  // namespace fiblab::sset
