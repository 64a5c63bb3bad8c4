#include <algorithm>
#include <bit>

#include "fiblab/error.hpp"
#include "fiblab/sset.hpp"

namespace fiblab::sset {

namespace {

struct Bound {
  int dim = 0;
  bool exact = true;
};

// Exact inputs contribute their top dimension (summed: products of exact objects are
// exact); inexact inputs cap the result at their truncation.
Bound product_bound(const std::vector<const FinSimplicialSet*>& parts) {
  Bound b;
  int sum = 0;
  int cap = -1;
  for (auto* p : parts) {
    if (p->exact()) {
      sum += std::max(p->top_dim(), 0);
    } else {
      cap = cap < 0 ? p->dim_bound() : std::min(cap, p->dim_bound());
      b.exact = false;
    }
  }
  b.dim = b.exact ? sum : cap;
  return b;
}

// Remove the tie positions W (all present in t) and close the gaps.
std::uint32_t strip_ties(std::uint32_t t, std::uint32_t w) {
  std::uint32_t rest = t & ~w;
  std::uint32_t out = 0;
  for (int p = 0; p < 32 && rest; ++p) {
    if ((rest >> p) & 1u) {
      int shift = std::popcount(w & ((1u << p) - 1u));
      out |= 1u << (p - shift);
      rest &= ~(1u << p);
    }
  }
  return out;
}

void push_simplex(Key& k, const Simplex& s) {
  k.push_back(s.cell);
  k.push_back(static_cast<int>(s.ties));
}

}  // namespace

// ---------------------------------------------------------------- product

Simplex Product::tuple(const std::vector<Simplex>& comps) const {
  auto r = find_tuple(comps);
  if (!r) throw DomainError("product simplex beyond the computed truncation");
  return *r;
}

std::optional<Simplex> Product::find_tuple(const std::vector<Simplex>& comps) const {
  if (comps.size() != factors.size()) throw ShapeError("product tuple of wrong arity");
  std::uint32_t w = ~0u;
  const int d = comps.empty() ? 0 : comps[0].dim;
  for (const auto& c : comps) {
    if (c.dim != d) throw ShapeError("product tuple with mixed dimensions");
    w &= c.ties;
  }
  if (d == 0) w = 0;
  w &= (d >= 32 ? ~0u : ((1u << d) - 1u));
  Key k;
  k.reserve(comps.size() * 2);
  for (const auto& c : comps) push_simplex(k, Simplex{c.cell, d - std::popcount(w), strip_ties(c.ties, w)});
  auto it = index.find(k);
  if (it == index.end()) return std::nullopt;
  return Simplex{it->second, d, w};
}

Product product(const std::vector<SSetPtr>& factors) {
  Product out;
  out.factors = factors;
  std::vector<const FinSimplicialSet*> raw;
  for (auto& f : factors) raw.push_back(f.get());
  Bound bd = product_bound(raw);
  const std::size_t k = factors.size();
  Builder b(bd.dim, bd.exact);
  bool any_empty = false;
  for (auto* p : raw)
    if (p->empty()) any_empty = true;
  if (!any_empty) {
    for (int d = 0; d <= bd.dim; ++d) {
      std::vector<std::vector<Simplex>> lists(k);
      bool none = false;
      for (std::size_t i = 0; i < k; ++i) {
        lists[i] = raw[i]->simplices(d);
        if (lists[i].empty()) none = true;
      }
      if (none) continue;
      std::vector<std::size_t> idx(k, 0);
      const std::uint32_t full = d >= 32 ? ~0u : ((1u << d) - 1u);
      while (true) {
        std::uint32_t w = full;
        for (std::size_t i = 0; i < k; ++i) w &= lists[i][idx[i]].ties;
        if (w == 0) {
          std::vector<Simplex> comps(k);
          for (std::size_t i = 0; i < k; ++i) comps[i] = lists[i][idx[i]];
          std::vector<Simplex> faces;
          if (d > 0) {
            for (int f = 0; f <= d; ++f) {
              std::vector<Simplex> fc(k);
              for (std::size_t i = 0; i < k; ++i) fc[i] = raw[i]->face(comps[i], f);
              faces.push_back(out.tuple(fc));
            }
          }
          std::string label = "(";
          for (std::size_t i = 0; i < k; ++i) {
            if (i) label += ',';
            label += raw[i]->ref(comps[i]);
          }
          label += ')';
          int id = b.add_cell(d, std::move(label), std::move(faces));
          Key key;
          for (auto& c : comps) push_simplex(key, c);
          out.index.emplace(std::move(key), id);
          out.cell_tuple.push_back(std::move(comps));
        }
        std::size_t p = k;
        while (p > 0) {
          --p;
          if (++idx[p] < lists[p].size()) break;
          idx[p] = 0;
          if (p == 0) {
            p = k + 1;
            break;
          }
        }
        if (p == k + 1 || k == 0) break;
      }
    }
  }
  out.set = b.build(false);
  for (std::size_t i = 0; i < k; ++i) {
    SSetMap pr{out.set, factors[i], {}};
    for (const auto& t : out.cell_tuple) pr.assign.push_back(t[i]);
    out.projections.push_back(std::move(pr));
  }
  return out;
}

SSetMap product_map(const Product& source, const Product& target, const std::vector<SSetMap>& comps) {
  if (comps.size() != source.factors.size() || comps.size() != target.factors.size())
    throw ShapeError("product_map: arity mismatch");
  SSetMap f{source.set, target.set, {}};
  f.assign.reserve(source.cell_tuple.size());
  std::vector<Simplex> img(comps.size());
  for (const auto& t : source.cell_tuple) {
    for (std::size_t i = 0; i < comps.size(); ++i) img[i] = comps[i](t[i]);
    f.assign.push_back(target.tuple(img));
  }
  return f;
}

// ---------------------------------------------------------------- pullback

Simplex Pullback::pair(const Simplex& a, const Simplex& b) const {
  auto r = find_pair(a, b);
  if (!r) throw DomainError("pullback simplex not found (beyond truncation or not over a common simplex)");
  return *r;
}

std::optional<Simplex> Pullback::find_pair(const Simplex& a, const Simplex& b) const {
  if (a.dim != b.dim) throw ShapeError("pullback pair with mixed dimensions");
  const int d = a.dim;
  std::uint32_t w = a.ties & b.ties;
  Key k;
  push_simplex(k, Simplex{a.cell, d - std::popcount(w), strip_ties(a.ties, w)});
  push_simplex(k, Simplex{b.cell, d - std::popcount(w), strip_ties(b.ties, w)});
  auto it = index.find(k);
  if (it == index.end()) return std::nullopt;
  return Simplex{it->second, d, w};
}

Pullback pullback(const SSetMap& f, const SSetMap& g) {
  if (f.target.get() != g.target.get()) throw ShapeError("pullback of maps with different targets");
  Pullback out;
  Bound bd = product_bound({f.source.get(), g.source.get()});
  Builder b(bd.dim, bd.exact);
  const auto& A = *f.source;
  const auto& B = *g.source;
  for (int d = 0; d <= bd.dim; ++d) {
    auto as = A.simplices(d);
    auto bs = B.simplices(d);
    if (as.empty() || bs.empty()) continue;
    std::unordered_map<std::uint64_t, std::vector<Simplex>> bucket;
    for (const auto& y : bs) bucket[g(y).key()].push_back(y);
    for (const auto& x : as) {
      auto it = bucket.find(f(x).key());
      if (it == bucket.end()) continue;
      for (const auto& y : it->second) {
        if (x.ties & y.ties) continue;
        std::vector<Simplex> faces;
        for (int i = 0; i <= d && d > 0; ++i) faces.push_back(out.pair(A.face(x, i), B.face(y, i)));
        int id = b.add_cell(d, "(" + A.ref(x) + "," + B.ref(y) + ")", std::move(faces));
        Key key;
        push_simplex(key, x);
        push_simplex(key, y);
        out.index.emplace(std::move(key), id);
        out.cell_pair.emplace_back(x, y);
      }
    }
  }
  out.set = b.build(false);
  out.p1 = SSetMap{out.set, f.source, {}};
  out.p2 = SSetMap{out.set, g.source, {}};
  for (const auto& [x, y] : out.cell_pair) {
    out.p1.assign.push_back(x);
    out.p2.assign.push_back(y);
  }
  return out;
}

// ---------------------------------------------------------------- pushout

Pushout pushout(const SSetMap& i, const SSetMap& f) {
  if (i.source.get() != f.source.get()) throw ShapeError("pushout of maps with different sources");
  if (!i.injective()) {
    if (f.injective()) {
      Pushout swapped = pushout(f, i);
      return Pushout{swapped.set, swapped.from_c, swapped.from_b};
    }
    throw ShapeError("pushout needs an injective leg");
  }
  const auto& A = *i.source;
  const auto& B = *i.target;
  const auto& C = *f.target;
  std::vector<int> preimage(static_cast<std::size_t>(B.cell_count()), -1);
  for (int a = 0; a < A.cell_count(); ++a) preimage[i.assign[a].cell] = a;

  bool exact = B.exact() && C.exact();
  int bound = exact ? std::max(std::max(B.top_dim(), C.top_dim()), 0)
                    : std::min(B.exact() ? 1 << 20 : B.dim_bound(), C.exact() ? 1 << 20 : C.dim_bound());
  Builder b(bound, exact);
  for (int c = 0; c < C.cell_count(); ++c) b.add_cell(C.cell_dim(c), C.label(c), C.cell_faces(c));
  std::vector<int> new_id(static_cast<std::size_t>(B.cell_count()), -1);
  auto image_of = [&](const Simplex& s) -> Simplex {
    int a = preimage[s.cell];
    if (a >= 0) return f(Simplex{a, s.dim, s.ties});
    return Simplex{new_id[s.cell], s.dim, s.ties};
  };
  for (int c = 0; c < B.cell_count(); ++c) {
    if (preimage[c] >= 0) continue;
    std::vector<Simplex> faces;
    for (const auto& s : B.cell_faces(c)) faces.push_back(image_of(s));
    new_id[c] = b.add_cell(B.cell_dim(c), B.label(c), std::move(faces));
  }
  Pushout out;
  out.set = b.build(true);
  auto fin = [&](const Simplex& s) { return Simplex{b.final_id(s.cell), s.dim, s.ties}; };
  out.from_c = SSetMap{f.target, out.set, {}};
  for (int c = 0; c < C.cell_count(); ++c) out.from_c.assign.push_back(fin(C.cell(c)));
  out.from_b = SSetMap{i.target, out.set, {}};
  for (int c = 0; c < B.cell_count(); ++c) out.from_b.assign.push_back(fin(image_of(B.cell(c))));
  return out;
}

// ---------------------------------------------------------------- coproduct, sub, fiber

Coproduct coproduct(const std::vector<SSetPtr>& parts, const std::vector<std::string>& prefixes) {
  bool exact = true;
  int bound = 0;
  int cap = -1;
  for (auto& p : parts) {
    if (p->exact()) {
      bound = std::max(bound, std::max(p->top_dim(), 0));
    } else {
      exact = false;
      cap = cap < 0 ? p->dim_bound() : std::min(cap, p->dim_bound());
    }
  }
  Builder b(exact ? bound : cap, exact);
  std::vector<std::vector<int>> ids(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& P = *parts[k];
    // provisional ids of earlier parts are fixed, so faces can be shifted directly
    int base = b.size();
    std::string pre = k < prefixes.size() ? prefixes[k] : std::string();
    for (int c = 0; c < P.cell_count(); ++c) {
      std::vector<Simplex> faces = P.cell_faces(c);
      for (auto& s : faces) s.cell += base;
      ids[k].push_back(b.add_cell(P.cell_dim(c), pre + P.label(c), std::move(faces)));
    }
  }
  Coproduct out;
  out.set = b.build(false);
  out.origin.resize(static_cast<std::size_t>(out.set->cell_count()));
  for (std::size_t k = 0; k < parts.size(); ++k) {
    SSetMap inj{parts[k], out.set, {}};
    for (int c = 0; c < parts[k]->cell_count(); ++c) {
      int id = b.final_id(ids[k][c]);
      inj.assign.push_back(Simplex{id, parts[k]->cell_dim(c), 0});
      out.origin[id] = {static_cast<int>(k), c};
    }
    out.injections.push_back(std::move(inj));
  }
  return out;
}

Sub sub_generated(const SSetPtr& x, const std::vector<int>& cells) {
  const auto& X = *x;
  std::vector<char> keep(static_cast<std::size_t>(X.cell_count()), 0);
  std::vector<int> stack(cells.begin(), cells.end());
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    if (keep[c]) continue;
    keep[c] = 1;
    for (const auto& s : X.cell_faces(c)) stack.push_back(s.cell);
  }
  std::vector<int> local(static_cast<std::size_t>(X.cell_count()), -1);
  Builder b(X.dim_bound(), X.exact());
  for (int c = 0; c < X.cell_count(); ++c) {
    if (!keep[c]) continue;
    std::vector<Simplex> faces = X.cell_faces(c);
    for (auto& s : faces) s.cell = local[s.cell];
    local[c] = b.add_cell(X.cell_dim(c), X.label(c), std::move(faces));
  }
  Sub out;
  out.set = b.build(false);
  out.inclusion = SSetMap{out.set, x, {}};
  for (int c = 0; c < X.cell_count(); ++c)
    if (keep[c]) out.inclusion.assign.push_back(X.cell(c));
  return out;
}

Sub fiber(const SSetMap& p, int vertex) {
  const auto& X = *p.source;
  std::vector<int> cells;
  for (int c = 0; c < X.cell_count(); ++c)
    if (p.assign[c].cell == vertex && p.assign[c].base_dim() == 0 && p.target->cell_dim(vertex) == 0) cells.push_back(c);
  return sub_generated(p.source, cells);
}

SSetPtr opposite(const FinSimplicialSet& x) {
  auto rev = [](const Simplex& s) {
    std::uint32_t t = 0;
    for (int j = 0; j < s.dim; ++j)
      if ((s.ties >> j) & 1u) t |= 1u << (s.dim - 1 - j);
    return Simplex{s.cell, s.dim, t};
  };
  Builder b(x.dim_bound(), x.exact());
  for (int c = 0; c < x.cell_count(); ++c) {
    int d = x.cell_dim(c);
    std::vector<Simplex> faces;
    for (int i = 0; i <= d && d > 0; ++i) faces.push_back(rev(x.cell_face(c, d - i)));
    b.add_cell(d, x.label(c), std::move(faces));
  }
  return b.build(false);
}

}  // namespace fiblab::sset
