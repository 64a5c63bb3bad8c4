#include "fiblab/fib.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "fiblab/error.hpp"

namespace fiblab::fib {

using poset::MonotoneMap;
using sset::Key;
using sset::Simplex;
using sset::SSetMap;
using sset::SSetPtr;
using sspace::DiscreteView;

const char* mode_name(Mode m) { return m == Mode::exact_discrete ? "exact_discrete" : "bounded_evidence"; }
const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }
const char* variant_name(Variant v) { return v == Variant::zeroth ? "zeroth" : "adjacent"; }
const char* claim_name(Claim c) {
  switch (c) {
    case Claim::left: return "left";
    case Claim::right: return "right";
    case Claim::reedy: return "reedy";
    case Claim::segal: return "segal";
    case Claim::trivial: return "trivial";
  }
  return "?";
}

Mode natural_mode(const std::vector<SSpacePtr>& spaces) {
  for (const auto& s : spaces)
    if (!s->is_discrete()) return Mode::bounded_evidence;
  return Mode::exact_discrete;
}

namespace {

void require_mode(Mode mode, const std::vector<SSpacePtr>& spaces, const char* what) {
  if (mode == Mode::exact_discrete && natural_mode(spaces) != Mode::exact_discrete)
    throw PreconditionError(std::string(what) + ": exact_discrete mode needs discrete simplicial spaces");
}

Key encode(const std::vector<Simplex>& assign) {
  Key k;
  k.reserve(assign.size() * 2);
  for (const auto& s : assign) {
    k.push_back(s.cell);
    k.push_back(static_cast<int>(s.ties));
  }
  return k;
}

std::uint32_t full_ties(int d) { return d == 0 ? 0u : (1u << d) - 1u; }

MonotoneMap vertex_map(int n, int v) { return MonotoneMap(0, n, {v}); }

void finish(FibrationReport& r) {
  r.verdict = true;
  for (const auto& row : r.per_level) r.verdict = r.verdict && row.pass;
}

/// theta: [k] -> [n];  Y_n -> X_n x_{X_k} Y_k on discrete levels.
LevelRow compare_sets(const DiscreteView& Y, const DiscreteView& X, const std::vector<std::vector<int>>& pc, int n,
                      const MonotoneMap& theta, std::optional<Counterexample>* cx) {
  const int k = theta.m;
  std::map<std::pair<int, int>, int> rhs;  // (y in Y_k, x in X_n)
  std::vector<std::pair<int, int>> order;
  for (int y = 0; y < Y.size[k]; ++y)
    for (int x = 0; x < X.size[n]; ++x)
      if (X.act(theta, x) == pc[k][y]) {
        rhs.emplace(std::make_pair(y, x), static_cast<int>(order.size()));
        order.emplace_back(y, x);
      }
  std::vector<int> hits(order.size(), 0);
  bool ok = true;
  for (int y = 0; y < Y.size[n]; ++y) {
    auto it = rhs.find({Y.act(theta, y), pc[n][y]});
    if (it == rhs.end()) {
      ok = false;  // cannot happen for a map of simplicial spaces
      continue;
    }
    ++hits[it->second];
  }
  for (int h : hits) ok = ok && h == 1;
  LevelRow row{n, static_cast<std::size_t>(Y.size[n]), order.size(), ok, {}};
  if (!ok && cx && !cx->has_value()) {
    Counterexample c;
    c.level = n;
    c.lhs = Y.label[n];
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::string s = "(" + Y.label[k][order[i].first] + "," + X.label[n][order[i].second] + ")";
      c.rhs.push_back(s);
      if (hits[i] != 1) c.unmatched.push_back(s + (hits[i] == 0 ? " has no preimage" : " has " + std::to_string(hits[i]) + " preimages"));
    }
    c.detail = "Y_" + std::to_string(n) + " -> X_" + std::to_string(n) + " x_{X_" + std::to_string(k) + "} Y_" +
               std::to_string(k) + " along " + theta.str() + " is not a bijection";
    *cx = std::move(c);
  }
  return row;
}

/// theta: [k] -> [n];  the comparison map Y_n -> X_n x_{X_k} Y_k as a simplicial map.
SSetMap comparison_map(const SSpaceMap& p, int n, const MonotoneMap& theta, sset::Pullback* keep) {
  const auto& Y = *p.source;
  const auto& X = *p.target;
  const int k = theta.m;
  auto xop = X.operator_map(theta);
  *keep = sset::pullback(xop, p.components[k]);
  SSetMap c{Y.level_ptr(n), keep->set, {}};
  const auto& Yn = Y.level(n);
  for (int cell = 0; cell < Yn.cell_count(); ++cell) {
    Simplex y = Yn.cell(cell);
    c.assign.push_back(keep->pair(p(n, y), Y.act(theta, y)));
  }
  return c;
}

LevelRow kan_row(const SSetMap& c, int n, int bound, bool trivial, std::vector<std::string>* warnings) {
  auto kr = sset::kan_check(c, bound);
  LevelRow row{n, static_cast<std::size_t>(c.source->vertex_count()), static_cast<std::size_t>(c.target->vertex_count()),
               trivial ? kr.trivial_fibration_up_to_bound : kr.fibration_up_to_bound, {}};
  if (!row.pass)
    for (const auto& f : kr.failures) {
      if (!trivial && f.kind != "horn") continue;
      row.note = f.kind + " n=" + std::to_string(f.n) + (f.i >= 0 ? " i=" + std::to_string(f.i) : "");
      break;
    }
  if (kr.bounded) {
    if (!row.note.empty()) row.note += "; ";
    row.note += "truncated data beyond dimension " + std::to_string(bound);
    warnings->push_back("level " + std::to_string(n) + ": kan_check used truncated data");
  }
  return row;
}

MonotoneMap fibration_operator(Side side, Variant variant, int n) {
  if (variant == Variant::zeroth) return vertex_map(n, side == Side::left ? 0 : n);
  return poset::coface(n, side == Side::left ? n : 0);
}

}  // namespace

FibrationReport fibration_check(const SSpaceMap& p, Side side, Variant variant, Mode mode, int bound) {
  require_mode(mode, {p.source, p.target}, "fibration_check");
  if (p.source->level_bound() != p.target->level_bound()) throw ShapeError("fibration_check: level bounds differ");
  FibrationReport r;
  r.claim = side == Side::left ? Claim::left : Claim::right;
  r.mode = mode;
  r.variant = variant;
  r.bound = bound;
  const int M = p.source->level_bound();
  if (!p.source->exact() || !p.target->exact())
    r.warnings.push_back("levels above " + std::to_string(M) + " are not checked");
  if (mode == Mode::exact_discrete) {
    auto Y = sspace::discrete_view(*p.source);
    auto X = sspace::discrete_view(*p.target);
    auto pc = sspace::discrete_components(p);
    for (int n = 1; n <= M; ++n)
      r.per_level.push_back(compare_sets(Y, X, pc, n, fibration_operator(side, variant, n), &r.counterexample));
  } else {
    for (int n = 1; n <= M; ++n) {
      sset::Pullback pb;
      auto c = comparison_map(p, n, fibration_operator(side, variant, n), &pb);
      r.per_level.push_back(kan_row(c, n, bound, true, &r.warnings));
    }
  }
  finish(r);
  return r;
}

FibrationReport fibration_check_both(const SSpaceMap& p, Side side, Mode mode, int bound) {
  auto a = fibration_check(p, side, Variant::zeroth, mode, bound);
  auto b = fibration_check(p, side, Variant::adjacent, mode, bound);
  a.other_variant = b.verdict;
  if (a.verdict != b.verdict) a.warnings.push_back("zeroth and adjacent variants disagree");
  return a;
}

// ---------------------------------------------------------------- Reedy matching maps

namespace {

/// Matching object M_n Y: compatible (n+1)-tuples of simplices of Y_{n-1}, truncated at bound.
struct Matching {
  sset::KeyedSet keyed;
  SSetMap boundary;  // Y_n -> M_n Y
};

Matching matching_object(const FinSimplicialSpace& Y, int n, int bound) {
  const auto& Z = Y.level(n - 1);
  sset::KeyedSpec spec;
  spec.dim_bound = bound;
  spec.exact = Z.is_discrete() && Z.exact();
  spec.simplices = [&](int l) {
    std::vector<Key> out;
    auto cand = Z.simplices(l);
    // faces of each candidate, by face index
    std::vector<std::vector<Simplex>> fc(cand.size());
    if (n - 1 >= 1)
      for (std::size_t c = 0; c < cand.size(); ++c)
        for (int i = 0; i < n; ++i) fc[c].push_back(Y.face(n - 1, i)(cand[c]));
    std::vector<int> pick;
    std::function<void()> rec = [&]() {
      const int j = static_cast<int>(pick.size());
      if (j == n + 1) {
        Key k;
        for (int c : pick) {
          k.push_back(cand[c].cell);
          k.push_back(static_cast<int>(cand[c].ties));
        }
        out.push_back(std::move(k));
        return;
      }
      for (int c = 0; c < static_cast<int>(cand.size()); ++c) {
        bool ok = true;
        // d_i y_j = d_{j-1} y_i for i < j
        for (int i = 0; i < j && ok && n - 1 >= 1; ++i) ok = fc[c][i] == fc[pick[i]][j - 1];
        if (!ok) continue;
        pick.push_back(c);
        rec();
        pick.pop_back();
      }
    };
    rec();
    return out;
  };
  auto op = [&](const Key& k, int l, bool face, int i) {
    Key out;
    for (std::size_t p = 0; p < k.size(); p += 2) {
      Simplex s{k[p], l, static_cast<std::uint32_t>(k[p + 1])};
      Simplex t = face ? Z.face(s, i) : Z.degeneracy(s, i);
      out.push_back(t.cell);
      out.push_back(static_cast<int>(t.ties));
    }
    return out;
  };
  spec.face = [&](const Key& k, int l, int i) { return op(k, l, true, i); };
  spec.degeneracy = [&](const Key& k, int l, int j) { return op(k, l, false, j); };
  spec.label = [&](const Key& k, int l) {
    std::string s = "(";
    for (std::size_t p = 0; p < k.size(); p += 2) {
      if (p) s += ',';
      s += Z.ref(Simplex{k[p], l, static_cast<std::uint32_t>(k[p + 1])});
    }
    return s + ")";
  };
  Matching m;
  m.keyed = sset::build_keyed(spec);
  m.boundary = SSetMap{Y.level_ptr(n), m.keyed.set, {}};
  const auto& Yn = Y.level(n);
  for (int c = 0; c < Yn.cell_count(); ++c) {
    const int l = Yn.cell_dim(c);
    if (l > bound) throw PreconditionError("reedy_bounded: level " + std::to_string(n) + " has cells above the bound");
    std::vector<Simplex> parts;
    for (int i = 0; i <= n; ++i) parts.push_back(Y.face(n, i).assign[c]);
    m.boundary.assign.push_back(m.keyed.find(encode(parts), l));
  }
  return m;
}

SSetMap matching_map(const Matching& a, const Matching& b, const SSetMap& pz) {
  SSetMap f{a.keyed.set, b.keyed.set, {}};
  for (int c = 0; c < a.keyed.set->cell_count(); ++c) {
    const auto& k = a.keyed.cell_key[c];
    const int l = a.keyed.set->cell_dim(c);
    Key out;
    for (std::size_t p = 0; p < k.size(); p += 2) {
      Simplex t = pz(Simplex{k[p], l, static_cast<std::uint32_t>(k[p + 1])});
      out.push_back(t.cell);
      out.push_back(static_cast<int>(t.ties));
    }
    f.assign.push_back(b.keyed.find(out, l));
  }
  return f;
}

}  // namespace

FibrationReport reedy_bounded(const SSpaceMap& p, int bound, bool trivial) {
  if (bound < 1) throw DomainError("reedy_bounded needs bound >= 1");
  if (p.source->level_bound() != p.target->level_bound()) throw ShapeError("reedy_bounded: level bounds differ");
  FibrationReport r;
  r.claim = trivial ? Claim::trivial : Claim::reedy;
  r.mode = natural_mode({p.source, p.target});
  r.bound = bound;
  const auto& Y = *p.source;
  const auto& X = *p.target;
  for (int n = 0; n <= Y.level_bound(); ++n) {
    if (n == 0) {
      r.per_level.push_back(kan_row(p.components[0], 0, bound, trivial, &r.warnings));
      continue;
    }
    auto my = matching_object(Y, n, bound);
    auto mx = matching_object(X, n, bound);
    auto mp = matching_map(my, mx, p.components[n - 1]);
    auto pb = sset::pullback(mp, mx.boundary);
    SSetMap c{Y.level_ptr(n), pb.set, {}};
    const auto& Yn = Y.level(n);
    for (int cell = 0; cell < Yn.cell_count(); ++cell) {
      Simplex y = Yn.cell(cell);
      c.assign.push_back(pb.pair(my.boundary(y), p(n, y)));
    }
    r.per_level.push_back(kan_row(c, n, bound, trivial, &r.warnings));
  }
  if (!X.exact() || !Y.exact()) r.warnings.push_back("levels above " + std::to_string(Y.level_bound()) + " are not checked");
  finish(r);
  if (!r.verdict) {
    for (const auto& row : r.per_level)
      if (!row.pass) {
        Counterexample c;
        c.level = row.level;
        c.detail = "matching map at level " + std::to_string(row.level) + " fails: " + row.note;
        r.counterexample = c;
        break;
      }
  }
  return r;
}

// ---------------------------------------------------------------- Segal maps

FibrationReport segal_check(const SSpacePtr& x, Mode mode, int bound) {
  require_mode(mode, {x}, "segal_check");
  FibrationReport r;
  r.claim = Claim::segal;
  r.mode = mode;
  r.bound = bound;
  const auto& X = *x;
  const int M = X.level_bound();
  if (M < 2) r.warnings.push_back("level bound below 2: no Segal maps to check");
  if (!X.exact()) r.warnings.push_back("levels above " + std::to_string(M) + " are not checked");
  if (mode == Mode::exact_discrete) {
    auto V = sspace::discrete_view(X);
    for (int n = 2; n <= M; ++n) {
      // composable chains of n edges
      std::map<std::vector<int>, int> rhs;
      std::vector<std::vector<int>> order;
      std::vector<int> chain;
      std::function<void()> rec = [&]() {
        if (static_cast<int>(chain.size()) == n) {
          rhs.emplace(chain, static_cast<int>(order.size()));
          order.push_back(chain);
          return;
        }
        for (int e = 0; e < V.size[1]; ++e) {
          if (!chain.empty() && V.face[1][1][e] != V.face[1][0][chain.back()]) continue;
          chain.push_back(e);
          rec();
          chain.pop_back();
        }
      };
      rec();
      std::vector<int> hits(order.size(), 0);
      for (int s = 0; s < V.size[n]; ++s) {
        std::vector<int> t;
        for (int i = 1; i <= n; ++i) t.push_back(V.act(MonotoneMap(1, n, {i - 1, i}), s));
        ++hits[rhs.at(t)];
      }
      bool ok = true;
      for (int h : hits) ok = ok && h == 1;
      r.per_level.push_back(LevelRow{n, static_cast<std::size_t>(V.size[n]), order.size(), ok, {}});
      if (!ok && !r.counterexample) {
        Counterexample c;
        c.level = n;
        c.lhs = V.label[n];
        for (std::size_t i = 0; i < order.size(); ++i) {
          std::string s = "(";
          for (std::size_t j = 0; j < order[i].size(); ++j) s += (j ? "," : "") + V.label[1][order[i][j]];
          s += ")";
          c.rhs.push_back(s);
          if (hits[i] != 1) c.unmatched.push_back(s + (hits[i] == 0 ? " has no filler" : " has " + std::to_string(hits[i]) + " fillers"));
        }
        c.detail = "Segal map at level " + std::to_string(n) + " is not a bijection";
        r.counterexample = std::move(c);
      }
    }
  } else {
    auto d0 = X.face(1, 0);
    auto d1 = X.face(1, 1);
    for (int n = 2; n <= M; ++n) {
      auto edge = [&](int i) { return X.operator_map(MonotoneMap(1, n, {i - 1, i})); };
      // iterated pullback X_1 x_{X_0} ... x_{X_0} X_1 and the comparison map
      SSetPtr acc = X.level_ptr(1);
      SSetMap end = d0;  // acc -> X_0, last target
      SSetMap cmp = edge(1);
      for (int i = 2; i <= n; ++i) {
        auto pb = sset::pullback(end, d1);
        auto e = edge(i);
        SSetMap next{X.level_ptr(n), pb.set, {}};
        for (std::size_t c = 0; c < cmp.assign.size(); ++c) {
          Simplex y = X.level(n).cell(static_cast<int>(c));
          next.assign.push_back(pb.pair(cmp.assign[c], e(y)));
        }
        end = sset::compose(d0, pb.p2);
        acc = pb.set;
        cmp = std::move(next);
      }
      r.per_level.push_back(kan_row(cmp, n, bound, true, &r.warnings));
    }
  }
  finish(r);
  return r;
}

// ---------------------------------------------------------------- slices

namespace {

bool segal_exact(const SSpacePtr& w) {
  if (!w->is_discrete()) return false;
  return segal_check(w, Mode::exact_discrete).verdict;
}

SliceResult slice_discrete(const SSpacePtr& w, int x, Direction direction) {
  const auto& W = *w;
  const int M = W.level_bound();
  const int Ms = W.exact() ? M : M - 1;
  if (Ms < 0) throw PreconditionError("slice_space: a truncated W needs level bound >= 1");
  SliceResult r;
  r.path = "discrete";
  r.row = sspace::first_row_keyed(W);
  const auto& R = r.row.set;
  const Simplex xr = r.row.find({x}, 0);
  const int pin = direction == Direction::under ? 0 : 1;
  const auto d1 = sset::delta(1);
  const Simplex edge01 = sset::delta_simplex(1, MonotoneMap::identity(1));

  std::vector<std::vector<Key>> keys(static_cast<std::size_t>(Ms + 1));
  std::vector<std::unordered_map<Key, int, VectorHash>> index(static_cast<std::size_t>(Ms + 1));
  r.witness.resize(static_cast<std::size_t>(Ms + 1));
  for (int m = 0; m <= Ms; ++m) {
    auto dm = sset::delta(m);
    r.squares.push_back(sset::product(dm, d1));
    const auto& Q = r.squares.back();
    sset::HomOptions o;
    o.pinned.resize(static_cast<std::size_t>(Q.set->cell_count()));
    for (int c = 0; c < Q.set->cell_count(); ++c) {
      const auto& b = Q.cell_tuple[c][1];
      if (d1->vertex(b, 0) == pin && d1->vertex(b, b.dim) == pin) o.pinned[c] = R->degenerate(xr, full_ties(b.dim), b.dim);
    }
    auto hr = sset::hom_set(Q.set, R, o);
    if (hr.bounded && !r.bounded) {
      r.bounded = true;
      r.warning = "level " + std::to_string(m) + ": " + hr.warning;
    }
    for (auto& h : hr.maps) {
      Key k = encode(h.assign);
      index[m].emplace(k, static_cast<int>(keys[m].size()));
      keys[m].push_back(std::move(k));
      r.witness[m].push_back(std::move(h));
    }
  }
  auto image_key = [&](int from, int to, const MonotoneMap& theta, int v) {
    const auto& Qs = r.squares[to];
    auto psi = sset::product_map(Qs, r.squares[from], {sset::delta_functor(theta), sset::identity_map(d1)});
    const auto& h = r.witness[from][v];
    std::vector<Simplex> a;
    for (const auto& s : psi.assign) a.push_back(h(s));
    return index[to].at(encode(a));
  };
  std::vector<std::vector<std::vector<int>>> face(static_cast<std::size_t>(Ms + 1)), degen(static_cast<std::size_t>(Ms + 1));
  for (int m = 1; m <= Ms; ++m)
    for (int i = 0; i <= m; ++i) {
      std::vector<int> t;
      for (int v = 0; v < static_cast<int>(keys[m].size()); ++v) t.push_back(image_key(m, m - 1, poset::coface(m, i), v));
      face[m].push_back(std::move(t));
    }
  for (int m = 0; m < Ms; ++m)
    for (int j = 0; j <= m; ++j) {
      std::vector<int> t;
      for (int v = 0; v < static_cast<int>(keys[m].size()); ++v) t.push_back(image_key(m, m + 1, poset::codegeneracy(m, j), v));
      degen[m].push_back(std::move(t));
    }

  // labels: images of the vertical edges, joined by '|'
  std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(Ms + 1));
  std::vector<std::vector<int>> proj(static_cast<std::size_t>(Ms + 1));
  for (int m = 0; m <= Ms; ++m) {
    auto dm = sset::delta(m);
    const auto& Q = r.squares[m];
    const Simplex top = Q.tuple({sset::delta_simplex(m, MonotoneMap::identity(m)),
                                 d1->degenerate(sset::delta_simplex(1, vertex_map(1, 1 - pin)), full_ties(m), m)});
    std::vector<Simplex> verticals, free_row;
    for (int i = 0; i <= m; ++i) verticals.push_back(Q.tuple({dm->degenerate(sset::delta_simplex(m, vertex_map(m, i)), 1u, 1), edge01}));
    for (int i = 1; i <= m; ++i)
      free_row.push_back(Q.tuple({sset::delta_simplex(m, MonotoneMap(1, m, {i - 1, i})),
                                  d1->degenerate(sset::delta_simplex(1, vertex_map(1, 1 - pin)), 1u, 1)}));
    std::map<std::string, int> seen;
    for (const auto& h : r.witness[m]) {
      std::string s;
      for (std::size_t i = 0; i < verticals.size(); ++i) s += (i ? "|" : "") + R->simplex_label(h(verticals[i]));
      labels[m].push_back(s);
      ++seen[s];
      proj[m].push_back(sspace::row_vertex(W, r.row, h(top)));
    }
    bool clash = false;
    for (auto& [s, c] : seen) clash = clash || c > 1;
    if (clash) {
      seen.clear();
      for (std::size_t v = 0; v < labels[m].size(); ++v) {
        std::string s = labels[m][v] + ";";
        for (std::size_t i = 0; i < free_row.size(); ++i) s += (i ? "," : "") + R->simplex_label(r.witness[m][v](free_row[i]));
        if (seen[s]++ > 0) s += "#" + std::to_string(v);
        labels[m][v] = s;
      }
    }
  }
  // exact only when W is an exact Segal space and the top level adds nothing new
  auto space = sspace::discrete_space(labels, face, degen, false);
  if (W.exact() && space->generator_level() < Ms && segal_exact(w))
    space = sspace::discrete_space(labels, face, degen, true);
  r.space = space;
  SSpacePtr target = Ms == M ? w : sspace::truncate(W, Ms);
  r.projection = sspace::discrete_map(space, target, proj);
  return r;
}

SliceResult slice_general(const SSpacePtr& w, int x, Direction direction, int l_max) {
  const int M = w->level_bound();
  if (M < 1) throw PreconditionError("slice_space: the exponential path needs level bound >= 1");
  const int pin = direction == Direction::under ? 0 : 1;
  auto f1 = sspace::F(1, M);
  auto e = sspace::exponential(w, f1, M - 1, w->is_discrete() ? 0 : l_max);
  auto ev_pin = sspace::evaluate(e, pin);
  auto ev_free = sspace::evaluate(e, 1 - pin);
  auto pt = sspace::point_map(e.base, x);
  auto pb = sspace::pullback(pt, ev_pin);
  SliceResult r;
  r.path = "exponential";
  r.space = pb.space;
  r.projection = sspace::compose(ev_free, pb.p2);
  r.bounded = e.bounded;
  r.warning = e.warning;
  return r;
}

}  // namespace

SliceResult slice_space(const SSpacePtr& w, int x, Direction direction, const SliceOptions& opts) {
  if (x < 0 || x >= w->level(0).vertex_count()) throw DomainError("slice_space: no vertex " + std::to_string(x));
  if (w->is_discrete() && !opts.general) return slice_discrete(w, x, direction);
  return slice_general(w, x, direction, opts.l_max);
}

InitialReport initial_object_check(const SSpacePtr& w, int x, int bound, const SliceOptions& opts) {
  InitialReport r;
  auto sl = slice_space(w, x, Direction::under, opts);
  r.mode = natural_mode({sl.space, w});
  r.segal = segal_check(w, natural_mode({w}), bound);
  if (!r.segal.verdict) r.warnings.push_back("X fails the Segal condition");
  if (sl.bounded) r.warnings.push_back(sl.warning);
  r.trivial_reedy = reedy_bounded(sl.projection, bound, true);
  for (const auto& s : r.trivial_reedy.warnings) r.warnings.push_back(s);
  r.value = r.trivial_reedy.verdict;
  return r;
}

// ---------------------------------------------------------------- cocones

namespace {

/// first_row(K) -> first_row(X) induced by p.
SSetMap row_map(const SSpaceMap& p, const sset::KeyedSet& rk, const sset::KeyedSet& rx) {
  SSetMap f{rk.set, rx.set, {}};
  for (int c = 0; c < rk.set->cell_count(); ++c) {
    const int d = rk.set->cell_dim(c);
    f.assign.push_back(rx.find({p.components[d].assign[rk.cell_key[c][0]].cell}, d));
  }
  return f;
}

CoconeResult cocone_discrete(const SSpaceMap& p) {
  const auto& X = *p.target;
  const auto& K = *p.source;
  const int M = X.level_bound();
  auto rx = sspace::first_row_keyed(X);
  auto rk = sspace::first_row_keyed(K);
  auto pr = row_map(p, rk, rx);
  const auto& R = rx.set;
  const auto d1 = sset::delta(1);
  std::vector<sset::Product> Q;
  std::vector<std::vector<std::pair<int, SSetMap>>> elems(static_cast<std::size_t>(M + 1));
  std::vector<std::unordered_map<Key, int, VectorHash>> index(static_cast<std::size_t>(M + 1));
  CoconeResult out;
  out.path = "discrete";
  for (int m = 0; m <= M; ++m) {
    Q.push_back(sset::product({sset::delta(m), d1, rk.set}));
    const auto& P = Q.back();
    for (int v = 0; v < X.level(m).vertex_count(); ++v) {
      const Simplex rv = rx.find({v}, m);
      sset::HomOptions o;
      o.pinned.resize(static_cast<std::size_t>(P.set->cell_count()));
      for (int c = 0; c < P.set->cell_count(); ++c) {
        const auto& t = P.cell_tuple[c];
        const int e0 = d1->vertex(t[1], 0), e1 = d1->vertex(t[1], t[1].dim);
        if (e0 == 0 && e1 == 0) o.pinned[c] = pr(t[2]);
        if (e0 == 1 && e1 == 1) o.pinned[c] = R->apply(rv, sset::delta_map(m, t[0]));
      }
      auto hr = sset::hom_set(P.set, R, o);
      if (hr.bounded && !out.bounded) {
        out.bounded = true;
        out.warning = hr.warning;
      }
      for (auto& h : hr.maps) {
        Key k = encode(h.assign);
        k.push_back(v);
        index[m].emplace(std::move(k), static_cast<int>(elems[m].size()));
        elems[m].emplace_back(v, std::move(h));
      }
    }
  }
  auto image = [&](int from, int to, const MonotoneMap& theta, int e) {
    auto psi = sset::product_map(Q[to], Q[from], {sset::delta_functor(theta), sset::identity_map(d1), sset::identity_map(rk.set)});
    const auto& [v, h] = elems[from][e];
    std::vector<Simplex> a;
    for (const auto& s : psi.assign) a.push_back(h(s));
    Key k = encode(a);
    k.push_back(X.act(theta, Simplex{v, 0, 0}).cell);
    return index[to].at(k);
  };
  std::vector<std::vector<std::vector<int>>> face(static_cast<std::size_t>(M + 1)), degen(static_cast<std::size_t>(M + 1));
  std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(M + 1));
  std::vector<std::vector<int>> proj(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    std::map<int, int> count;
    for (const auto& [v, h] : elems[m]) {
      labels[m].push_back(X.level(m).label(v) + "/" + std::to_string(count[v]++));
      proj[m].push_back(v);
    }
    for (int i = 0; i <= m && m > 0; ++i) {
      std::vector<int> t;
      for (int e = 0; e < static_cast<int>(elems[m].size()); ++e) t.push_back(image(m, m - 1, poset::coface(m, i), e));
      face[m].push_back(std::move(t));
    }
    for (int j = 0; j <= m && m < M; ++j) {
      std::vector<int> t;
      for (int e = 0; e < static_cast<int>(elems[m].size()); ++e) t.push_back(image(m, m + 1, poset::codegeneracy(m, j), e));
      degen[m].push_back(std::move(t));
    }
  }
  auto space = sspace::discrete_space(labels, face, degen, false);
  if (space->generator_level() < M && segal_exact(p.target))
    space = sspace::discrete_space(labels, face, degen, true);
  out.space = space;
  out.projection = sspace::discrete_map(space, p.target, proj);
  return out;
}

CoconeResult cocone_general(const SSpaceMap& p, int l_max) {
  const auto& X = p.target;
  const auto& K = p.source;
  const int M = X->level_bound();
  auto f1 = sspace::F(1, M);
  auto fk = sspace::product({f1, K});
  const int lm = X->is_discrete() ? 0 : l_max;
  auto big = sspace::exponential(X, fk.space, M, lm);
  const int Mp = big.space->level_bound();
  auto small = sspace::exponential(X, K, Mp, lm);
  if (small.space->level_bound() != Mp) throw PreconditionError("cocone_space: exponential bounds do not match");
  auto end = [&](int e) {
    SSpaceMap i{K, fk.space, {}};
    for (int m = 0; m <= M; ++m) {
      SSetMap c{K->level_ptr(m), fk.space->level_ptr(m), {}};
      Simplex ev = f1->act(MonotoneMap(m, 0, std::vector<int>(static_cast<std::size_t>(m + 1), 0)), Simplex{e, 0, 0});
      for (int cell = 0; cell < K->level(m).cell_count(); ++cell) {
        const int l = K->level(m).cell_dim(cell);
        c.assign.push_back(fk.tuple(m, {f1->level(m).degenerate(ev, full_ties(l), l), K->level(m).cell(cell)}));
      }
      i.components.push_back(std::move(c));
    }
    return i;
  };
  auto r0 = sspace::restrict_along(big, small, end(0));
  auto r1 = sspace::restrict_along(big, small, end(1));
  auto pt = sspace::point_map(small.space, sspace::exponential_vertex(small, p));
  auto pb1 = sspace::pullback(pt, r0);
  auto pb2 = sspace::pullback(sspace::compose(r1, pb1.p2), sspace::constant_maps(small));
  CoconeResult out;
  out.path = "exponential";
  out.space = pb2.space;
  out.projection = pb2.p2;
  out.bounded = big.bounded || small.bounded;
  out.warning = big.bounded ? big.warning : small.warning;
  return out;
}

}  // namespace

CoconeResult cocone_space(const SSpaceMap& p, const SliceOptions& opts) {
  if (p.source->level_bound() != p.target->level_bound()) throw ShapeError("cocone_space: level bounds differ");
  if (p.target->is_discrete() && p.source->is_discrete() && p.target->exact() && !opts.general) return cocone_discrete(p);
  return cocone_general(p, opts.l_max);
}

ColimitReport colimit_evidence(const SSpaceMap& p, int bound, const SliceOptions& opts) {
  ColimitReport r;
  auto cc = cocone_space(p, opts);
  if (cc.bounded) r.warnings.push_back(cc.warning);
  r.candidates = static_cast<std::size_t>(cc.space->level(0).vertex_count());
  for (int v = 0; v < static_cast<int>(r.candidates); ++v) {
    auto ini = initial_object_check(cc.space, v, bound, opts);
    if (!ini.value) continue;
    r.has_colimit = true;
    r.cocone_vertex = v;
    r.vertex = cc.projection.components[0].assign[v].cell;
    for (const auto& w : ini.warnings) r.warnings.push_back(w);
    break;
  }
  return r;
}

// ---------------------------------------------------------------- cofinality

CofinalReport cofinal_evidence(const SSpaceMap& f, int hom_bound, const SliceOptions& opts) {
  const auto& Y = f.target;
  CofinalReport r;
  const int n = Y->level(0).vertex_count();
  r.rows.resize(static_cast<std::size_t>(n));
  std::vector<std::string> warn(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const int y = static_cast<int>(i);
    auto sl = slice_space(Y, y, Direction::under, opts);
    const auto& base = sl.projection.target;
    SSpaceMap g = f;
    if (base.get() != Y.get()) g = sspace::truncate_map(f, sspace::truncate(*f.source, base->level_bound()), base);
    auto pb = sspace::pullback(sl.projection, g);
    auto diag = sspace::diagonal(*pb.space);
    r.rows[i] = CofinalRow{y, Y->level(0).label(y), oracle::contractible_evidence(*diag, hom_bound)};
    if (sl.bounded) warn[i] = "vertex " + Y->level(0).label(y) + ": " + sl.warning;
  });
  for (const auto& row : r.rows) {
    r.value = r.value && row.verdict.value;
    if (row.verdict.tier != oracle::Tier::decisive) r.tier = oracle::Tier::evidence;
  }
  // a decisive failure settles the verdict
  for (const auto& row : r.rows)
    if (!row.verdict.value && row.verdict.tier == oracle::Tier::decisive) r.tier = oracle::Tier::decisive;
  for (auto& w : warn)
    if (!w.empty()) r.warnings.push_back(std::move(w));
  return r;
}

// ---------------------------------------------------------------- spans

SpanProfile span_profile(const SSpaceMap& l) {
  require_mode(Mode::exact_discrete, {l.source, l.target}, "span_profile");
  if (l.target->level_bound() < 1) throw PreconditionError("span_profile needs level bound >= 1");
  auto B = sspace::discrete_view(*l.target);
  auto L = sspace::discrete_view(*l.source);
  auto pc = sspace::discrete_components(l);
  SpanProfile out;
  std::vector<bool> degenerate(static_cast<std::size_t>(B.size[1]), false);
  for (int v = 0; v < B.size[0]; ++v) degenerate[B.degen[0][0][v]] = true;
  auto bij = [&](const std::vector<int>& from, const std::vector<int>& onto, const std::vector<int>& fn) {
    if (from.size() != onto.size()) return false;
    std::vector<int> img;
    for (int z : from) img.push_back(fn[z]);
    std::sort(img.begin(), img.end());
    return img == onto;
  };
  for (int e = 0; e < B.size[1]; ++e) {
    if (degenerate[e]) continue;
    SpanLeg s;
    s.edge = e;
    s.label = B.label[1][e];
    s.source = B.face[1][1][e];
    s.target = B.face[1][0][e];
    std::vector<int> le, ls, lt;
    for (int z = 0; z < L.size[1]; ++z)
      if (pc[1][z] == e) le.push_back(z);
    for (int z = 0; z < L.size[0]; ++z) {
      if (pc[0][z] == s.source) ls.push_back(z);
      if (pc[0][z] == s.target) lt.push_back(z);
    }
    s.fiber_edge = le.size();
    s.fiber_source = ls.size();
    s.fiber_target = lt.size();
    s.left_leg_bijective = bij(le, ls, L.face[1][1]);
    s.right_leg_bijective = bij(le, lt, L.face[1][0]);
    out.also_right = out.also_right && s.right_leg_bijective;
    out.spans.push_back(std::move(s));
  }
  return out;
}

YonedaSpaceReport yoneda_space_check(const SSpaceMap& l, int x) {
  auto sl = slice_space(l.target, x, Direction::under);
  const auto& base = sl.projection.target;
  SSpaceMap lt = l;
  if (base.get() != l.target.get()) lt = sspace::truncate_map(l, sspace::truncate(*l.source, base->level_bound()), base);
  auto ms = sspace::map_space(sl.space, lt.source, 0, &sl.projection, &lt);
  YonedaSpaceReport r;
  r.maps = static_cast<std::size_t>(ms.space->vertex_count());
  for (const auto& s : l.components[0].assign)
    if (s.cell == x) ++r.fiber;
  r.equal = r.maps == r.fiber;
  r.bounded = ms.bounded || sl.bounded;
  r.warning = ms.bounded ? ms.warning : sl.warning;
  return r;
}

SSpaceMap pull_to_simplex(const SSpaceMap& p, int n, int vertex) {
  const int M = p.target->level_bound();
  auto fn = sspace::F(n, M);
  auto cls = sspace::classifying_map(fn, n, p.target, vertex);
  auto pb = sspace::pullback(cls, p);
  return pb.p1;
}

SSpacePtr nerve_space(const cat::FinCategory& c, int M) { return sspace::embed_discrete(cat::nerve(c, M), M); }

}  // namespace fiblab::fib
