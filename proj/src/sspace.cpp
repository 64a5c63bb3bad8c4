#include "fiblab/sspace.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "fiblab/error.hpp"

namespace fiblab::sspace {

using sset::FinSimplicialSet;

// ---------------------------------------------------------------- FinSimplicialSpace

FinSimplicialSpace::FinSimplicialSpace(std::vector<SSetPtr> levels, std::vector<std::vector<SSetMap>> face,
                                       std::vector<std::vector<SSetMap>> degeneracy, bool exact)
    : levels_(std::move(levels)), face_(std::move(face)), degeneracy_(std::move(degeneracy)), exact_(exact) {
  const int M = level_bound();
  if (M < 0) throw DomainError("a simplicial space needs at least one level");
  face_.resize(static_cast<std::size_t>(M + 1));
  degeneracy_.resize(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    if (!levels_[m]) throw ShapeError("missing level space");
    if (m > 0 && static_cast<int>(face_[m].size()) != m + 1) throw ShapeError("level " + std::to_string(m) + " needs " + std::to_string(m + 1) + " face maps");
    if (m < M && static_cast<int>(degeneracy_[m].size()) != m + 1)
      throw ShapeError("level " + std::to_string(m) + " needs " + std::to_string(m + 1) + " degeneracy maps");
    for (auto& f : face_[m])
      if (f.source.get() != levels_[m].get() || f.target.get() != levels_[m - 1].get())
        throw ShapeError("face map with wrong endpoints at level " + std::to_string(m));
    if (m < M)
      for (auto& s : degeneracy_[m])
        if (s.source.get() != levels_[m].get() || s.target.get() != levels_[m + 1].get())
          throw ShapeError("degeneracy map with wrong endpoints at level " + std::to_string(m));
  }
  for (auto& l : levels_)
    if (!l->exact()) exact_ = false;
}

Simplex FinSimplicialSpace::act(const poset::MonotoneMap& theta, const Simplex& x) const {
  if (theta.n > level_bound() || theta.m > level_bound())
    throw DomainError("operator " + theta.str() + " beyond the level bound " + std::to_string(level_bound()));
  auto em = poset::epi_mono(theta);
  // mono^*: peel off the largest missing index each time.
  std::vector<int> image = em.mono.values;
  int top = theta.n;
  Simplex y = x;
  while (static_cast<int>(image.size()) - 1 < top) {
    int v = top;
    for (int pos = static_cast<int>(image.size()) - 1; pos >= 0 && image[pos] == v; --pos) --v;
    y = face(top, v)(y);
    for (auto& w : image)
      if (w > v) --w;
    --top;
  }
  // epi^*: degeneracies in increasing order of tie position.
  std::uint32_t ties = poset::ties_of(em.epi);
  int level = top;
  for (int j = 0; j < theta.m; ++j)
    if ((ties >> j) & 1u) {
      y = degeneracy(level, j)(y);
      ++level;
    }
  return y;
}

SSetMap FinSimplicialSpace::operator_map(const poset::MonotoneMap& theta) const {
  SSetMap f{level_ptr(theta.n), level_ptr(theta.m), {}};
  const auto& X = level(theta.n);
  for (int c = 0; c < X.cell_count(); ++c) f.assign.push_back(act(theta, X.cell(c)));
  return f;
}

bool FinSimplicialSpace::is_discrete() const {
  for (auto& l : levels_)
    if (!l->is_discrete()) return false;
  return true;
}

int FinSimplicialSpace::generator_level() const {
  int g = -1;
  for (int m = 0; m <= level_bound(); ++m) {
    const auto& X = level(m);
    std::vector<char> hit(static_cast<std::size_t>(X.cell_count()), 0);
    if (m > 0)
      for (int j = 0; j < m; ++j)
        for (const auto& s : degeneracy(m - 1, j).assign)
          if (s.ties == 0) hit[s.cell] = 1;
    for (int c = 0; c < X.cell_count(); ++c)
      if (!hit[c]) {
        g = m;
        break;
      }
  }
  return g;
}

std::string FinSimplicialSpace::validate() const {
  const int M = level_bound();
  for (int m = 0; m <= M; ++m) {
    for (auto& f : face_[m])
      if (auto e = f.validate(); !e.empty()) return "face map at level " + std::to_string(m) + ": " + e;
    if (m < M)
      for (auto& s : degeneracy_[m])
        if (auto e = s.validate(); !e.empty()) return "degeneracy map at level " + std::to_string(m) + ": " + e;
  }
  auto fail = [](const std::string& what, int m, int c) {
    return "identity " + what + " fails at level " + std::to_string(m) + " on cell " + std::to_string(c);
  };
  for (int m = 0; m <= M; ++m) {
    const auto& X = level(m);
    for (int c = 0; c < X.cell_count(); ++c) {
      Simplex x = X.cell(c);
      if (m >= 2)
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j <= m; ++j)
            if (!(face(m - 1, i)(face(m, j)(x)) == face(m - 1, j - 1)(face(m, i)(x)))) return fail("d_i d_j", m, c);
      if (m < M) {
        for (int j = 0; j <= m; ++j) {
          Simplex s = degeneracy(m, j)(x);
          for (int i = 0; i <= m + 1; ++i) {
            Simplex lhs = face(m + 1, i)(s);
            Simplex rhs;
            if (i == j || i == j + 1) {
              rhs = x;
            } else if (i < j) {
              rhs = degeneracy(m - 1, j - 1)(face(m, i)(x));
            } else {
              rhs = degeneracy(m - 1, j)(face(m, i - 1)(x));
            }
            if (!(lhs == rhs)) return fail("d_i s_j", m, c);
          }
          if (m + 1 < M)
            for (int i = 0; i <= j; ++i)
              if (!(degeneracy(m + 1, i)(degeneracy(m, j)(x)) == degeneracy(m + 1, j + 1)(degeneracy(m, i)(x))))
                return fail("s_i s_j", m, c);
        }
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------- maps

std::string SSpaceMap::validate() const {
  if (!source || !target) return "map without source or target";
  if (source->level_bound() != target->level_bound()) return "level bounds differ";
  const int M = source->level_bound();
  if (static_cast<int>(components.size()) != M + 1) return "wrong number of components";
  for (int m = 0; m <= M; ++m) {
    const auto& f = components[m];
    if (f.source.get() != source->level_ptr(m).get() || f.target.get() != target->level_ptr(m).get())
      return "component " + std::to_string(m) + " has wrong endpoints";
    if (auto e = f.validate(); !e.empty()) return "component " + std::to_string(m) + ": " + e;
  }
  for (int m = 0; m <= M; ++m) {
    const auto& X = source->level(m);
    for (int c = 0; c < X.cell_count(); ++c) {
      Simplex x = X.cell(c);
      for (int i = 0; i <= m && m > 0; ++i)
        if (!(target->face(m, i)(components[m](x)) == components[m - 1](source->face(m, i)(x))))
          return "not natural for d" + std::to_string(i) + " at level " + std::to_string(m);
      for (int j = 0; j <= m && m < M; ++j)
        if (!(target->degeneracy(m, j)(components[m](x)) == components[m + 1](source->degeneracy(m, j)(x))))
          return "not natural for s" + std::to_string(j) + " at level " + std::to_string(m);
    }
  }
  return {};
}

bool SSpaceMap::is_identity() const {
  for (auto& c : components)
    if (!c.is_identity()) return false;
  return true;
}

bool SSpaceMap::injective() const {
  for (auto& c : components)
    if (!c.injective()) return false;
  return true;
}

SSpaceMap identity_map(const SSpacePtr& x) {
  SSpaceMap f{x, x, {}};
  for (int m = 0; m <= x->level_bound(); ++m) f.components.push_back(sset::identity_map(x->level_ptr(m)));
  return f;
}

SSpaceMap compose(const SSpaceMap& g, const SSpaceMap& f) {
  if (f.target.get() != g.source.get()) throw CompositionError("maps of simplicial spaces are not composable");
  SSpaceMap h{f.source, g.target, {}};
  for (std::size_t m = 0; m < f.components.size(); ++m) h.components.push_back(sset::compose(g.components[m], f.components[m]));
  return h;
}

bool same_map(const SSpaceMap& a, const SSpaceMap& b) {
  if (a.components.size() != b.components.size()) return false;
  for (std::size_t m = 0; m < a.components.size(); ++m)
    if (a.components[m].assign != b.components[m].assign) return false;
  return true;
}

// ---------------------------------------------------------------- embeddings and standard objects

namespace {

std::vector<std::unordered_map<std::uint64_t, int>> simplex_index(const FinSimplicialSet& s, int M,
                                                                  std::vector<std::vector<Simplex>>* lists) {
  std::vector<std::unordered_map<std::uint64_t, int>> idx(static_cast<std::size_t>(M + 1));
  lists->assign(static_cast<std::size_t>(M + 1), {});
  for (int m = 0; m <= M; ++m) {
    (*lists)[m] = s.simplices(m);
    for (std::size_t v = 0; v < (*lists)[m].size(); ++v) idx[m].emplace((*lists)[m][v].key(), static_cast<int>(v));
  }
  return idx;
}

const SSetPtr& shared_point() {
  static const SSetPtr pt = sset::to_point(sset::empty_set()).target;
  return pt;
}

}  // namespace

SSpacePtr discrete_space(const std::vector<std::vector<std::string>>& labels,
                         const std::vector<std::vector<std::vector<int>>>& face,
                         const std::vector<std::vector<std::vector<int>>>& degen, bool exact) {
  const int M = static_cast<int>(labels.size()) - 1;
  std::vector<SSetPtr> levels;
  for (int m = 0; m <= M; ++m) levels.push_back(sset::discrete(labels[m]));
  std::vector<std::vector<SSetMap>> F(static_cast<std::size_t>(M + 1)), D(static_cast<std::size_t>(M + 1));
  for (int m = 1; m <= M; ++m)
    for (int i = 0; i <= m; ++i) {
      SSetMap f{levels[m], levels[m - 1], {}};
      for (int v : face[m][i]) f.assign.push_back(Simplex{v, 0, 0});
      F[m].push_back(std::move(f));
    }
  for (int m = 0; m < M; ++m)
    for (int j = 0; j <= m; ++j) {
      SSetMap f{levels[m], levels[m + 1], {}};
      for (int v : degen[m][j]) f.assign.push_back(Simplex{v, 0, 0});
      D[m].push_back(std::move(f));
    }
  return std::make_shared<FinSimplicialSpace>(std::move(levels), std::move(F), std::move(D), exact);
}

SSpaceMap discrete_map(const SSpacePtr& source, const SSpacePtr& target, const std::vector<std::vector<int>>& comps) {
  SSpaceMap f{source, target, {}};
  for (int m = 0; m <= source->level_bound(); ++m) {
    SSetMap c{source->level_ptr(m), target->level_ptr(m), {}};
    for (int v : comps[m]) c.assign.push_back(Simplex{v, 0, 0});
    f.components.push_back(std::move(c));
  }
  return f;
}

SSpacePtr embed_discrete(const SSetPtr& s, int M) {
  if (M < 0) throw DomainError("level bound must be >= 0");
  std::vector<std::vector<Simplex>> lists;
  auto idx = simplex_index(*s, M, &lists);
  std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(M + 1));
  std::vector<std::vector<std::vector<int>>> face(static_cast<std::size_t>(M + 1)), degen(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    for (const auto& x : lists[m]) labels[m].push_back(s->simplex_label(x));
    if (m > 0)
      for (int i = 0; i <= m; ++i) {
        std::vector<int> t;
        for (const auto& x : lists[m]) t.push_back(idx[m - 1].at(s->face(x, i).key()));
        face[m].push_back(std::move(t));
      }
    if (m < M)
      for (int j = 0; j <= m; ++j) {
        std::vector<int> t;
        for (const auto& x : lists[m]) t.push_back(idx[m + 1].at(s->degeneracy(x, j).key()));
        degen[m].push_back(std::move(t));
      }
  }
  bool exact = s->exact() && s->top_dim() <= M;
  return discrete_space(labels, face, degen, exact);
}

SSpaceMap embed_discrete_map(const SSetMap& f, const SSpacePtr& source, const SSpacePtr& target) {
  const int M = source->level_bound();
  std::vector<std::vector<Simplex>> sl, tl;
  simplex_index(*f.source, M, &sl);
  auto tidx = simplex_index(*f.target, M, &tl);
  std::vector<std::vector<int>> comps(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m)
    for (const auto& x : sl[m]) comps[m].push_back(tidx[m].at(f(x).key()));
  return discrete_map(source, target, comps);
}

SSpacePtr embed_constant(const SSetPtr& k, int M) {
  if (M < 0) throw DomainError("level bound must be >= 0");
  std::vector<SSetPtr> levels(static_cast<std::size_t>(M + 1), k);
  std::vector<std::vector<SSetMap>> F(static_cast<std::size_t>(M + 1)), D(static_cast<std::size_t>(M + 1));
  auto id = sset::identity_map(k);
  for (int m = 1; m <= M; ++m) F[m].assign(static_cast<std::size_t>(m + 1), id);
  for (int m = 0; m < M; ++m) D[m].assign(static_cast<std::size_t>(m + 1), id);
  return std::make_shared<FinSimplicialSpace>(std::move(levels), std::move(F), std::move(D), k->exact());
}

SSpacePtr point_space(int M) { return embed_constant(shared_point(), M); }

SSpacePtr empty_space(int M) { return embed_constant(sset::empty_set(), M); }

SSpacePtr F(int n, int M) {
  if (n < 0) throw DomainError("F(n) needs n >= 0");
  return embed_discrete(sset::delta(n), M);
}

SSpacePtr dF(int n, int M) {
  if (n < 0) throw DomainError("dF(n) needs n >= 0");
  return embed_discrete(sset::boundary(n), M);
}

SSpacePtr L(int n, int l, int M) { return embed_discrete(sset::horn(n, l), M); }

SSpacePtr E(int n, int T) {
  if (n < 0 || T < 0) throw DomainError("E(n) needs n >= 0 and T >= 0");
  return embed_discrete(sset::j_truncated(n, T), T);
}

SSpacePtr G(int n, int M) {
  if (n < 2) throw DomainError("G(n) needs n >= 2");
  return embed_discrete(sset::spine(n), M);
}

SSpacePtr t_cell(int n, int l, int T, int M) {
  auto p = product({embed_discrete(sset::delta(n), M), embed_constant(sset::j_truncated(l, T), M)});
  return p.space;
}

int F_vertex(const FinSimplicialSpace& fn, int n, const poset::MonotoneMap& f) {
  if (f.n != n) throw DomainError("simplex " + f.str() + " is not in F(" + std::to_string(n) + ")");
  if (f.m > fn.level_bound()) throw DomainError("simplex " + f.str() + " beyond the level bound");
  int v = fn.level(f.m).find(f.digits());
  if (v >= 0) return v;
  auto target = sset::delta_simplex(n, f);
  auto list = sset::delta(n)->simplices(f.m);
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i] == target) return static_cast<int>(i);
  throw DomainError("simplex not found in F(n)");
}

poset::MonotoneMap F_map(int n, int m, int vertex) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<poset::MonotoneMap>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, m});
  if (it == cache.end()) {
    std::vector<poset::MonotoneMap> maps;
    for (const auto& s : sset::delta(n)->simplices(m)) maps.push_back(sset::delta_map(n, s));
    it = cache.emplace(std::make_pair(n, m), std::move(maps)).first;
  }
  return it->second.at(static_cast<std::size_t>(vertex));
}

// ---------------------------------------------------------------- rows and diagonal

SSetPtr first_row(const FinSimplicialSpace& x) { return first_row_keyed(x).set; }

sset::KeyedSet first_row_keyed(const FinSimplicialSpace& x) {
  sset::KeyedSpec spec;
  spec.dim_bound = x.level_bound();
  spec.exact = x.exact();
  spec.simplices = [&](int k) {
    std::vector<sset::Key> out;
    for (int v = 0; v < x.level(k).vertex_count(); ++v) out.push_back({v});
    return out;
  };
  spec.face = [&](const sset::Key& key, int k, int i) { return sset::Key{x.face(k, i).assign[key[0]].cell}; };
  spec.degeneracy = [&](const sset::Key& key, int k, int j) { return sset::Key{x.degeneracy(k, j).assign[key[0]].cell}; };
  spec.label = [&](const sset::Key& key, int k) { return x.level(k).label(key[0]); };
  return sset::build_keyed(spec);
}

int row_vertex(const FinSimplicialSpace& x, const sset::KeyedSet& row, const Simplex& s) {
  int v = row.cell_key[static_cast<std::size_t>(s.cell)][0];
  int level = row.set->cell_dim(s.cell);
  for (int j = 0; j < s.dim; ++j)
    if ((s.ties >> j) & 1u) v = x.degeneracy(level++, j).assign[v].cell;
  return v;
}

SSetPtr level_zero(const FinSimplicialSpace& x) { return x.level_ptr(0); }

SSetPtr diagonal(const FinSimplicialSpace& x) {
  int D = x.level_bound();
  for (int n = 0; n <= x.level_bound(); ++n)
    if (!x.level(n).exact() && x.level(n).dim_bound() < n) {
      D = std::min(D, n - 1);
      break;
    }
  sset::KeyedSpec spec;
  spec.dim_bound = std::max(D, 0);
  spec.exact = x.exact();
  spec.simplices = [&](int n) {
    std::vector<sset::Key> out;
    for (const auto& s : x.level(n).simplices(n)) out.push_back({s.cell, static_cast<int>(s.ties)});
    return out;
  };
  auto dec = [](const sset::Key& k, int n) { return Simplex{k[0], n, static_cast<std::uint32_t>(k[1])}; };
  spec.face = [&](const sset::Key& key, int n, int i) {
    Simplex h = x.face(n, i)(dec(key, n));
    Simplex v = x.level(n - 1).face(h, i);
    return sset::Key{v.cell, static_cast<int>(v.ties)};
  };
  spec.degeneracy = [&](const sset::Key& key, int n, int j) {
    Simplex h = x.degeneracy(n, j)(dec(key, n));
    Simplex v = x.level(n + 1).degeneracy(h, j);
    return sset::Key{v.cell, static_cast<int>(v.ties)};
  };
  spec.label = [&](const sset::Key& key, int n) { return x.level(n).ref(dec(key, n)); };
  if (D < 0) {
    sset::Builder b(0, false);
    return b.build();
  }
  return sset::build_keyed(spec).set;
}

// ---------------------------------------------------------------- products, pullbacks, pushouts

SpaceProduct product(const std::vector<SSpacePtr>& factors) {
  if (factors.empty()) throw ShapeError("empty product of simplicial spaces; use point_space");
  const int M = factors[0]->level_bound();
  bool exact = true;
  for (auto& f : factors) {
    if (f->level_bound() != M) throw ShapeError("product of simplicial spaces with different level bounds");
    exact = exact && f->exact();
  }
  SpaceProduct out;
  out.factors = factors;
  std::vector<SSetPtr> levels;
  for (int m = 0; m <= M; ++m) {
    std::vector<SSetPtr> parts;
    for (auto& f : factors) parts.push_back(f->level_ptr(m));
    out.levels.push_back(sset::product(parts));
    levels.push_back(out.levels.back().set);
  }
  const std::size_t k = factors.size();
  std::vector<std::vector<SSetMap>> F(static_cast<std::size_t>(M + 1)), D(static_cast<std::size_t>(M + 1));
  auto induced = [&](int from, int to, const std::function<const SSetMap&(std::size_t)>& comp) {
    SSetMap f{levels[from], levels[to], {}};
    std::vector<Simplex> img(k);
    for (const auto& t : out.levels[from].cell_tuple) {
      for (std::size_t i = 0; i < k; ++i) img[i] = comp(i)(t[i]);
      f.assign.push_back(out.levels[to].tuple(img));
    }
    return f;
  };
  for (int m = 1; m <= M; ++m)
    for (int i = 0; i <= m; ++i)
      F[m].push_back(induced(m, m - 1, [&](std::size_t q) -> const SSetMap& { return factors[q]->face(m, i); }));
  for (int m = 0; m < M; ++m)
    for (int j = 0; j <= m; ++j)
      D[m].push_back(induced(m, m + 1, [&](std::size_t q) -> const SSetMap& { return factors[q]->degeneracy(m, j); }));
  out.space = std::make_shared<FinSimplicialSpace>(levels, std::move(F), std::move(D), exact);
  for (std::size_t i = 0; i < k; ++i) {
    SSpaceMap pr{out.space, factors[i], {}};
    for (int m = 0; m <= M; ++m) {
      auto c = out.levels[m].projections[i];
      c.source = out.space->level_ptr(m);
      pr.components.push_back(std::move(c));
    }
    out.projections.push_back(std::move(pr));
  }
  return out;
}

SSpaceMap product_map(const SpaceProduct& source, const SpaceProduct& target, const std::vector<SSpaceMap>& comps) {
  SSpaceMap f{source.space, target.space, {}};
  for (int m = 0; m <= source.space->level_bound(); ++m) {
    std::vector<SSetMap> cs;
    for (auto& c : comps) cs.push_back(c.components[m]);
    auto lm = sset::product_map(source.levels[m], target.levels[m], cs);
    lm.source = source.space->level_ptr(m);
    lm.target = target.space->level_ptr(m);
    f.components.push_back(std::move(lm));
  }
  return f;
}

SpacePullback pullback(const SSpaceMap& f, const SSpaceMap& g) {
  if (f.target.get() != g.target.get()) throw ShapeError("pullback of maps with different targets");
  const int M = f.source->level_bound();
  if (g.source->level_bound() != M || f.target->level_bound() != M) throw ShapeError("pullback: level bounds differ");
  SpacePullback out;
  std::vector<SSetPtr> levels;
  for (int m = 0; m <= M; ++m) {
    out.levels.push_back(sset::pullback(f.components[m], g.components[m]));
    levels.push_back(out.levels.back().set);
  }
  const auto& A = *f.source;
  const auto& B = *g.source;
  std::vector<std::vector<SSetMap>> Fm(static_cast<std::size_t>(M + 1)), Dm(static_cast<std::size_t>(M + 1));
  for (int m = 1; m <= M; ++m)
    for (int i = 0; i <= m; ++i) {
      SSetMap h{levels[m], levels[m - 1], {}};
      for (const auto& [x, y] : out.levels[m].cell_pair) h.assign.push_back(out.levels[m - 1].pair(A.face(m, i)(x), B.face(m, i)(y)));
      Fm[m].push_back(std::move(h));
    }
  for (int m = 0; m < M; ++m)
    for (int j = 0; j <= m; ++j) {
      SSetMap h{levels[m], levels[m + 1], {}};
      for (const auto& [x, y] : out.levels[m].cell_pair)
        h.assign.push_back(out.levels[m + 1].pair(A.degeneracy(m, j)(x), B.degeneracy(m, j)(y)));
      Dm[m].push_back(std::move(h));
    }
  out.space = std::make_shared<FinSimplicialSpace>(levels, std::move(Fm), std::move(Dm), A.exact() && B.exact());
  out.p1 = SSpaceMap{out.space, f.source, {}};
  out.p2 = SSpaceMap{out.space, g.source, {}};
  for (int m = 0; m <= M; ++m) {
    auto a = out.levels[m].p1;
    auto b = out.levels[m].p2;
    a.source = b.source = levels[m];
    out.p1.components.push_back(std::move(a));
    out.p2.components.push_back(std::move(b));
  }
  return out;
}

SpacePushout pushout(const SSpaceMap& i, const SSpaceMap& f) {
  if (i.source.get() != f.source.get()) throw ShapeError("pushout of maps with different sources");
  if (!i.injective()) {
    if (f.injective()) {
      auto s = pushout(f, i);
      return SpacePushout{s.space, s.from_c, s.from_b};
    }
    throw ShapeError("pushout needs an injective leg");
  }
  const int M = i.source->level_bound();
  const auto& B = *i.target;
  const auto& C = *f.target;
  std::vector<sset::Pushout> po;
  std::vector<SSetPtr> levels;
  for (int m = 0; m <= M; ++m) {
    po.push_back(sset::pushout(i.components[m], f.components[m]));
    levels.push_back(po.back().set);
  }
  // origin of each cell of P_m: ('c', cell) or ('b', cell)
  std::vector<std::vector<std::pair<char, int>>> origin(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    origin[m].assign(static_cast<std::size_t>(levels[m]->cell_count()), {'?', -1});
    for (int c = 0; c < C.level(m).cell_count(); ++c) origin[m][po[m].from_c.assign[c].cell] = {'c', c};
    for (int b = 0; b < B.level(m).cell_count(); ++b) {
      const auto& s = po[m].from_b.assign[b];
      if (s.ties == 0 && origin[m][s.cell].first == '?') origin[m][s.cell] = {'b', b};
    }
  }
  auto induced = [&](int from, int to, const SSetMap& bmap, const SSetMap& cmap) {
    SSetMap h{levels[from], levels[to], {}};
    for (const auto& [kind, c] : origin[from]) {
      if (kind == 'c') {
        h.assign.push_back(po[to].from_c(cmap(C.level(from).cell(c))));
      } else {
        h.assign.push_back(po[to].from_b(bmap(B.level(from).cell(c))));
      }
    }
    return h;
  };
  std::vector<std::vector<SSetMap>> Fm(static_cast<std::size_t>(M + 1)), Dm(static_cast<std::size_t>(M + 1));
  for (int m = 1; m <= M; ++m)
    for (int k = 0; k <= m; ++k) Fm[m].push_back(induced(m, m - 1, B.face(m, k), C.face(m, k)));
  for (int m = 0; m < M; ++m)
    for (int k = 0; k <= m; ++k) Dm[m].push_back(induced(m, m + 1, B.degeneracy(m, k), C.degeneracy(m, k)));
  SpacePushout out;
  out.space = std::make_shared<FinSimplicialSpace>(levels, std::move(Fm), std::move(Dm), B.exact() && C.exact());
  out.from_b = SSpaceMap{i.target, out.space, {}};
  out.from_c = SSpaceMap{f.target, out.space, {}};
  for (int m = 0; m <= M; ++m) {
    out.from_b.components.push_back(po[m].from_b);
    out.from_c.components.push_back(po[m].from_c);
  }
  return out;
}

SpaceCoproduct coproduct(const std::vector<SSpacePtr>& parts) {
  if (parts.empty()) throw ShapeError("empty coproduct; use empty_space");
  const int M = parts[0]->level_bound();
  bool exact = true;
  for (auto& p : parts) {
    if (p->level_bound() != M) throw ShapeError("coproduct with different level bounds");
    exact = exact && p->exact();
  }
  std::vector<sset::Coproduct> cps;
  std::vector<SSetPtr> levels;
  for (int m = 0; m <= M; ++m) {
    std::vector<SSetPtr> ls;
    for (auto& p : parts) ls.push_back(p->level_ptr(m));
    cps.push_back(sset::coproduct(ls));
    levels.push_back(cps.back().set);
  }
  auto induced = [&](int from, int to, const std::function<const SSetMap&(std::size_t)>& op) {
    SSetMap h{levels[from], levels[to], {}};
    for (const auto& [k, c] : cps[from].origin)
      h.assign.push_back(cps[to].injections[k](op(static_cast<std::size_t>(k))(parts[k]->level(from).cell(c))));
    return h;
  };
  std::vector<std::vector<SSetMap>> Fm(static_cast<std::size_t>(M + 1)), Dm(static_cast<std::size_t>(M + 1));
  for (int m = 1; m <= M; ++m)
    for (int i = 0; i <= m; ++i)
      Fm[m].push_back(induced(m, m - 1, [&](std::size_t k) -> const SSetMap& { return parts[k]->face(m, i); }));
  for (int m = 0; m < M; ++m)
    for (int j = 0; j <= m; ++j)
      Dm[m].push_back(induced(m, m + 1, [&](std::size_t k) -> const SSetMap& { return parts[k]->degeneracy(m, j); }));
  SpaceCoproduct out;
  out.space = std::make_shared<FinSimplicialSpace>(levels, std::move(Fm), std::move(Dm), exact);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    SSpaceMap inj{parts[k], out.space, {}};
    for (int m = 0; m <= M; ++m) inj.components.push_back(cps[m].injections[k]);
    out.injections.push_back(std::move(inj));
  }
  return out;
}

SSpacePtr truncate(const FinSimplicialSpace& x, int M) {
  if (M < 0 || M > x.level_bound()) throw DomainError("truncate: level bound out of range");
  std::vector<SSetPtr> levels;
  std::vector<std::vector<SSetMap>> Fm(static_cast<std::size_t>(M + 1)), Dm(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    levels.push_back(x.level_ptr(m));
    for (int i = 0; i <= m && m > 0; ++i) Fm[m].push_back(x.face(m, i));
    for (int j = 0; j <= m && m < M; ++j) Dm[m].push_back(x.degeneracy(m, j));
  }
  bool exact = x.exact() && x.generator_level() <= M;
  return std::make_shared<FinSimplicialSpace>(std::move(levels), std::move(Fm), std::move(Dm), exact);
}

SSpaceMap truncate_map(const SSpaceMap& f, const SSpacePtr& source, const SSpacePtr& target) {
  SSpaceMap g{source, target, {}};
  for (int m = 0; m <= source->level_bound(); ++m) g.components.push_back(f.components[m]);
  return g;
}

SSpacePtr opposite(const FinSimplicialSpace& x) {
  const int M = x.level_bound();
  std::vector<SSetPtr> levels;
  std::vector<std::vector<SSetMap>> Fm(static_cast<std::size_t>(M + 1)), Dm(static_cast<std::size_t>(M + 1));
  for (int m = 0; m <= M; ++m) {
    levels.push_back(x.level_ptr(m));
    for (int i = 0; i <= m && m > 0; ++i) Fm[m].push_back(x.face(m, m - i));
    for (int j = 0; j <= m && m < M; ++j) Dm[m].push_back(x.degeneracy(m, m - j));
  }
  return std::make_shared<FinSimplicialSpace>(std::move(levels), std::move(Fm), std::move(Dm), x.exact());
}

SSpaceMap opposite_map(const SSpaceMap& f, const SSpacePtr& source, const SSpacePtr& target) {
  SSpaceMap g{source, target, f.components};
  return g;
}

SSpaceMap to_point(const SSpacePtr& x) {
  auto pt = point_space(x->level_bound());
  SSpaceMap f{x, pt, {}};
  for (int m = 0; m <= x->level_bound(); ++m) {
    auto c = sset::to_point(x->level_ptr(m));
    c.target = pt->level_ptr(m);
    f.components.push_back(std::move(c));
  }
  return f;
}

SSpaceMap point_map(const SSpacePtr& x, int vertex) {
  const int M = x->level_bound();
  auto f0 = F(0, M);
  return classifying_map(f0, 0, x, vertex);
}

SSpaceMap classifying_map(const SSpacePtr& fm, int m, const SSpacePtr& x, int vertex) {
  const int M = x->level_bound();
  if (fm->level_bound() != M) throw ShapeError("classifying_map: level bounds differ");
  SSpaceMap f{fm, x, {}};
  for (int k = 0; k <= M; ++k) {
    SSetMap c{fm->level_ptr(k), x->level_ptr(k), {}};
    for (int v = 0; v < fm->level(k).vertex_count(); ++v) c.assign.push_back(x->act(F_map(m, k, v), Simplex{vertex, 0, 0}));
    f.components.push_back(std::move(c));
  }
  return f;
}

// ---------------------------------------------------------------- discrete tables

int DiscreteView::act(const poset::MonotoneMap& theta, int x) const {
  auto em = poset::epi_mono(theta);
  std::vector<int> image = em.mono.values;
  int top = theta.n;
  while (static_cast<int>(image.size()) - 1 < top) {
    int v = top;
    for (int pos = static_cast<int>(image.size()) - 1; pos >= 0 && image[pos] == v; --pos) --v;
    x = face[top][v][x];
    for (auto& w : image)
      if (w > v) --w;
    --top;
  }
  std::uint32_t ties = poset::ties_of(em.epi);
  int level = top;
  for (int j = 0; j < theta.m; ++j)
    if ((ties >> j) & 1u) x = degen[level++][j][x];
  return x;
}

DiscreteView discrete_view(const FinSimplicialSpace& x) {
  if (!x.is_discrete()) throw PreconditionError("discrete view of a non-discrete simplicial space");
  DiscreteView v;
  v.M = x.level_bound();
  v.size.resize(static_cast<std::size_t>(v.M + 1));
  v.face.resize(static_cast<std::size_t>(v.M + 1));
  v.degen.resize(static_cast<std::size_t>(v.M + 1));
  v.label.resize(static_cast<std::size_t>(v.M + 1));
  for (int m = 0; m <= v.M; ++m) {
    v.size[m] = x.level(m).vertex_count();
    for (int c = 0; c < v.size[m]; ++c) v.label[m].push_back(x.level(m).label(c));
    for (int i = 0; i <= m && m > 0; ++i) {
      std::vector<int> t;
      for (const auto& s : x.face(m, i).assign) t.push_back(s.cell);
      v.face[m].push_back(std::move(t));
    }
    for (int j = 0; j <= m && m < v.M; ++j) {
      std::vector<int> t;
      for (const auto& s : x.degeneracy(m, j).assign) t.push_back(s.cell);
      v.degen[m].push_back(std::move(t));
    }
  }
  return v;
}

std::vector<std::vector<int>> discrete_components(const SSpaceMap& f) {
  std::vector<std::vector<int>> out;
  for (const auto& c : f.components) {
    std::vector<int> t;
    for (const auto& s : c.assign) {
      if (s.dim != 0) throw PreconditionError("discrete components of a map with non-discrete source");
      t.push_back(s.cell);
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace fiblab::sspace
