#include "oracles.hpp"

#include <functional>

#include "fiblab/sspace.hpp"

namespace fiblab::suite {

std::vector<std::vector<int>> monotone_sequences(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> grow = [&](int lo) {
    if (static_cast<int>(cur.size()) == m + 1) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= n; ++v) {
      cur.push_back(v);
      grow(v);
      cur.pop_back();
    }
  };
  grow(0);
  return out;
}

bool def_right_convex_surjection(int n, const std::vector<int>& f) {
  for (int b = 0; b <= n; ++b) {
    bool found = false;
    for (int v : f) found = found || b <= v;
    if (!found) return false;
  }
  return true;
}

bool def_right_convex_injection(int n, const std::vector<int>& f) {
  std::vector<char> hit(static_cast<std::size_t>(n + 1), 0);
  for (int v : f) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  for (int b1 = 0; b1 <= n; ++b1)
    if (hit[b1])
      for (int b = 0; b <= b1; ++b)
        if (!hit[b]) return false;
  return true;
}

std::map<std::vector<int>, std::vector<Splitting>> all_splittings(int m, int n) {
  std::map<std::vector<int>, std::vector<Splitting>> out;
  for (int k = 0; k <= n; ++k) {
    std::vector<std::vector<int>> ps, is;
    for (auto& p : monotone_sequences(m, k))
      if (def_right_convex_surjection(k, p)) ps.push_back(std::move(p));
    for (auto& i : monotone_sequences(k, n))
      if (def_right_convex_injection(n, i)) is.push_back(std::move(i));
    for (const auto& p : ps)
      for (const auto& i : is) {
        std::vector<int> f;
        for (int v : p) f.push_back(i[v]);
        out[f].emplace_back(p, i);
      }
  }
  return out;
}

UnderNerve under_nerve(const cat::FinCategory& C, int x, int M) {
  UnderNerve u;
  u.elements.resize(static_cast<std::size_t>(M + 1));
  u.index.resize(static_cast<std::size_t>(M + 1));
  u.face.resize(static_cast<std::size_t>(M + 1));
  u.degen.resize(static_cast<std::size_t>(M + 1));
  auto add = [&](int m, int a, std::vector<int> chain) {
    u.index[m].emplace(std::make_pair(a, chain), static_cast<int>(u.elements[m].size()));
    u.elements[m].emplace_back(a, std::move(chain));
  };
  for (int a = 0; a < C.morphism_count(); ++a) {
    if (C.src(a) != x) continue;
    add(0, a, {C.tgt(a)});
    // chains of length m starting at tgt(a)
    std::vector<int> chain;
    std::function<void(int, int)> grow = [&](int obj, int m) {
      if (m > M) return;
      if (m >= 1) add(m, a, chain);
      for (int g = 0; g < C.morphism_count(); ++g)
        if (C.src(g) == obj) {
          chain.push_back(g);
          grow(C.tgt(g), m + 1);
          chain.pop_back();
        }
    };
    grow(C.tgt(a), 0);
  }
  auto find = [&](int m, int a, const std::vector<int>& chain) { return u.index[m].at({a, chain}); };
  for (int m = 1; m <= M; ++m)
    for (int i = 0; i <= m; ++i) {
      std::vector<int> t;
      for (const auto& [a, ch] : u.elements[m]) {
        if (m == 1) {
          if (i == 0) t.push_back(find(0, C.comp(ch[0], a), {C.tgt(ch[0])}));
          else t.push_back(find(0, a, {C.src(ch[0])}));
          continue;
        }
        std::vector<int> out;
        int a2 = a;
        if (i == 0) {
          a2 = C.comp(ch[0], a);
          out.assign(ch.begin() + 1, ch.end());
        } else if (i == m) {
          out.assign(ch.begin(), ch.end() - 1);
        } else {
          for (int k = 0; k < m; ++k) {
            if (k == i - 1) {
              out.push_back(C.comp(ch[i], ch[i - 1]));
              ++k;
              continue;
            }
            out.push_back(ch[k]);
          }
        }
        t.push_back(find(m - 1, a2, out));
      }
      u.face[m].push_back(std::move(t));
    }
  for (int m = 0; m < M; ++m)
    for (int j = 0; j <= m; ++j) {
      std::vector<int> t;
      for (const auto& [a, ch] : u.elements[m]) {
        if (m == 0) {
          t.push_back(find(1, a, {C.id(ch[0])}));
          continue;
        }
        std::vector<int> out = ch;
        int obj = j < m ? C.src(ch[j]) : C.tgt(ch[m - 1]);
        out.insert(out.begin() + j, C.id(obj));
        t.push_back(find(m + 1, a, out));
      }
      u.degen[m].push_back(std::move(t));
    }
  return u;
}

std::string compare_under_slice(const cat::CatPtr& cp, int x, int M, fib::SliceResult* out, sspace::SSpacePtr* w_out) {
  const auto& C = *cp;
  auto nk = cat::nerve_keyed(C, M);
  auto w = sspace::embed_discrete(nk.set, M);
  auto sl = fib::slice_space(w, x, fib::Direction::under);
  const auto& S = *sl.space;
  const int Ms = S.level_bound();
  auto u = under_nerve(C, x, Ms);
  // W_m vertex -> chain key
  std::vector<std::vector<sset::Key>> key_of(static_cast<std::size_t>(Ms + 1));
  for (int m = 0; m <= Ms; ++m) {
    std::unordered_map<std::uint64_t, sset::Key> inv;
    for (const auto& [k, s] : nk.lookup[m]) inv.emplace(s.key(), k);
    for (const auto& s : nk.set->simplices(m)) key_of[m].push_back(inv.at(s.key()));
  }
  // the arrow x -> c of each level-0 element, read off its witness square
  const auto& sq0 = sl.squares.at(0);
  const sset::Simplex edge = sq0.set->cell(sq0.set->first(1));
  std::vector<int> arrow;
  for (const auto& h : sl.witness.at(0)) {
    int q = sspace::row_vertex(*w, sl.row, h(edge));
    arrow.push_back(key_of[1][q][0]);
  }
  std::vector<std::vector<int>> phi(static_cast<std::size_t>(Ms + 1));
  for (int m = 0; m <= Ms; ++m) {
    if (S.level_size(m) != u.elements[m].size())
      return "level " + std::to_string(m) + ": " + std::to_string(S.level_size(m)) + " elements, expected " +
             std::to_string(u.elements[m].size());
    std::vector<char> hit(u.elements[m].size(), 0);
    for (int v = 0; v < static_cast<int>(S.level_size(m)); ++v) {
      const int p = sl.projection(m, sset::Simplex{v, 0, 0}).cell;
      const int v0 = S.act(poset::MonotoneMap::constant(0, m, 0), sset::Simplex{v, 0, 0}).cell;
      auto it = u.index[m].find({arrow[v0], key_of[m][p]});
      if (it == u.index[m].end()) return "level " + std::to_string(m) + ": element " + std::to_string(v) + " is not an under-category chain";
      if (hit[it->second]++) return "level " + std::to_string(m) + ": two elements name the same chain";
      phi[m].push_back(it->second);
    }
  }
  for (int m = 1; m <= Ms; ++m)
    for (int i = 0; i <= m; ++i)
      for (int v = 0; v < static_cast<int>(S.level_size(m)); ++v)
        if (phi[m - 1][S.face(m, i).assign[v].cell] != u.face[m][i][phi[m][v]])
          return "face d" + std::to_string(i) + " at level " + std::to_string(m) + " disagrees";
  for (int m = 0; m < Ms; ++m)
    for (int j = 0; j <= m; ++j)
      for (int v = 0; v < static_cast<int>(S.level_size(m)); ++v)
        if (phi[m + 1][S.degeneracy(m, j).assign[v].cell] != u.degen[m][j][phi[m][v]])
          return "degeneracy s" + std::to_string(j) + " at level " + std::to_string(m) + " disagrees";
  if (out) *out = std::move(sl);
  if (w_out) *w_out = w;
  return {};
}

std::size_t grothendieck_count(const cat::SetFunctor& p, int m) {
  const int n = p.base->object_count() - 1;
  std::size_t total = 0;
  for (const auto& f : monotone_sequences(m, n))
    total += static_cast<std::size_t>(p.size(p.variance == cat::Variance::contravariant ? f.back() : f.front()));
  return total;
}

int poset_top(const cat::FinCategory& c) {
  for (int t = 0; t < c.object_count(); ++t) {
    bool top = true;
    for (int o = 0; o < c.object_count() && top; ++o) top = !c.hom(o, t).empty();
    if (top) return t;
  }
  return -1;
}

std::size_t chain_count(const cat::FinCategory& c, int m) {
  if (m == 0) return static_cast<std::size_t>(c.object_count());
  // ways[obj] = chains of the current length ending at obj
  std::vector<std::size_t> ways(static_cast<std::size_t>(c.object_count()), 1);
  for (int len = 0; len < m; ++len) {
    std::vector<std::size_t> next(ways.size(), 0);
    for (int f = 0; f < c.morphism_count(); ++f) next[c.tgt(f)] += ways[c.src(f)];
    ways = std::move(next);
  }
  std::size_t total = 0;
  for (auto w : ways) total += w;
  return total;
}

std::vector<std::size_t> nondegenerate_elements(const sspace::FinSimplicialSpace& x) {
  std::vector<std::size_t> out;
  for (int m = 0; m <= x.level_bound(); ++m) {
    std::vector<char> degenerate(x.level_size(m), 0);
    for (int j = 0; m > 0 && j < m; ++j)
      for (const auto& s : x.degeneracy(m - 1, j).assign) degenerate[s.cell] = 1;
    std::size_t n = 0;
    for (char d : degenerate) n += d ? 0 : 1;
    out.push_back(n);
  }
  return out;
}

}  // namespace fiblab::suite
