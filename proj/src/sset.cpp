#include "fiblab/sset.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <mutex>
#include <unordered_set>

#include "fiblab/error.hpp"

namespace fiblab::sset {

namespace {

// Surjection values of a tie mask; dim <= 31.
int surjection_values(int dim, std::uint32_t ties, int* out) {
  out[0] = 0;
  for (int j = 0; j < dim; ++j) out[j + 1] = out[j] + (((ties >> j) & 1u) ? 0 : 1);
  return out[dim];
}

std::uint32_t ties_of_values(const int* v, int dim) {
  std::uint32_t t = 0;
  for (int j = 0; j < dim; ++j)
    if (v[j] == v[j + 1]) t |= 1u << j;
  return t;
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::string digits_label(const std::vector<int>& v, bool commas) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (commas && i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

int Simplex::base_dim() const { return dim - std::popcount(ties); }

std::vector<int> Simplex::word() const {
  std::vector<int> w;
  for (int j = dim - 1; j >= 0; --j)
    if ((ties >> j) & 1u) w.push_back(j);
  return w;
}

std::uint32_t compose_ties(std::uint32_t inner, std::uint32_t outer, int outer_dim) {
  std::uint32_t out = 0;
  int t = 0;
  for (int k = 0; k < outer_dim; ++k) {
    if ((outer >> k) & 1u) {
      out |= 1u << k;
    } else {
      if ((inner >> t) & 1u) out |= 1u << k;
      ++t;
    }
  }
  return out;
}

// ---------------------------------------------------------------- FinSimplicialSet

int FinSimplicialSet::first(int d) const {
  if (d < 0) return 0;
  if (d >= static_cast<int>(offsets_.size())) return cell_count();
  return offsets_[static_cast<std::size_t>(d)];
}

const Simplex& FinSimplicialSet::cell_face(int c, int i) const {
  return faces_[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
}

Simplex FinSimplicialSet::degenerate(const Simplex& x, std::uint32_t ties, int new_dim) const {
  return Simplex{x.cell, new_dim, compose_ties(x.ties, ties, new_dim)};
}

Simplex FinSimplicialSet::face(const Simplex& x, int i) const {
  if (i < 0 || i > x.dim || x.dim == 0) throw DomainError("face index out of range");
  if (x.ties == 0) return cell_face(x.cell, i);
  int v[33];
  surjection_values(x.dim, x.ties, v);
  // sigma o delta^i stays surjective iff v[i] has another preimage.
  bool shared = (i > 0 && v[i - 1] == v[i]) || (i < x.dim && v[i + 1] == v[i]);
  int w[33];
  int k = 0;
  for (int j = 0; j <= x.dim; ++j)
    if (j != i) w[k++] = v[j];
  if (shared) return Simplex{x.cell, x.dim - 1, ties_of_values(w, x.dim - 1)};
  int missing = v[i];
  for (int j = 0; j < x.dim; ++j)
    if (w[j] > missing) --w[j];
  std::uint32_t t = ties_of_values(w, x.dim - 1);
  return degenerate(cell_face(x.cell, missing), t, x.dim - 1);
}

Simplex FinSimplicialSet::degeneracy(const Simplex& x, int j) const {
  if (j < 0 || j > x.dim) throw DomainError("degeneracy index out of range");
  std::uint32_t low = x.ties & ((1u << j) - 1u);
  std::uint32_t high = (x.ties >> j) << (j + 1);
  return Simplex{x.cell, x.dim + 1, low | (1u << j) | high};
}

Simplex FinSimplicialSet::apply(const Simplex& x, const poset::MonotoneMap& theta) const {
  if (theta.n != x.dim) throw DomainError("operator " + theta.str() + " does not act on a " + std::to_string(x.dim) + "-simplex");
  int sigma[33];
  surjection_values(x.dim, x.ties, sigma);
  const int m = theta.m;
  int w[33];
  for (int k = 0; k <= m; ++k) w[k] = sigma[theta.values[static_cast<std::size_t>(k)]];
  std::uint32_t epi_ties = ties_of_values(w, m);
  // image of w, as a mono into [base_dim]
  int image[33];
  int k = 0;
  for (int j = 0; j <= m; ++j)
    if (k == 0 || image[k - 1] != w[j]) image[k++] = w[j];
  Simplex y = cell(x.cell);
  int top = x.base_dim();
  // Peel off the largest missing value: mono = delta^v o mono'.
  while (k - 1 < top) {
    int v = top;
    for (int pos = k - 1; pos >= 0 && image[pos] == v; --pos) --v;
    y = face(y, v);
    for (int j = 0; j < k; ++j)
      if (image[j] > v) --image[j];
    --top;
  }
  return degenerate(y, epi_ties, m);
}

int FinSimplicialSet::vertex(const Simplex& x, int i) const {
  return apply(x, poset::MonotoneMap::constant(0, x.dim, i)).cell;
}

std::vector<int> FinSimplicialSet::vertices(const Simplex& x) const {
  std::vector<int> out(static_cast<std::size_t>(x.dim + 1));
  for (int i = 0; i <= x.dim; ++i) out[i] = vertex(x, i);
  return out;
}

std::vector<Simplex> FinSimplicialSet::simplices(int k) const {
  std::vector<Simplex> out;
  if (k < 0) return out;
  for (int e = 0; e <= std::min(k, top_dim()); ++e) {
    int r = k - e;
    std::vector<std::uint32_t> masks;
    if (r == 0) {
      masks.push_back(0);
    } else {
      std::uint32_t mk = (1u << r) - 1u;
      const std::uint32_t limit = k >= 32 ? 0 : (1u << k);
      while (mk < limit) {
        masks.push_back(mk);
        std::uint32_t c = mk & (~mk + 1u);
        std::uint32_t rr = mk + c;
        mk = (((rr ^ mk) >> 2) / c) | rr;
      }
    }
    for (int c = first(e); c < first(e + 1); ++c)
      for (auto t : masks) out.push_back(Simplex{c, k, t});
  }
  // order by cell, then mask
  std::sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
    return a.cell != b.cell ? a.cell < b.cell : a.ties < b.ties;
  });
  return out;
}

std::uint64_t FinSimplicialSet::count(int k) const {
  std::uint64_t total = 0;
  for (int e = 0; e <= std::min(k, top_dim()); ++e)
    total += static_cast<std::uint64_t>(count_cells(e)) * binom(k, k - e);
  return total;
}

std::string FinSimplicialSet::ref(const Simplex& x) const {
  std::string s = label(x.cell);
  if (x.ties) {
    s += '.';
    for (int j : x.word()) s += "s" + std::to_string(j);
  }
  return s;
}

std::optional<Simplex> FinSimplicialSet::parse_ref(const std::string& r) const {
  if (int c = find(r); c >= 0) return cell(c);
  for (std::size_t dot = r.rfind('.'); dot != std::string::npos; dot = dot == 0 ? std::string::npos : r.rfind('.', dot - 1)) {
    int c = find(r.substr(0, dot));
    if (c < 0) continue;
    std::string w = r.substr(dot + 1);
    std::vector<int> word;
    std::size_t p = 0;
    bool ok = !w.empty();
    while (ok && p < w.size()) {
      if (w[p] != 's') {
        ok = false;
        break;
      }
      ++p;
      std::size_t q = p;
      while (q < w.size() && std::isdigit(static_cast<unsigned char>(w[q]))) ++q;
      if (q == p) {
        ok = false;
        break;
      }
      word.push_back(std::stoi(w.substr(p, q - p)));
      p = q;
    }
    if (!ok) continue;
    for (std::size_t i = 1; i < word.size(); ++i)
      if (word[i] >= word[i - 1]) ok = false;
    if (!ok) continue;
    int dim = cell_dim(c) + static_cast<int>(word.size());
    std::uint32_t ties = 0;
    for (int j : word) {
      if (j >= dim) ok = false;
      else ties |= 1u << j;
    }
    if (!ok) continue;
    return Simplex{c, dim, ties};
  }
  return std::nullopt;
}

int FinSimplicialSet::find(const std::string& l) const {
  auto it = by_label_.find(l);
  return it == by_label_.end() ? -1 : it->second;
}

std::string FinSimplicialSet::simplex_label(const Simplex& x) const {
  if (!vertex_labels_) return ref(x);
  std::string s;
  for (int v : vertices(x)) s += label(v);
  return s;
}

// ---------------------------------------------------------------- Builder

int Builder::add_cell(int dim, std::string label, std::vector<Simplex> faces) {
  if (dim < 0) throw DomainError("negative cell dimension");
  if (static_cast<int>(faces.size()) != (dim == 0 ? 0 : dim + 1))
    throw ShapeError("a " + std::to_string(dim) + "-cell needs " + std::to_string(dim == 0 ? 0 : dim + 1) + " faces");
  dims_.push_back(dim);
  labels_.push_back(std::move(label));
  faces_.push_back(std::move(faces));
  return static_cast<int>(dims_.size()) - 1;
}

SSetPtr Builder::build(bool validate) {
  const int n = size();
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dims_[a] < dims_[b]; });
  remap_.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) remap_[order[i]] = i;

  auto s = std::make_shared<FinSimplicialSet>();
  int top = n ? dims_[order.back()] : -1;
  if (!exact_ && top > dim_bound_)
    throw DomainError("cell of dimension " + std::to_string(top) + " above the truncation " + std::to_string(dim_bound_));
  s->dim_bound_ = exact_ ? std::max(dim_bound_, std::max(top, 0)) : dim_bound_;
  s->exact_ = exact_;
  s->cell_dim_.resize(static_cast<std::size_t>(n));
  s->label_.resize(static_cast<std::size_t>(n));
  s->faces_.resize(static_cast<std::size_t>(n));
  s->offsets_.assign(static_cast<std::size_t>(top + 2), n);
  for (int i = n - 1; i >= 0; --i) s->offsets_[static_cast<std::size_t>(dims_[order[i]])] = i;
  for (int d = top; d >= 0; --d)
    if (s->offsets_[static_cast<std::size_t>(d)] > s->offsets_[static_cast<std::size_t>(d + 1)])
      s->offsets_[static_cast<std::size_t>(d)] = s->offsets_[static_cast<std::size_t>(d + 1)];
  for (int i = 0; i < n; ++i) {
    int src = order[i];
    s->cell_dim_[i] = dims_[src];
    auto& fs = s->faces_[i];
    fs = faces_[src];
    for (auto& f : fs) {
      if (f.cell < 0 || f.cell >= n) throw ShapeError("face refers to an unknown cell");
      if (f.dim != dims_[src] - 1) throw ShapeError("face of wrong dimension in cell '" + labels_[src] + "'");
      f.cell = remap_[f.cell];
      if (dims_[order[f.cell]] > f.dim || (f.dim - std::popcount(f.ties)) != dims_[order[f.cell]])
        throw ShapeError("malformed face simplex in cell '" + labels_[src] + "'");
    }
  }
  // unique labels
  std::unordered_map<std::string, int> seen;
  for (int i = 0; i < n; ++i) {
    std::string l = labels_[order[i]];
    if (l.empty()) l = "c" + std::to_string(i);
    if (seen.count(l)) {
      int k = 2;
      while (seen.count(l + "#" + std::to_string(k))) ++k;
      l += "#" + std::to_string(k);
    }
    seen.emplace(l, i);
    s->label_[i] = l;
  }
  s->by_label_ = std::move(seen);

  if (validate) {
    for (int c = 0; c < n; ++c) {
      int d = s->cell_dim_[c];
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j <= d; ++j) {
          if (d < 2) continue;
          Simplex a = s->face(s->cell_face(c, j), i);
          Simplex b = s->face(s->cell_face(c, i), j - 1);
          if (!(a == b))
            throw ShapeError("simplicial identity d" + std::to_string(i) + "d" + std::to_string(j) + " = d" +
                             std::to_string(j - 1) + "d" + std::to_string(i) + " fails on cell '" + s->label_[c] + "'");
        }
    }
  }

  // vertex-sequence labels
  bool ok = true;
  for (int v = 0; v < s->vertex_count() && ok; ++v)
    if (s->label_[v].size() != 1) ok = false;
  if (ok) {
    std::unordered_set<std::string> seqs;
    for (int c = s->vertex_count(); c < n && ok; ++c) {
      auto vs = s->vertices(s->cell(c));
      std::string key;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i && vs[i] == vs[i - 1]) ok = false;
        key += s->label_[vs[i]];
      }
      if (!seqs.insert(key).second) ok = false;
    }
  }
  s->vertex_labels_ = ok;
  return s;
}

SSetPtr relabel(const FinSimplicialSet& s, const std::vector<std::string>& labels) {
  if (static_cast<int>(labels.size()) != s.cell_count()) throw ShapeError("relabel: label count mismatch");
  Builder b(s.dim_bound(), s.exact());
  for (int c = 0; c < s.cell_count(); ++c) b.add_cell(s.cell_dim(c), labels[c], s.cell_faces(c));
  return b.build(false);
}

SSetPtr with_bound(const FinSimplicialSet& s, int dim_bound, bool exact) {
  Builder b(dim_bound, exact);
  for (int c = 0; c < s.cell_count(); ++c) b.add_cell(s.cell_dim(c), s.label(c), s.cell_faces(c));
  return b.build(false);
}

// ---------------------------------------------------------------- maps

Simplex SSetMap::operator()(const Simplex& x) const {
  const Simplex& y = assign[static_cast<std::size_t>(x.cell)];
  if (x.ties == 0) return y;
  return target->degenerate(y, x.ties, x.dim);
}

std::string SSetMap::validate() const {
  if (!source || !target) return "map without source or target";
  if (static_cast<int>(assign.size()) != source->cell_count()) return "assignment size differs from the source cell count";
  for (int c = 0; c < source->cell_count(); ++c) {
    const Simplex& y = assign[c];
    if (y.cell < 0 || y.cell >= target->cell_count()) return "cell '" + source->label(c) + "' maps to an unknown cell";
    if (y.dim != source->cell_dim(c) || y.base_dim() != target->cell_dim(y.cell))
      return "cell '" + source->label(c) + "' maps to a simplex of the wrong dimension";
    for (int i = 0; i <= source->cell_dim(c) && source->cell_dim(c) > 0; ++i) {
      if (!(target->face(y, i) == (*this)(source->cell_face(c, i))))
        return "map does not commute with d" + std::to_string(i) + " on cell '" + source->label(c) + "'";
    }
  }
  return {};
}

bool SSetMap::injective() const {
  std::vector<char> hit(static_cast<std::size_t>(target->cell_count()), 0);
  for (const auto& y : assign) {
    if (y.ties) return false;
    if (hit[y.cell]) return false;
    hit[y.cell] = 1;
  }
  return true;
}

bool SSetMap::surjective_up_to(int dim) const {
  std::vector<char> hit(static_cast<std::size_t>(target->cell_count()), 0);
  for (const auto& y : assign)
    if (y.ties == 0) hit[y.cell] = 1;
  for (int c = 0; c < target->cell_count(); ++c)
    if (target->cell_dim(c) <= dim && !hit[c]) return false;
  return true;
}

bool SSetMap::is_identity() const {
  if (source.get() != target.get() && source->cell_count() != target->cell_count()) return false;
  for (int c = 0; c < static_cast<int>(assign.size()); ++c)
    if (!(assign[c] == Simplex{c, source->cell_dim(c), 0})) return false;
  return true;
}

SSetMap identity_map(const SSetPtr& x) {
  SSetMap f{x, x, {}};
  f.assign.reserve(static_cast<std::size_t>(x->cell_count()));
  for (int c = 0; c < x->cell_count(); ++c) f.assign.push_back(x->cell(c));
  return f;
}

SSetMap compose(const SSetMap& g, const SSetMap& f) {
  if (f.target.get() != g.source.get())
    throw CompositionError("simplicial maps are not composable");
  SSetMap h{f.source, g.target, {}};
  h.assign.reserve(f.assign.size());
  for (const auto& y : f.assign) h.assign.push_back(g(y));
  return h;
}

SSetMap to_point(const SSetPtr& x) {
  static const SSetPtr pt = point();
  SSetMap f{x, pt, {}};
  for (int c = 0; c < x->cell_count(); ++c) {
    int d = x->cell_dim(c);
    f.assign.push_back(Simplex{0, d, d == 0 ? 0u : ((1u << d) - 1u)});
  }
  return f;
}

bool same_map(const SSetMap& a, const SSetMap& b) {
  return a.source.get() == b.source.get() && a.target.get() == b.target.get() && a.assign == b.assign;
}

// ---------------------------------------------------------------- standard objects

namespace {

// Rank of a mask among masks of equal popcount, in increasing numeric order.
int colex_rank(std::uint32_t mask) {
  std::uint64_t r = 0;
  int i = 1;
  for (int p = 0; p < 32; ++p)
    if ((mask >> p) & 1u) r += binom(p, i++);
  return static_cast<int>(r);
}

int delta_cell_id(int n, std::uint32_t mask) {
  int d = std::popcount(mask) - 1;
  std::uint64_t off = 0;
  for (int j = 0; j < d; ++j) off += binom(n + 1, j + 1);
  return static_cast<int>(off) + colex_rank(mask);
}

std::vector<int> mask_elements(std::uint32_t mask) {
  std::vector<int> v;
  for (int p = 0; p < 32; ++p)
    if ((mask >> p) & 1u) v.push_back(p);
  return v;
}

std::vector<std::uint32_t> masks_of_size(int n, int size) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << (n + 1)); ++m)
    if (std::popcount(m) == size) out.push_back(m);
  return out;
}

// Subsets of [n] (by mask) accepted by keep, as a simplicial set with faces among them.
SSetPtr delta_subcomplex(int n, const std::function<bool(std::uint32_t)>& keep) {
  if (n < 0 || n > 20) throw DomainError("simplex dimension out of supported range");
  Builder b(n, true);
  std::unordered_map<std::uint32_t, int> id;
  for (int d = 0; d <= n; ++d) {
    for (auto m : masks_of_size(n, d + 1)) {
      if (!keep(m)) continue;
      auto el = mask_elements(m);
      std::vector<Simplex> faces;
      if (d > 0) {
        for (int i = 0; i <= d; ++i) {
          std::uint32_t fm = m & ~(1u << el[i]);
          auto it = id.find(fm);
          if (it == id.end()) throw ShapeError("subcomplex of a simplex is not closed under faces");
          faces.push_back(Simplex{it->second, d - 1, 0});
        }
      }
      id[m] = b.add_cell(d, digits_label(el, n >= 10), std::move(faces));
    }
  }
  return b.build(false);
}

}  // namespace

SSetPtr point() { return delta(0); }

SSetPtr empty_set() {
  Builder b(0, true);
  return b.build();
}

SSetPtr delta(int n) {
  if (n < 0) throw DomainError("delta(n) needs n >= 0");
  static std::mutex mu;
  static std::vector<SSetPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (static_cast<int>(cache.size()) <= n) cache.resize(static_cast<std::size_t>(n + 1));
  auto& slot = cache[static_cast<std::size_t>(n)];
  if (!slot) slot = delta_subcomplex(n, [](std::uint32_t) { return true; });
  return slot;
}

SSetPtr boundary(int n) {
  if (n < 0) throw DomainError("boundary(n) needs n >= 0");
  const std::uint32_t full = (1u << (n + 1)) - 1u;
  auto s = delta_subcomplex(n, [&](std::uint32_t m) { return m != full; });
  return with_bound(*s, std::max(n - 1, 0), true);
}

SSetPtr horn(int n, int i) {
  if (n < 1 || i < 0 || i > n)
    throw DomainError("horn(" + std::to_string(n) + "," + std::to_string(i) + "): need n >= 1 and 0 <= i <= n");
  const std::uint32_t full = (1u << (n + 1)) - 1u;
  const std::uint32_t missing = full & ~(1u << i);
  auto s = delta_subcomplex(n, [&](std::uint32_t m) { return m != full && m != missing; });
  return with_bound(*s, n - 1, true);
}

SSetPtr j_truncated(int l, int T) {
  if (l < 0 || T < 0) throw DomainError("j_truncated needs l >= 0 and T >= 0");
  KeyedSpec spec;
  spec.dim_bound = T;
  spec.exact = (l == 0);
  spec.simplices = [l](int d) {
    std::vector<Key> out;
    Key k(static_cast<std::size_t>(d + 1), 0);
    while (true) {
      out.push_back(k);
      int p = d;
      while (p >= 0 && k[p] == l) k[p--] = 0;
      if (p < 0) break;
      ++k[p];
    }
    return out;
  };
  spec.face = [](const Key& k, int, int i) {
    Key f = k;
    f.erase(f.begin() + i);
    return f;
  };
  spec.degeneracy = [](const Key& k, int, int j) {
    Key f = k;
    f.insert(f.begin() + j, k[static_cast<std::size_t>(j)]);
    return f;
  };
  spec.label = [l](const Key& k, int) { return digits_label(k, l >= 10); };
  return build_keyed(spec).set;
}

SSetPtr discrete(const std::vector<std::string>& labels) {
  Builder b(0, true);
  for (const auto& l : labels) b.add_cell(0, l);
  return b.build(false);
}

SSetPtr discrete(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return discrete(labels);
}

SSetPtr spine(int n) {
  if (n < 1) throw DomainError("spine(n) needs n >= 1");
  SSetPtr acc = delta(1);
  auto pt = point();
  auto edge = delta(1);
  for (int k = 1; k < n; ++k) {
    SSetMap to_edge{pt, edge, {Simplex{0, 0, 0}}};
    SSetMap to_acc{pt, acc, {Simplex{k, 0, 0}}};
    acc = pushout(to_edge, to_acc).set;
  }
  // vertices come out as 0..n in gluing order, edges as (i, i+1)
  std::vector<std::string> labels(static_cast<std::size_t>(acc->cell_count()));
  for (int c = 0; c < acc->cell_count(); ++c) {
    if (acc->cell_dim(c) == 0) {
      labels[c] = std::to_string(c);
    } else {
      auto vs = acc->vertices(acc->cell(c));
      labels[c] = std::to_string(vs[0]) + (n >= 10 ? "," : "") + std::to_string(vs[1]);
    }
  }
  return relabel(*acc, labels);
}

Simplex delta_simplex(int n, const poset::MonotoneMap& theta) {
  if (theta.n != n) throw DomainError("delta_simplex: target mismatch");
  auto em = poset::epi_mono(theta);
  std::uint32_t mask = 0;
  for (int v : em.mono.values) mask |= 1u << v;
  return Simplex{delta_cell_id(n, mask), theta.m, poset::ties_of(em.epi)};
}

poset::MonotoneMap delta_map(int n, const Simplex& x) {
  static thread_local std::unordered_map<int, SSetPtr> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, delta(n)).first;
  const auto& d = *it->second;
  return poset::MonotoneMap(x.dim, n, d.vertices(x));
}

SSetMap delta_functor(const poset::MonotoneMap& theta) {
  auto src = delta(theta.m);
  auto tgt = delta(theta.n);
  SSetMap f{src, tgt, {}};
  for (int c = 0; c < src->cell_count(); ++c) {
    poset::MonotoneMap mu(src->cell_dim(c), theta.m, src->vertices(src->cell(c)));
    f.assign.push_back(delta_simplex(theta.n, poset::compose(theta, mu)));
  }
  return f;
}

SSetMap classifying_map(const SSetPtr& x_set, const Simplex& x) {
  auto src = delta(x.dim);
  SSetMap f{src, x_set, {}};
  for (int c = 0; c < src->cell_count(); ++c) {
    poset::MonotoneMap mu(src->cell_dim(c), x.dim, src->vertices(src->cell(c)));
    f.assign.push_back(x_set->apply(x, mu));
  }
  return f;
}

SSetMap inclusion_into_delta(const SSetPtr& sub, int n) {
  auto d = delta(n);
  SSetMap f{sub, d, {}};
  for (int c = 0; c < sub->cell_count(); ++c) {
    int t = d->find(sub->label(c));
    if (t < 0) throw ShapeError("cell '" + sub->label(c) + "' is not a face of delta(" + std::to_string(n) + ")");
    f.assign.push_back(d->cell(t));
  }
  return f;
}

// ---------------------------------------------------------------- keyed construction

Simplex KeyedSet::find(const Key& k, int dim) const {
  if (dim < 0 || dim >= static_cast<int>(lookup.size())) throw DomainError("keyed lookup beyond truncation");
  auto it = lookup[static_cast<std::size_t>(dim)].find(k);
  if (it == lookup[static_cast<std::size_t>(dim)].end()) throw DomainError("keyed lookup: unknown simplex");
  return it->second;
}

bool KeyedSet::contains(const Key& k, int dim) const {
  return dim >= 0 && dim < static_cast<int>(lookup.size()) && lookup[static_cast<std::size_t>(dim)].count(k) > 0;
}

KeyedSet build_keyed(const KeyedSpec& spec) {
  KeyedSet out;
  Builder b(spec.dim_bound, spec.exact);
  out.lookup.resize(static_cast<std::size_t>(spec.dim_bound + 1));
  for (int d = 0; d <= spec.dim_bound; ++d) {
    auto keys = spec.simplices(d);
    auto& table = out.lookup[static_cast<std::size_t>(d)];
    table.reserve(keys.size() * 2);
    for (const auto& k : keys) {
      if (table.count(k)) continue;
      bool done = false;
      for (int j = d - 1; j >= 0 && !done; --j) {
        Key z = spec.face(k, d, j);
        if (spec.degeneracy(z, d - 1, j) == k) {
          const Simplex& zn = out.lookup[static_cast<std::size_t>(d - 1)].at(z);
          std::uint32_t low = zn.ties & ((1u << j) - 1u);
          std::uint32_t high = (zn.ties >> j) << (j + 1);
          table.emplace(k, Simplex{zn.cell, d, low | (1u << j) | high});
          done = true;
        }
      }
      if (done) continue;
      std::vector<Simplex> faces;
      if (d > 0) {
        faces.reserve(static_cast<std::size_t>(d + 1));
        for (int i = 0; i <= d; ++i) {
          Key f = spec.face(k, d, i);
          auto it = out.lookup[static_cast<std::size_t>(d - 1)].find(f);
          if (it == out.lookup[static_cast<std::size_t>(d - 1)].end())
            throw ShapeError("keyed construction: a face is not among the enumerated simplices");
          faces.push_back(it->second);
        }
      }
      std::string label;
      if (spec.label) {
        label = spec.label(k, d);
      } else {
        std::vector<int> v(k.begin(), k.end());
        label = digits_label(v, true);
      }
      int id = b.add_cell(d, std::move(label), std::move(faces));
      table.emplace(k, Simplex{id, d, 0});
      out.cell_key.push_back(k);
    }
  }
  out.set = b.build(false);
  return out;
}

}  // namespace fiblab::sset
