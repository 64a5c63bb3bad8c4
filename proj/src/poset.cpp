#include "fiblab/poset.hpp"

#include <bit>

#include "fiblab/error.hpp"

namespace fiblab::poset {

MonotoneMap::MonotoneMap(int m_, int n_, std::vector<int> values_) : m(m_), n(n_), values(std::move(values_)) {
  if (m < 0 || n < 0) throw DomainError("monotone map: negative poset size");
  if (static_cast<int>(values.size()) != m + 1)
    throw DomainError("monotone map: expected " + std::to_string(m + 1) + " values, got " +
                      std::to_string(values.size()));
  for (int i = 0; i <= m; ++i) {
    if (values[i] < 0 || values[i] > n) throw DomainError("monotone map: value out of range in " + str());
    if (i > 0 && values[i] < values[i - 1]) throw DomainError("monotone map: not increasing: " + str());
  }
}

MonotoneMap MonotoneMap::identity(int n) { return standard_embedding(n, n); }

MonotoneMap MonotoneMap::constant(int m, int n, int v) {
  return MonotoneMap(m, n, std::vector<int>(static_cast<std::size_t>(m + 1), v));
}

bool MonotoneMap::injective() const {
  for (int i = 1; i <= m; ++i)
    if (values[i] == values[i - 1]) return false;
  return true;
}

bool MonotoneMap::surjective() const {
  if (values.front() != 0 || values.back() != n) return false;
  for (int i = 1; i <= m; ++i)
    if (values[i] - values[i - 1] > 1) return false;
  return true;
}

std::string MonotoneMap::str() const {
  std::string s = "(";
  for (int i = 0; i <= m; ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s + "):[" + std::to_string(m) + "]->[" + std::to_string(n) + "]";
}

std::string MonotoneMap::digits() const {
  std::string s;
  for (int i = 0; i <= m; ++i) {
    if (n >= 10 && i) s += ',';
    s += std::to_string(values[i]);
  }
  return s;
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (f.n != g.m)
    throw CompositionError("cannot compose " + g.str() + " after " + f.str());
  std::vector<int> v(f.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g.values[static_cast<std::size_t>(f.values[i])];
  MonotoneMap out;
  out.m = f.m;
  out.n = g.n;
  out.values = std::move(v);
  return out;
}

Classification classify(const MonotoneMap& f) {
  Classification c;
  // Injective with an image closed under predecessors: the image is {0, ..., m}.
  c.is_right_convex_injection = true;
  for (int i = 0; i <= f.m; ++i)
    if (f.values[i] != i) c.is_right_convex_injection = false;
  c.is_right_convex_surjection = f.values.back() == f.n;
  return c;
}

Factorization factorize(const MonotoneMap& f) {
  int top = f.values.back();
  MonotoneMap p;
  p.m = f.m;
  p.n = top;
  p.values = f.values;
  return {std::move(p), standard_embedding(top, f.n)};
}

MonotoneMap standard_embedding(int m, int n) {
  if (m < 0 || m > n)
    throw DomainError("standard embedding se(" + std::to_string(m) + "," + std::to_string(n) + ") needs 0 <= m <= n");
  MonotoneMap out;
  out.m = m;
  out.n = n;
  out.values.resize(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) out.values[i] = i;
  return out;
}

MonotoneMap coface(int n, int i) {
  if (n < 1 || i < 0 || i > n) throw DomainError("coface d^" + std::to_string(i) + " into [" + std::to_string(n) + "]");
  MonotoneMap out;
  out.m = n - 1;
  out.n = n;
  out.values.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out.values[k] = k < i ? k : k + 1;
  return out;
}

MonotoneMap codegeneracy(int n, int j) {
  if (n < 0 || j < 0 || j > n)
    throw DomainError("codegeneracy s^" + std::to_string(j) + " onto [" + std::to_string(n) + "]");
  MonotoneMap out;
  out.m = n + 1;
  out.n = n;
  out.values.resize(static_cast<std::size_t>(n + 2));
  for (int k = 0; k <= n + 1; ++k) out.values[k] = k <= j ? k : k - 1;
  return out;
}

std::vector<MonotoneMap> all_maps(int m, int n) {
  if (m < 0 || n < 0) throw DomainError("all_maps: negative size");
  std::vector<MonotoneMap> out;
  std::vector<int> v(static_cast<std::size_t>(m + 1), 0);
  while (true) {
    MonotoneMap f;
    f.m = m;
    f.n = n;
    f.values = v;
    out.push_back(std::move(f));
    int k = m;
    while (k >= 0 && v[k] == n) --k;
    if (k < 0) break;
    ++v[k];
    for (int j = k + 1; j <= m; ++j) v[j] = v[k];
  }
  return out;
}

std::uint64_t count_maps(int m, int n) {
  // C(m+n+1, m+1)
  std::uint64_t r = 1;
  int top = m + n + 1, k = m + 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(top - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

EpiMono epi_mono(const MonotoneMap& f) {
  EpiMono em;
  std::vector<int> image;
  std::vector<int> epi(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (image.empty() || image.back() != f.values[i]) image.push_back(f.values[i]);
    epi[i] = static_cast<int>(image.size()) - 1;
  }
  int k = static_cast<int>(image.size()) - 1;
  em.epi.m = f.m;
  em.epi.n = k;
  em.epi.values = std::move(epi);
  em.mono.m = k;
  em.mono.n = f.n;
  em.mono.values = std::move(image);
  return em;
}

std::uint32_t ties_of(const MonotoneMap& f) {
  std::uint32_t t = 0;
  for (int j = 0; j < f.m; ++j)
    if (f.values[j] == f.values[j + 1]) t |= 1u << j;
  return t;
}

MonotoneMap surjection_from_ties(int dim, std::uint32_t ties) {
  MonotoneMap out;
  out.m = dim;
  out.n = dim - std::popcount(ties);
  out.values.resize(static_cast<std::size_t>(dim + 1));
  out.values[0] = 0;
  for (int j = 0; j < dim; ++j) out.values[j + 1] = out.values[j] + (((ties >> j) & 1u) ? 0 : 1);
  return out;
}

MonotoneMap reversed(const MonotoneMap& f) {
  MonotoneMap out;
  out.m = f.m;
  out.n = f.n;
  out.values.resize(f.values.size());
  for (int i = 0; i <= f.m; ++i) out.values[i] = f.n - f.values[f.m - i];
  return out;
}

}  // namespace fiblab::poset
