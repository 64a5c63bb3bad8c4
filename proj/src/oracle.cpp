#include "fiblab/oracle.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "fiblab/error.hpp"
#include "fiblab/util.hpp"

namespace fiblab::oracle {

using boost::multiprecision::cpp_int;

std::string ChainComplex::check_d_squared() const {
  for (std::size_t k = 2; k < boundaries.size(); ++k) {
    const auto& a = boundaries[k - 1];  // C_{k-1} -> C_{k-2}
    const auto& b = boundaries[k];      // C_k -> C_{k-1}
    for (std::size_t i = 0; i < a.size(); ++i)
      for (int j = 0; j < dims[k]; ++j) {
        long long s = 0;
        for (int m = 0; m < dims[k - 1]; ++m) s += static_cast<long long>(a[i][m]) * b[m][j];
        if (s != 0) return "d" + std::to_string(k - 1) + " d" + std::to_string(k) + " != 0 at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      }
  }
  return {};
}

ChainComplex chain_complex(const sset::FinSimplicialSet& s, int k_max) {
  ChainComplex cc;
  for (int k = 0; k <= k_max; ++k) cc.dims.push_back(k <= s.top_dim() ? s.count_cells(k) : 0);
  cc.boundaries.resize(static_cast<std::size_t>(k_max + 1));
  for (int k = 1; k <= k_max; ++k) {
    auto& m = cc.boundaries[k];
    m.assign(static_cast<std::size_t>(cc.dims[k - 1]), std::vector<int>(static_cast<std::size_t>(cc.dims[k]), 0));
    if (cc.dims[k] == 0) continue;
    const int base = s.first(k);
    const int base_lo = s.first(k - 1);
    for (int j = 0; j < cc.dims[k]; ++j)
      for (int i = 0; i <= k; ++i) {
        const auto& f = s.cell_face(base + j, i);
        if (f.degenerate()) continue;
        m[f.cell - base_lo][j] += (i % 2 == 0) ? 1 : -1;
      }
  }
  return cc;
}

namespace {

template <typename T>
int bareiss_rank(std::vector<std::vector<T>> a, bool* overflow) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a[0].size();
  T prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
        if constexpr (std::is_same_v<T, __int128>) {
          const __int128 lim = static_cast<__int128>(1) << 60;
          if (a[i][j] > lim || a[i][j] < -lim) {
            *overflow = true;
            return 0;
          }
        }
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace

int rank_q(std::vector<std::vector<int>> matrix) {
  if (matrix.empty() || matrix[0].empty()) return 0;
  std::vector<std::vector<__int128>> small(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) small[i].assign(matrix[i].begin(), matrix[i].end());
  bool overflow = false;
  int r = bareiss_rank(std::move(small), &overflow);
  if (!overflow) return r;
  std::vector<std::vector<cpp_int>> big(matrix.size());
  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (int v : matrix[i]) big[i].emplace_back(v);
  return bareiss_rank(std::move(big), &overflow);
}

Components pi0(const sset::FinSimplicialSet& s) {
  const int v = s.vertex_count();
  UnionFind uf(static_cast<std::size_t>(v));
  if (s.top_dim() >= 1)
    for (int c = s.first(1); c < s.first(1) + s.count_cells(1); ++c)
      uf.unite(static_cast<std::size_t>(s.cell_face(c, 0).cell), static_cast<std::size_t>(s.cell_face(c, 1).cell));
  Components out;
  out.of_vertex = uf.classes(&out.count);
  return out;
}

Betti betti(const sset::FinSimplicialSet& s, int k_max) {
  if (k_max < 0) throw DomainError("betti needs k_max >= 0");
  Betti b;
  b.bounded = !s.exact() && s.dim_bound() < k_max + 1;
  auto cc = chain_complex(s, k_max + 1);
  std::vector<int> rank(static_cast<std::size_t>(k_max + 2), 0);
  std::vector<std::size_t> order;
  for (int k = 1; k <= k_max + 1; ++k) order.push_back(static_cast<std::size_t>(k));
  parallel_for(order.size(), [&](std::size_t i) {
    int k = static_cast<int>(order[i]);
    rank[k] = rank_q(cc.boundaries[k]);
  });
  for (int k = 0; k <= k_max; ++k) b.numbers.push_back(cc.dims[k] - rank[k] - rank[k + 1]);
  return b;
}

const char* tier_name(Tier t) { return t == Tier::decisive ? "decisive" : "evidence"; }

Verdict contractible_evidence(const sset::FinSimplicialSet& s, int k_max) {
  Verdict v;
  v.k_max = k_max;
  if (s.empty()) {
    v.tier = Tier::decisive;
    v.reason = "empty";
    return v;
  }
  auto comps = pi0(s);
  if (comps.count != 1) {
    v.tier = Tier::decisive;
    v.reason = std::to_string(comps.count) + " components";
    return v;
  }
  if (s.is_discrete()) {
    v.value = true;
    v.tier = Tier::decisive;
    v.reason = "a single point";
    return v;
  }
  auto b = betti(s, k_max);
  v.value = true;
  for (int k = 1; k <= k_max; ++k)
    if (b.numbers[k] != 0) {
      v.value = false;
      v.reason = "b" + std::to_string(k) + " = " + std::to_string(b.numbers[k]);
      break;
    }
  if (v.value) v.reason = "b0 = 1 and bk = 0 for 1 <= k <= " + std::to_string(k_max) + (b.bounded ? " (truncated input)" : "");
  // nonzero rational homology of a complete finite set refutes contractibility
  v.tier = !v.value && !b.bounded ? Tier::decisive : Tier::evidence;
  return v;
}

Verdict weak_equivalence_evidence(const sset::SSetMap& f, int k_max) {
  Verdict v;
  v.k_max = k_max;
  const auto& A = *f.source;
  const auto& B = *f.target;
  auto ca = pi0(A);
  auto cb = pi0(B);
  std::vector<int> img(static_cast<std::size_t>(ca.count), -1);
  std::vector<int> hit(static_cast<std::size_t>(cb.count), 0);
  for (int x = 0; x < A.vertex_count(); ++x) {
    int cy = cb.of_vertex[f.assign[x].cell];
    int& slot = img[ca.of_vertex[x]];
    if (slot < 0) {
      slot = cy;
      ++hit[cy];
    }
  }
  bool bij = ca.count == cb.count;
  for (int h : hit)
    if (h != 1) bij = false;
  const bool discrete = A.is_discrete() && B.is_discrete();
  if (!bij) {
    v.tier = Tier::decisive;
    v.reason = "pi0 is not a bijection";
    return v;
  }
  if (discrete) {
    v.value = true;
    v.tier = Tier::decisive;
    v.reason = "bijection of discrete sets";
    return v;
  }
  auto ba = betti(A, k_max);
  auto bb = betti(B, k_max);
  v.tier = Tier::evidence;
  v.value = ba.numbers == bb.numbers;
  v.reason = v.value ? "pi0 bijection and equal Betti numbers up to " + std::to_string(k_max) : "Betti numbers differ";
  return v;
}

}  // namespace fiblab::oracle
