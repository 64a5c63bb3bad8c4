#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace fiblab {

/// Mixes `value` into `seed` (boost::hash_combine constants).
inline void hash_mix(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t seed = v.size();
    for (int x : v) hash_mix(seed, static_cast<std::size_t>(static_cast<std::uint32_t>(x)));
    return seed;
  }
};

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t add() {
    parent_.push_back(parent_.size());
    size_.push_back(1);
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }
  std::size_t size() const { return parent_.size(); }

  /// Dense class index per element; classes numbered by first occurrence.
  std::vector<int> classes(int* count = nullptr) {
    std::vector<int> root_class(parent_.size(), -1);
    std::vector<int> out(parent_.size());
    int next = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      std::size_t r = find(i);
      if (root_class[r] < 0) root_class[r] = next++;
      out[i] = root_class[r];
    }
    if (count) *count = next;
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Worker count for internal parallel loops; honours FIBLAB_THREADS.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads.  Results must be
/// written to per-index slots so that the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace fiblab
