#include "corpus.hpp"

#include <algorithm>

#include "fiblab/straighten.hpp"

namespace fiblab::suite {

std::vector<cat::CatPtr> category_corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<cat::CatPtr> out;
  for (int k = 0; k < count; ++k) out.push_back(cat::random_category(rng, 5, 12));
  return out;
}

std::vector<ChainInstance> chain_corpus(std::uint64_t seed, int count, cat::Variance variance, int max_n) {
  std::mt19937_64 rng(seed);
  std::vector<ChainInstance> out;
  for (int k = 0; k < count; ++k) {
    ChainInstance c;
    c.n = static_cast<int>(rng() % static_cast<std::uint64_t>(max_n + 1));
    c.functor = straighten::random_chain_functor(c.n, variance, rng, 3);
    c.fibration = straighten::grothendieck_fibration(c.functor, std::max(c.n, 1));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace fiblab::suite
