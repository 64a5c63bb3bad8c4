#pragma once

#include <cstdint>
#include <vector>

#include "fiblab/cat.hpp"
#include "fiblab/sspace.hpp"

namespace fiblab::suite {

inline constexpr std::uint64_t kDefaultSeed = 20161027;

/// Random finite categories (<= 5 objects, <= 12 non-identity morphisms).
std::vector<cat::CatPtr> category_corpus(std::uint64_t seed, int count);

/// Functors on [n], n <= max_n, values of size <= 3.  Variance alternates unless fixed.
struct ChainInstance {
  int n = 0;
  cat::SetFunctor functor;
  sspace::SSpaceMap fibration;  // grothendieck_fibration over F(n), level bound max(n, 1)
};
std::vector<ChainInstance> chain_corpus(std::uint64_t seed, int count, cat::Variance variance, int max_n = 4);

/// Level bound used for the nerve corpus.
inline constexpr int kNerveLevels = 3;

}  // namespace fiblab::suite
