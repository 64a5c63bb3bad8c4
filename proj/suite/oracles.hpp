#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fiblab/cat.hpp"
#include "fiblab/fib.hpp"
#include "fiblab/poset.hpp"

namespace fiblab::suite {

// Independent reference computations.  Nothing here calls the operation it is used to check.

/// Weakly increasing sequences of length m+1 with values in [0, n], lexicographic.
std::vector<std::vector<int>> monotone_sequences(int m, int n);

/// Straight from the definitions: every b has some a with b <= f(a).
bool def_right_convex_surjection(int n, const std::vector<int>& f);
/// Injective, and b <= b1 with b1 in the image puts b in the image.
bool def_right_convex_injection(int n, const std::vector<int>& f);

/// Every splitting f = i o p with p a right convex surjection [m] -> [k] and i a right convex
/// injection [k] -> [n], over all k, keyed by the composite.
using Splitting = std::pair<std::vector<int>, std::vector<int>>;  // (p values, i values)
std::map<std::vector<int>, std::vector<Splitting>> all_splittings(int m, int n);

/// Under-category data of x computed from the composition table: level m lists the pairs
/// (a: x -> c0, chain c0 -> ... -> cm) with their face and degeneracy tables.
struct UnderNerve {
  /// Element = (a, morphism chain); for m = 0 the chain is the object {c0}.
  std::vector<std::vector<std::pair<int, std::vector<int>>>> elements;
  std::vector<std::map<std::pair<int, std::vector<int>>, int>> index;
  std::vector<std::vector<std::vector<int>>> face;   // [m][i][e]
  std::vector<std::vector<std::vector<int>>> degen;  // [m][j][e]
};
UnderNerve under_nerve(const cat::FinCategory& c, int x, int M);

/// Checks slice_space(embed(discrete, nerve(C)), x, under) against under_nerve levelwise:
/// builds the element map from the witnesses and projection, and demands a bijection that
/// commutes with every face and degeneracy.  Empty string on success.
std::string compare_under_slice(const cat::CatPtr& c, int x, int M, fib::SliceResult* out = nullptr,
                                sspace::SSpacePtr* w_out = nullptr);

/// |level m of the Grothendieck space| = sum over f: [m] -> [n] of |P(f(m))| (covariant: P(f(0))).
std::size_t grothendieck_count(const cat::SetFunctor& p, int m);

/// Greatest element of a thin category, or -1.
int poset_top(const cat::FinCategory& c);

/// Number of chains of m composable morphisms (identities allowed).
std::size_t chain_count(const cat::FinCategory& c, int m);

/// Nondegenerate elements per level of a discrete simplicial space: elements outside the image
/// of every degeneracy.
std::vector<std::size_t> nondegenerate_elements(const sspace::FinSimplicialSpace& x);

}  // namespace fiblab::suite
