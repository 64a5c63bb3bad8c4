#pragma once

#include <random>
#include <string>
#include <vector>

#include "fiblab/cat.hpp"
#include "fiblab/fib.hpp"
#include "fiblab/oracle.hpp"
#include "fiblab/sspace.hpp"

namespace fiblab::straighten {

using sspace::SSpaceMap;
using sspace::SSpacePtr;

/// Functor on [n] with sets of size 1..max_size and random structure maps.
cat::SetFunctor random_chain_functor(int n, cat::Variance variance, std::mt19937_64& rng, int max_size = 3);

/// Discrete fibration over F(n) (truncated at M) with level m the set of (f, a), f in F(n)_m and
/// a in P(f(m)) (contravariant) or P(f(0)) (covariant), ordered by f then a.
SSpaceMap grothendieck_fibration(const cat::SetFunctor& p, int M);

/// n of a map into F(n), read from the number of vertices of the target.
int base_dim(const SSpaceMap& p);

struct FiberRow {
  std::string simplex;  // digits of f
  int level = 0;
  std::size_t fiber = 0;      // |R_{/f}|
  std::size_t end_fiber = 0;  // |R_{/f(m)}| (right) or |R_{/f(0)}| (left)
  bool pass = false;
  oracle::Tier tier = oracle::Tier::decisive;
};
struct FiberReport {
  bool all_pass = true;
  fib::Mode mode = fib::Mode::exact_discrete;
  std::vector<FiberRow> rows;
};
/// Compares R_{/f} with the fiber over its last (right) or first (left) vertex for every simplex f.
FiberReport fiber_equivalence_report(const SSpaceMap& r, fib::Side side = fib::Side::right);

struct StraightenedFibration {
  fib::Side side = fib::Side::right;
  int n = 0;
  SSpaceMap original;
  SSpaceMap straightened;  // R^st -> F(n)
  SSpaceMap comparison;    // R^st -> R
  /// chain[i]: R_{/0...i} (right) or R_{/i...n} (left), as sub-objects of the levels of R.
  std::vector<sset::Sub> chain;
  /// Right: links[i] : chain[i+1] -> chain[i].  Left: links[i] : chain[i] -> chain[i+1].
  std::vector<sset::SSetMap> links;
  /// For each level m and f in F(n)_m, the chain index of its summand.
  std::vector<std::vector<int>> summand_chain;
  /// summand_inclusion[m][f]: the chain space of f into the level m of R^st.
  std::vector<std::vector<sset::SSetMap>> summand_inclusion;

  std::vector<std::size_t> chain_sizes() const;
};

/// R^st over F(n); throws PreconditionError unless r is a right (left) fibration in exact mode
/// or evidence mode for non-discrete input.
StraightenedFibration straighten(const SSpaceMap& r, fib::Side side = fib::Side::right);

/// Empty when every delta^* with f delta(m1) = f(m2) (left: f delta(0) = f(0)) is literally the identity.
std::string check_straightening_condition(const StraightenedFibration& s);
/// Empty when the comparison map is a levelwise bijection of cells commuting with the projections.
std::string check_comparison(const StraightenedFibration& s);
/// Straightens a left fibration directly and through the opposite involution; empty when both agree.
std::string mirror_agreement(const SSpaceMap& l);

/// Map F(n)^op -> F(n), f -> reversed(f).
SSpaceMap reversal_map(const SSpacePtr& fn_op, const SSpacePtr& fn, int n);

struct DecompositionRow {
  int l = 0;
  std::size_t lhs = 0;  // l-simplices of Map_{/F(n)}(R, W)
  std::size_t rhs = 0;  // l-simplices of the fiber product
  bool pass = false;
};
struct DecompositionReport {
  bool pass = true;
  bool bounded = false;
  std::vector<DecompositionRow> rows;
  /// Vertices of the chain form: compatible families R_{/0..i} -> W_{/0..i}.
  std::size_t chain_maps = 0;
  bool chain_pass = false;
  std::vector<std::string> warnings;
};
/// Both sides of the restriction Map_{/F(n)}(R, W) -> Map(R_{/0..n}, W_{/0..n}) x Map_{/F(n-1)}(...).
DecompositionReport mapping_decomposition_check(const SSpaceMap& r, const SSpaceMap& w, int l_max);

}  // namespace fiblab::straighten
