#pragma once

#include <string>
#include <vector>

#include "fiblab/sset.hpp"

namespace fiblab::oracle {

/// Normalized chain complex of a finite simplicial set: generators are the nondegenerate
/// cells, degenerate faces contribute zero.
struct ChainComplex {
  std::vector<int> dims;  // nondegenerate cells per degree 0..k
  /// boundaries[k] is the matrix of d_k : C_k -> C_{k-1} (rows: (k-1)-cells), boundaries[0] empty.
  std::vector<std::vector<std::vector<int>>> boundaries;
  /// Empty when every d_{k-1} d_k vanishes.
  std::string check_d_squared() const;
};

ChainComplex chain_complex(const sset::FinSimplicialSet& s, int k_max);

/// Exact rank over the rationals (fraction-free elimination).
int rank_q(std::vector<std::vector<int>> matrix);

struct Components {
  int count = 0;
  std::vector<int> of_vertex;
};
Components pi0(const sset::FinSimplicialSet& s);

struct Betti {
  std::vector<int> numbers;  // b_0..b_kmax
  /// Cells of dimension k_max + 1 may be missing because of a truncation.
  bool bounded = false;
};
Betti betti(const sset::FinSimplicialSet& s, int k_max = 3);

enum class Tier { decisive, evidence };
const char* tier_name(Tier t);

struct Verdict {
  bool value = false;
  Tier tier = Tier::evidence;
  int k_max = 0;
  std::string reason;
};

Verdict contractible_evidence(const sset::FinSimplicialSet& s, int k_max = 3);
/// pi_0 bijection plus equal Betti numbers up to k_max; decisive when both sides are discrete.
Verdict weak_equivalence_evidence(const sset::SSetMap& f, int k_max = 3);

}  // namespace fiblab::oracle
