#pragma once

// Backtracking search for maps between (truncated) simplicial objects in simplicial sets.
// A simplicial set is the one-level case.

#include <functional>
#include <optional>
#include <vector>

#include "fiblab/sset.hpp"

namespace fiblab::detail {

using sset::FinSimplicialSet;
using sset::Simplex;
using sset::SSetMap;

struct SearchProblem {
  std::vector<const FinSimplicialSet*> a;  // source levels
  std::vector<const FinSimplicialSet*> b;  // target levels
  // Horizontal structure, indexed [m][i]; a_face[m] maps A_m -> A_{m-1}.
  std::vector<std::vector<const SSetMap*>> a_face, b_face, a_deg, b_deg;
  // Optional "over" constraint per level: q_m(h(c)) == over_values[m][c].
  std::vector<const SSetMap*> over_q;
  std::vector<std::vector<Simplex>> over_values;
  // Optional pinned values, [m][c].
  std::vector<std::vector<std::optional<Simplex>>> pinned;
  std::size_t limit = 0;
};

using Assignment = std::vector<std::vector<Simplex>>;

/// Calls emit for every solution in deterministic order; emit returns false to stop.
/// Returns the number of solutions emitted.
std::size_t solve(const SearchProblem& problem, const std::function<bool(const Assignment&)>& emit);

}  // namespace fiblab::detail
