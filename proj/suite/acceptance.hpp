#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "corpus.hpp"

namespace fiblab::suite {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Runs criterion `id` (1..11).
CriterionResult run_criterion(int id, std::uint64_t seed = kDefaultSeed);
/// Runs all criteria in order, reporting each as soon as it finishes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = kDefaultSeed,
                                            const std::function<void(const CriterionResult&)>& on_result = {});
/// "PASS  3  yoneda suite  (detail)  [1.2s]"
std::string format_result(const CriterionResult& r);

inline constexpr int kCriteria = 11;

}  // namespace fiblab::suite
