// One line per acceptance criterion; exits non-zero when any criterion fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = fiblab::suite::kDefaultSeed;
  if (argc > 1) seed = std::stoull(argv[1]);
  std::cout << "seed " << seed << std::endl;
  int failed = 0;
  fiblab::suite::run_acceptance(seed, [&](const fiblab::suite::CriterionResult& r) {
    std::cout << fiblab::suite::format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
  });
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
