// Runs the acceptance criteria and prints one line per criterion.
// Usage: acceptance [seed]
#include <cstdlib>
#include <iostream>
#include <string>

#include "lcx/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  if (argc > 1) seed = std::stoull(argv[1]);
  int failed = 0;
  lcx::acceptance::run(seed, [&](const lcx::acceptance::Criterion& c) {
    std::cout << lcx::acceptance::format(c) << std::endl;
    failed += !c.passed;
  });
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << "(" << failed << " failing, seed " << seed << ")" << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
