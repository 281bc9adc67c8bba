#include <doctest.h>

#include "kernel_properties.hpp"

using namespace pss;

TEST_CASE("randomized kernel properties") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto tally = proptest::run_kernel_properties(400, seed);
    for (const auto& [name, c] : tally.by_name) {
      CHECK_MESSAGE(c.failed == 0, name, " seed ", seed, ": ", c.first_failure);
      CHECK_MESSAGE(c.run > c.skipped / 4, name, " ran too few cases");
    }
  }
}
