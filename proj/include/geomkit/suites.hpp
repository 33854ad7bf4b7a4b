/// @file suites.hpp
/// Seeded corpora shared by the command line tool and the acceptance run.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace geomkit {

struct SuiteReport {
  std::string name;
  std::size_t runs = 0;
  std::size_t failures = 0;
  /// First few failures, one line each.
  std::vector<std::string> notes;

  bool ok() const { return runs > 0 && failures == 0; }
};

/// Random semiaffine maps AG(2,5) -> AG(2,5) and fractional maps
/// GF(3)^2 -> GF(9)^2, each extended to the closure and compared with the
/// projectivized block matrix.
SuiteReport extension_suite(std::uint64_t seed, std::size_t semiaffine_count = 200, std::size_t fractional_count = 50,
                            unsigned workers = 1);

/// Decompose-then-evaluate round trips over GF(5), GF(7) and GF(3) -> GF(9).
SuiteReport decomposition_suite(std::uint64_t seed, std::size_t count = 100);

}  // namespace geomkit
