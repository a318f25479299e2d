#pragma once

// Command-line front end. The executable only forwards to run_cli so the
// commands can be exercised from tests.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "symconj/family.hpp"

namespace symconj {

struct RunConfig {
  std::string family = "trig";
  double alpha = 0.0;
  double beta = 0.0;
  int dim = 1;
  int truncation = 32;
  int quad = 0;  // 0: 2N+32
  std::vector<double> t{0.1, 1.0};
  std::uint64_t seed = 12345;
  std::string out = "out";
  int threads = 1;

  // Throws std::invalid_argument with a readable message.
  FamilySpec validate() const;
  int quad_size() const;
};

enum ExitCode { kExitOk = 0, kExitCheckFailure = 1, kExitUsage = 2 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symconj
