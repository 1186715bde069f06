#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "derand/verdict.hpp"

namespace derand::verify {

/// n: instance size (agents/students), samples: random instances per
/// check, seed: master seed. Unset fields take the suite's defaults.
struct SuiteOptions {
  std::optional<int> n;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
};

/// modgame, permute, simple, tasks, peer, school, alloc, sim
const std::vector<std::string>& suite_names();

/// Runs every check of a suite. Throws ValidationError for an unknown
/// suite or an unsupported size.
std::vector<Verdict> run_suite(std::string_view suite, const SuiteOptions& options);

}  // namespace derand::verify
