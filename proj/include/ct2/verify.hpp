#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ct2 {

struct VerifyRow {
  std::string name;
  bool passed = false;
  bool gating = true; ///< informational rows never fail the run
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  int random_sets = 20;
};

/// Exact checks of the element construction: pipeline fraction tables,
/// closing identities, known-coefficient exactness, smoothness and
/// polynomial reproduction.
std::vector<VerifyRow> run_verification(const VerifyOptions &opt = {});

/// Largest n such that every polynomial of degree <= n tried is reproduced
/// exactly by the element.
int reproduction_degree(std::uint64_t seed = 7);

} // namespace ct2
