#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gcoarse/oracle.hpp"

namespace gcoarse {

/// Randomized checks of the coarsening and embedding identities against the
/// dense oracles. Each check draws its instances from `seed`, so repeated
/// runs produce identical reports.
struct VerifyOptions {
  /// Largest instance size; 0 picks the check's default.
  std::size_t max_vertices = 0;
  /// Number of random instances; 0 picks the check's default.
  std::size_t instances = 0;
  /// Monte-Carlo trials per instance (expectation check).
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
};

/// schur-oracle, sddm-closure, expectation, inverse-identity,
/// embedding-identity, contraction-bounds, tail-convergence.
const std::vector<std::string>& verify_check_names();

bool is_verify_check(const std::string& name);

/// Runs one named check. Throws DomainError for an unknown name.
std::vector<oracle::OracleReport> run_verify_check(const std::string& name,
                                                   const VerifyOptions& options);

}  // namespace gcoarse
