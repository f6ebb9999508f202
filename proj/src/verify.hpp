#ifndef EVCHECK_VERIFY_HPP
#define EVCHECK_VERIFY_HPP

// Top-level verification sessions: the plain explicit analysis with full
// precision, and the CEGAR loop (explore, extract error path, feasibility
// check, interpolation-based refinement, prune or restart).

#include <cstdint>
#include <optional>
#include <string>

#include "cfa.hpp"
#include "cpa.hpp"
#include "domain.hpp"
#include "witness.hpp"

namespace evcheck {

enum class Mode : std::uint8_t { ExplicitFull, ExplicitCegar };
enum class RefinementStrategy : std::uint8_t { Prune, Restart };
enum class Verdict : std::uint8_t { Safe, Unsafe, Unknown };

struct RunConfig {
  Mode mode = Mode::ExplicitCegar;
  RefinementStrategy refinement = RefinementStrategy::Prune;
  bool scoped_precision = true;
  Traversal traversal = Traversal::Dfs;
  std::uint64_t state_budget = 1'000'000;
  std::uint64_t max_refinements = 100;
  std::uint64_t time_limit_ms = 0;  // 0 = unlimited
  bool want_arg_dump = false;
};

struct RunStats {
  std::uint64_t refinements = 0;
  std::uint64_t nodes_created = 0;
  std::uint64_t nodes_peak = 0;
  std::uint64_t max_tracked = 0;  // largest per-location precision
  std::uint64_t wall_ms = 0;
  // The refiner asserts after every refinement that the refuted path is
  // excluded under the new precision; failures indicate an interpolation bug.
  std::uint64_t path_elim_checks = 0;
  std::uint64_t path_elim_failures = 0;
};

struct VerifyResult {
  Verdict verdict = Verdict::Unknown;
  std::string reason;  // set for Unknown
  std::optional<Witness> witness;
  RunStats stats;
  ProgramPrecision final_precision;
  std::string arg_dump;  // set when requested

  std::string verdict_string() const;
};

std::string to_string(Verdict verdict);

VerifyResult run_verification(const Problem& problem, const RunConfig& config);

// Debug rendering of the final ARG: one node per line (id, location,
// assignment, precision), then one edge per line.
std::string dump_arg(const Problem& problem, const Arg& arg);

}  // namespace evcheck

#endif
