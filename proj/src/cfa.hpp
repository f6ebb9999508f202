#ifndef EVCHECK_CFA_HPP
#define EVCHECK_CFA_HPP

// Control-flow automaton: program locations connected by edges labeled with
// assume or assignment operations.  Function calls are already inlined, so
// variables and locations carry the scope instance they were created for
// (e.g. the second inlined copy of helper() keeps its own locals).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ops.hpp"

namespace evcheck {

using LocId = std::uint32_t;
using EdgeId = std::uint32_t;
using ScopeId = std::uint32_t;

struct Location {
  LocId id = 0;
  int line = 0;
  ScopeId scope = 0;
};

// One inlining instance of a function body ("main", "helper@2", ...).
// Instances nest: locations of an inlined callee also lie in the scope of
// the caller's variables.
struct ScopeInstance {
  ScopeId id = 0;
  std::string label;
  std::string function;
  std::optional<ScopeId> parent;
};

struct VarInfo {
  VarId id = 0;
  std::string name;       // source name, e.g. "flag"
  std::string qualified;  // unique name, e.g. "helper@2::tmp"
  bool is_global = false;
  std::optional<ScopeId> scope;  // nullopt for globals
  int decl_line = 0;
};

struct Edge {
  EdgeId id = 0;
  LocId from = 0;
  LocId to = 0;
  Operation op;
  int line = 0;  // source line of the originating statement or condition
};

struct Cfa {
  std::vector<Location> locations;
  std::vector<Edge> edges;
  std::vector<std::vector<EdgeId>> out_edges;  // by location, creation order
  std::vector<VarInfo> vars;
  std::vector<ScopeInstance> scopes;

  const Edge& edge(EdgeId id) const { return edges[id]; }
  const Location& location(LocId id) const { return locations[id]; }

  std::string var_name(VarId id) const;
  VarNames names() const;
  std::optional<VarId> find_var(const std::string& qualified) const;

  // All variables, for the full-precision analysis.
  std::vector<VarId> all_vars() const;

  // Locations in the scope of the variable: the whole automaton for a
  // global, otherwise every location whose scope chain contains the
  // variable's owning scope instance.
  std::vector<LocId> scope_of(VarId var) const;

  bool scope_contains(ScopeId outer, ScopeId inner) const;
};

struct Problem {
  Cfa cfa;
  LocId initial = 0;
  std::vector<LocId> errors;  // sorted

  bool is_error(LocId loc) const;
};

// Internal consistency checks (edge endpoints valid, error locations have no
// outgoing edges, every location reachable from the entry).  Throws
// std::logic_error on violation.
void check_well_formed(const Problem& problem);

// Deterministic structural rendering, used by tests and the debug dump.
std::string describe(const Problem& problem);

}  // namespace evcheck

#endif
