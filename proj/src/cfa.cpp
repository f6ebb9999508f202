#include "cfa.hpp"

#include <algorithm>
#include <stdexcept>

namespace evcheck {

std::string Cfa::var_name(VarId id) const {
  if (id < vars.size()) return vars[id].name;
  return "v" + std::to_string(id);
}

VarNames Cfa::names() const {
  // Display the short source name unless another variable shares it.
  std::vector<bool> ambiguous(vars.size(), false);
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i].name == vars[j].name)
        ambiguous[i] = ambiguous[j] = true;
  std::vector<std::string> display(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i)
    display[i] = ambiguous[i] ? vars[i].qualified : vars[i].name;
  return [display](VarId id) {
    if (id < display.size()) return display[id];
    return "v" + std::to_string(id);
  };
}

std::optional<VarId> Cfa::find_var(const std::string& qualified) const {
  for (const VarInfo& var : vars)
    if (var.qualified == qualified) return var.id;
  return std::nullopt;
}

std::vector<VarId> Cfa::all_vars() const {
  std::vector<VarId> out(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) out[i] = vars[i].id;
  return out;
}

bool Cfa::scope_contains(ScopeId outer, ScopeId inner) const {
  std::optional<ScopeId> cursor = inner;
  while (cursor) {
    if (*cursor == outer) return true;
    cursor = scopes[*cursor].parent;
  }
  return false;
}

std::vector<LocId> Cfa::scope_of(VarId var) const {
  if (var >= vars.size()) throw std::invalid_argument("unknown variable");
  const VarInfo& info = vars[var];
  std::vector<LocId> out;
  if (info.is_global) {
    out.reserve(locations.size());
    for (const Location& loc : locations) out.push_back(loc.id);
    return out;
  }
  for (const Location& loc : locations)
    if (scope_contains(*info.scope, loc.scope)) out.push_back(loc.id);
  return out;
}

bool Problem::is_error(LocId loc) const {
  return std::binary_search(errors.begin(), errors.end(), loc);
}

void check_well_formed(const Problem& problem) {
  const Cfa& cfa = problem.cfa;
  for (std::size_t i = 0; i < cfa.locations.size(); ++i)
    if (cfa.locations[i].id != i)
      throw std::logic_error("location ids not dense");
  for (const Edge& edge : cfa.edges)
    if (edge.from >= cfa.locations.size() || edge.to >= cfa.locations.size())
      throw std::logic_error("edge endpoint out of range");
  if (problem.initial >= cfa.locations.size())
    throw std::logic_error("initial location out of range");
  for (LocId error : problem.errors) {
    if (error >= cfa.locations.size())
      throw std::logic_error("error location out of range");
    if (!cfa.out_edges[error].empty())
      throw std::logic_error("error location has outgoing edges");
  }
  // Syntactic reachability from the entry.
  std::vector<bool> seen(cfa.locations.size(), false);
  std::vector<LocId> stack{problem.initial};
  seen[problem.initial] = true;
  while (!stack.empty()) {
    LocId loc = stack.back();
    stack.pop_back();
    for (EdgeId edge : cfa.out_edges[loc]) {
      LocId to = cfa.edges[edge].to;
      if (!seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw std::logic_error("unreachable location in CFA");
}

std::string describe(const Problem& problem) {
  const Cfa& cfa = problem.cfa;
  VarNames names = cfa.names();
  std::string out;
  out += "entry " + std::to_string(problem.initial) + "\n";
  for (LocId error : problem.errors)
    out += "error " + std::to_string(error) + "\n";
  for (const Location& loc : cfa.locations)
    out += "loc " + std::to_string(loc.id) + " line=" +
           std::to_string(loc.line) + " scope=" +
           cfa.scopes[loc.scope].label + "\n";
  for (const Edge& edge : cfa.edges)
    out += "edge " + std::to_string(edge.from) + " -> " +
           std::to_string(edge.to) + " : " + render(edge.op, names) + "\n";
  return out;
}

}  // namespace evcheck
