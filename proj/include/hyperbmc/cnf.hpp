#pragma once

#include <string>
#include <vector>

#include "hyperbmc/circuit.hpp"

namespace hyperbmc {

/// Contiguous clause range [first, last) produced for one constraint family.
struct ClauseRange {
  std::string family;
  std::size_t first = 0;
  std::size_t last = 0;
};

struct CnfInstance {
  int var_count = 0;
  std::vector<std::vector<int>> clauses;
  /// DIMACS variable v (1-based) is named var_names[v-1] for v <= named_count;
  /// higher numbers are definitional auxiliaries.
  std::vector<std::string> var_names;
  int named_count = 0;
  std::vector<ClauseRange> provenance;
};

struct Root {
  std::string family;
  Circuit::Ref formula;
};

/// Definitional transformation. Circuit inputs keep their numbering
/// (v = input index + 1); auxiliaries follow in first-visit post-order of
/// the roots. Top-level conjunctions are split, top-level disjunctions become
/// a single clause, and a false root yields (g)(-g) so no clause is empty.
CnfInstance lower_to_cnf(const Circuit& c, const std::vector<Root>& roots);

/// "c family <name> <first clause, 1-based> <clause count>" comments, the "p cnf" header, then one
/// 0-terminated clause per line. An instance with no variables and no clauses
/// is exactly "p cnf 0 0\n".
std::string export_dimacs(const CnfInstance& cnf);

/// Variable map as JSON: {"vars": {"<dimacs index>": "<name>", ...}, ...}.
std::string export_var_map(const CnfInstance& cnf);

/// Parses DIMACS (comments ignored); names are left empty.
CnfInstance parse_dimacs(std::string_view text);

/// True iff `model` (indexed by DIMACS variable, slot 0 unused) satisfies
/// every clause.
bool satisfies(const CnfInstance& cnf, const std::vector<bool>& model);

}  // namespace hyperbmc
