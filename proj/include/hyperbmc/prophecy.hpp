#pragma once

#include <set>
#include <string>
#include <vector>

#include "hyperbmc/kripke.hpp"

namespace hyperbmc {

// A structure whose label projection should cover every sequence over its
// propositions, plus per-state prophecy names. The names never enter the
// proposition set; they are only carried into product state names.
struct ProphecyAutomaton {
  KripkeStructure structure;
  std::vector<std::set<std::string>> annotation;  // indexed by state

  const std::set<std::string>& annotations(StateIndex s) const { return annotation.at(s); }
};

/// Shift-register prophecy for "prop holds d steps from now". States are the
/// bit vectors b0..bd named u<b0..bd>; prop labels b0, the annotation
/// X<d>_<prop> marks bd, every state is initial.
ProphecyAutomaton build_next_prophecy(const std::string& prop, std::size_t depth);

/// Structure file with extra "annot <state>: <name> ..." lines.
ProphecyAutomaton parse_prophecy(std::string_view text);
ProphecyAutomaton load_prophecy(const std::string& path);

/// Every sequence of `depth` subsets of `ap` is the label projection (onto
/// `ap`) of some initial path of U. depth 0 holds vacuously.
bool check_universality(const ProphecyAutomaton& u, const std::vector<std::string>& ap, std::size_t depth);

/// Unbounded version: the subset construction over the projection never
/// reaches the empty set.
bool is_universal(const ProphecyAutomaton& u, const std::vector<std::string>& ap);

/// Synchronous product restricted to label-compatible pairs reachable from
/// initial pairs, with dead states removed until the result is total.
/// Labels are those of K; names are <s>__<u>[__<annotations joined by _>].
/// Throws EmptyProductError when no initial pair survives.
KripkeStructure prophecy_product(const KripkeStructure& k, const ProphecyAutomaton& u);

}  // namespace hyperbmc
