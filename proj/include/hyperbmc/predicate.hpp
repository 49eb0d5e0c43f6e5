#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hyperbmc/kripke.hpp"

namespace hyperbmc {

// Boolean expression over the propositions of a left state (l.p) and a
// right state (r.p). MatchAll is the shorthand for the conjunction of
// l.p <-> r.p over the propositions both structures declare; it must be
// expanded (bind_predicate) before evaluation.
class RelationalPredicate {
 public:
  enum class Kind { True, False, Left, Right, Not, And, Or, Implies, Iff, MatchAll };

  static RelationalPredicate constant(bool value);
  static RelationalPredicate left(std::string prop);
  static RelationalPredicate right(std::string prop);
  static RelationalPredicate match_all();
  static RelationalPredicate negation(RelationalPredicate operand);
  static RelationalPredicate binary(Kind kind, RelationalPredicate lhs, RelationalPredicate rhs);

  Kind kind() const { return kind_; }
  const std::string& prop() const { return prop_; }
  const std::vector<RelationalPredicate>& operands() const { return operands_; }

  /// Fully parenthesized text that parse_predicate() reads back.
  std::string to_string() const;

  friend bool operator==(const RelationalPredicate&, const RelationalPredicate&) = default;

 private:
  RelationalPredicate(Kind kind, std::string prop, std::vector<RelationalPredicate> operands)
      : kind_(kind), prop_(std::move(prop)), operands_(std::move(operands)) {}

  Kind kind_ = Kind::True;
  std::string prop_;
  std::vector<RelationalPredicate> operands_;
};

RelationalPredicate operator!(RelationalPredicate p);
RelationalPredicate operator&&(RelationalPredicate a, RelationalPredicate b);
RelationalPredicate operator||(RelationalPredicate a, RelationalPredicate b);
RelationalPredicate implies(RelationalPredicate a, RelationalPredicate b);
RelationalPredicate iff(RelationalPredicate a, RelationalPredicate b);

/// Precedence ! > & > | > -> > <->; "->" is right-associative, the
/// others left-associative.
RelationalPredicate parse_predicate(std::string_view text);

bool eval_predicate(const RelationalPredicate& pred, const Label& left, const Label& right);

/// Expands match-all against the two proposition sets and checks that every
/// referenced proposition is declared on its side (ModelError otherwise).
RelationalPredicate bind_predicate(const RelationalPredicate& pred, const std::vector<std::string>& left_ap,
                                   const std::vector<std::string>& right_ap);

enum class Pattern { ForallExists, ExistsForall };

std::string to_string(Pattern p);

/// forall pi. exists pi'. G body   /   exists pi. forall pi'. G body
struct HyperProperty {
  Pattern pattern = Pattern::ForallExists;
  RelationalPredicate body = RelationalPredicate::constant(true);

  std::string to_string() const;
};

/// Accepts "forall exists. G <pred>" and "exists forall. G <pred>" with
/// '#' comments. Other quantifier prefixes or temporal shapes raise
/// FragmentError.
HyperProperty parse_property(std::string_view text);

// Truth table of a bound predicate over all (left state, right state) pairs.
class PredicateTable {
 public:
  PredicateTable(const RelationalPredicate& pred, const KripkeStructure& left, const KripkeStructure& right);

  bool operator()(StateIndex p, StateIndex q) const { return table_[p * columns_ + q]; }
  std::size_t rows() const { return rows_; }
  std::size_t columns() const { return columns_; }

 private:
  std::size_t rows_ = 0;
  std::size_t columns_ = 0;
  std::vector<bool> table_;
};

}  // namespace hyperbmc
