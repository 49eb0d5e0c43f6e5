#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hyperbmc {

using StateIndex = std::uint32_t;

/// Sorted, duplicate-free set of proposition names holding in a state.
using Label = std::vector<std::string>;

Label make_label(std::vector<std::string> props);

struct StateId {
  std::string name;
  StateIndex index = 0;
};

struct Transition {
  StateIndex from = 0;
  StateIndex to = 0;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// Explicit-state Kripke structure <S, S0, delta, AP, L>.
//
// Construction does not validate: a structure may violate invariants
// (empty init, non-total states, ...) so that validate_kripke() can report
// them. Everything downstream of the parser assumes a valid structure.
// States are addressed by their dense declaration-order index.
class KripkeStructure {
 public:
  KripkeStructure() = default;
  KripkeStructure(std::vector<std::string> states, std::vector<StateIndex> init,
                  std::vector<std::string> ap, std::vector<Label> labels,
                  std::vector<Transition> trans);

  std::size_t size() const { return names_.size(); }
  const std::string& name(StateIndex s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<StateIndex> find(std::string_view name) const;
  std::vector<StateId> states() const;

  std::span<const StateIndex> initial() const { return init_; }
  bool is_initial(StateIndex s) const;

  const std::vector<std::string>& ap() const { return ap_; }
  bool has_prop(std::string_view prop) const;
  const Label& label(StateIndex s) const { return labels_.at(s); }
  bool holds(StateIndex s, std::string_view prop) const;

  /// Sorted successor list; transitions with out-of-range endpoints are
  /// kept in transitions() (for validation) but never appear here.
  std::span<const StateIndex> successors(StateIndex s) const { return succ_.at(s); }
  bool has_transition(StateIndex from, StateIndex to) const;
  const std::vector<Transition>& transitions() const { return trans_; }

  friend bool operator==(const KripkeStructure&, const KripkeStructure&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<StateIndex> init_;
  std::vector<std::string> ap_;
  std::vector<Label> labels_;
  std::vector<Transition> trans_;
  std::vector<std::vector<StateIndex>> succ_;
  std::unordered_map<std::string, StateIndex> index_;
};

struct Violation {
  std::string rule;
  std::string subject;
  std::string message;
};

/// Parses the line-oriented structure format. Throws ParseError for
/// malformed lines and ModelError for semantic problems.
KripkeStructure parse_kripke(std::string_view text);
KripkeStructure load_kripke(const std::string& path);

/// Canonical text form; parse_kripke(print_kripke(k)) == k.
std::string print_kripke(const KripkeStructure& k);

std::vector<Violation> validate_kripke(const KripkeStructure& k);

KripkeStructure reachable_restriction(const KripkeStructure& k);

/// Finite prefix followed by a nonempty loop; the loop closes from its last
/// state back to its first.
struct LassoPath {
  std::vector<StateIndex> prefix;
  std::vector<StateIndex> loop;

  std::size_t total_length() const { return prefix.size() + loop.size(); }
  friend bool operator==(const LassoPath&, const LassoPath&) = default;
};

struct LassoTrace {
  std::vector<Label> prefix;
  std::vector<Label> loop;

  std::size_t prefix_length() const { return prefix.size(); }
  std::size_t loop_length() const { return loop.size(); }
  /// Label at position i of the infinite unrolling.
  const Label& at(std::size_t i) const;
};

bool is_lasso_path(const KripkeStructure& k, const LassoPath& path);
LassoTrace lasso_trace(const KripkeStructure& k, const LassoPath& path);

// Yields every lasso path with |prefix|+|loop| <= max_total_length exactly
// once, by nondecreasing total length. Within one length, paths come in
// lexicographic order of state indices, and for one path loop targets come
// in increasing position.
class LassoPathStream {
 public:
  LassoPathStream(const KripkeStructure& k, std::size_t max_total_length);

  std::optional<LassoPath> next();

 private:
  bool search(std::size_t depth);

  const KripkeStructure* k_;
  std::size_t max_length_;
  std::size_t length_ = 0;
  std::vector<StateIndex> path_;
  std::vector<std::size_t> choice_;  // per depth: index into init or successors
  std::size_t next_loop_ = 0;
  bool have_path_ = false;
  bool done_ = false;
};

std::vector<LassoPath> enumerate_lasso_paths(const KripkeStructure& k, std::size_t max_total_length);

/// All label sequences of initial paths of exactly `depth` states.
std::set<std::vector<Label>> bounded_traces(const KripkeStructure& k, std::size_t depth);

/// True iff `name` matches [A-Za-z_][A-Za-z0-9_]*.
bool is_identifier(std::string_view name);

}  // namespace hyperbmc
