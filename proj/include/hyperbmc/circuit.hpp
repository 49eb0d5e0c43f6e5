#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace hyperbmc {

// Hash-consed Boolean circuit. Construction folds constants, flattens
// nested And/Or, removes duplicate operands, detects x & !x, and sorts
// operands by node id, so structurally equal formulas share one node.
class Circuit {
 public:
  enum class Kind : std::uint8_t { False, True, Var, Not, And, Or, Xor };

  struct Ref {
    std::uint32_t id = 0;
    friend bool operator==(Ref, Ref) = default;
  };

  Circuit();

  Ref constant(bool value) const { return value ? true_ : false_; }
  /// New named input. Names must be unique.
  Ref var(const std::string& name);
  Ref lnot(Ref a);
  Ref land(std::vector<Ref> ops);
  Ref lor(std::vector<Ref> ops);
  Ref land(Ref a, Ref b) { return land(std::vector<Ref>{a, b}); }
  Ref lor(Ref a, Ref b) { return lor(std::vector<Ref>{a, b}); }
  Ref lxor(Ref a, Ref b);
  Ref implies(Ref a, Ref b) { return lor(lnot(a), b); }
  Ref iff(Ref a, Ref b) { return lnot(lxor(a, b)); }

  Kind kind(Ref r) const { return nodes_[r.id].kind; }
  const std::vector<Ref>& operands(Ref r) const { return nodes_[r.id].ops; }
  /// 0-based input index of a Var node.
  std::uint32_t var_index(Ref r) const { return nodes_[r.id].var; }
  bool is_const(Ref r) const { return r == true_ || r == false_; }

  std::size_t var_count() const { return var_names_.size(); }
  const std::string& var_name(std::uint32_t index) const { return var_names_.at(index); }
  Ref var_ref(std::uint32_t index) const { return var_refs_.at(index); }
  std::size_t node_count() const { return nodes_.size(); }

  /// Evaluates under an assignment indexed by input index.
  bool evaluate(Ref r, const std::vector<bool>& inputs) const;

 private:
  struct Node {
    Kind kind;
    std::uint32_t var = 0;
    std::vector<Ref> ops;
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& k) const;
  };

  Ref intern(Kind kind, std::vector<Ref> ops);
  Ref nary(Kind kind, std::vector<Ref> ops);

  std::vector<Node> nodes_;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, KeyHash> table_;
  std::vector<std::string> var_names_;
  std::vector<Ref> var_refs_;
  std::unordered_map<std::string, std::uint32_t> var_lookup_;
  Ref false_;
  Ref true_;
};

}  // namespace hyperbmc
