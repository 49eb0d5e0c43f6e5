#include "hyperbmc/circuit.hpp"

#include <algorithm>

#include "hyperbmc/error.hpp"

namespace hyperbmc {

namespace {

// Nested operand lists longer than this stay shared instead of being
// copied into their parent.
constexpr std::size_t kFlattenLimit = 16;

}  // namespace

std::size_t Circuit::KeyHash::operator()(const std::vector<std::uint32_t>& k) const {
  std::size_t h = 1469598103934665603ULL;
  for (auto v : k) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Circuit::Circuit() {
  nodes_.push_back({Kind::False, 0, {}});
  nodes_.push_back({Kind::True, 0, {}});
  false_ = Ref{0};
  true_ = Ref{1};
}

Circuit::Ref Circuit::var(const std::string& name) {
  if (var_lookup_.count(name)) throw Error("circuit variable '" + name + "' declared twice");
  const auto index = static_cast<std::uint32_t>(var_names_.size());
  Ref r{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back({Kind::Var, index, {}});
  var_names_.push_back(name);
  var_refs_.push_back(r);
  var_lookup_.emplace(name, index);
  return r;
}

Circuit::Ref Circuit::intern(Kind kind, std::vector<Ref> ops) {
  std::vector<std::uint32_t> key;
  key.reserve(ops.size() + 1);
  key.push_back(static_cast<std::uint32_t>(kind));
  for (Ref r : ops) key.push_back(r.id);
  auto it = table_.find(key);
  if (it != table_.end()) return Ref{it->second};
  Ref r{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back({kind, 0, std::move(ops)});
  table_.emplace(std::move(key), r.id);
  return r;
}

Circuit::Ref Circuit::lnot(Ref a) {
  if (a == true_) return false_;
  if (a == false_) return true_;
  if (kind(a) == Kind::Not) return operands(a)[0];
  return intern(Kind::Not, {a});
}

Circuit::Ref Circuit::nary(Kind k, std::vector<Ref> ops) {
  const Ref absorbing = k == Kind::And ? false_ : true_;
  const Ref neutral = k == Kind::And ? true_ : false_;
  std::vector<Ref> flat;
  flat.reserve(ops.size());
  for (Ref r : ops) {
    if (r == absorbing) return absorbing;
    if (r == neutral) continue;
    if (kind(r) == k && operands(r).size() <= kFlattenLimit) {
      const auto& sub = operands(r);
      flat.insert(flat.end(), sub.begin(), sub.end());
    } else {
      flat.push_back(r);
    }
  }
  std::sort(flat.begin(), flat.end(), [](Ref a, Ref b) { return a.id < b.id; });
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  // x and !x together
  for (Ref r : flat) {
    if (kind(r) == Kind::Not) {
      const Ref inner = operands(r)[0];
      if (std::binary_search(flat.begin(), flat.end(), inner, [](Ref a, Ref b) { return a.id < b.id; }))
        return absorbing;
    }
  }
  if (flat.empty()) return neutral;
  if (flat.size() == 1) return flat[0];
  return intern(k, std::move(flat));
}

Circuit::Ref Circuit::land(std::vector<Ref> ops) { return nary(Kind::And, std::move(ops)); }
Circuit::Ref Circuit::lor(std::vector<Ref> ops) { return nary(Kind::Or, std::move(ops)); }

Circuit::Ref Circuit::lxor(Ref a, Ref b) {
  if (is_const(a)) return a == true_ ? lnot(b) : b;
  if (is_const(b)) return b == true_ ? lnot(a) : a;
  bool negate = false;
  if (kind(a) == Kind::Not) {
    a = operands(a)[0];
    negate = !negate;
  }
  if (kind(b) == Kind::Not) {
    b = operands(b)[0];
    negate = !negate;
  }
  Ref r;
  if (a == b) {
    r = false_;
  } else {
    if (b.id < a.id) std::swap(a, b);
    r = intern(Kind::Xor, {a, b});
  }
  return negate ? lnot(r) : r;
}

bool Circuit::evaluate(Ref root, const std::vector<bool>& inputs) const {
  std::vector<std::int8_t> memo(nodes_.size(), -1);
  // Iterative post-order to stay safe on deep circuits.
  std::vector<std::pair<std::uint32_t, bool>> stack{{root.id, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    if (memo[id] >= 0) continue;
    const Node& n = nodes_[id];
    if (!expanded && !n.ops.empty()) {
      stack.push_back({id, true});
      for (Ref c : n.ops) {
        if (memo[c.id] < 0) stack.push_back({c.id, false});
      }
      continue;
    }
    bool v = false;
    switch (n.kind) {
      case Kind::False: v = false; break;
      case Kind::True: v = true; break;
      case Kind::Var: v = inputs.at(n.var); break;
      case Kind::Not: v = !memo[n.ops[0].id]; break;
      case Kind::And:
        v = std::all_of(n.ops.begin(), n.ops.end(), [&](Ref c) { return memo[c.id] == 1; });
        break;
      case Kind::Or:
        v = std::any_of(n.ops.begin(), n.ops.end(), [&](Ref c) { return memo[c.id] == 1; });
        break;
      case Kind::Xor: v = memo[n.ops[0].id] != memo[n.ops[1].id]; break;
    }
    memo[id] = v ? 1 : 0;
  }
  return memo[root.id] == 1;
}

}  // namespace hyperbmc
