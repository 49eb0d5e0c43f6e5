#include "hyperbmc/kripke.hpp"

#include <algorithm>
#include <deque>

#include "hyperbmc/error.hpp"

namespace hyperbmc {

Label make_label(std::vector<std::string> props) {
  std::sort(props.begin(), props.end());
  props.erase(std::unique(props.begin(), props.end()), props.end());
  return props;
}

KripkeStructure::KripkeStructure(std::vector<std::string> states, std::vector<StateIndex> init,
                                 std::vector<std::string> ap, std::vector<Label> labels,
                                 std::vector<Transition> trans)
    : names_(std::move(states)),
      init_(std::move(init)),
      ap_(std::move(ap)),
      labels_(std::move(labels)),
      trans_(std::move(trans)) {
  labels_.resize(names_.size());
  for (auto& l : labels_) l = make_label(std::move(l));
  std::sort(init_.begin(), init_.end());
  init_.erase(std::unique(init_.begin(), init_.end()), init_.end());
  std::sort(trans_.begin(), trans_.end());
  trans_.erase(std::unique(trans_.begin(), trans_.end()), trans_.end());

  succ_.assign(names_.size(), {});
  for (const auto& t : trans_) {
    if (t.from < names_.size() && t.to < names_.size()) succ_[t.from].push_back(t.to);
  }
  // trans_ is sorted by (from, to), so each successor list is already sorted.
  for (StateIndex s = 0; s < names_.size(); ++s) index_.emplace(names_[s], s);
}

std::optional<StateIndex> KripkeStructure::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<StateId> KripkeStructure::states() const {
  std::vector<StateId> out;
  out.reserve(names_.size());
  for (StateIndex s = 0; s < names_.size(); ++s) out.push_back({names_[s], s});
  return out;
}

bool KripkeStructure::is_initial(StateIndex s) const {
  return std::binary_search(init_.begin(), init_.end(), s);
}

bool KripkeStructure::has_prop(std::string_view prop) const {
  return std::find(ap_.begin(), ap_.end(), prop) != ap_.end();
}

bool KripkeStructure::holds(StateIndex s, std::string_view prop) const {
  const auto& l = labels_.at(s);
  return std::binary_search(l.begin(), l.end(), prop, std::less<>{});
}

bool KripkeStructure::has_transition(StateIndex from, StateIndex to) const {
  if (from >= succ_.size()) return false;
  const auto& s = succ_[from];
  return std::binary_search(s.begin(), s.end(), to);
}

std::vector<Violation> validate_kripke(const KripkeStructure& k) {
  std::vector<Violation> out;
  const auto n = k.size();

  std::vector<std::string> seen = k.names();
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (seen[i] == seen[i - 1] && (i == 1 || seen[i - 2] != seen[i]))
      out.push_back({"duplicate-state", seen[i], "state '" + seen[i] + "' declared more than once"});
  }
  std::vector<std::string> props = k.ap();
  std::sort(props.begin(), props.end());
  for (std::size_t i = 1; i < props.size(); ++i) {
    if (props[i] == props[i - 1] && (i == 1 || props[i - 2] != props[i]))
      out.push_back({"duplicate-prop", props[i], "proposition '" + props[i] + "' declared more than once"});
  }

  if (k.initial().empty()) out.push_back({"empty-init", "", "no initial state"});
  for (StateIndex s : k.initial()) {
    if (s >= n) out.push_back({"init-unknown", std::to_string(s), "initial state index out of range"});
  }
  for (StateIndex s = 0; s < n; ++s) {
    for (const auto& p : k.label(s)) {
      if (!std::binary_search(props.begin(), props.end(), p))
        out.push_back({"label-unknown-prop", k.name(s) + ":" + p,
                       "state '" + k.name(s) + "' is labeled with undeclared proposition '" + p + "'"});
    }
  }
  for (const auto& t : k.transitions()) {
    if (t.from >= n || t.to >= n)
      out.push_back({"trans-unknown-state", std::to_string(t.from) + "->" + std::to_string(t.to),
                     "transition endpoint out of range"});
  }
  for (StateIndex s = 0; s < n; ++s) {
    if (k.successors(s).empty())
      out.push_back({"non-total", k.name(s), "state '" + k.name(s) + "' has no outgoing transition"});
  }
  return out;
}

KripkeStructure reachable_restriction(const KripkeStructure& k) {
  std::vector<bool> reached(k.size(), false);
  std::deque<StateIndex> work;
  for (StateIndex s : k.initial()) {
    if (s < k.size() && !reached[s]) {
      reached[s] = true;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    StateIndex s = work.front();
    work.pop_front();
    for (StateIndex t : k.successors(s)) {
      if (!reached[t]) {
        reached[t] = true;
        work.push_back(t);
      }
    }
  }
  if (std::all_of(reached.begin(), reached.end(), [](bool b) { return b; })) return k;

  std::vector<StateIndex> remap(k.size(), 0);
  std::vector<std::string> names;
  std::vector<Label> labels;
  for (StateIndex s = 0; s < k.size(); ++s) {
    if (!reached[s]) continue;
    remap[s] = static_cast<StateIndex>(names.size());
    names.push_back(k.name(s));
    labels.push_back(k.label(s));
  }
  std::vector<StateIndex> init;
  for (StateIndex s : k.initial()) init.push_back(remap[s]);
  std::vector<Transition> trans;
  for (StateIndex s = 0; s < k.size(); ++s) {
    if (!reached[s]) continue;
    for (StateIndex t : k.successors(s)) trans.push_back({remap[s], remap[t]});
  }
  return KripkeStructure(std::move(names), std::move(init), k.ap(), std::move(labels), std::move(trans));
}

const Label& LassoTrace::at(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  return loop[(i - prefix.size()) % loop.size()];
}

bool is_lasso_path(const KripkeStructure& k, const LassoPath& path) {
  if (path.loop.empty()) return false;
  std::vector<StateIndex> seq = path.prefix;
  seq.insert(seq.end(), path.loop.begin(), path.loop.end());
  for (StateIndex s : seq) {
    if (s >= k.size()) return false;
  }
  if (!k.is_initial(seq.front())) return false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!k.has_transition(seq[i], seq[i + 1])) return false;
  }
  return k.has_transition(path.loop.back(), path.loop.front());
}

LassoTrace lasso_trace(const KripkeStructure& k, const LassoPath& path) {
  LassoTrace t;
  for (StateIndex s : path.prefix) t.prefix.push_back(k.label(s));
  for (StateIndex s : path.loop) t.loop.push_back(k.label(s));
  return t;
}

LassoPathStream::LassoPathStream(const KripkeStructure& k, std::size_t max_total_length)
    : k_(&k), max_length_(max_total_length) {
  if (max_length_ == 0 || k.initial().empty()) done_ = true;
}

// Odometer-style DFS over paths of exactly length_ states. `depth` is the
// position whose choice should be tried next.
bool LassoPathStream::search(std::size_t depth) {
  for (;;) {
    std::span<const StateIndex> options =
        depth == 0 ? k_->initial() : k_->successors(path_[depth - 1]);
    if (choice_[depth] < options.size()) {
      path_[depth] = options[choice_[depth]];
      if (depth + 1 == length_) return true;
      ++depth;
      choice_[depth] = 0;
      continue;
    }
    if (depth == 0) return false;
    --depth;
    ++choice_[depth];
  }
}

std::optional<LassoPath> LassoPathStream::next() {
  while (!done_) {
    if (have_path_) {
      const StateIndex last = path_.back();
      while (next_loop_ < length_) {
        const std::size_t target = next_loop_++;
        if (k_->has_transition(last, path_[target])) {
          LassoPath lp;
          lp.prefix.assign(path_.begin(), path_.begin() + static_cast<std::ptrdiff_t>(target));
          lp.loop.assign(path_.begin() + static_cast<std::ptrdiff_t>(target), path_.end());
          return lp;
        }
      }
      have_path_ = false;
      ++choice_[length_ - 1];
      if (search(length_ - 1)) {
        have_path_ = true;
        next_loop_ = 0;
        continue;
      }
    }
    if (++length_ > max_length_) {
      done_ = true;
      break;
    }
    path_.assign(length_, 0);
    choice_.assign(length_, 0);
    if (search(0)) {
      have_path_ = true;
      next_loop_ = 0;
    }
  }
  return std::nullopt;
}

std::vector<LassoPath> enumerate_lasso_paths(const KripkeStructure& k, std::size_t max_total_length) {
  std::vector<LassoPath> out;
  LassoPathStream stream(k, max_total_length);
  while (auto lp = stream.next()) out.push_back(std::move(*lp));
  return out;
}

std::set<std::vector<Label>> bounded_traces(const KripkeStructure& k, std::size_t depth) {
  std::set<std::vector<Label>> out;
  if (depth == 0) {
    out.insert({});
    return out;
  }
  // Layered: distinct (sequence, last state) pairs.
  std::set<std::pair<std::vector<Label>, StateIndex>> layer;
  for (StateIndex s : k.initial()) layer.insert({{k.label(s)}, s});
  for (std::size_t d = 1; d < depth; ++d) {
    std::set<std::pair<std::vector<Label>, StateIndex>> next;
    for (const auto& [seq, s] : layer) {
      for (StateIndex t : k.successors(s)) {
        auto ext = seq;
        ext.push_back(k.label(t));
        next.insert({std::move(ext), t});
      }
    }
    layer = std::move(next);
  }
  for (const auto& entry : layer) out.insert(entry.first);
  return out;
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  if (!head(name.front())) return false;
  return std::all_of(name.begin() + 1, name.end(), tail);
}

}  // namespace hyperbmc
