#include "hyperbmc/prophecy.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "hyperbmc/error.hpp"
#include "kripke_text.hpp"

namespace hyperbmc {

namespace {

using StateSet = std::vector<StateIndex>;  // sorted

std::string bits_name(std::size_t value, std::size_t width) {
  std::string s = "u";
  for (std::size_t b = 0; b < width; ++b) s += ((value >> (width - 1 - b)) & 1U) ? '1' : '0';
  return s;
}

Label project(const Label& l, const std::vector<std::string>& ap) {
  Label out;
  for (const auto& p : l) {
    if (std::find(ap.begin(), ap.end(), p) != ap.end()) out.push_back(p);
  }
  return out;
}

std::vector<Label> all_letters(std::vector<std::string> ap) {
  std::sort(ap.begin(), ap.end());
  ap.erase(std::unique(ap.begin(), ap.end()), ap.end());
  if (ap.size() > 16) throw BoundError("universality check over more than 16 propositions");
  std::vector<Label> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << ap.size()); ++mask) {
    Label l;
    for (std::size_t i = 0; i < ap.size(); ++i) {
      if (mask & (std::size_t{1} << i)) l.push_back(ap[i]);
    }
    out.push_back(std::move(l));
  }
  return out;
}

// Successor "candidate set" after reading one letter, or nullopt if no
// candidate carries that letter.
std::optional<StateSet> read_letter(const KripkeStructure& k, const StateSet& candidates, const Label& letter,
                                    const std::vector<std::string>& ap) {
  StateSet next;
  bool any = false;
  for (StateIndex s : candidates) {
    if (project(k.label(s), ap) != letter) continue;
    any = true;
    for (StateIndex t : k.successors(s)) next.push_back(t);
  }
  if (!any) return std::nullopt;
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return next;
}

}  // namespace

ProphecyAutomaton build_next_prophecy(const std::string& prop, std::size_t depth) {
  if (depth < 1) throw BoundError("next-prophecy depth must be at least 1");
  if (depth > 16) throw BoundError("next-prophecy depth above 16 is not supported");
  if (!is_identifier(prop)) throw ParseError("invalid proposition name '" + prop + "'", 0);
  const std::size_t width = depth + 1;
  const std::size_t count = std::size_t{1} << width;
  const std::size_t mask = count - 1;
  const std::string annot = "X" + std::to_string(depth) + "_" + prop;

  std::vector<std::string> names;
  std::vector<StateIndex> init;
  std::vector<Label> labels;
  std::vector<Transition> trans;
  ProphecyAutomaton u;
  for (std::size_t v = 0; v < count; ++v) {
    names.push_back(bits_name(v, width));
    init.push_back(static_cast<StateIndex>(v));
    const bool b0 = (v >> depth) & 1U;
    const bool bd = v & 1U;
    labels.push_back(b0 ? Label{prop} : Label{});
    u.annotation.push_back(bd ? std::set<std::string>{annot} : std::set<std::string>{});
    // (b0..bd) -> (b1..bd, *)
    const std::size_t shifted = (v << 1) & mask;
    trans.push_back({static_cast<StateIndex>(v), static_cast<StateIndex>(shifted)});
    trans.push_back({static_cast<StateIndex>(v), static_cast<StateIndex>(shifted | 1U)});
  }
  u.structure = KripkeStructure(std::move(names), std::move(init), {prop}, std::move(labels), std::move(trans));
  return u;
}

ProphecyAutomaton parse_prophecy(std::string_view text) {
  detail::AnnotationLines lines;
  ProphecyAutomaton u;
  u.structure = detail::parse_kripke_text(text, &lines);
  u.annotation.assign(u.structure.size(), {});
  for (const auto& [state, names] : lines) {
    const StateIndex s = *u.structure.find(state);
    for (const auto& n : names) u.annotation[s].insert(n);
  }
  return u;
}

ProphecyAutomaton load_prophecy(const std::string& path) {
  const std::string text = detail::read_file(path);
  try {
    return parse_prophecy(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  } catch (const ModelError& e) {
    throw ModelError(e.rule(), e.subject(), path + ": " + e.what());
  }
}

bool check_universality(const ProphecyAutomaton& u, const std::vector<std::string>& ap, std::size_t depth) {
  if (depth == 0) return true;
  const auto& k = u.structure;
  const auto letters = all_letters(ap);
  std::set<StateSet> layer{StateSet(k.initial().begin(), k.initial().end())};
  for (std::size_t d = 0; d < depth; ++d) {
    std::set<StateSet> next;
    for (const auto& cand : layer) {
      for (const auto& letter : letters) {
        auto after = read_letter(k, cand, letter, ap);
        if (!after) return false;
        next.insert(std::move(*after));
      }
    }
    layer = std::move(next);
  }
  return true;
}

bool is_universal(const ProphecyAutomaton& u, const std::vector<std::string>& ap) {
  const auto& k = u.structure;
  const auto letters = all_letters(ap);
  std::set<StateSet> seen;
  std::deque<StateSet> work;
  StateSet start(k.initial().begin(), k.initial().end());
  seen.insert(start);
  work.push_back(std::move(start));
  while (!work.empty()) {
    StateSet cand = std::move(work.front());
    work.pop_front();
    for (const auto& letter : letters) {
      auto after = read_letter(k, cand, letter, ap);
      if (!after) return false;
      if (seen.insert(*after).second) work.push_back(std::move(*after));
    }
  }
  return true;
}

KripkeStructure prophecy_product(const KripkeStructure& k, const ProphecyAutomaton& u) {
  const auto& uk = u.structure;
  for (const auto& p : uk.ap()) {
    if (!k.has_prop(p))
      throw ModelError("unknown-prop", p, "prophecy proposition '" + p + "' is not declared by the structure");
  }
  auto compatible = [&](StateIndex s, StateIndex q) { return project(k.label(s), uk.ap()) == uk.label(q); };

  // Forward exploration over compatible pairs.
  using Pair = std::pair<StateIndex, StateIndex>;
  std::map<Pair, StateIndex> id;
  std::vector<Pair> pairs;
  std::deque<StateIndex> work;
  auto intern = [&](Pair p) {
    auto [it, fresh] = id.emplace(p, static_cast<StateIndex>(pairs.size()));
    if (fresh) {
      pairs.push_back(p);
      work.push_back(it->second);
    }
    return it->second;
  };
  std::vector<StateIndex> init;
  for (StateIndex s : k.initial()) {
    for (StateIndex q : uk.initial()) {
      if (compatible(s, q)) init.push_back(intern({s, q}));
    }
  }
  std::vector<std::vector<StateIndex>> succ;
  while (!work.empty()) {
    const StateIndex v = work.front();
    work.pop_front();
    const auto [s, q] = pairs[v];
    std::vector<StateIndex> out;
    for (StateIndex s2 : k.successors(s)) {
      for (StateIndex q2 : uk.successors(q)) {
        if (compatible(s2, q2)) out.push_back(intern({s2, q2}));
      }
    }
    if (succ.size() <= v) succ.resize(v + 1);
    succ[v] = std::move(out);
  }
  succ.resize(pairs.size());

  // Remove dead states until every survivor has a surviving successor.
  std::vector<bool> alive(pairs.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (StateIndex v = 0; v < pairs.size(); ++v) {
      if (!alive[v]) continue;
      const bool has = std::any_of(succ[v].begin(), succ[v].end(), [&](StateIndex w) { return alive[w]; });
      if (!has) {
        alive[v] = false;
        changed = true;
      }
    }
  }
  // Pruning can disconnect states that were only reachable through dead ones.
  std::vector<bool> reach(pairs.size(), false);
  for (StateIndex v : init) {
    if (alive[v] && !reach[v]) {
      reach[v] = true;
      work.push_back(v);
    }
  }
  if (work.empty()) throw EmptyProductError("prophecy product has no live initial state");
  while (!work.empty()) {
    const StateIndex v = work.front();
    work.pop_front();
    for (StateIndex w : succ[v]) {
      if (alive[w] && !reach[w]) {
        reach[w] = true;
        work.push_back(w);
      }
    }
  }

  // Order survivors by (state of K, state of U) for stable numbering.
  std::vector<StateIndex> order;
  for (StateIndex v = 0; v < pairs.size(); ++v) {
    if (reach[v]) order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [&](StateIndex a, StateIndex b) { return pairs[a] < pairs[b]; });
  std::vector<StateIndex> remap(pairs.size(), 0);
  std::vector<std::string> names;
  std::vector<Label> labels;
  for (StateIndex v : order) {
    remap[v] = static_cast<StateIndex>(names.size());
    const auto [s, q] = pairs[v];
    std::string name = k.name(s) + "__" + uk.name(q);
    for (const auto& a : u.annotations(q)) name += "__" + a;
    names.push_back(std::move(name));
    labels.push_back(k.label(s));
  }
  std::vector<StateIndex> new_init;
  for (StateIndex v : init) {
    if (reach[v]) new_init.push_back(remap[v]);
  }
  std::vector<Transition> trans;
  for (StateIndex v : order) {
    for (StateIndex w : succ[v]) {
      if (reach[w]) trans.push_back({remap[v], remap[w]});
    }
  }
  return KripkeStructure(std::move(names), std::move(new_init), k.ap(), std::move(labels), std::move(trans));
}

}  // namespace hyperbmc
