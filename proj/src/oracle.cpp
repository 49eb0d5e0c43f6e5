#include "hyperbmc/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hyperbmc/error.hpp"

namespace hyperbmc {

SyncBound synchronize_bound(const LassoTrace& t1, const LassoTrace& t2) {
  if (t1.loop.empty() || t2.loop.empty()) throw BoundError("lasso traces need nonempty loops");
  SyncBound b;
  b.prefix = std::max(t1.prefix.size(), t2.prefix.size());
  b.loop = std::lcm(t1.loop.size(), t2.loop.size());
  return b;
}

bool check_box_on_pair(const RelationalPredicate& pred, const LassoTrace& t1, const LassoTrace& t2) {
  const SyncBound b = synchronize_bound(t1, t2);
  for (std::size_t i = 0; i < b.horizon(); ++i) {
    if (!eval_predicate(pred, t1.at(i), t2.at(i))) return false;
  }
  return true;
}

namespace {

std::string show_pair(const KripkeStructure& kp, StateIndex p, const KripkeStructure& kq, StateIndex q) {
  return "(" + kp.name(p) + ", " + kq.name(q) + ")";
}

}  // namespace

std::vector<std::string> validate_witness_ae(const KripkeStructure& kp, const KripkeStructure& kq,
                                             const RelationalPredicate& pred, const SimWitnessAE& w) {
  std::vector<std::string> out;
  const RelationalPredicate bound = bind_predicate(pred, kp.ap(), kq.ap());
  for (const auto& [p, q] : w.relation) {
    if (p >= kp.size() || q >= kq.size()) {
      out.push_back("relation pair out of range");
      return out;
    }
  }
  std::map<StateIndex, std::set<StateIndex>> rel;
  for (const auto& [p, q] : w.relation) rel[p].insert(q);

  for (StateIndex p : kp.initial()) {
    const auto it = rel.find(p);
    const bool ok = it != rel.end() &&
                    std::any_of(it->second.begin(), it->second.end(), [&](StateIndex q) { return kq.is_initial(q); });
    if (!ok) out.push_back("initial: " + kp.name(p) + " is related to no initial state of the right structure");
  }
  for (const auto& [p, q] : w.relation) {
    if (!eval_predicate(bound, kp.label(p), kq.label(q))) out.push_back("predicate: fails on " + show_pair(kp, p, kq, q));
  }
  for (const auto& [p, q] : w.relation) {
    for (StateIndex p2 : kp.successors(p)) {
      const auto it = rel.find(p2);
      bool matched = false;
      if (it != rel.end()) {
        for (StateIndex q2 : kq.successors(q)) {
          if (it->second.count(q2)) {
            matched = true;
            break;
          }
        }
      }
      if (!matched)
        out.push_back("successor: " + show_pair(kp, p, kq, q) + " cannot match the step to " + kp.name(p2));
    }
  }
  for (const auto& [p, q] : w.relation) {
    if (!w.used_q.count(q)) out.push_back("used-q: " + kq.name(q) + " is related but not listed");
  }
  return out;
}

std::vector<std::string> validate_witness_ea(const KripkeStructure& kp, const KripkeStructure& kq,
                                             const RelationalPredicate& pred, const SimWitnessEA& w) {
  std::vector<std::string> out;
  const RelationalPredicate bound = bind_predicate(pred, kp.ap(), kq.ap());
  if (!is_lasso_path(kp, w.lasso)) {
    out.push_back("lasso: not an initial lasso path of the left structure");
    return out;
  }
  std::vector<StateIndex> seq = w.lasso.prefix;
  seq.insert(seq.end(), w.lasso.loop.begin(), w.lasso.loop.end());
  if (w.pos_relation.size() != seq.size()) {
    out.push_back("relation: one entry per lasso position expected");
    return out;
  }
  for (const auto& qs : w.pos_relation) {
    for (StateIndex q : qs) {
      if (q >= kq.size()) {
        out.push_back("relation: state out of range");
        return out;
      }
    }
  }
  for (StateIndex q : kq.initial()) {
    if (!w.pos_relation[0].count(q)) out.push_back("initial: " + kq.name(q) + " not related to the first position");
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const std::size_t next = i + 1 < seq.size() ? i + 1 : w.lasso.prefix.size();
    for (StateIndex q : w.pos_relation[i]) {
      if (!eval_predicate(bound, kp.label(seq[i]), kq.label(q)))
        out.push_back("predicate: fails at position " + std::to_string(i) + " on " + show_pair(kp, seq[i], kq, q));
      for (StateIndex q2 : kq.successors(q)) {
        if (!w.pos_relation[next].count(q2))
          out.push_back("successor: " + kq.name(q) + " at position " + std::to_string(i) + " steps to " +
                        kq.name(q2) + ", unrelated at position " + std::to_string(next));
      }
    }
  }
  return out;
}

namespace {

// Exhaustive search over lassos of exactly `length` states; prunes as soon
// as the pointwise predicate fails on the shared prefix.
std::optional<LassoPath> exact_match(const KripkeStructure& kq, const RelationalPredicate& pred, const LassoTrace& t_p,
                                     std::size_t length) {
  std::vector<StateIndex> path;
  std::optional<LassoPath> found;
  auto rec = [&](auto&& self) -> bool {
    const std::size_t i = path.size();
    if (i == length) {
      for (std::size_t j = 0; j < length; ++j) {
        if (!kq.has_transition(path.back(), path[j])) continue;
        LassoPath lp;
        lp.prefix.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(j));
        lp.loop.assign(path.begin() + static_cast<std::ptrdiff_t>(j), path.end());
        if (check_box_on_pair(pred, t_p, lasso_trace(kq, lp))) {
          found = std::move(lp);
          return true;
        }
      }
      return false;
    }
    std::span<const StateIndex> options = i == 0 ? kq.initial() : kq.successors(path.back());
    for (StateIndex q : options) {
      if (!eval_predicate(pred, t_p.at(i), kq.label(q))) continue;
      path.push_back(q);
      if (self(self)) return true;
      path.pop_back();
    }
    return false;
  };
  rec(rec);
  return found;
}

}  // namespace

std::optional<LassoPath> match_lasso(const KripkeStructure& kq, const RelationalPredicate& pred, const LassoTrace& t_p,
                                     std::size_t bound) {
  if (bound < 1) throw BoundError("match_lasso bound must be at least 1");
  if (t_p.loop.empty()) throw BoundError("lasso trace needs a nonempty loop");
  // Product of t_p's positions with K_Q, restricted to pred-satisfying nodes.
  const std::size_t m = t_p.prefix.size() + t_p.loop.size();
  const std::size_t nq = kq.size();
  auto node = [&](std::size_t pos, StateIndex q) { return pos * nq + q; };
  auto next_pos = [&](std::size_t pos) { return pos + 1 < m ? pos + 1 : t_p.prefix.size(); };
  std::vector<char> ok(m * nq, 0);
  for (std::size_t pos = 0; pos < m; ++pos) {
    for (StateIndex q = 0; q < nq; ++q) ok[node(pos, q)] = eval_predicate(pred, t_p.at(pos), kq.label(q));
  }
  auto successors = [&](std::size_t v, auto&& visit) {
    const std::size_t pos = v / nq;
    const auto q = static_cast<StateIndex>(v % nq);
    for (StateIndex q2 : kq.successors(q)) {
      const std::size_t w = node(next_pos(pos), q2);
      if (ok[w]) visit(w);
    }
  };
  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(m * nq, kInf);
  std::vector<std::size_t> parent(m * nq, kInf);
  std::deque<std::size_t> work;
  for (StateIndex q : kq.initial()) {
    const std::size_t v = node(0, q);
    if (ok[v] && dist[v] == kInf) {
      dist[v] = 0;
      work.push_back(v);
    }
  }
  while (!work.empty()) {
    const std::size_t v = work.front();
    work.pop_front();
    successors(v, [&](std::size_t w) {
      if (dist[w] == kInf) {
        dist[w] = dist[v] + 1;
        parent[w] = v;
        work.push_back(w);
      }
    });
  }
  std::size_t best_total = kInf;
  std::vector<std::size_t> best_loop;
  std::size_t best_entry = kInf;
  for (std::size_t v = 0; v < m * nq; ++v) {
    if (dist[v] == kInf || dist[v] >= best_total) continue;
    // shortest cycle through v
    std::vector<std::size_t> cdist(m * nq, kInf);
    std::vector<std::size_t> cpar(m * nq, kInf);
    std::deque<std::size_t> q{v};
    cdist[v] = 0;
    std::size_t closing = kInf;
    while (!q.empty() && closing == kInf) {
      const std::size_t a = q.front();
      q.pop_front();
      successors(a, [&](std::size_t b) {
        if (closing != kInf) return;
        if (b == v) {
          closing = a;
          return;
        }
        if (cdist[b] == kInf) {
          cdist[b] = cdist[a] + 1;
          cpar[b] = a;
          q.push_back(b);
        }
      });
    }
    if (closing == kInf) continue;
    const std::size_t total = dist[v] + cdist[closing] + 1;
    if (total < best_total) {
      best_total = total;
      best_entry = v;
      best_loop.clear();
      for (std::size_t a = closing; a != v; a = cpar[a]) best_loop.push_back(a);
      best_loop.push_back(v);
      std::reverse(best_loop.begin(), best_loop.end());
    }
  }
  if (best_total == kInf) return std::nullopt;  // no satisfying trace at any bound
  // The product lasso is a match but may be longer than needed (its loop is
  // a multiple of t_p's); shorter lengths are searched exactly first.
  for (std::size_t len = 1; len < best_total && len <= bound; ++len) {
    if (auto lp = exact_match(kq, pred, t_p, len)) return lp;
  }
  if (best_total <= bound) {
    LassoPath lp;
    for (std::size_t a = parent[best_entry]; a != kInf; a = parent[a]) lp.prefix.push_back(static_cast<StateIndex>(a % nq));
    std::reverse(lp.prefix.begin(), lp.prefix.end());
    for (std::size_t a : best_loop) lp.loop.push_back(static_cast<StateIndex>(a % nq));
    return lp;
  }
  return std::nullopt;
}

namespace {

using StateSet = std::vector<StateIndex>;  // sorted

StateSet step_matching(const KripkeStructure& kq, const StateSet& from, const PredicateTable& table, StateIndex p) {
  StateSet out;
  for (StateIndex q : from) {
    for (StateIndex q2 : kq.successors(q)) {
      if (table(p, q2)) out.push_back(q2);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void extend_arbitrarily(const KripkeStructure& k, std::vector<StateIndex>& path, std::size_t length) {
  while (path.size() < length) path.push_back(k.successors(path.back()).front());
}

}  // namespace

std::optional<Counterexample> falsify_forall_exists(const KripkeStructure& kp, const KripkeStructure& kq,
                                                    const RelationalPredicate& pred, std::size_t depth) {
  if (depth < 1) throw BoundError("falsification depth must be at least 1");
  const PredicateTable table(pred, kp, kq);
  std::set<std::tuple<std::size_t, StateIndex, StateSet>> failed;
  std::vector<StateIndex> path;
  // F = Q states ending some Q path that matches `path` pointwise so far.
  auto rec = [&](auto&& self, const StateSet& matching) -> bool {
    if (matching.empty()) {
      extend_arbitrarily(kp, path, depth);
      return true;
    }
    if (path.size() == depth) return false;
    auto key = std::make_tuple(path.size(), path.back(), matching);
    if (failed.count(key)) return false;
    for (StateIndex p2 : kp.successors(path.back())) {
      path.push_back(p2);
      if (self(self, step_matching(kq, matching, table, p2))) return true;
      path.pop_back();
    }
    failed.insert(std::move(key));
    return false;
  };
  for (StateIndex p0 : kp.initial()) {
    StateSet matching;
    for (StateIndex q0 : kq.initial()) {
      if (table(p0, q0)) matching.push_back(q0);
    }
    path.assign(1, p0);
    if (rec(rec, matching)) {
      Counterexample ce;
      ce.side = Pattern::ForallExists;
      ce.depth = depth;
      ce.p_path = path;
      return ce;
    }
  }
  return std::nullopt;
}

std::optional<Counterexample> falsify_exists_forall(const KripkeStructure& kp, const KripkeStructure& kq,
                                                    const RelationalPredicate& pred, std::size_t depth) {
  if (depth < 1) throw BoundError("falsification depth must be at least 1");
  const PredicateTable table(pred, kp, kq);
  // reach[i]: Q states at position i of some initial path; via[i][q]: a predecessor.
  std::vector<StateSet> reach(depth);
  std::vector<std::map<StateIndex, StateIndex>> via(depth);
  reach[0].assign(kq.initial().begin(), kq.initial().end());
  for (std::size_t i = 1; i < depth; ++i) {
    for (StateIndex q : reach[i - 1]) {
      for (StateIndex q2 : kq.successors(q)) via[i].emplace(q2, q);
    }
    for (const auto& entry : via[i]) reach[i].push_back(entry.first);
  }
  auto violator = [&](std::size_t i, StateIndex p) -> std::optional<StateIndex> {
    for (StateIndex q : reach[i]) {
      if (!table(p, q)) return q;
    }
    return std::nullopt;
  };
  auto q_path_to = [&](std::size_t i, StateIndex q) {
    std::vector<StateIndex> out{q};
    for (std::size_t level = i; level > 0; --level) {
      q = via[level].at(q);
      out.push_back(q);
    }
    std::reverse(out.begin(), out.end());
    return out;
  };

  // Is there a P path of `depth` states safe against every reachable Q state?
  std::map<std::pair<std::size_t, StateIndex>, bool> safe_memo;
  auto safe_from = [&](auto&& self, std::size_t i, StateIndex p) -> bool {
    if (violator(i, p)) return false;
    if (i + 1 == depth) return true;
    auto key = std::make_pair(i, p);
    if (auto it = safe_memo.find(key); it != safe_memo.end()) return it->second;
    bool any = false;
    for (StateIndex p2 : kp.successors(p)) {
      if (self(self, i + 1, p2)) {
        any = true;
        break;
      }
    }
    safe_memo.emplace(key, any);
    return any;
  };
  for (StateIndex p0 : kp.initial()) {
    if (safe_from(safe_from, 0, p0)) return std::nullopt;
  }

  Counterexample ce;
  ce.side = Pattern::ExistsForall;
  ce.depth = depth;
  constexpr std::size_t kMaxBranches = 1'000'000;
  std::vector<StateIndex> prefix;
  auto cover = [&](auto&& self, StateIndex p) -> void {
    prefix.push_back(p);
    const std::size_t i = prefix.size() - 1;
    if (auto q = violator(i, p)) {
      ce.branches.push_back({prefix, q_path_to(i, *q)});
      if (ce.branches.size() > kMaxBranches) throw BoundError("exists-forall refutation evidence too large");
    } else {
      for (StateIndex p2 : kp.successors(p)) self(self, p2);
    }
    prefix.pop_back();
  };
  for (StateIndex p0 : kp.initial()) cover(cover, p0);
  return ce;
}

namespace {

bool is_initial_path(const KripkeStructure& k, const std::vector<StateIndex>& path) {
  if (path.empty() || path[0] >= k.size() || !k.is_initial(path[0])) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i + 1] >= k.size() || !k.has_transition(path[i], path[i + 1])) return false;
  }
  return true;
}

}  // namespace

bool verify_counterexample(const KripkeStructure& kp, const KripkeStructure& kq, const RelationalPredicate& pred,
                           const Counterexample& ce) {
  const RelationalPredicate bound = bind_predicate(pred, kp.ap(), kq.ap());
  auto holds = [&](StateIndex p, StateIndex q) { return eval_predicate(bound, kp.label(p), kq.label(q)); };
  if (ce.depth < 1) return false;

  if (ce.side == Pattern::ForallExists) {
    if (ce.p_path.size() != ce.depth || !is_initial_path(kp, ce.p_path)) return false;
    // Every Q path of the same length must break pred somewhere.
    std::vector<StateIndex> q_path;
    auto all_refuted = [&](auto&& self) -> bool {
      const std::size_t i = q_path.size();
      if (i == ce.depth) return false;  // survived every position
      std::span<const StateIndex> options = i == 0 ? kq.initial() : kq.successors(q_path.back());
      for (StateIndex q : options) {
        if (!holds(ce.p_path[i], q)) continue;
        q_path.push_back(q);
        const bool refuted = self(self);
        q_path.pop_back();
        if (!refuted) return false;
      }
      return true;
    };
    return all_refuted(all_refuted);
  }

  std::set<std::vector<StateIndex>> covered;
  for (const auto& b : ce.branches) {
    if (b.p_prefix.empty() || b.p_prefix.size() != b.q_path.size() || b.p_prefix.size() > ce.depth) return false;
    if (!is_initial_path(kp, b.p_prefix) || !is_initial_path(kq, b.q_path)) return false;
    if (holds(b.p_prefix.back(), b.q_path.back())) return false;
    covered.insert(b.p_prefix);
  }
  std::vector<StateIndex> p_path;
  auto every_path_covered = [&](auto&& self) -> bool {
    if (!p_path.empty() && covered.count(p_path)) return true;
    if (p_path.size() == ce.depth) return false;
    std::span<const StateIndex> options = p_path.empty() ? kp.initial() : kp.successors(p_path.back());
    for (StateIndex p : options) {
      p_path.push_back(p);
      const bool ok = self(self);
      p_path.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return every_path_covered(every_path_covered);
}

Graph parse_graph(std::string_view text) {
  Graph g;
  bool have_n = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "n") {
      long count = -1;
      if (have_n || !(ls >> count) || count < 0) throw ParseError("expected a single 'n <count>' line", line_no);
      g.n = static_cast<std::size_t>(count);
      have_n = true;
    } else if (tag == "e") {
      long u = -1;
      long v = -1;
      if (!have_n) throw ParseError("edge before 'n <count>'", line_no);
      if (!(ls >> u >> v) || u < 0 || v < 0) throw ParseError("expected 'e <u> <v>'", line_no);
      if (u == v) throw ModelError("self-loop", std::to_string(u), "graph edge may not be a self-loop");
      if (static_cast<std::size_t>(std::max(u, v)) >= g.n)
        throw ModelError("unknown-vertex", std::to_string(std::max(u, v)), "edge references an unknown vertex");
      const std::pair<std::size_t, std::size_t> e{static_cast<std::size_t>(std::min(u, v)),
                                                  static_cast<std::size_t>(std::max(u, v))};
      if (std::find(g.edges.begin(), g.edges.end(), e) == g.edges.end()) g.edges.push_back(e);
    } else {
      throw ParseError("unknown line tag '" + tag + "'", line_no);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("unexpected text '" + extra + "'", line_no);
  }
  if (!have_n) throw ParseError("missing 'n <count>' line", 0);
  return g;
}

std::pair<KripkeStructure, KripkeStructure> gen_vertex_cover_instance(const Graph& g) {
  const std::size_t m = g.edges.size();
  if (m < 1) throw BoundError("vertex-cover instance needs at least one edge");
  std::vector<std::string> ap{"q"};
  for (std::size_t i = 0; i < m; ++i) ap.push_back("e" + std::to_string(i));

  std::vector<std::string> n1{"c"};
  std::vector<Label> l1{{"q"}};
  std::vector<Transition> t1;
  for (std::size_t i = 0; i < m; ++i) {
    n1.push_back("e" + std::to_string(i));
    l1.push_back({"e" + std::to_string(i)});
    t1.push_back({0, static_cast<StateIndex>(i + 1)});
    t1.push_back({static_cast<StateIndex>(i + 1), 0});
  }
  KripkeStructure k1(std::move(n1), {0}, ap, std::move(l1), std::move(t1));

  std::vector<std::string> n2;
  std::vector<Label> l2;
  std::vector<Transition> t2;
  std::vector<StateIndex> init2;
  for (std::size_t i = 0; i < m; ++i) {
    n2.push_back("e" + std::to_string(i));
    l2.push_back({"e" + std::to_string(i)});
  }
  for (std::size_t v = 0; v < g.n; ++v) {
    const auto sv = static_cast<StateIndex>(m + v);
    n2.push_back("v" + std::to_string(v));
    l2.push_back({"q"});
    init2.push_back(sv);
    for (std::size_t i = 0; i < m; ++i) t2.push_back({sv, static_cast<StateIndex>(i)});
  }
  for (std::size_t i = 0; i < m; ++i) {
    t2.push_back({static_cast<StateIndex>(i), static_cast<StateIndex>(m + g.edges[i].first)});
    t2.push_back({static_cast<StateIndex>(i), static_cast<StateIndex>(m + g.edges[i].second)});
  }
  KripkeStructure k2(std::move(n2), std::move(init2), ap, std::move(l2), std::move(t2));
  return {std::move(k1), std::move(k2)};
}

bool brute_force_vertex_cover(const Graph& g, std::size_t k) {
  if (g.n > 20) throw BoundError("brute-force vertex cover limited to 20 vertices");
  for (std::uint32_t mask = 0; mask < (1U << g.n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > k) continue;
    const bool covers = std::all_of(g.edges.begin(), g.edges.end(), [&](const auto& e) {
      return ((mask >> e.first) & 1U) || ((mask >> e.second) & 1U);
    });
    if (covers) return true;
  }
  return false;
}

std::size_t min_vertex_cover(const Graph& g) {
  for (std::size_t k = 0;; ++k) {
    if (brute_force_vertex_cover(g, k)) return k;
  }
}

}  // namespace hyperbmc
