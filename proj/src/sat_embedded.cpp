#include <algorithm>
#include <chrono>
#include <cmath>

#include "hyperbmc/error.hpp"
#include "hyperbmc/sat.hpp"

namespace hyperbmc {

namespace {

// Literal encoding: 2*var + sign, sign 1 meaning negated.
inline int neg(int lit) { return lit ^ 1; }
inline int var_of(int lit) { return lit >> 1; }

constexpr signed char kUndef = -1;

struct Clause {
  std::vector<int> lits;
  bool learnt = false;
  bool deleted = false;
  double activity = 0.0;
};

struct Watch {
  int cref;
  int blocker;
};

double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

class Cdcl {
 public:
  explicit Cdcl(int vars)
      : n_(vars),
        value_(vars, kUndef),
        level_(vars, 0),
        reason_(vars, -1),
        polarity_(vars, 1),
        activity_(vars, 0.0),
        seen_(vars, 0),
        heap_pos_(vars, -1),
        watches_(2 * static_cast<std::size_t>(vars)) {
    for (int v = 0; v < n_; ++v) heap_insert(v);
  }

  // False if the clause set is already contradictory.
  bool add_clause(std::vector<int> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 1; i < lits.size(); ++i) {
      if (lits[i] == neg(lits[i - 1])) return true;  // tautology
    }
    // Drop literals already false at level 0, skip satisfied clauses.
    std::vector<int> kept;
    for (int l : lits) {
      const signed char v = lit_value(l);
      if (v == 1) return true;
      if (v == kUndef) kept.push_back(l);
    }
    if (kept.empty()) return false;
    if (kept.size() == 1) {
      enqueue(kept[0], -1);
      return propagate() < 0;
    }
    attach(static_cast<int>(clauses_.size()), kept);
    clauses_.push_back({std::move(kept), false, false, 0.0});
    ++original_;
    return true;
  }

  bool solve() {
    if (propagate() >= 0) return false;
    max_learnts_ = std::max(1000.0, original_ / 3.0);
    for (int restart = 0;; ++restart) {
      const auto budget = static_cast<long>(luby(2.0, restart) * 100);
      const int status = search(budget);
      if (status != 0) return status > 0;
      max_learnts_ *= 1.1;
    }
  }

  bool model_value(int v) const { return value_[v] == 1; }

 private:
  signed char lit_value(int lit) const {
    const signed char v = value_[var_of(lit)];
    if (v == kUndef) return kUndef;
    return static_cast<signed char>(v ^ (lit & 1));
  }

  void attach(int cref, const std::vector<int>& lits) {
    watches_[lits[0]].push_back({cref, lits[1]});
    watches_[lits[1]].push_back({cref, lits[0]});
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(int lit, int reason) {
    const int v = var_of(lit);
    value_[v] = static_cast<signed char>((lit & 1) ^ 1);
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(lit);
  }

  // Returns the conflicting clause or -1. Watches are listed under the
  // literal that becomes false.
  int propagate() {
    while (qhead_ < trail_.size()) {
      const int p = trail_[qhead_++];
      const int false_lit = neg(p);
      auto& ws = watches_[false_lit];
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < ws.size()) {
        const Watch w = ws[i++];
        if (lit_value(w.blocker) == 1) {
          ws[j++] = w;
          continue;
        }
        auto& lits = clauses_[w.cref].lits;
        if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
        const int first = lits[0];
        if (first != w.blocker && lit_value(first) == 1) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < lits.size(); ++k) {
          if (lit_value(lits[k]) != 0) {
            std::swap(lits[1], lits[k]);
            watches_[lits[1]].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.cref, first};
        if (lit_value(first) == 0) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return w.cref;
        }
        enqueue(first, w.cref);
      }
      ws.resize(j);
    }
    return -1;
  }

  void bump_var(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
  }

  void bump_clause(Clause& c) {
    c.activity += cla_inc_;
    if (c.activity > 1e20) {
      for (auto& cl : clauses_) {
        if (cl.learnt) cl.activity *= 1e-20;
      }
      cla_inc_ *= 1e-20;
    }
  }

  // First-UIP analysis; returns the backjump level.
  int analyze(int confl, std::vector<int>& learnt) {
    learnt.assign(1, 0);
    int path = 0;
    int p = -1;
    std::size_t index = trail_.size();
    do {
      Clause& c = clauses_[confl];
      if (c.learnt) bump_clause(c);
      for (std::size_t k = (p == -1 ? 0 : 1); k < c.lits.size(); ++k) {
        const int q = c.lits[k];
        const int v = var_of(q);
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          bump_var(v);
          if (level_[v] >= decision_level()) {
            ++path;
          } else {
            learnt.push_back(q);
          }
        }
      }
      while (!seen_[var_of(trail_[--index])]) {
      }
      p = trail_[index];
      confl = reason_[var_of(p)];
      seen_[var_of(p)] = 0;
      --path;
    } while (path > 0);
    learnt[0] = neg(p);

    // Local minimization: drop literals implied by other learnt literals.
    std::vector<int> to_clear(learnt.begin() + 1, learnt.end());
    std::size_t keep = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
      const int v = var_of(learnt[k]);
      const int r = reason_[v];
      bool redundant = r >= 0;
      if (redundant) {
        const auto& rl = clauses_[r].lits;
        for (std::size_t m = 1; m < rl.size(); ++m) {
          const int u = var_of(rl[m]);
          if (!seen_[u] && level_[u] > 0) {
            redundant = false;
            break;
          }
        }
      }
      if (!redundant) learnt[keep++] = learnt[k];
    }
    learnt.resize(keep);
    for (int l : to_clear) seen_[var_of(l)] = 0;

    if (learnt.size() == 1) return 0;
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (level_[var_of(learnt[k])] > level_[var_of(learnt[max_i])]) max_i = k;
    }
    std::swap(learnt[1], learnt[max_i]);
    return level_[var_of(learnt[1])];
  }

  void backtrack(int level) {
    if (decision_level() <= level) return;
    for (std::size_t c = trail_.size(); c > trail_lim_[level]; --c) {
      const int v = var_of(trail_[c - 1]);
      polarity_[v] = static_cast<signed char>(trail_[c - 1] & 1);
      value_[v] = kUndef;
      reason_[v] = -1;
      if (heap_pos_[v] < 0) heap_insert(v);
    }
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
    qhead_ = trail_.size();
  }

  int pick_branch() {
    while (!heap_.empty()) {
      const int v = heap_pop();
      if (value_[v] == kUndef) return 2 * v + polarity_[v];
    }
    return -1;
  }

  bool locked(int cref) const {
    const auto& c = clauses_[cref];
    const int v = var_of(c.lits[0]);
    return reason_[v] == cref && lit_value(c.lits[0]) == 1;
  }

  void reduce_db() {
    std::vector<int> learnts;
    for (int cref = 0; cref < static_cast<int>(clauses_.size()); ++cref) {
      const auto& c = clauses_[cref];
      if (c.learnt && !c.deleted && c.lits.size() > 2 && !locked(cref)) learnts.push_back(cref);
    }
    std::sort(learnts.begin(), learnts.end(),
              [&](int a, int b) { return clauses_[a].activity < clauses_[b].activity; });
    for (std::size_t k = 0; k < learnts.size() / 2; ++k) {
      clauses_[learnts[k]].deleted = true;
      clauses_[learnts[k]].lits.clear();
      clauses_[learnts[k]].lits.shrink_to_fit();
      --learnt_count_;
    }
    for (auto& ws : watches_) {
      ws.erase(std::remove_if(ws.begin(), ws.end(), [&](const Watch& w) { return clauses_[w.cref].deleted; }),
               ws.end());
    }
  }

  // 1 SAT, -1 UNSAT, 0 budget exhausted.
  int search(long budget) {
    std::vector<int> learnt;
    long conflicts = 0;
    for (;;) {
      const int confl = propagate();
      if (confl >= 0) {
        ++conflicts;
        if (decision_level() == 0) return -1;
        const int back = analyze(confl, learnt);
        backtrack(back);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          const int cref = static_cast<int>(clauses_.size());
          clauses_.push_back({learnt, true, false, 0.0});
          attach(cref, clauses_.back().lits);
          bump_clause(clauses_.back());
          ++learnt_count_;
          enqueue(learnt[0], cref);
        }
        var_inc_ /= 0.95;
        cla_inc_ /= 0.999;
        continue;
      }
      if (conflicts >= budget) {
        backtrack(0);
        return 0;
      }
      if (learnt_count_ - static_cast<long>(trail_.size()) >= static_cast<long>(max_learnts_)) reduce_db();
      const int next = pick_branch();
      if (next < 0) return 1;
      trail_lim_.push_back(trail_.size());
      enqueue(next, -1);
    }
  }

  // Max-heap on activity.
  bool heap_less(int a, int b) const { return activity_[a] > activity_[b]; }
  void heap_insert(int v) {
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_pos_[v]);
  }
  void heap_up(int i) {
    const int v = heap_[i];
    while (i > 0) {
      const int parent = (i - 1) / 2;
      if (!heap_less(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }
  int heap_pop() {
    const int top = heap_[0];
    heap_pos_[top] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      int i = 0;
      const int size = static_cast<int>(heap_.size());
      for (;;) {
        int child = 2 * i + 1;
        if (child >= size) break;
        if (child + 1 < size && heap_less(heap_[child + 1], heap_[child])) ++child;
        if (!heap_less(heap_[child], last)) break;
        heap_[i] = heap_[child];
        heap_pos_[heap_[i]] = i;
        i = child;
      }
      heap_[i] = last;
      heap_pos_[last] = i;
    }
    return top;
  }

  int n_;
  std::vector<signed char> value_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<signed char> polarity_;
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<std::vector<Watch>> watches_;
  std::vector<Clause> clauses_;
  std::vector<int> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  double max_learnts_ = 0.0;
  long learnt_count_ = 0;
  long original_ = 0;
};

}  // namespace

SatResult EmbeddedSolver::solve(const CnfInstance& cnf) {
  const auto start = std::chrono::steady_clock::now();
  SatResult result;
  Cdcl solver(cnf.var_count);
  bool ok = true;
  for (const auto& cl : cnf.clauses) {
    std::vector<int> lits;
    lits.reserve(cl.size());
    for (int l : cl) {
      if (l == 0 || std::abs(l) > cnf.var_count) throw BackendError("clause literal out of range");
      lits.push_back(2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0));
    }
    if (!solver.add_clause(std::move(lits))) {
      ok = false;
      break;
    }
  }
  if (ok) ok = solver.solve();
  result.satisfiable = ok;
  if (ok) {
    result.model.assign(static_cast<std::size_t>(cnf.var_count) + 1, false);
    for (int v = 0; v < cnf.var_count; ++v) result.model[v + 1] = solver.model_value(v);
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SatResult solve(const CnfInstance& cnf) { return EmbeddedSolver().solve(cnf); }

}  // namespace hyperbmc
