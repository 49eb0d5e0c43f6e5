#include "hyperbmc/encoder.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "hyperbmc/error.hpp"

namespace hyperbmc {

namespace {

using Ref = Circuit::Ref;

// Slot-level building blocks with per-(slot, state) caches so that
// "y_j = q" and "delta(y_j, y_r)" are built once and shared.
class SlotLogic {
 public:
  explicit SlotLogic(Encoding& enc) : c_(enc.circuit) {}

  StateSlot make_slot(StateSlot::Role role, std::size_t index, std::size_t states, bool fixed) {
    StateSlot s;
    s.role = role;
    s.index = index;
    s.states = states;
    if (fixed) {
      s.fixed = static_cast<StateIndex>(index - 1);
    } else {
      const char* prefix = role == StateSlot::Role::P ? "x" : "y";
      for (std::size_t b = 0; b < slot_width(states); ++b)
        s.bits.push_back(c_.var(prefix + std::to_string(index) + ".b" + std::to_string(b)));
    }
    return s;
  }

  Ref eq(const StateSlot& s, StateIndex state) {
    if (s.fixed) return c_.constant(*s.fixed == state);
    const auto key = std::make_tuple(s.role, s.index, state);
    if (auto it = eq_cache_.find(key); it != eq_cache_.end()) return it->second;
    std::vector<Ref> lits;
    for (std::size_t b = 0; b < s.bits.size(); ++b)
      lits.push_back(((state >> b) & 1U) ? s.bits[b] : c_.lnot(s.bits[b]));
    Ref r = c_.land(std::move(lits));
    eq_cache_.emplace(key, r);
    return r;
  }

  // ordinal(s) < states
  Ref legal(const StateSlot& s) {
    if (s.fixed) return c_.constant(*s.fixed < s.states);
    const std::size_t w = s.bits.size();
    if ((std::size_t{1} << w) == s.states) return c_.constant(true);
    Ref lt = c_.constant(false);
    for (std::size_t b = 0; b < w; ++b) {
      const Ref not_bit = c_.lnot(s.bits[b]);
      lt = ((s.states >> b) & 1U) ? c_.lor(not_bit, lt) : c_.land(not_bit, lt);
    }
    return lt;
  }

  Ref distinct(const StateSlot& a, const StateSlot& b) {
    if (a.fixed && b.fixed) return c_.constant(*a.fixed != *b.fixed);
    if (a.fixed) return c_.lnot(eq(b, *a.fixed));
    if (b.fixed) return c_.lnot(eq(a, *b.fixed));
    std::vector<Ref> diffs;
    for (std::size_t i = 0; i < a.bits.size(); ++i) diffs.push_back(c_.lxor(a.bits[i], b.bits[i]));
    return c_.lor(std::move(diffs));
  }

  // ordinal(a) < ordinal(b), both symbolic and of equal width.
  Ref less(const StateSlot& a, const StateSlot& b) {
    Ref lt = c_.constant(false);
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
      const Ref strictly = c_.land(c_.lnot(a.bits[i]), b.bits[i]);
      lt = c_.lor(strictly, c_.land(c_.iff(a.bits[i], b.bits[i]), lt));
    }
    return lt;
  }

  Ref member(const StateSlot& s, std::span<const StateIndex> states) {
    std::vector<Ref> ors;
    for (StateIndex q : states) ors.push_back(eq(s, q));
    return c_.lor(std::move(ors));
  }

  // (a, b) is a transition of k
  Ref delta(const KripkeStructure& k, const StateSlot& a, const StateSlot& b) {
    if (a.fixed && b.fixed) return c_.constant(k.has_transition(*a.fixed, *b.fixed));
    const auto key = std::make_tuple(a.role, a.index, b.index);
    if (auto it = delta_cache_.find(key); it != delta_cache_.end()) return it->second;
    std::vector<Ref> ors;
    for (StateIndex s = 0; s < k.size(); ++s) {
      const Ref at = eq(a, s);
      if (at == c_.constant(false)) continue;
      ors.push_back(c_.land(at, member(b, k.successors(s))));
    }
    Ref r = c_.lor(std::move(ors));
    delta_cache_.emplace(key, r);
    return r;
  }

  // Pred(L_P(x), L_Q(y)) via the truth table
  Ref pred(const PredicateTable& table, const StateSlot& x, const StateSlot& y) {
    std::vector<Ref> ors;
    for (StateIndex p = 0; p < table.rows(); ++p) {
      const Ref at = eq(x, p);
      if (at == c_.constant(false)) continue;
      std::vector<Ref> qs;
      for (StateIndex q = 0; q < table.columns(); ++q) {
        if (table(p, q)) qs.push_back(eq(y, q));
      }
      ors.push_back(c_.land(at, c_.lor(std::move(qs))));
    }
    return c_.lor(std::move(ors));
  }

 private:
  Circuit& c_;
  std::map<std::tuple<StateSlot::Role, std::size_t, StateIndex>, Ref> eq_cache_;
  std::map<std::tuple<StateSlot::Role, std::size_t, std::size_t>, Ref> delta_cache_;
};

void add(Encoding& enc, const char* family, Ref r) { enc.conjuncts.push_back({family, r}); }

// Every family gets a root, even when it has no constraints at this size.
void finish_families(Encoding& enc, std::vector<std::string> order) {
  for (const auto& f : order) {
    const bool present = std::any_of(enc.conjuncts.begin(), enc.conjuncts.end(),
                                     [&](const auto& r) { return r.family == f; });
    if (!present) enc.conjuncts.push_back({f, enc.circuit.constant(true)});
  }
  auto rank = [&](const std::string& f) { return std::find(order.begin(), order.end(), f) - order.begin(); };
  std::stable_sort(enc.conjuncts.begin(), enc.conjuncts.end(),
                   [&](const auto& a, const auto& b) { return rank(a.family) < rank(b.family); });
}

void make_sim_vars(Encoding& enc) {
  enc.sim.assign(enc.n, {});
  for (std::size_t i = 1; i <= enc.n; ++i) {
    for (std::size_t j = 1; j <= enc.k; ++j)
      enc.sim[i - 1].push_back(enc.circuit.var("sim." + std::to_string(i) + "." + std::to_string(j)));
  }
}

void add_legal_and_exhaustive(Encoding& enc, SlotLogic& L, const std::vector<StateSlot>& explored) {
  auto& c = enc.circuit;
  for (const auto& s : enc.x) add(enc, "legal", L.legal(s));
  for (const auto& s : enc.y) add(enc, "legal", L.legal(s));
  for (std::size_t a = 0; a < explored.size(); ++a) {
    for (std::size_t b = a + 1; b < explored.size(); ++b) {
      const Ref both = c.land(L.legal(explored[a]), L.legal(explored[b]));
      add(enc, "exhaustive", c.implies(both, L.distinct(explored[a], explored[b])));
    }
  }
}

void add_predicate(Encoding& enc, SlotLogic& L, const PredicateTable& table) {
  auto& c = enc.circuit;
  for (std::size_t i = 0; i < enc.n; ++i) {
    for (std::size_t j = 0; j < enc.k; ++j) add(enc, "predicate", c.implies(enc.sim[i][j], L.pred(table, enc.x[i], enc.y[j])));
  }
}

}  // namespace

std::size_t slot_width(std::size_t states) {
  std::size_t w = 0;
  while ((std::size_t{1} << w) < states) ++w;
  return w;
}

std::vector<std::string> Encoding::families() const {
  std::vector<std::string> out;
  for (const auto& r : conjuncts) {
    if (std::find(out.begin(), out.end(), r.family) == out.end()) out.push_back(r.family);
  }
  return out;
}

Encoding encode_sim_ea(const KripkeStructure& kp, const KripkeStructure& kq, const RelationalPredicate& pred,
                       std::size_t n, const EncoderOptions& options) {
  if (n < 1) throw BoundError("EA path bound n must be at least 1");
  const PredicateTable table(pred, kp, kq);
  Encoding enc;
  enc.pattern = Pattern::ExistsForall;
  enc.n = n;
  enc.k = kq.size();
  enc.p_states = kp.size();
  enc.q_states = kq.size();
  enc.slot_encoding = options.slots;
  SlotLogic L(enc);
  auto& c = enc.circuit;
  const bool fixed_q = options.slots == SlotEncoding::Enumerated;
  for (std::size_t i = 1; i <= n; ++i) enc.x.push_back(L.make_slot(StateSlot::Role::P, i, kp.size(), false));
  for (std::size_t j = 1; j <= enc.k; ++j) enc.y.push_back(L.make_slot(StateSlot::Role::Q, j, kq.size(), fixed_q));
  make_sim_vars(enc);

  add_legal_and_exhaustive(enc, L, enc.y);

  add(enc, "initial", L.member(enc.x[0], kp.initial()));
  for (std::size_t j = 0; j < enc.k; ++j)
    add(enc, "initial", c.implies(L.member(enc.y[j], kq.initial()), enc.sim[0][j]));

  // succ_T(x_a, x_b): every successor of a Q state related to x_a is related to x_b.
  std::map<std::pair<std::size_t, std::size_t>, Ref> succ_cache;
  auto succ_t = [&](std::size_t a, std::size_t b) {
    if (auto it = succ_cache.find({a, b}); it != succ_cache.end()) return it->second;
    std::vector<Ref> all;
    for (std::size_t j = 0; j < enc.k; ++j) {
      std::vector<Ref> inner;
      for (std::size_t r = 0; r < enc.k; ++r)
        inner.push_back(c.implies(L.delta(kq, enc.y[j], enc.y[r]), enc.sim[b][r]));
      all.push_back(c.implies(enc.sim[a][j], c.land(std::move(inner))));
    }
    Ref res = c.land(std::move(all));
    succ_cache.emplace(std::make_pair(a, b), res);
    return res;
  };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    add(enc, "successor", L.delta(kp, enc.x[i], enc.x[i + 1]));
    add(enc, "successor", succ_t(i, i + 1));
  }

  std::vector<Ref> jumps;
  for (std::size_t i = 0; i < n; ++i) {
    const Ref d = c.land(L.delta(kp, enc.x[n - 1], enc.x[i]), succ_t(n - 1, i));
    enc.loop_back.push_back(d);
    jumps.push_back(d);
  }
  add(enc, "loop-back", c.lor(std::move(jumps)));

  add_predicate(enc, L, table);
  finish_families(enc, {"legal", "exhaustive", "initial", "successor", "loop-back", "predicate"});
  return enc;
}

Encoding encode_sim_ae(const KripkeStructure& kp, const KripkeStructure& kq, const RelationalPredicate& pred,
                       std::size_t k, const EncoderOptions& options) {
  if (k < 1 || k > kq.size())
    throw BoundError("AE subset bound k=" + std::to_string(k) + " outside [1, " + std::to_string(kq.size()) + "]");
  const PredicateTable table(pred, kp, kq);
  Encoding enc;
  enc.pattern = Pattern::ForallExists;
  enc.n = kp.size();
  enc.k = k;
  enc.p_states = kp.size();
  enc.q_states = kq.size();
  enc.slot_encoding = options.slots;
  SlotLogic L(enc);
  auto& c = enc.circuit;
  const bool fixed_p = options.slots == SlotEncoding::Enumerated;
  for (std::size_t i = 1; i <= enc.n; ++i) enc.x.push_back(L.make_slot(StateSlot::Role::P, i, kp.size(), fixed_p));
  for (std::size_t j = 1; j <= k; ++j) enc.y.push_back(L.make_slot(StateSlot::Role::Q, j, kq.size(), false));
  make_sim_vars(enc);

  add_legal_and_exhaustive(enc, L, enc.x);

  for (std::size_t i = 0; i < enc.n; ++i) {
    std::vector<Ref> options_j;
    for (std::size_t j = 0; j < k; ++j) options_j.push_back(c.land(L.member(enc.y[j], kq.initial()), enc.sim[i][j]));
    add(enc, "initial", c.implies(L.member(enc.x[i], kp.initial()), c.lor(std::move(options_j))));
  }

  for (std::size_t i = 0; i < enc.n; ++i) {
    for (std::size_t t = 0; t < enc.n; ++t) {
      const Ref step = L.delta(kp, enc.x[i], enc.x[t]);
      if (step == c.constant(false)) continue;
      std::vector<Ref> per_j;
      for (std::size_t j = 0; j < k; ++j) {
        std::vector<Ref> matches;
        for (std::size_t r = 0; r < k; ++r) matches.push_back(c.land(L.delta(kq, enc.y[j], enc.y[r]), enc.sim[t][r]));
        per_j.push_back(c.implies(enc.sim[i][j], c.lor(std::move(matches))));
      }
      add(enc, "successor", c.implies(step, c.land(std::move(per_j))));
    }
  }

  add_predicate(enc, L, table);

  if (options.order_q_slots) {
    for (std::size_t j = 0; j + 1 < k; ++j) add(enc, "slot-order", L.less(enc.y[j], enc.y[j + 1]));
  }
  std::vector<std::string> order{"legal", "exhaustive", "initial", "successor", "predicate"};
  if (options.order_q_slots) order.push_back("slot-order");
  finish_families(enc, std::move(order));
  return enc;
}

std::size_t slot_value(const Encoding& enc, const StateSlot& slot, const std::vector<bool>& model) {
  if (slot.fixed) return *slot.fixed;
  std::size_t v = 0;
  for (std::size_t b = 0; b < slot.bits.size(); ++b) {
    const auto var = enc.circuit.var_index(slot.bits[b]) + 1;
    if (var >= model.size()) throw DecodeError("model too short for the encoding");
    if (model[var]) v |= std::size_t{1} << b;
  }
  if (v >= slot.states)
    throw DecodeError((slot.role == StateSlot::Role::P ? "x" : "y") + std::to_string(slot.index) +
                      " decodes to ordinal " + std::to_string(v) + " >= " + std::to_string(slot.states));
  return v;
}

namespace {

bool sim_value(const Encoding& enc, Ref r, const std::vector<bool>& model) {
  const auto var = enc.circuit.var_index(r) + 1;
  if (var >= model.size()) throw DecodeError("model too short for the encoding");
  return model[var];
}

std::vector<bool> inputs_of(const Encoding& enc, const std::vector<bool>& model) {
  if (model.size() < enc.circuit.var_count() + 1) throw DecodeError("model too short for the encoding");
  return std::vector<bool>(model.begin() + 1, model.begin() + 1 + static_cast<std::ptrdiff_t>(enc.circuit.var_count()));
}

}  // namespace

SimWitnessEA decode_witness_ea(const Encoding& enc, const std::vector<bool>& model) {
  if (enc.pattern != Pattern::ExistsForall) throw DecodeError("not an EA encoding");
  const auto inputs = inputs_of(enc, model);
  std::vector<StateIndex> path;
  for (const auto& s : enc.x) path.push_back(static_cast<StateIndex>(slot_value(enc, s, model)));
  std::vector<StateIndex> q_of;
  for (const auto& s : enc.y) q_of.push_back(static_cast<StateIndex>(slot_value(enc, s, model)));

  std::optional<std::size_t> target;
  for (std::size_t i = 0; i < enc.loop_back.size(); ++i) {
    if (enc.circuit.evaluate(enc.loop_back[i], inputs)) {
      target = i;
      break;
    }
  }
  if (!target) throw DecodeError("no loop-back disjunct holds in the model");

  SimWitnessEA w;
  w.lasso.prefix.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(*target));
  w.lasso.loop.assign(path.begin() + static_cast<std::ptrdiff_t>(*target), path.end());
  w.pos_relation.assign(enc.n, {});
  for (std::size_t i = 0; i < enc.n; ++i) {
    for (std::size_t j = 0; j < enc.k; ++j) {
      if (sim_value(enc, enc.sim[i][j], model)) w.pos_relation[i].insert(q_of[j]);
    }
  }
  return w;
}

SimWitnessAE decode_witness_ae(const Encoding& enc, const std::vector<bool>& model) {
  if (enc.pattern != Pattern::ForallExists) throw DecodeError("not an AE encoding");
  inputs_of(enc, model);
  std::vector<StateIndex> p_of;
  for (const auto& s : enc.x) p_of.push_back(static_cast<StateIndex>(slot_value(enc, s, model)));
  std::vector<StateIndex> q_of;
  for (const auto& s : enc.y) q_of.push_back(static_cast<StateIndex>(slot_value(enc, s, model)));
  SimWitnessAE w;
  for (std::size_t i = 0; i < enc.n; ++i) {
    for (std::size_t j = 0; j < enc.k; ++j) {
      if (sim_value(enc, enc.sim[i][j], model)) {
        w.relation.insert({p_of[i], q_of[j]});
        w.used_q.insert(q_of[j]);
      }
    }
  }
  return w;
}

}  // namespace hyperbmc
