#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "hyperbmc/driver.hpp"

namespace hyperbmc {

namespace {

using Json = nlohmann::ordered_json;

std::string names(const KripkeStructure& k, const std::vector<StateIndex>& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? " " : "") + k.name(path[i]);
  return s;
}

Json name_list(const KripkeStructure& k, const std::vector<StateIndex>& path) {
  Json a = Json::array();
  for (StateIndex s : path) a.push_back(k.name(s));
  return a;
}

std::vector<StateIndex> lasso_states(const LassoPath& lp) {
  std::vector<StateIndex> seq = lp.prefix;
  seq.insert(seq.end(), lp.loop.begin(), lp.loop.end());
  return seq;
}

const char* bound_letter(Pattern p) { return p == Pattern::ForallExists ? "k" : "n"; }

}  // namespace

std::string format_report_text(const Report& r) {
  std::ostringstream os;
  os << "verdict: " << to_string(r.verdict) << '\n';
  os << "pattern: " << to_string(r.pattern) << '\n';
  os << "left: " << r.left.size() << " states";
  if (r.left.size() != r.left_original.size()) os << " (" << r.left_original.size() << " before prophecy)";
  os << ", right: " << r.right.size() << " states\n";
  if (r.bound) os << "bound: " << bound_letter(r.pattern) << "=" << *r.bound << '\n';
  if (r.subset_size)
    os << (r.pattern == Pattern::ForallExists ? "used right states |S_Q'|: " : "used left states |S_P'|: ")
       << *r.subset_size << '\n';
  if (r.ae_witness) {
    os << "simulation:\n";
    for (const auto& [p, q] : r.ae_witness->relation) os << "  " << r.left.name(p) << " -> " << r.right.name(q) << '\n';
  }
  if (r.ea_witness) {
    const auto seq = lasso_states(r.ea_witness->lasso);
    os << "lasso: " << names(r.left, seq) << " (loop starts at position " << r.ea_witness->lasso.prefix.size()
       << ")\n";
    os << "relation:\n";
    for (std::size_t i = 0; i < seq.size(); ++i) {
      os << "  " << i << ' ' << r.left.name(seq[i]) << ':';
      for (StateIndex q : r.ea_witness->pos_relation[i]) os << ' ' << r.right.name(q);
      os << '\n';
    }
  }
  if (r.counterexample) {
    const auto& ce = *r.counterexample;
    if (ce.side == Pattern::ForallExists) {
      os << "counterexample: " << names(r.left_original, ce.p_path) << " (depth " << ce.depth
         << ", no right path of that length matches)\n";
    } else {
      os << "refutation at depth " << ce.depth << ": every left path is caught (" << ce.branches.size()
         << " branches)\n";
      const std::size_t shown = std::min<std::size_t>(ce.branches.size(), 8);
      for (std::size_t i = 0; i < shown; ++i) {
        os << "  " << names(r.left_original, ce.branches[i].p_prefix) << "  vs  "
           << names(r.right, ce.branches[i].q_path) << '\n';
      }
      if (shown < ce.branches.size()) os << "  ...\n";
    }
  }
  if (!r.note.empty()) os << "note: " << r.note << '\n';
  os << "iterations:\n";
  for (const auto& it : r.iterations) {
    os << "  " << it.kind << ' ' << (it.kind == "simulation" ? bound_letter(r.pattern) : "d") << '=' << it.bound;
    if (it.kind == "simulation") os << " vars=" << it.vars << " clauses=" << it.clauses;
    os << ' ' << it.outcome << ' ' << std::fixed << std::setprecision(3) << it.seconds << "s\n";
  }
  os << "time: " << std::fixed << std::setprecision(3) << r.seconds << "s\n";
  return os.str();
}

std::string format_report_json(const Report& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["pattern"] = to_string(r.pattern);
  j["left_states"] = r.left.size();
  j["left_states_before_prophecy"] = r.left_original.size();
  j["right_states"] = r.right.size();
  j["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
  j["subset_size"] = r.subset_size ? Json(*r.subset_size) : Json(nullptr);
  j["max_sim_bound"] = r.max_sim_bound;
  j["max_depth"] = r.max_depth;
  if (r.ae_witness) {
    Json pairs = Json::array();
    for (const auto& [p, q] : r.ae_witness->relation) pairs.push_back({r.left.name(p), r.right.name(q)});
    Json used = Json::array();
    for (StateIndex q : r.ae_witness->used_q) used.push_back(r.right.name(q));
    j["witness"] = {{"relation", pairs}, {"used_right", used}};
  }
  if (r.ea_witness) {
    const auto seq = lasso_states(r.ea_witness->lasso);
    Json rel = Json::array();
    for (const auto& qs : r.ea_witness->pos_relation) {
      Json row = Json::array();
      for (StateIndex q : qs) row.push_back(r.right.name(q));
      rel.push_back(row);
    }
    j["witness"] = {{"lasso", name_list(r.left, seq)},
                    {"loop_start", r.ea_witness->lasso.prefix.size()},
                    {"relation", rel}};
  }
  if (r.counterexample) {
    const auto& ce = *r.counterexample;
    Json c;
    c["depth"] = ce.depth;
    if (ce.side == Pattern::ForallExists) {
      c["left_path"] = name_list(r.left_original, ce.p_path);
    } else {
      Json b = Json::array();
      for (const auto& br : ce.branches)
        b.push_back({{"left_prefix", name_list(r.left_original, br.p_prefix)}, {"right_path", name_list(r.right, br.q_path)}});
      c["branches"] = b;
    }
    j["counterexample"] = c;
  }
  if (!r.note.empty()) j["note"] = r.note;
  Json its = Json::array();
  for (const auto& it : r.iterations)
    its.push_back({{"kind", it.kind},
                   {"bound", it.bound},
                   {"vars", it.vars},
                   {"clauses", it.clauses},
                   {"seconds", it.seconds},
                   {"outcome", it.outcome}});
  j["iterations"] = its;
  j["seconds"] = r.seconds;
  return j.dump(2) + "\n";
}

}  // namespace hyperbmc
