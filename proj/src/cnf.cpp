#include "hyperbmc/cnf.hpp"

#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "hyperbmc/error.hpp"

namespace hyperbmc {

namespace {

class Tseitin {
 public:
  Tseitin(const Circuit& c, CnfInstance& out) : c_(c), out_(out), lit_(c.node_count(), 0) {
    out_.var_count = static_cast<int>(c.var_count());
    out_.named_count = out_.var_count;
    for (std::uint32_t v = 0; v < c.var_count(); ++v) out_.var_names.push_back(c.var_name(v));
  }

  void assert_root(Circuit::Ref r) {
    switch (c_.kind(r)) {
      case Circuit::Kind::True: return;
      case Circuit::Kind::False: {
        const int g = fresh();
        out_.clauses.push_back({g});
        out_.clauses.push_back({-g});
        return;
      }
      case Circuit::Kind::And:
        for (Circuit::Ref op : c_.operands(r)) assert_root(op);
        return;
      case Circuit::Kind::Or: {
        std::vector<int> clause;
        for (Circuit::Ref op : c_.operands(r)) clause.push_back(literal(op));
        out_.clauses.push_back(std::move(clause));
        return;
      }
      default: out_.clauses.push_back({literal(r)}); return;
    }
  }

 private:
  int fresh() { return ++out_.var_count; }

  // Literal for a node, emitting definitions for unvisited gates first.
  int literal(Circuit::Ref root) {
    std::vector<std::pair<Circuit::Ref, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [r, expanded] = stack.back();
      stack.pop_back();
      if (lit_[r.id] != 0) continue;
      const auto kind = c_.kind(r);
      if (kind == Circuit::Kind::Var) {
        lit_[r.id] = static_cast<int>(c_.var_index(r)) + 1;
        continue;
      }
      if (kind == Circuit::Kind::True || kind == Circuit::Kind::False) {
        // Constants only occur as roots; give them a forced variable anyway.
        const int g = fresh();
        out_.clauses.push_back({kind == Circuit::Kind::True ? g : -g});
        lit_[r.id] = g;
        continue;
      }
      const auto& ops = c_.operands(r);
      if (!expanded) {
        stack.push_back({r, true});
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
          if (lit_[it->id] == 0) stack.push_back({*it, false});
        }
        continue;
      }
      if (kind == Circuit::Kind::Not) {
        lit_[r.id] = -lit_[ops[0].id];
        continue;
      }
      const int g = fresh();
      lit_[r.id] = g;
      if (kind == Circuit::Kind::Xor) {
        const int a = lit_[ops[0].id];
        const int b = lit_[ops[1].id];
        out_.clauses.push_back({-g, a, b});
        out_.clauses.push_back({-g, -a, -b});
        out_.clauses.push_back({g, -a, b});
        out_.clauses.push_back({g, a, -b});
        continue;
      }
      const int sign = kind == Circuit::Kind::And ? 1 : -1;
      // And: g -> l_i, (l_1 & ...) -> g.   Or: l_i -> g, g -> (l_1 | ...).
      std::vector<int> closing{sign * g};
      for (Circuit::Ref op : ops) {
        const int l = lit_[op.id];
        out_.clauses.push_back({-sign * g, sign * l});
        closing.push_back(-sign * l);
      }
      out_.clauses.push_back(std::move(closing));
    }
    return lit_[root.id];
  }

  const Circuit& c_;
  CnfInstance& out_;
  std::vector<int> lit_;
};

}  // namespace

CnfInstance lower_to_cnf(const Circuit& c, const std::vector<Root>& roots) {
  CnfInstance out;
  Tseitin t(c, out);
  for (const auto& root : roots) {
    const std::size_t first = out.clauses.size();
    t.assert_root(root.formula);
    if (!out.provenance.empty() && out.provenance.back().family == root.family &&
        out.provenance.back().last == first) {
      out.provenance.back().last = out.clauses.size();
    } else {
      out.provenance.push_back({root.family, first, out.clauses.size()});
    }
  }
  return out;
}

std::string export_dimacs(const CnfInstance& cnf) {
  std::ostringstream os;
  for (const auto& r : cnf.provenance) os << "c family " << r.family << ' ' << r.first + 1 << ' ' << r.last - r.first << '\n';
  os << "p cnf " << cnf.var_count << ' ' << cnf.clauses.size() << '\n';
  for (const auto& cl : cnf.clauses) {
    for (int l : cl) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

std::string export_var_map(const CnfInstance& cnf) {
  nlohmann::ordered_json j;
  j["var_count"] = cnf.var_count;
  j["named_count"] = cnf.named_count;
  nlohmann::ordered_json vars = nlohmann::ordered_json::object();
  for (int v = 1; v <= cnf.named_count; ++v) vars[std::to_string(v)] = cnf.var_names[v - 1];
  j["vars"] = std::move(vars);
  nlohmann::ordered_json fams = nlohmann::ordered_json::array();
  for (const auto& r : cnf.provenance)
    fams.push_back({{"family", r.family}, {"first", r.first + 1}, {"count", r.last - r.first}});
  j["families"] = std::move(fams);
  return j.dump(2) + "\n";
}

CnfInstance parse_dimacs(std::string_view text) {
  CnfInstance out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> current;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c" || first[0] == 'c') continue;
    if (first == "p") {
      std::string fmt;
      long vars = -1;
      long clauses = -1;
      if (!(ls >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0)
        throw ParseError("malformed DIMACS header", line_no);
      out.var_count = static_cast<int>(vars);
      declared = static_cast<std::size_t>(clauses);
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before DIMACS header", line_no);
    std::istringstream cl(line);
    long lit = 0;
    while (cl >> lit) {
      if (lit == 0) {
        out.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (std::labs(lit) > out.var_count) throw ParseError("literal exceeds declared variable count", line_no);
        current.push_back(static_cast<int>(lit));
      }
    }
    if (!cl.eof()) throw ParseError("malformed clause line", line_no);
  }
  if (!header) throw ParseError("missing DIMACS header", 0);
  if (!current.empty()) throw ParseError("unterminated final clause", line_no);
  if (out.clauses.size() != declared) throw ParseError("clause count differs from header", line_no);
  return out;
}

bool satisfies(const CnfInstance& cnf, const std::vector<bool>& model) {
  for (const auto& cl : cnf.clauses) {
    bool sat = false;
    for (int l : cl) {
      const auto v = static_cast<std::size_t>(std::abs(l));
      if (v < model.size() && model[v] == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace hyperbmc
