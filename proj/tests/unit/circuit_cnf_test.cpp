#include <gtest/gtest.h>

#include <json.hpp>

#include "hyperbmc/circuit.hpp"
#include "hyperbmc/cnf.hpp"
#include "hyperbmc/error.hpp"
#include "hyperbmc/sat.hpp"
#include "reference.hpp"

using namespace hyperbmc;
using Ref = Circuit::Ref;

namespace {

Ref random_formula(Circuit& c, const std::vector<Ref>& vars, reference::Rng& rng, int depth) {
  std::uniform_int_distribution<int> op(0, depth == 0 ? 0 : 6);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  switch (op(rng)) {
    case 0: return vars[pick(rng)];
    case 1: return c.lnot(random_formula(c, vars, rng, depth - 1));
    case 2: return c.land(random_formula(c, vars, rng, depth - 1), random_formula(c, vars, rng, depth - 1));
    case 3: return c.lor(random_formula(c, vars, rng, depth - 1), random_formula(c, vars, rng, depth - 1));
    case 4: return c.lxor(random_formula(c, vars, rng, depth - 1), random_formula(c, vars, rng, depth - 1));
    case 5: return c.implies(random_formula(c, vars, rng, depth - 1), random_formula(c, vars, rng, depth - 1));
    default: {
      std::vector<Ref> ops;
      for (int i = 0; i < 3; ++i) ops.push_back(random_formula(c, vars, rng, depth - 1));
      return c.land(ops);
    }
  }
}

std::vector<bool> inputs_of(std::uint32_t bits, std::size_t n) {
  std::vector<bool> in(n);
  for (std::size_t i = 0; i < n; ++i) in[i] = (bits >> i) & 1;
  return in;
}

}  // namespace

TEST(Circuit, Simplification) {
  Circuit c;
  const Ref a = c.var("a"), b = c.var("b");
  EXPECT_EQ(c.land(a, c.lnot(a)), c.constant(false));
  EXPECT_EQ(c.lor(a, c.lnot(a)), c.constant(true));
  EXPECT_EQ(c.land(a, b), c.land(b, a));
  EXPECT_EQ(c.land(a, c.land(a, b)), c.land(a, b));
  EXPECT_EQ(c.lnot(c.lnot(a)), a);
  EXPECT_EQ(c.land(a, c.constant(true)), a);
  EXPECT_EQ(c.lxor(a, a), c.constant(false));
  EXPECT_EQ(c.lxor(c.lnot(a), b), c.lnot(c.lxor(a, b)));
  EXPECT_THROW(c.var("a"), Error);
}

TEST(Circuit, EvaluateAgreesWithSemantics) {
  Circuit c;
  const Ref a = c.var("a"), b = c.var("b");
  const Ref f = c.iff(c.implies(a, b), c.lor(c.lnot(a), b));
  for (std::uint32_t v = 0; v < 4; ++v) EXPECT_TRUE(c.evaluate(f, inputs_of(v, 2)));
  const Ref g = c.lxor(a, b);
  for (std::uint32_t v = 0; v < 4; ++v) EXPECT_EQ(c.evaluate(g, inputs_of(v, 2)), ((v & 1) != 0) != ((v & 2) != 0));
}

TEST(LowerToCnf, SingleVariable) {
  Circuit c;
  const Ref v = c.var("v");
  const CnfInstance cnf = lower_to_cnf(c, {{"root", v}});
  ASSERT_EQ(cnf.clauses.size(), 1u);
  EXPECT_EQ(cnf.clauses[0], std::vector<int>{1});
  EXPECT_EQ(cnf.var_names[0], "v");
}

TEST(LowerToCnf, Contradiction) {
  Circuit c;
  const Ref v = c.var("v");
  const CnfInstance cnf = lower_to_cnf(c, {{"root", c.land(v, c.lnot(v))}});
  for (const auto& cl : cnf.clauses) EXPECT_FALSE(cl.empty());
  EXPECT_FALSE(solve(cnf).satisfiable);
  EXPECT_FALSE(reference::brute_force_sat(cnf).has_value());
}

// For every input valuation, the clause set with the inputs fixed is
// satisfiable exactly when the circuit evaluates to true.
TEST(LowerToCnf, RandomCircuitsMatchTruthTables) {
  reference::Rng rng(4);
  for (int trial = 0; trial < 150; ++trial) {
    Circuit c;
    const std::size_t n = 1 + trial % 6;
    std::vector<Ref> vars;
    for (std::size_t i = 0; i < n; ++i) vars.push_back(c.var("v" + std::to_string(i)));
    const Ref f = random_formula(c, vars, rng, 4);
    const CnfInstance cnf = lower_to_cnf(c, {{"f", f}});
    ASSERT_EQ(cnf.named_count, static_cast<int>(n));

    bool any = false;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      const bool truth = c.evaluate(f, inputs_of(bits, n));
      any = any || truth;
      CnfInstance fixed = cnf;
      for (std::size_t i = 0; i < n; ++i) {
        const int v = static_cast<int>(i) + 1;
        fixed.clauses.push_back({(bits >> i) & 1 ? v : -v});
      }
      const SatResult r = solve(fixed);
      EXPECT_EQ(r.satisfiable, truth) << "trial " << trial << " bits " << bits;
      if (r.satisfiable) EXPECT_TRUE(reference::clauses_hold(fixed, r.model));
    }
    if (cnf.var_count <= 20) EXPECT_EQ(reference::brute_force_sat(cnf).has_value(), any) << "trial " << trial;
    const SatResult whole = solve(cnf);
    EXPECT_EQ(whole.satisfiable, any);
    if (whole.satisfiable) {
      std::vector<bool> in(n);
      for (std::size_t i = 0; i < n; ++i) in[i] = whole.model[i + 1];
      EXPECT_TRUE(c.evaluate(f, in));
    }
  }
}

TEST(LowerToCnf, ProvenanceCoversAllClauses) {
  Circuit c;
  const Ref a = c.var("a"), b = c.var("b"), d = c.var("d");
  const CnfInstance cnf = lower_to_cnf(c, {{"one", c.land(a, c.lor(b, d))}, {"one", c.lxor(a, d)}, {"two", c.lor(a, b)}});
  ASSERT_EQ(cnf.provenance.size(), 2u);
  EXPECT_EQ(cnf.provenance[0].family, "one");
  EXPECT_EQ(cnf.provenance[0].first, 0u);
  EXPECT_EQ(cnf.provenance[0].last, cnf.provenance[1].first);
  EXPECT_EQ(cnf.provenance[1].family, "two");
  EXPECT_EQ(cnf.provenance[1].last, cnf.clauses.size());
}

TEST(Dimacs, Examples) {
  EXPECT_EQ(export_dimacs(CnfInstance{}), "p cnf 0 0\n");
  CnfInstance one;
  one.var_count = 2;
  one.clauses = {{1, -2}};
  EXPECT_EQ(export_dimacs(one), "p cnf 2 1\n1 -2 0\n");
}

TEST(Dimacs, RoundTripAndDeterminism) {
  auto build = [] {
    Circuit c;
    const Ref a = c.var("a"), b = c.var("b"), d = c.var("d");
    return lower_to_cnf(c, {{"x", c.lor(c.land(a, b), c.lxor(b, d))}, {"y", c.implies(a, d)}});
  };
  const std::string text = export_dimacs(build());
  EXPECT_EQ(text, export_dimacs(build()));
  EXPECT_NE(text.find("c family x 1 "), std::string::npos);
  const CnfInstance back = parse_dimacs(text);
  const CnfInstance orig = build();
  EXPECT_EQ(back.var_count, orig.var_count);
  EXPECT_EQ(back.clauses, orig.clauses);
}

TEST(Dimacs, ParseErrors) {
  EXPECT_THROW(parse_dimacs("1 2 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 2\n1 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
}

TEST(VarMap, NamesAndFamilies) {
  Circuit c;
  const Ref a = c.var("x1.b0"), b = c.var("sim.1.1");
  const CnfInstance cnf = lower_to_cnf(c, {{"legal", c.lor(a, b)}, {"predicate", c.lxor(a, b)}});
  const auto j = nlohmann::json::parse(export_var_map(cnf));
  EXPECT_EQ(j["vars"]["1"], "x1.b0");
  EXPECT_EQ(j["vars"]["2"], "sim.1.1");
  ASSERT_EQ(j["families"].size(), 2u);
  EXPECT_EQ(j["families"][0]["family"], "legal");
  EXPECT_EQ(j["families"][1]["first"], 2);
}
