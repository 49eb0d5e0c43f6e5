#include <gtest/gtest.h>

#include <numeric>

#include "hyperbmc/error.hpp"
#include "hyperbmc/oracle.hpp"
#include "hyperbmc/sat.hpp"
#include "reference.hpp"

using namespace hyperbmc;

namespace {

const std::string kSource = HYPERBMC_SOURCE_DIR;

KripkeStructure corpus(const std::string& rel) { return load_kripke(kSource + "/corpus/" + rel); }

LassoTrace trace_of_shape(std::size_t prefix, std::size_t loop) {
  LassoTrace t;
  t.prefix.assign(prefix, Label{});
  t.loop.assign(loop, Label{});
  return t;
}

LassoTrace random_trace(reference::Rng& rng, const std::string& prop) {
  std::uniform_int_distribution<std::size_t> len(0, 3);
  std::bernoulli_distribution coin(0.5);
  LassoTrace t;
  for (std::size_t i = len(rng); i > 0; --i) t.prefix.push_back(coin(rng) ? Label{prop} : Label{});
  for (std::size_t i = 1 + len(rng); i > 0; --i) t.loop.push_back(coin(rng) ? Label{prop} : Label{});
  return t;
}

Graph graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  return g;
}

bool vc_sat(const Graph& g, std::size_t k) {
  const auto [k1, k2] = gen_vertex_cover_instance(g);
  return solve(encode_sim_ae(k1, k2, RelationalPredicate::match_all(), k).to_cnf()).satisfiable;
}

}  // namespace

TEST(SynchronizeBound, Examples) {
  const SyncBound a = synchronize_bound(trace_of_shape(0, 2), trace_of_shape(1, 3));
  EXPECT_EQ(a.prefix, 1u);
  EXPECT_EQ(a.loop, 6u);
  const SyncBound b = synchronize_bound(trace_of_shape(2, 4), trace_of_shape(0, 6));
  EXPECT_EQ(b.prefix, 2u);
  EXPECT_EQ(b.loop, 12u);
  EXPECT_EQ(b.horizon(), 14u);
  EXPECT_EQ(b.fold(13), 13u);
  EXPECT_EQ(b.fold(14), 2u);
  EXPECT_EQ(b.fold(27), 3u);
}

TEST(SynchronizeBound, ShapeLaw) {
  for (std::size_t p1 = 0; p1 < 4; ++p1)
    for (std::size_t l1 = 1; l1 < 6; ++l1)
      for (std::size_t p2 = 0; p2 < 4; ++p2)
        for (std::size_t l2 = 1; l2 < 6; ++l2) {
          const SyncBound s = synchronize_bound(trace_of_shape(p1, l1), trace_of_shape(p2, l2));
          EXPECT_EQ(s.prefix, std::max(p1, p2));
          EXPECT_EQ(s.loop, std::lcm(l1, l2));
        }
}

TEST(CheckBox, Examples) {
  const RelationalPredicate eq = parse_predicate("l.a <-> r.a");
  LassoTrace alternating;
  alternating.loop = {{"a"}, {}};
  LassoTrace shifted;
  shifted.prefix = {{"a"}};
  shifted.loop = {{}, {"a"}};
  EXPECT_TRUE(check_box_on_pair(eq, alternating, shifted));
  LassoTrace off;
  off.loop = {{}, {"a"}};
  EXPECT_FALSE(check_box_on_pair(eq, alternating, off));
  // mismatch only after the longer prefix's unrolling
  LassoTrace late;
  late.loop = {{"a"}, {}, {"a"}, {}, {"a"}, {"a"}};
  EXPECT_FALSE(check_box_on_pair(eq, alternating, late));
  EXPECT_TRUE(check_box_on_pair(parse_predicate("true"), alternating, late));
}

TEST(CheckBox, AgreesWithPointwiseUnrolling) {
  reference::Rng rng(30);
  const RelationalPredicate preds[] = {parse_predicate("l.a <-> r.a"), parse_predicate("l.a -> r.a"),
                                       parse_predicate("!(l.a & r.a)")};
  int holds = 0;
  for (int i = 0; i < 2000; ++i) {
    const LassoTrace t1 = random_trace(rng, "a"), t2 = random_trace(rng, "a");
    const RelationalPredicate& p = preds[i % 3];
    const bool truth = reference::box_pointwise(p, t1, t2, 200);
    holds += truth;
    ASSERT_EQ(check_box_on_pair(p, t1, t2), truth) << "pair " << i;
  }
  EXPECT_GT(holds, 50);
}

TEST(ValidateAE, DeletedPairBreaksWitness) {
  const KripkeStructure p = parse_kripke("states: p0 p1\ninit: p0\nap: a\nlabel p1: a\ntrans p0 -> p1\ntrans p1 -> p1\n");
  const KripkeStructure q = parse_kripke("states: q0 q1\ninit: q0\nap: a\nlabel q1: a\ntrans q0 -> q1\ntrans q1 -> q1\n");
  const RelationalPredicate eq = parse_predicate("l.a <-> r.a");
  SimWitnessAE w;
  w.relation = {{0, 0}, {1, 1}};
  w.used_q = {0, 1};
  EXPECT_TRUE(validate_witness_ae(p, q, eq, w).empty());
  SimWitnessAE missing = w;
  missing.relation.erase({1, 1});
  EXPECT_FALSE(validate_witness_ae(p, q, eq, missing).empty());
  SimWitnessAE no_init = w;
  no_init.relation.erase({0, 0});
  EXPECT_FALSE(validate_witness_ae(p, q, eq, no_init).empty());
  SimWitnessAE wrong = w;
  wrong.relation = {{0, 1}, {1, 1}};
  EXPECT_FALSE(validate_witness_ae(p, q, eq, wrong).empty());
}

TEST(ValidateEA, MissingInitialQBreaksWitness) {
  const KripkeStructure p = parse_kripke("states: s\ninit: s\nap: a\ntrans s -> s\n");
  const KripkeStructure q = parse_kripke("states: q0 q1\ninit: q0 q1\nap: a\ntrans q0 -> q0\ntrans q1 -> q1\n");
  const RelationalPredicate eq = parse_predicate("l.a <-> r.a");
  SimWitnessEA w;
  w.lasso.loop = {0};
  w.pos_relation = {{0, 1}};
  EXPECT_TRUE(validate_witness_ea(p, q, eq, w).empty());
  SimWitnessEA missing = w;
  missing.pos_relation = {{0}};
  EXPECT_FALSE(validate_witness_ea(p, q, eq, missing).empty());
  SimWitnessEA not_a_path = w;
  not_a_path.lasso.loop = {0, 1};
  not_a_path.pos_relation = {{0, 1}, {0, 1}};
  EXPECT_FALSE(validate_witness_ea(p, q, eq, not_a_path).empty());
}

TEST(MatchLasso, Intro) {
  const KripkeStructure k1 = corpus("intro/k1.kr"), k2 = corpus("intro/k2.kr");
  LassoPath lp;
  lp.prefix = {*k1.find("s1"), *k1.find("s2")};
  lp.loop = {*k1.find("s3")};
  const LassoTrace t = lasso_trace(k1, lp);
  const RelationalPredicate eq = parse_predicate("l.a <-> r.a");
  const auto m = match_lasso(k2, eq, t, 5);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(is_lasso_path(k2, *m));
  EXPECT_TRUE(k2.is_initial(m->prefix.empty() ? m->loop[0] : m->prefix[0]));
  EXPECT_EQ(m->total_length(), 3u);
  EXPECT_TRUE(check_box_on_pair(eq, t, lasso_trace(k2, *m)));
  EXPECT_FALSE(match_lasso(k2, eq, t, 2).has_value());
  EXPECT_FALSE(match_lasso(k2, parse_predicate("false"), t, 5).has_value());
  EXPECT_THROW(match_lasso(k2, eq, t, 0), BoundError);
}

TEST(MatchLasso, AgreesWithEnumeration) {
  reference::Rng rng(31);
  const RelationalPredicate eq = parse_predicate("l.a <-> r.a");
  for (int i = 0; i < 60; ++i) {
    const KripkeStructure q = reference::random_structure(rng, 1 + i % 4, {"a"});
    const LassoTrace t = random_trace(rng, "a");
    const std::size_t bound = 4;
    std::optional<std::size_t> shortest;
    for (const auto& lp : enumerate_lasso_paths(q, bound)) {
      if (reference::box_pointwise(eq, t, lasso_trace(q, lp), 200)) {
        shortest = lp.total_length();
        break;
      }
    }
    const auto m = match_lasso(q, eq, t, bound);
    ASSERT_EQ(m.has_value(), shortest.has_value()) << "case " << i;
    if (m) {
      EXPECT_EQ(m->total_length(), *shortest);
      EXPECT_TRUE(reference::box_pointwise(eq, t, lasso_trace(q, *m), 200));
    }
  }
}

TEST(Falsify, IntroPhi1AtThree) {
  const KripkeStructure k1 = corpus("intro/k1.kr"), k2 = corpus("intro/k2.kr");
  const RelationalPredicate pred = parse_predicate("l.a -> r.b");
  for (std::size_t d = 1; d < 3; ++d) EXPECT_FALSE(falsify_forall_exists(k1, k2, pred, d).has_value());
  const auto ce = falsify_forall_exists(k1, k2, pred, 3);
  ASSERT_TRUE(ce.has_value());
  EXPECT_EQ(ce->depth, 3u);
  EXPECT_EQ(ce->p_path, (std::vector<StateIndex>{*k1.find("s1"), *k1.find("s2"), *k1.find("s3")}));
  EXPECT_TRUE(verify_counterexample(k1, k2, pred, *ce));
  EXPECT_TRUE(reference::ae_refutes(k1, k2, pred, ce->p_path));
}

TEST(Falsify, IdenticalStructuresNeverRefuted) {
  reference::Rng rng(32);
  for (int i = 0; i < 20; ++i) {
    const KripkeStructure k = reference::random_structure(rng, 1 + i % 4, {"a", "b"});
    for (std::size_t d = 1; d <= 4; ++d)
      EXPECT_FALSE(falsify_forall_exists(k, k, RelationalPredicate::match_all(), d).has_value());
  }
}

TEST(Falsify, FalsePredicateRefutesEaAtOne) {
  const KripkeStructure k1 = corpus("intro/k1.kr"), k2 = corpus("intro/k2.kr");
  const RelationalPredicate no = parse_predicate("false");
  const auto ce = falsify_exists_forall(k1, k2, no, 1);
  ASSERT_TRUE(ce.has_value());
  EXPECT_EQ(ce->side, Pattern::ExistsForall);
  EXPECT_FALSE(ce->branches.empty());
  EXPECT_TRUE(verify_counterexample(k1, k2, no, *ce));
  EXPECT_TRUE(reference::ea_refutes(k1, k2, no, 1));
}

TEST(Falsify, AgreesWithReferenceOnRandomPairs) {
  reference::Rng rng(33);
  const auto& family = reference::predicate_family();
  for (int i = 0; i < 120; ++i) {
    const KripkeStructure p = reference::random_structure(rng, 1 + i % 4, {"a", "b"});
    const KripkeStructure q = reference::random_structure(rng, 1 + (i / 3) % 4, {"a", "b"});
    const RelationalPredicate pred = bind_predicate(parse_predicate(family[i % family.size()]), p.ap(), q.ap());
    for (std::size_t d = 1; d <= 4; ++d) {
      bool ae_truth = false;
      for (const auto& path : reference::initial_paths(p, d)) ae_truth = ae_truth || reference::ae_refutes(p, q, pred, path);
      const auto ae = falsify_forall_exists(p, q, pred, d);
      ASSERT_EQ(ae.has_value(), ae_truth) << "pair " << i << " d=" << d;
      if (ae) {
        EXPECT_TRUE(reference::ae_refutes(p, q, pred, ae->p_path));
        EXPECT_TRUE(verify_counterexample(p, q, pred, *ae));
      }
      const auto ea = falsify_exists_forall(p, q, pred, d);
      ASSERT_EQ(ea.has_value(), reference::ea_refutes(p, q, pred, d)) << "pair " << i << " d=" << d;
      if (ea) EXPECT_TRUE(verify_counterexample(p, q, pred, *ea));
    }
  }
}

TEST(VertexCover, ReductionExamples) {
  const Graph k3 = graph(3, {{0, 1}, {0, 2}, {1, 2}});
  EXPECT_TRUE(vc_sat(k3, 5));
  EXPECT_FALSE(vc_sat(k3, 4));
  const Graph edge = graph(2, {{0, 1}});
  EXPECT_TRUE(vc_sat(edge, 2));
  EXPECT_FALSE(vc_sat(edge, 1));
  const Graph star = graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_TRUE(vc_sat(star, 5));
  EXPECT_FALSE(vc_sat(star, 4));
}

TEST(VertexCover, InstanceShape) {
  const auto [k1, k2] = gen_vertex_cover_instance(graph(2, {{0, 1}}));
  EXPECT_TRUE(validate_kripke(k1).empty());
  EXPECT_TRUE(validate_kripke(k2).empty());
  EXPECT_EQ(k1.size(), 2u);
  EXPECT_EQ(k2.size(), 3u);
  EXPECT_EQ(reachable_restriction(k2), k2);
}

TEST(VertexCover, BruteForce) {
  const Graph k3 = graph(3, {{0, 1}, {0, 2}, {1, 2}});
  EXPECT_TRUE(brute_force_vertex_cover(k3, 2));
  EXPECT_FALSE(brute_force_vertex_cover(k3, 1));
  EXPECT_EQ(min_vertex_cover(k3), 2u);
  EXPECT_TRUE(brute_force_vertex_cover(graph(4, {}), 0));
  EXPECT_EQ(min_vertex_cover(graph(4, {})), 0u);
  EXPECT_THROW(brute_force_vertex_cover(graph(21, {{0, 1}}), 1), BoundError);
  for (const Graph& g : reference::connected_graphs(5)) EXPECT_EQ(min_vertex_cover(g), reference::min_cover_bitmask(g));
}

TEST(ParseGraph, Format) {
  const Graph g = parse_graph("# triangle\nn 3\ne 0 1\ne 2 1\ne 0 2\n");
  EXPECT_EQ(g.n, 3u);
  ASSERT_EQ(g.edges.size(), 3u);
  for (const auto& [u, v] : g.edges) EXPECT_LT(u, v);
  EXPECT_THROW(parse_graph("e 0 1\n"), ParseError);
  EXPECT_THROW(parse_graph("n 2\nn 3\n"), ParseError);
  EXPECT_THROW(parse_graph("n 2\ne 0\n"), ParseError);
  EXPECT_THROW(parse_graph("n 2\nx 0 1\n"), ParseError);
  EXPECT_THROW(parse_graph("n 2\ne 1 1\n"), ModelError);
  EXPECT_THROW(parse_graph("n 2\ne 0 2\n"), ModelError);
}
