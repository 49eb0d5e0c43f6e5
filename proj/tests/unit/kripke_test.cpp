#include <gtest/gtest.h>

#include <algorithm>

#include "hyperbmc/error.hpp"
#include "hyperbmc/kripke.hpp"
#include "reference.hpp"

using namespace hyperbmc;

namespace {

const char* kSelfLoop = "states: s\ninit: s\nap: a\nlabel s: a\ntrans s -> s\n";

KripkeStructure intro_k1() { return load_kripke(std::string(HYPERBMC_SOURCE_DIR) + "/corpus/intro/k1.kr"); }

template <typename F>
ModelError model_error(F&& f) {
  try {
    f();
  } catch (const ModelError& e) {
    return e;
  }
  ADD_FAILURE() << "no ModelError raised";
  return ModelError("", "", "");
}

}  // namespace

TEST(KripkeParse, SmallestStructure) {
  const KripkeStructure k = parse_kripke(kSelfLoop);
  EXPECT_EQ(k.size(), 1u);
  EXPECT_TRUE(k.is_initial(0));
  EXPECT_TRUE(k.holds(0, "a"));
  EXPECT_TRUE(validate_kripke(k).empty());
}

TEST(KripkeParse, NonTotalStateIsNamed) {
  const auto e = model_error([] {
    parse_kripke("states: s1 s2\ninit: s1\nap: a\ntrans s1 -> s2\n");
  });
  EXPECT_EQ(e.rule(), "non-total");
  EXPECT_EQ(e.subject(), "s2");
}

TEST(KripkeParse, SemanticErrorsNameTheIdentifier) {
  EXPECT_EQ(model_error([] { parse_kripke("states: s s\ninit: s\nap:\ntrans s -> s\n"); }).rule(), "duplicate-state");
  const auto unknown = model_error([] { parse_kripke("states: s\ninit: s\nap:\ntrans s -> t\n"); });
  EXPECT_EQ(unknown.rule(), "unknown-state");
  EXPECT_EQ(unknown.subject(), "t");
  EXPECT_EQ(model_error([] { parse_kripke("states: s\nap: a\ntrans s -> s\n"); }).rule(), "empty-init");
  const auto prop = model_error([] { parse_kripke("states: s\ninit: s\nap: a\nlabel s: z\ntrans s -> s\n"); });
  EXPECT_EQ(prop.rule(), "unknown-prop");
  EXPECT_NE(prop.subject().find('z'), std::string::npos);
}

TEST(KripkeParse, SyntaxErrorCarriesLine) {
  try {
    parse_kripke("states: s\ninit: s\nap: a\ntrans s => s\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(KripkeParse, OrderInsensitiveAndDeduplicated) {
  const KripkeStructure a = parse_kripke(
      "trans t -> s\ntrans s -> t\ntrans s -> t\nlabel t: a\nap: a\ninit: s\nstates: s t  # comment\n");
  const KripkeStructure b = parse_kripke("states: s t\ninit: s\nap: a\nlabel t: a\ntrans s -> t\ntrans t -> s\n");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.transitions().size(), 2u);
}

TEST(KripkeParse, IntroModel) {
  const KripkeStructure k = intro_k1();
  EXPECT_EQ(k.size(), 4u);
  const StateIndex s2 = *k.find("s2");
  EXPECT_EQ(k.successors(s2).size(), 2u);
}

TEST(KripkeValidate, Violations) {
  EXPECT_TRUE(validate_kripke(parse_kripke(kSelfLoop)).empty());
  const KripkeStructure no_init({"s"}, {}, {"a"}, {{}}, {{0, 0}});
  const auto v = validate_kripke(no_init);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, "empty-init");
  const KripkeStructure bad_label({"s"}, {0}, {"a"}, {{"zz"}}, {{0, 0}});
  const auto w = validate_kripke(bad_label);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_NE(w[0].subject.find("s"), std::string::npos);
  EXPECT_NE(w[0].subject.find("zz"), std::string::npos);
}

TEST(KripkePrint, RoundTrip) {
  reference::Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const KripkeStructure k = reference::random_structure(rng, 1 + i % 5, {"a", "b"});
    EXPECT_EQ(parse_kripke(print_kripke(k)), k);
  }
  EXPECT_EQ(parse_kripke(print_kripke(intro_k1())), intro_k1());
}

TEST(KripkeReachable, Restriction) {
  const KripkeStructure k1 = intro_k1();
  EXPECT_EQ(reachable_restriction(k1), k1);
  const KripkeStructure k =
      parse_kripke("states: s t u\ninit: s\nap: a\nlabel u: a\ntrans s -> t\ntrans t -> s\ntrans u -> u\n");
  const KripkeStructure r = reachable_restriction(k);
  EXPECT_EQ(r.size(), 2u);
  EXPECT_FALSE(r.find("u"));
  EXPECT_TRUE(validate_kripke(r).empty());
  EXPECT_EQ(reachable_restriction(r), r);
}

TEST(KripkeReachable, IdempotentOnRandom) {
  reference::Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const KripkeStructure k = reference::random_structure(rng, 1 + i % 6, {"a"});
    const KripkeStructure r = reachable_restriction(k);
    EXPECT_TRUE(validate_kripke(r).empty());
    EXPECT_EQ(reachable_restriction(r), r);
    EXPECT_EQ(reference::label_sequences(r, 4), reference::label_sequences(k, 4));
  }
}

TEST(LassoEnumeration, SelfLoop) {
  const auto all = enumerate_lasso_paths(parse_kripke(kSelfLoop), 2);
  // s^w, then s(s)^w and (ss)^w
  ASSERT_EQ(all.size(), 3u);
  EXPECT_TRUE(all[0].prefix.empty());
  EXPECT_EQ(all[0].loop, std::vector<StateIndex>{0});
  for (std::size_t i = 1; i < 3; ++i) EXPECT_EQ(all[i].total_length(), 2u);
}

TEST(LassoEnumeration, TwoCycle) {
  const KripkeStructure k = parse_kripke("states: s t\ninit: s\nap:\ntrans s -> t\ntrans t -> s\n");
  const auto all = enumerate_lasso_paths(k, 2);
  const bool found = std::any_of(all.begin(), all.end(), [](const LassoPath& lp) {
    return lp.prefix.empty() && lp.loop == std::vector<StateIndex>{0, 1};
  });
  EXPECT_TRUE(found);
}

TEST(LassoEnumeration, IntroPathThroughS3) {
  const KripkeStructure k = intro_k1();
  const auto all = enumerate_lasso_paths(k, 4);
  const StateIndex s1 = *k.find("s1"), s2 = *k.find("s2"), s3 = *k.find("s3");
  const bool found = std::any_of(all.begin(), all.end(), [&](const LassoPath& lp) {
    return lp.prefix == std::vector<StateIndex>{s1, s2} && lp.loop == std::vector<StateIndex>{s3};
  });
  EXPECT_TRUE(found);
}

// Every lasso of bounded length, counted independently: initial paths of
// length L times the edges closing them into a loop.
TEST(LassoEnumeration, CompleteUniqueOrderedValid) {
  reference::Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const KripkeStructure k = reference::random_structure(rng, 1 + i % 4, {"a"});
    const std::size_t max_len = 5;
    const auto all = enumerate_lasso_paths(k, max_len);
    std::size_t expected = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
      for (const auto& path : reference::initial_paths(k, len))
        for (std::size_t j = 0; j < len; ++j) expected += k.has_transition(path.back(), path[j]);
    }
    EXPECT_EQ(all.size(), expected);
    std::set<std::pair<std::vector<StateIndex>, std::vector<StateIndex>>> seen;
    std::size_t last = 0;
    for (const auto& lp : all) {
      EXPECT_TRUE(is_lasso_path(k, lp));
      EXPECT_GE(lp.total_length(), last);
      last = lp.total_length();
      EXPECT_TRUE(seen.insert({lp.prefix, lp.loop}).second);
    }
  }
}

TEST(LassoTrace, Unrolling) {
  const KripkeStructure k = intro_k1();
  LassoPath lp;
  lp.prefix = {*k.find("s1"), *k.find("s2")};
  lp.loop = {*k.find("s3")};
  const LassoTrace t = lasso_trace(k, lp);
  EXPECT_EQ(t.prefix_length(), 2u);
  EXPECT_EQ(t.loop_length(), 1u);
  EXPECT_TRUE(t.at(0).empty());
  EXPECT_EQ(t.at(7), Label{"a"});
}
