#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperbmc/encoder.hpp"
#include "hyperbmc/kripke.hpp"
#include "hyperbmc/predicate.hpp"

namespace hyperbmc {

// Shape shared by two lassos once the prefixes are padded to the longer one
// and the loops unrolled to the lcm of both loop lengths.
struct SyncBound {
  std::size_t prefix = 0;
  std::size_t loop = 1;

  std::size_t horizon() const { return prefix + loop; }
  /// Position inside [0, horizon) equivalent to position i of the unrolling.
  std::size_t fold(std::size_t i) const { return i < horizon() ? i : prefix + (i - prefix) % loop; }
};

SyncBound synchronize_bound(const LassoTrace& t1, const LassoTrace& t2);

/// G pred over the infinite unrollings of t1 and t2. `pred` must already be
/// bound (no match-all).
bool check_box_on_pair(const RelationalPredicate& pred, const LassoTrace& t1, const LassoTrace& t2);

/// Empty iff `w` is a Pred-respecting simulation from K_P into K_Q that
/// covers every initial state of K_P.
std::vector<std::string> validate_witness_ae(const KripkeStructure& kp, const KripkeStructure& kq,
                                             const RelationalPredicate& pred, const SimWitnessAE& w);

/// Empty iff the lasso is a path of K_P, every initial Q state is related to
/// position 0, related Q successors stay related at the next position (the
/// last position continues at the loop start), and related pairs satisfy pred.
std::vector<std::string> validate_witness_ea(const KripkeStructure& kp, const KripkeStructure& kq,
                                             const RelationalPredicate& pred, const SimWitnessEA& w);

/// Some lasso of K_Q with at most `bound` states whose trace satisfies
/// G pred against t_p; shortest such lasso when one exists.
std::optional<LassoPath> match_lasso(const KripkeStructure& kq, const RelationalPredicate& pred,
                                     const LassoTrace& t_p, std::size_t bound);

/// One refutation step of the EA falsifier: after `p_prefix`, the Q path
/// `q_path` (same length) violates pred at its last position.
struct EaBranch {
  std::vector<StateIndex> p_prefix;
  std::vector<StateIndex> q_path;
};

struct Counterexample {
  Pattern side = Pattern::ForallExists;
  std::size_t depth = 0;
  /// forall-exists: a P path of `depth` states that no Q path of the same
  /// length matches. Empty for exists-forall.
  std::vector<StateIndex> p_path;
  /// exists-forall: branches whose prefixes cover every P path of `depth`.
  std::vector<EaBranch> branches;
};

std::optional<Counterexample> falsify_forall_exists(const KripkeStructure& kp, const KripkeStructure& kq,
                                                    const RelationalPredicate& pred, std::size_t depth);
std::optional<Counterexample> falsify_exists_forall(const KripkeStructure& kp, const KripkeStructure& kq,
                                                    const RelationalPredicate& pred, std::size_t depth);

/// Re-checks a counterexample by explicit path enumeration.
bool verify_counterexample(const KripkeStructure& kp, const KripkeStructure& kq, const RelationalPredicate& pred,
                           const Counterexample& ce);

struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // u < v
};

/// "n <count>" then "e <u> <v>" lines; '#' comments.
Graph parse_graph(std::string_view text);

/// K1: hub "c" (labeled q, initial) with c <-> e_i for every edge.
/// K2: edge states e_i and vertex states v_u (labeled q, all initial);
/// v_u -> every e_i, e_i -> both endpoints. K1 is simulated by K2 using
/// m + c states iff the graph has a vertex cover of size c.
std::pair<KripkeStructure, KripkeStructure> gen_vertex_cover_instance(const Graph& g);

/// Throws BoundError above 20 vertices.
bool brute_force_vertex_cover(const Graph& g, std::size_t k);
std::size_t min_vertex_cover(const Graph& g);

}  // namespace hyperbmc
