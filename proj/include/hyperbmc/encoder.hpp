#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hyperbmc/circuit.hpp"
#include "hyperbmc/cnf.hpp"
#include "hyperbmc/kripke.hpp"
#include "hyperbmc/predicate.hpp"

namespace hyperbmc {

/// How the exhaustively explored side is represented. Symbolic gives every
/// slot free bits plus legality and pairwise-distinctness constraints.
/// Enumerated pins slot j to state j-1, which makes those two families
/// trivially true and turns transitions into constants.
enum class SlotEncoding { Enumerated, Symbolic };

struct EncoderOptions {
  SlotEncoding slots = SlotEncoding::Enumerated;
  /// AE only: require y_1 < y_2 < ... < y_k as ordinals ("slot-order"
  /// family). Removes the k! slot permutations of every solution; complete
  /// because k never exceeds |S_Q|.
  bool order_q_slots = true;
};

struct StateSlot {
  enum class Role { P, Q };
  Role role = Role::P;
  std::size_t index = 1;    // 1-based, as in x_1..x_n / y_1..y_k
  std::size_t states = 0;   // size of the structure the slot ranges over
  std::optional<StateIndex> fixed;
  std::vector<Circuit::Ref> bits;  // least significant first; empty when fixed
};

/// ceil(log2(states)); a single-state structure needs no bits.
std::size_t slot_width(std::size_t states);

struct Encoding {
  Pattern pattern = Pattern::ForallExists;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t p_states = 0;
  std::size_t q_states = 0;
  SlotEncoding slot_encoding = SlotEncoding::Enumerated;
  Circuit circuit;
  /// Top-level conjuncts tagged with their constraint family.
  std::vector<Root> conjuncts;
  std::vector<StateSlot> x;  // n slots over K_P
  std::vector<StateSlot> y;  // k slots over K_Q
  std::vector<std::vector<Circuit::Ref>> sim;  // sim[i-1][j-1]
  /// EA only: loop_back[i-1] is the disjunct "x_n jumps back to x_i".
  std::vector<Circuit::Ref> loop_back;

  CnfInstance to_cnf() const { return lower_to_cnf(circuit, conjuncts); }
  /// Every distinct family name, in emission order.
  std::vector<std::string> families() const;
};

/// One lasso through K_P plus, per lasso position, the Q states related to it.
struct SimWitnessEA {
  LassoPath lasso;
  std::vector<std::set<StateIndex>> pos_relation;  // index = position in prefix+loop
};

struct SimWitnessAE {
  std::set<std::pair<StateIndex, StateIndex>> relation;  // (p, q)
  std::set<StateIndex> used_q;
};

/// Families: legal, exhaustive, initial, successor, loop-back, predicate.
/// Throws BoundError for n < 1.
Encoding encode_sim_ea(const KripkeStructure& kp, const KripkeStructure& kq, const RelationalPredicate& pred,
                       std::size_t n, const EncoderOptions& options = {});

/// Families: legal, exhaustive, initial, successor, predicate, and with
/// order_q_slots also slot-order. Throws BoundError unless 1 <= k <= |S_Q|.
Encoding encode_sim_ae(const KripkeStructure& kp, const KripkeStructure& kq, const RelationalPredicate& pred,
                       std::size_t k, const EncoderOptions& options = {});

/// `model` indexed by DIMACS variable (slot 0 unused), at least
/// enc.circuit.var_count()+1 entries. Throws DecodeError on inconsistent
/// models (out-of-range ordinal, no satisfied loop-back disjunct).
SimWitnessEA decode_witness_ea(const Encoding& enc, const std::vector<bool>& model);
SimWitnessAE decode_witness_ae(const Encoding& enc, const std::vector<bool>& model);

/// Ordinal held by a slot under `model`.
std::size_t slot_value(const Encoding& enc, const StateSlot& slot, const std::vector<bool>& model);

}  // namespace hyperbmc
