#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperbmc/encoder.hpp"
#include "hyperbmc/kripke.hpp"
#include "hyperbmc/oracle.hpp"
#include "hyperbmc/predicate.hpp"
#include "hyperbmc/prophecy.hpp"
#include "hyperbmc/sat.hpp"

namespace hyperbmc {

struct ProphecySpec {
  enum class Kind { None, Next, File };
  Kind kind = Kind::None;
  std::string prop;       // Next
  std::size_t depth = 0;  // Next
  std::string file;       // File

  /// "next:<prop>:<d>" (also "next <prop> <d>").
  static ProphecySpec parse(const std::string& text);
  std::string to_string() const;
};

struct CheckOptions {
  /// AE: largest k tried (capped at |S_Q|). EA: largest n tried
  /// (default 2|S_P|).
  std::optional<std::size_t> max_bound;
  std::size_t max_depth = 10;
  EncoderOptions encoder;
  /// Restrict the exhaustively explored side to its reachable part.
  bool restrict_reachable = true;
};

/// Everything a check needs, already parsed.
struct CheckInput {
  KripkeStructure left;
  KripkeStructure right;
  HyperProperty property;
  std::optional<ProphecyAutomaton> prophecy;
};

/// File-level configuration as given on the command line.
struct CheckConfig {
  std::optional<Pattern> mode;  // must agree with the property when given
  std::string left_path;
  std::string right_path;
  std::string property_path;
  std::string property_text;  // used when property_path is empty
  ProphecySpec prophecy;
  CheckOptions options;
  std::string backend = "embedded";
};

/// Loads and validates files; errors carry the file name.
CheckInput load_check_input(const CheckConfig& cfg);

struct IterationStat {
  std::string kind;  // "simulation" or "falsification"
  std::size_t bound = 0;
  int vars = 0;
  std::size_t clauses = 0;
  double seconds = 0.0;
  std::string outcome;  // sat / unsat / refuted / inconclusive
};

enum class Verdict { Holds, Violated, Unknown };
std::string to_string(Verdict v);

struct Report {
  Verdict verdict = Verdict::Unknown;
  Pattern pattern = Pattern::ForallExists;
  /// Structures the verdict talks about (after restriction and prophecy).
  KripkeStructure left;
  KripkeStructure right;
  /// Left structure before prophecy enrichment; counterexamples refer to it.
  KripkeStructure left_original;
  std::optional<SimWitnessAE> ae_witness;
  std::optional<SimWitnessEA> ea_witness;
  std::optional<Counterexample> counterexample;
  /// Minimal SAT bound (k for AE, n for EA) on Holds.
  std::optional<std::size_t> bound;
  /// |S_Q'| for AE, distinct lasso states |S_P'| for EA.
  std::optional<std::size_t> subset_size;
  std::size_t max_sim_bound = 0;
  std::size_t max_depth = 0;
  std::vector<IterationStat> iterations;
  std::string note;
  double seconds = 0.0;
};

/// Round-robin: simulation at bound t, then falsification at depth t, for
/// t = 1, 2, ...; the first conclusive answer wins. Holds carries a
/// validated witness and Violated a re-verified counterexample; a validator
/// rejection raises SoundnessError.
Report run_check(const CheckInput& input, const CheckOptions& options, SatBackend& backend);
Report run_check(const CheckConfig& cfg);

std::string format_report_text(const Report& r);
std::string format_report_json(const Report& r);

/// Exit status for a verdict: 0 holds, 1 violated, 2 unknown.
int exit_code(Verdict v);

struct ExportedEncoding {
  std::string dimacs;
  std::string var_map;  // JSON sidecar
};

/// Encoding at one bound (k for AE, n for EA) with the same preprocessing
/// as run_check, without solving.
ExportedEncoding export_encoding(const CheckInput& input, const CheckOptions& options, std::size_t bound);

struct BenchRow {
  std::string name;
  std::size_t left_states = 0;
  std::size_t right_states = 0;
  std::string verdict;  // holds / violated / unknown / error
  std::string expected;
  std::optional<std::size_t> bound;
  std::optional<std::size_t> subset_size;
  double seconds = 0.0;
  std::string error;
  bool matches = false;
};

/// Every subdirectory of `corpus_dir` holding a manifest.json, in name
/// order. A broken case becomes an error row; the others still run.
std::vector<BenchRow> run_benchmarks(const std::string& corpus_dir, const std::string& backend = "embedded");
std::string format_bench_table(const std::vector<BenchRow>& rows);

}  // namespace hyperbmc
