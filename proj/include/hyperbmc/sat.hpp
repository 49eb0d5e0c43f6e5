#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hyperbmc/cnf.hpp"

namespace hyperbmc {

struct SatResult {
  bool satisfiable = false;
  /// Indexed by DIMACS variable; slot 0 unused. Empty when UNSAT.
  std::vector<bool> model;
  double seconds = 0.0;
};

class SatBackend {
 public:
  virtual ~SatBackend() = default;
  /// Throws BackendError when no answer can be obtained.
  virtual SatResult solve(const CnfInstance& cnf) = 0;
  virtual std::string name() const = 0;
};

// Conflict-driven clause learning: two watched literals, VSIDS, phase
// saving, first-UIP learning with minimization, Luby restarts.
class EmbeddedSolver : public SatBackend {
 public:
  SatResult solve(const CnfInstance& cnf) override;
  std::string name() const override { return "embedded"; }
};

// Runs `command... <dimacs file>` and reads "s SATISFIABLE" / "s
// UNSATISFIABLE" plus "v ..." model lines from standard output. Exit
// statuses 0, 10 and 20 are accepted; a returned model is checked against
// the clauses before it is trusted.
class ExternalSolver : public SatBackend {
 public:
  explicit ExternalSolver(std::vector<std::string> command);
  SatResult solve(const CnfInstance& cnf) override;
  std::string name() const override;

 private:
  std::vector<std::string> command_;
};

/// "embedded" or "external:<command with arguments>".
std::unique_ptr<SatBackend> make_backend(const std::string& spec);

/// Convenience wrapper over the embedded solver.
SatResult solve(const CnfInstance& cnf);

}  // namespace hyperbmc
