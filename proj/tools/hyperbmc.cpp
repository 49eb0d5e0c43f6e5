// hyperbmc: check / bench / export front end.
#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hyperbmc/driver.hpp"
#include "hyperbmc/error.hpp"

namespace {

using namespace hyperbmc;

constexpr int kInputError = 3;
constexpr int kBackendError = 4;
constexpr int kSoundnessError = 5;

struct CommonArgs {
  std::string mode;
  std::string left;
  std::string right;
  std::string prop;
  std::string prop_text;
  std::string prophecy;
  std::string prophecy_file;
  std::size_t max_bound = 0;
  std::size_t max_depth = 10;
  std::string backend = "embedded";
  std::string slots = "enumerated";
  bool no_order = false;
  bool no_restrict = false;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--mode", a.mode, "ae or ea (default: from the property)")->check(CLI::IsMember({"ae", "ea"}));
  cmd->add_option("--left", a.left, "left structure (.kr)")->required();
  cmd->add_option("--right", a.right, "right structure (.kr)")->required();
  cmd->add_option("--prop", a.prop, "property file (.hp)");
  cmd->add_option("--prop-text", a.prop_text, "inline property");
  cmd->add_option("--prophecy", a.prophecy, "next:<prop>:<depth>");
  cmd->add_option("--prophecy-file", a.prophecy_file, "prophecy structure with annot lines");
  cmd->add_option("--max-bound", a.max_bound, "largest k (ae) or n (ea)");
  cmd->add_option("--max-depth", a.max_depth, "largest falsification depth");
  cmd->add_option("--backend", a.backend, "embedded or external:<command>");
  cmd->add_option("--slots", a.slots, "enumerated or symbolic")->check(CLI::IsMember({"enumerated", "symbolic"}));
  cmd->add_flag("--no-slot-order", a.no_order, "drop the y-slot ordering constraints (ae)");
  cmd->add_flag("--no-restrict", a.no_restrict, "do not restrict to reachable states");
}

CheckConfig to_config(const CommonArgs& a) {
  CheckConfig cfg;
  if (a.mode == "ae") cfg.mode = Pattern::ForallExists;
  if (a.mode == "ea") cfg.mode = Pattern::ExistsForall;
  cfg.left_path = a.left;
  cfg.right_path = a.right;
  cfg.property_path = a.prop;
  cfg.property_text = a.prop_text;
  if (!a.prophecy.empty() && !a.prophecy_file.empty()) throw Error("--prophecy and --prophecy-file are exclusive");
  if (!a.prophecy.empty()) cfg.prophecy = ProphecySpec::parse(a.prophecy);
  if (!a.prophecy_file.empty()) {
    cfg.prophecy.kind = ProphecySpec::Kind::File;
    cfg.prophecy.file = a.prophecy_file;
  }
  if (a.max_bound > 0) cfg.options.max_bound = a.max_bound;
  if (a.max_depth < 1) throw BoundError("--max-depth must be at least 1");
  cfg.options.max_depth = a.max_depth;
  cfg.options.encoder.slots = a.slots == "symbolic" ? SlotEncoding::Symbolic : SlotEncoding::Enumerated;
  cfg.options.encoder.order_q_slots = !a.no_order;
  cfg.options.restrict_reachable = !a.no_restrict;
  cfg.backend = a.backend;
  return cfg;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << data;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded model checking of forall-exists / exists-forall G-predicate hyperproperties"};
  app.require_subcommand(1);

  CommonArgs check_args;
  std::string format = "text";
  auto* check = app.add_subcommand("check", "decide a property by simulation search and falsification");
  add_common(check, check_args);
  check->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json", "json-like"}));

  std::string corpus;
  std::string bench_backend = "embedded";
  auto* bench = app.add_subcommand("bench", "run every case of a corpus directory");
  bench->add_option("corpus", corpus, "corpus directory")->required();
  bench->add_option("--backend", bench_backend, "embedded or external:<command>");

  CommonArgs export_args;
  std::size_t bound = 0;
  std::string output;
  auto* exp = app.add_subcommand("export", "write the encoding at one bound as DIMACS");
  add_common(exp, export_args);
  exp->add_option("--bound", bound, "k (ae) or n (ea)")->required();
  exp->add_option("--output,-o", output, "DIMACS file; the variable map goes to <output>.map.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      const Report r = run_check(to_config(check_args));
      std::cout << (format == "text" ? format_report_text(r) : format_report_json(r));
      return exit_code(r.verdict);
    }
    if (*bench) {
      const auto rows = run_benchmarks(corpus, bench_backend);
      std::cout << format_bench_table(rows);
      const bool ok = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.matches; });
      return ok ? 0 : 1;
    }
    if (*exp) {
      const CheckConfig cfg = to_config(export_args);
      const ExportedEncoding e = export_encoding(load_check_input(cfg), cfg.options, bound);
      if (output.empty()) {
        std::cout << e.dimacs;
      } else {
        write_file(output, e.dimacs);
        write_file(output + ".map.json", e.var_map);
      }
      return 0;
    }
  } catch (const BackendError& e) {
    std::cerr << "backend error: " << e.what() << '\n';
    return kBackendError;
  } catch (const SoundnessError& e) {
    std::cerr << "internal soundness error: " << e.what() << '\n';
    return kSoundnessError;
  } catch (const DecodeError& e) {
    std::cerr << "internal decode error: " << e.what() << '\n';
    return kSoundnessError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
