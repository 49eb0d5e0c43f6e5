// Python bindings. Reports cross the boundary as JSON text; the package
// wrapper turns them into dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperbmc/driver.hpp"
#include "hyperbmc/error.hpp"

namespace py = pybind11;
using namespace hyperbmc;

namespace {

CheckConfig make_config(const std::string& left, const std::string& right, const std::string& prop,
                        const std::string& prop_text, const std::optional<std::string>& mode,
                        const std::optional<std::string>& prophecy, const std::optional<std::string>& prophecy_file,
                        std::optional<std::size_t> max_bound, std::size_t max_depth, const std::string& backend,
                        const std::string& slots, bool slot_order, bool restrict_reachable) {
  CheckConfig cfg;
  if (mode) {
    if (*mode == "ae") cfg.mode = Pattern::ForallExists;
    else if (*mode == "ea") cfg.mode = Pattern::ExistsForall;
    else throw Error("mode must be 'ae' or 'ea'");
  }
  cfg.left_path = left;
  cfg.right_path = right;
  cfg.property_path = prop;
  cfg.property_text = prop_text;
  if (prophecy && prophecy_file) throw Error("prophecy and prophecy_file are exclusive");
  if (prophecy) cfg.prophecy = ProphecySpec::parse(*prophecy);
  if (prophecy_file) {
    cfg.prophecy.kind = ProphecySpec::Kind::File;
    cfg.prophecy.file = *prophecy_file;
  }
  cfg.options.max_bound = max_bound;
  if (max_depth < 1) throw BoundError("max_depth must be at least 1");
  cfg.options.max_depth = max_depth;
  if (slots != "enumerated" && slots != "symbolic") throw Error("slots must be 'enumerated' or 'symbolic'");
  cfg.options.encoder.slots = slots == "symbolic" ? SlotEncoding::Symbolic : SlotEncoding::Enumerated;
  cfg.options.encoder.order_q_slots = slot_order;
  cfg.options.restrict_reachable = restrict_reachable;
  cfg.backend = backend;
  return cfg;
}

py::dict structure_summary(const KripkeStructure& k) {
  py::dict d;
  d["states"] = k.names();
  std::vector<std::string> init;
  for (StateIndex s : k.initial()) init.push_back(k.name(s));
  d["initial"] = init;
  d["ap"] = k.ap();
  py::dict labels;
  for (StateIndex s = 0; s < k.size(); ++s) labels[py::str(k.name(s))] = k.label(s);
  d["labels"] = labels;
  std::vector<std::pair<std::string, std::string>> trans;
  for (const auto& t : k.transitions()) trans.emplace_back(k.name(t.from), k.name(t.to));
  d["transitions"] = trans;
  return d;
}

}  // namespace

PYBIND11_MODULE(_hyperbmc, m) {
  m.doc() = "Bounded model checking of forall-exists / exists-forall G-predicate hyperproperties";

  auto base = py::register_exception<Error>(m, "HyperbmcError", PyExc_RuntimeError);
  auto parse = py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<UnknownOperatorError>(m, "UnknownOperatorError", parse.ptr());
  py::register_exception<ModelError>(m, "ModelError", base.ptr());
  py::register_exception<FragmentError>(m, "FragmentError", base.ptr());
  py::register_exception<BoundError>(m, "BoundError", base.ptr());
  py::register_exception<EmptyProductError>(m, "EmptyProductError", base.ptr());
  py::register_exception<BackendError>(m, "BackendError", base.ptr());
  py::register_exception<DecodeError>(m, "DecodeError", base.ptr());
  py::register_exception<SoundnessError>(m, "SoundnessError", base.ptr());

  m.def("parse_kripke", [](const std::string& text) { return structure_summary(parse_kripke(text)); },
        py::arg("text"), "Parse and validate a .kr structure; returns its contents.");
  m.def("print_kripke", [](const std::string& text) { return print_kripke(parse_kripke(text)); }, py::arg("text"),
        "Canonical text form of a .kr structure.");
  m.def(
      "parse_property",
      [](const std::string& text) {
        const HyperProperty p = parse_property(text);
        py::dict d;
        d["pattern"] = p.pattern == Pattern::ForallExists ? "ae" : "ea";
        d["predicate"] = p.body.to_string();
        d["text"] = p.to_string();
        return d;
      },
      py::arg("text"));

  m.def(
      "check_json",
      [](const std::string& left, const std::string& right, const std::string& prop, const std::string& prop_text,
         const std::optional<std::string>& mode, const std::optional<std::string>& prophecy,
         const std::optional<std::string>& prophecy_file, std::optional<std::size_t> max_bound,
         std::size_t max_depth, const std::string& backend, const std::string& slots, bool slot_order,
         bool restrict_reachable) {
        const CheckConfig cfg = make_config(left, right, prop, prop_text, mode, prophecy, prophecy_file, max_bound,
                                            max_depth, backend, slots, slot_order, restrict_reachable);
        py::gil_scoped_release release;
        return format_report_json(run_check(cfg));
      },
      py::arg("left"), py::arg("right"), py::arg("prop") = "", py::arg("prop_text") = "", py::arg("mode") = py::none(),
      py::arg("prophecy") = py::none(), py::arg("prophecy_file") = py::none(), py::arg("max_bound") = py::none(),
      py::arg("max_depth") = 10, py::arg("backend") = "embedded", py::arg("slots") = "enumerated",
      py::arg("slot_order") = true, py::arg("restrict_reachable") = true);

  m.def(
      "export_encoding",
      [](const std::string& left, const std::string& right, std::size_t bound, const std::string& prop,
         const std::string& prop_text, const std::optional<std::string>& prophecy, const std::string& slots,
         bool slot_order, bool restrict_reachable) {
        const CheckConfig cfg = make_config(left, right, prop, prop_text, std::nullopt, prophecy, std::nullopt,
                                            std::nullopt, 10, "embedded", slots, slot_order, restrict_reachable);
        const ExportedEncoding e = export_encoding(load_check_input(cfg), cfg.options, bound);
        return std::make_pair(e.dimacs, e.var_map);
      },
      py::arg("left"), py::arg("right"), py::arg("bound"), py::arg("prop") = "", py::arg("prop_text") = "",
      py::arg("prophecy") = py::none(), py::arg("slots") = "enumerated", py::arg("slot_order") = true,
      py::arg("restrict_reachable") = true, "DIMACS text and JSON variable map at one bound.");

  m.def(
      "bench",
      [](const std::string& corpus, const std::string& backend) {
        std::vector<BenchRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_benchmarks(corpus, backend);
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["name"] = r.name;
          d["left_states"] = r.left_states;
          d["right_states"] = r.right_states;
          d["verdict"] = r.verdict;
          d["expected"] = r.expected;
          d["bound"] = r.bound;
          d["subset_size"] = r.subset_size;
          d["seconds"] = r.seconds;
          d["error"] = r.error;
          d["matches"] = r.matches;
          out.append(d);
        }
        return out;
      },
      py::arg("corpus"), py::arg("backend") = "embedded");
}
