#include "hyperbmc/driver.hpp"

#include <chrono>
#include <set>
#include <sstream>

#include "hyperbmc/error.hpp"
#include "kripke_text.hpp"

namespace hyperbmc {

ProphecySpec ProphecySpec::parse(const std::string& text) {
  if (text.rfind("file:", 0) == 0 && text.size() > 5) {
    ProphecySpec spec;
    spec.kind = Kind::File;
    spec.file = text.substr(5);
    return spec;
  }
  std::string t = text;
  for (char& c : t) {
    if (c == ' ') c = ':';
  }
  ProphecySpec spec;
  if (t.empty() || t == "none") return spec;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : t) {
    if (c == ':') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  if (parts.size() == 3 && parts[0] == "next") {
    spec.kind = Kind::Next;
    spec.prop = parts[1];
    try {
      std::size_t used = 0;
      const long d = std::stol(parts[2], &used);
      if (used != parts[2].size() || d < 1) throw std::invalid_argument("depth");
      spec.depth = static_cast<std::size_t>(d);
    } catch (const std::exception&) {
      throw ParseError("prophecy depth must be a positive integer in '" + text + "'", 0);
    }
    if (!is_identifier(spec.prop)) throw ParseError("invalid prophecy proposition in '" + text + "'", 0);
    return spec;
  }
  throw ParseError("prophecy must be 'next:<prop>:<depth>' or 'file:<path>', got '" + text + "'", 0);
}

std::string ProphecySpec::to_string() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::Next: return "next:" + prop + ":" + std::to_string(depth);
    case Kind::File: return "file:" + file;
  }
  return "none";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Holds: return 0;
    case Verdict::Violated: return 1;
    case Verdict::Unknown: return 2;
  }
  return 2;
}

namespace {

void require_valid(const KripkeStructure& k, const std::string& what) {
  const auto violations = validate_kripke(k);
  if (!violations.empty())
    throw ModelError(violations[0].rule, violations[0].subject, what + ": " + violations[0].message);
}

}  // namespace

CheckInput load_check_input(const CheckConfig& cfg) {
  CheckInput in;
  in.left = load_kripke(cfg.left_path);
  in.right = load_kripke(cfg.right_path);
  if (!cfg.property_path.empty()) {
    const std::string text = detail::read_file(cfg.property_path);
    try {
      in.property = parse_property(text);
    } catch (const ParseError& e) {
      throw ParseError(cfg.property_path + ": " + e.what(), 0);
    } catch (const FragmentError& e) {
      throw FragmentError(cfg.property_path + ": " + e.what());
    }
  } else if (!cfg.property_text.empty()) {
    in.property = parse_property(cfg.property_text);
  } else {
    throw Error("no property given");
  }
  if (cfg.mode && *cfg.mode != in.property.pattern)
    throw FragmentError("mode '" + to_string(*cfg.mode) + "' does not match the property's '" +
                        to_string(in.property.pattern) + "' prefix");
  switch (cfg.prophecy.kind) {
    case ProphecySpec::Kind::None: break;
    case ProphecySpec::Kind::Next: in.prophecy = build_next_prophecy(cfg.prophecy.prop, cfg.prophecy.depth); break;
    case ProphecySpec::Kind::File: in.prophecy = load_prophecy(cfg.prophecy.file); break;
  }
  return in;
}

namespace {

struct Prepared {
  Pattern pattern;
  KripkeStructure kp;        // encoded left side (after prophecy)
  KripkeStructure kp_plain;  // left side the falsifier explores
  KripkeStructure kq;
  RelationalPredicate pred = RelationalPredicate::constant(true);
};

Prepared prepare(const CheckInput& input, const CheckOptions& options) {
  require_valid(input.left, "left structure");
  require_valid(input.right, "right structure");
  Prepared p;
  p.pattern = input.property.pattern;
  if (p.pattern == Pattern::ForallExists) {
    p.kp_plain = options.restrict_reachable ? reachable_restriction(input.left) : input.left;
    p.kq = input.right;
    p.kp = p.kp_plain;
    if (input.prophecy) {
      require_valid(input.prophecy->structure, "prophecy");
      if (!is_universal(*input.prophecy, input.prophecy->structure.ap()))
        throw ModelError("non-universal", "",
                         "prophecy automaton does not generate every sequence over its propositions");
      p.kp = prophecy_product(p.kp_plain, *input.prophecy);
    }
  } else {
    if (input.prophecy) throw FragmentError("prophecies apply to forall-exists properties only");
    p.kp = input.left;
    p.kp_plain = input.left;
    p.kq = options.restrict_reachable ? reachable_restriction(input.right) : input.right;
  }
  p.pred = bind_predicate(input.property.body, p.kp.ap(), p.kq.ap());
  return p;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join_violations(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size() && i < 5; ++i) s += (i ? "; " : "") + v[i];
  if (v.size() > 5) s += "; ... (" + std::to_string(v.size()) + " total)";
  return s;
}

}  // namespace

Report run_check(const CheckInput& input, const CheckOptions& options, SatBackend& backend) {
  const auto t0 = std::chrono::steady_clock::now();
  const Prepared prep = prepare(input, options);
  Report r;
  r.pattern = prep.pattern;
  r.left = prep.kp;
  r.right = prep.kq;
  r.left_original = prep.kp_plain;
  const bool ae = prep.pattern == Pattern::ForallExists;
  const std::size_t sim_max = ae ? std::min(options.max_bound.value_or(prep.kq.size()), prep.kq.size())
                                 : options.max_bound.value_or(2 * prep.kp.size());
  r.max_sim_bound = sim_max;
  r.max_depth = options.max_depth;
  if (ae && options.max_bound && *options.max_bound < 1) throw BoundError("max bound must be at least 1");

  for (std::size_t t = 1; t <= std::max(sim_max, options.max_depth); ++t) {
    if (t <= sim_max) {
      const auto ts = std::chrono::steady_clock::now();
      const Encoding enc = ae ? encode_sim_ae(prep.kp, prep.kq, prep.pred, t, options.encoder)
                              : encode_sim_ea(prep.kp, prep.kq, prep.pred, t, options.encoder);
      const CnfInstance cnf = enc.to_cnf();
      const SatResult res = backend.solve(cnf);
      IterationStat st{"simulation", t, cnf.var_count, cnf.clauses.size(), since(ts), res.satisfiable ? "sat" : "unsat"};
      r.iterations.push_back(st);
      if (res.satisfiable) {
        if (ae) {
          SimWitnessAE w = decode_witness_ae(enc, res.model);
          const auto violations = validate_witness_ae(prep.kp, prep.kq, prep.pred, w);
          if (!violations.empty())
            throw SoundnessError("decoded forall-exists witness rejected: " + join_violations(violations));
          r.subset_size = w.used_q.size();
          r.ae_witness = std::move(w);
        } else {
          SimWitnessEA w = decode_witness_ea(enc, res.model);
          const auto violations = validate_witness_ea(prep.kp, prep.kq, prep.pred, w);
          if (!violations.empty())
            throw SoundnessError("decoded exists-forall witness rejected: " + join_violations(violations));
          std::set<StateIndex> used(w.lasso.prefix.begin(), w.lasso.prefix.end());
          used.insert(w.lasso.loop.begin(), w.lasso.loop.end());
          r.subset_size = used.size();
          r.ea_witness = std::move(w);
        }
        r.verdict = Verdict::Holds;
        r.bound = t;
        r.seconds = since(t0);
        return r;
      }
    }
    if (t <= options.max_depth) {
      const auto ts = std::chrono::steady_clock::now();
      auto ce = ae ? falsify_forall_exists(prep.kp_plain, prep.kq, prep.pred, t)
                   : falsify_exists_forall(prep.kp_plain, prep.kq, prep.pred, t);
      r.iterations.push_back({"falsification", t, 0, 0, since(ts), ce ? "refuted" : "inconclusive"});
      if (ce) {
        if (!verify_counterexample(prep.kp_plain, prep.kq, prep.pred, *ce))
          throw SoundnessError("counterexample at depth " + std::to_string(t) + " failed re-verification");
        r.verdict = Verdict::Violated;
        r.counterexample = std::move(ce);
        r.seconds = since(t0);
        return r;
      }
    }
  }

  r.verdict = Verdict::Unknown;
  std::ostringstream note;
  if (ae) {
    if (sim_max == prep.kq.size())
      note << "no simulation exists even with all " << sim_max
           << " right states; the property may still hold (a prophecy can help)";
    else
      note << "no simulation with up to k=" << sim_max << " right states";
  } else {
    note << "no witness lasso up to n=" << sim_max;
  }
  note << "; no refutation up to depth " << options.max_depth;
  r.note = note.str();
  r.seconds = since(t0);
  return r;
}

Report run_check(const CheckConfig& cfg) {
  const CheckInput input = load_check_input(cfg);
  auto backend = make_backend(cfg.backend);
  return run_check(input, cfg.options, *backend);
}

ExportedEncoding export_encoding(const CheckInput& input, const CheckOptions& options, std::size_t bound) {
  const Prepared prep = prepare(input, options);
  const Encoding enc = prep.pattern == Pattern::ForallExists
                           ? encode_sim_ae(prep.kp, prep.kq, prep.pred, bound, options.encoder)
                           : encode_sim_ea(prep.kp, prep.kq, prep.pred, bound, options.encoder);
  const CnfInstance cnf = enc.to_cnf();
  return {export_dimacs(cnf), export_var_map(cnf)};
}

}  // namespace hyperbmc
