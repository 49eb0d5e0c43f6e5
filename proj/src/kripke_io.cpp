#include <cctype>
#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "hyperbmc/error.hpp"
#include "hyperbmc/kripke.hpp"
#include "kripke_text.hpp"

namespace hyperbmc {

std::string ParseError::format(const std::string& message, std::size_t line, std::size_t column) {
  std::ostringstream os;
  if (line > 0) {
    os << "line " << line;
    if (column > 0) os << ", column " << column + 1;
    os << ": ";
  } else if (column > 0) {
    os << "position " << column << ": ";
  }
  os << message;
  return os.str();
}

namespace detail {

namespace {

struct Ref {
  std::string name;
  std::size_t line;
};

class LineScanner {
 public:
  LineScanner(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  std::string identifier(const char* what) {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string id(text_.substr(start, pos_ - start));
    if (!is_identifier(id)) throw ParseError(std::string("expected ") + what, line_, start);
    return id;
  }
  void expect(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) != tok)
      throw ParseError("expected '" + std::string(tok) + "'", line_, pos_);
    pos_ += tok.size();
  }
  std::vector<std::string> identifier_list(const char* what) {
    std::vector<std::string> out;
    while (!at_end()) out.push_back(identifier(what));
    return out;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

KripkeStructure parse_kripke_text(std::string_view text, AnnotationLines* annotations) {
  std::vector<Ref> states;
  std::vector<Ref> init;
  std::vector<Ref> ap;
  std::vector<std::pair<Ref, std::vector<std::string>>> labels;
  std::vector<std::pair<Ref, Ref>> trans;
  std::vector<std::pair<Ref, std::vector<std::string>>> annots;

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    LineScanner sc(line, line_no);
    if (sc.at_end()) continue;
    const std::string keyword = sc.identifier("a keyword");
    if (keyword == "states" || keyword == "init" || keyword == "ap") {
      sc.expect(":");
      auto& target = keyword == "states" ? states : keyword == "init" ? init : ap;
      for (auto& id : sc.identifier_list("an identifier")) target.push_back({std::move(id), line_no});
    } else if (keyword == "label") {
      std::string s = sc.identifier("a state name");
      sc.expect(":");
      labels.push_back({{std::move(s), line_no}, sc.identifier_list("a proposition")});
    } else if (keyword == "trans") {
      std::string from = sc.identifier("a state name");
      sc.expect("->");
      std::string to = sc.identifier("a state name");
      if (!sc.at_end()) throw ParseError("unexpected text after transition", line_no);
      trans.push_back({{std::move(from), line_no}, {std::move(to), line_no}});
    } else if (keyword == "annot" && annotations != nullptr) {
      std::string s = sc.identifier("a state name");
      sc.expect(":");
      annots.push_back({{std::move(s), line_no}, sc.identifier_list("an annotation name")});
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", line_no);
    }
    if (end == text.size()) break;
  }

  auto located = [](const Ref& r, const std::string& msg) { return "line " + std::to_string(r.line) + ": " + msg; };

  std::unordered_map<std::string, StateIndex> index;
  std::vector<std::string> names;
  for (const auto& r : states) {
    if (!index.emplace(r.name, static_cast<StateIndex>(names.size())).second)
      throw ModelError("duplicate-state", r.name, located(r, "duplicate state '" + r.name + "'"));
    names.push_back(r.name);
  }
  auto resolve = [&](const Ref& r) {
    auto it = index.find(r.name);
    if (it == index.end()) throw ModelError("unknown-state", r.name, located(r, "unknown state '" + r.name + "'"));
    return it->second;
  };

  std::vector<std::string> props;
  std::unordered_set<std::string> prop_set;
  for (const auto& r : ap) {
    if (!prop_set.insert(r.name).second)
      throw ModelError("duplicate-prop", r.name, located(r, "duplicate proposition '" + r.name + "'"));
    props.push_back(r.name);
  }

  std::vector<StateIndex> init_idx;
  for (const auto& r : init) init_idx.push_back(resolve(r));
  if (init_idx.empty()) throw ModelError("empty-init", "", "no initial state declared");

  std::vector<Label> label_sets(names.size());
  std::vector<bool> labelled(names.size(), false);
  for (const auto& [r, list] : labels) {
    StateIndex s = resolve(r);
    if (labelled[s]) throw ModelError("duplicate-label", r.name, located(r, "state '" + r.name + "' labeled twice"));
    labelled[s] = true;
    for (const auto& p : list) {
      if (!prop_set.count(p))
        throw ModelError("unknown-prop", r.name + ":" + p,
                         located(r, "state '" + r.name + "' uses undeclared proposition '" + p + "'"));
    }
    label_sets[s] = make_label(list);
  }

  std::vector<Transition> edges;
  for (const auto& [from, to] : trans) edges.push_back({resolve(from), resolve(to)});

  if (annotations != nullptr) {
    for (const auto& [r, list] : annots) {
      resolve(r);
      auto& dst = (*annotations)[r.name];
      dst.insert(dst.end(), list.begin(), list.end());
    }
  }

  KripkeStructure k(std::move(names), std::move(init_idx), std::move(props), std::move(label_sets),
                    std::move(edges));
  for (StateIndex s = 0; s < k.size(); ++s) {
    if (k.successors(s).empty())
      throw ModelError("non-total", k.name(s), "state '" + k.name(s) + "' has no outgoing transition");
  }
  return k;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace detail

KripkeStructure parse_kripke(std::string_view text) { return detail::parse_kripke_text(text, nullptr); }

KripkeStructure load_kripke(const std::string& path) {
  const std::string text = detail::read_file(path);
  try {
    return parse_kripke(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  } catch (const ModelError& e) {
    throw ModelError(e.rule(), e.subject(), path + ": " + e.what());
  }
}

std::string print_kripke(const KripkeStructure& k) {
  std::ostringstream os;
  auto list = [&](const char* key, const std::vector<std::string>& items) {
    os << key << ':';
    for (const auto& i : items) os << ' ' << i;
    os << '\n';
  };
  list("states", k.names());
  std::vector<std::string> init;
  for (StateIndex s : k.initial()) init.push_back(k.name(s));
  list("init", init);
  list("ap", k.ap());
  for (StateIndex s = 0; s < k.size(); ++s) {
    os << "label " << k.name(s) << ':';
    for (const auto& p : k.label(s)) os << ' ' << p;
    os << '\n';
  }
  for (const auto& t : k.transitions()) os << "trans " << k.name(t.from) << " -> " << k.name(t.to) << '\n';
  return os.str();
}

}  // namespace hyperbmc
